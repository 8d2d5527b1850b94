"""Command-line driver.

Exit codes: 0 success, 1 negative answer (no interleaving, no shift
equivalence, invalid as a checked claim), 2 validation error, 3 bounds
exceeded, 4 I/O or syntax error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable

from . import documents as docs
from .cospan import (
    BoundsExceeded,
    check_interleaving_extension,
    hausdorff_weight,
    interleaving_distance,
    pushout,
    search_interleaving_extension,
)
from .documents import Document, DocumentError
from .dynsys import check_shift_equivalence, search_shift_equivalence
from .futequiv import (
    compose_future_equivalences,
    future_equivalence_weight,
    phi_object,
)
from .metric import EmptySubsetError, hausdorff, hausdorff_via_offsets, sym_hausdorff
from .weights import Weight
from .zoo import (
    Grid,
    grid_interleaving_category,
    grid_line_category,
    interior_windows,
    interval_module,
    module_functor,
    standard_family,
    translated_cospan,
)

OK, NEGATIVE, INVALID, BOUNDS, IO_ERROR = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# helpers


def load(path: str, kinds: tuple[str, ...] | None = None, validate: bool = True) -> Document:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(IO_ERROR, f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = docs.parse_document(text)
    except docs.DocumentSyntaxError as exc:
        raise CliError(IO_ERROR, f"{path}: {exc}") from None
    except DocumentError as exc:
        raise CliError(INVALID, f"{path}: {exc}") from None
    if kinds is not None and doc.kind not in kinds:
        raise CliError(INVALID, f"{path}: expected a {' or '.join(kinds)} document, got {doc.kind}")
    if validate:
        report = docs.validate_document(doc)
        if not report.ok:
            raise CliError(INVALID, f"{path}: {report}")
    return doc


def write(doc: Document, out: str | None) -> None:
    text = docs.emit_document(doc)
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CliError(IO_ERROR, f"cannot write {out}: {exc.strerror}") from None


def as_functor(doc: Document, target=None):
    """Functor documents pass through; grid modules become matrix-valued functors."""
    if doc.kind == "functor":
        return doc.payload
    return module_functor(doc.payload, target=target)


def ids(text: str) -> list[str]:
    return [t for t in (s.strip() for s in text.split(",")) if t]


def rationals(text: str) -> list[Fraction]:
    return [Fraction(t) for t in ids(text)]


# ---------------------------------------------------------------------------
# subcommands; each returns (exit code, result dict, human text)


def cmd_validate(a) -> tuple[int, dict, str]:
    doc = load(a.file, validate=False)
    report = docs.validate_document(doc)
    result = {"kind": doc.kind, "ok": report.ok, "violations": report.violations}
    return (OK if report.ok else INVALID), result, f"{doc.kind}: {report}"


def cmd_hausdorff(a):
    space = load(a.space, ("lawvere",)).payload
    A, B = ids(a.A), ids(a.B)
    try:
        if a.symmetric:
            value = sym_hausdorff(space, A, B)
        elif a.via_offsets:
            value = hausdorff_via_offsets(space, A, B)
        else:
            value = hausdorff(space, A, B)
    except EmptySubsetError as exc:
        raise CliError(INVALID, str(exc)) from None
    except KeyError as exc:
        raise CliError(INVALID, str(exc.args[0])) from None
    return OK, {"value": str(value)}, str(value)


def cmd_pushout(a):
    e1 = load(a.first, ("cospan",)).payload
    e2 = load(a.second, ("cospan",)).payload
    try:
        composite = pushout(e1, e2)
    except ValueError as exc:
        raise CliError(INVALID, str(exc)) from None
    write(Document("cospan", composite), a.output)
    I = composite.I
    result = {
        "objects": len(I.objects),
        "morphisms": len(I.morphisms),
        "hausdorff": str(hausdorff_weight(composite)) if I.is_weighted else None,
        "output": a.output,
    }
    return OK, result, f"pushout: {len(I.objects)} objects, {len(I.morphisms)} morphisms -> {a.output}"


def cmd_interleave(a):
    e = load(a.cospan, ("cospan",)).payload
    F = as_functor(load(a.F, ("functor", "grid-module")))
    G = as_functor(load(a.G, ("functor", "grid-module")), target=F.target)
    if a.extension:
        H = load(a.extension, ("functor",)).payload
        ok = check_interleaving_extension(e, F, G, H)
        return (OK if ok else NEGATIVE), {"interleaved": ok}, "extension verified" if ok else "not an extension"
    try:
        H = search_interleaving_extension(e, F, G, a.search, a.search_cap)
    except BoundsExceeded as exc:
        raise CliError(BOUNDS, f"bounds exceeded: {exc}") from None
    if H is None:
        return NEGATIVE, {"interleaved": False}, "no extension exists within the search bounds"
    if a.output:
        write(Document("functor", H), a.output)
    return OK, {"interleaved": True, "output": a.output}, "interleaved: extension found"


def cmd_distance(a):
    F = as_functor(load(a.F, ("functor", "grid-module")))
    G = as_functor(load(a.G, ("functor", "grid-module")), target=F.target)
    family = load(a.family, ("family",)).payload
    try:
        bound = interleaving_distance(F, G, family, a.symmetric, mode=a.search, search_cap=a.search_cap)
    except BoundsExceeded as exc:
        raise CliError(BOUNDS, f"bounds exceeded: {exc}") from None
    witness = None if bound.witness is None else family[bound.witness].label or str(bound.witness)
    result = {
        "value": str(bound.value),
        "witness": bound.witness,
        "witness_label": witness,
        "upper_bound": bound.upper_bound,
    }
    text = f"{bound.value} (upper bound over the family; witness {witness})"
    return (OK if bound.witness is not None else NEGATIVE), result, text


def cmd_fut(a):
    fes = [load(p, ("future-equivalence",)) for p in a.files]
    if a.action == "validate":
        return OK, {"ok": True}, "ok"
    if a.action == "weight":
        w = future_equivalence_weight(fes[0].payload)
        result = {"W_eta": str(w.W_eta), "W_nu": str(w.W_nu), "omega": str(w.omega)}
        return OK, result, f"W(eta)={w.W_eta} W(nu)={w.W_nu} omega={w.omega}"
    if a.action == "compose":
        if len(fes) != 2:
            raise CliError(INVALID, "fut compose takes two files: the first then the second")
        try:
            comp = compose_future_equivalences(fes[1].payload, fes[0].payload)
        except ValueError as exc:
            raise CliError(INVALID, str(exc)) from None
        write(Document("future-equivalence", comp), a.output)
        return OK, {"output": a.output}, f"composite written to {a.output or 'stdout'}"
    e = phi_object(fes[0].payload)
    write(Document("cospan", e), a.output)
    return OK, {"output": a.output, "morphisms": len(e.I.morphisms)}, f"cospan written to {a.output or 'stdout'}"


def cmd_shift(a):
    s1 = load(a.first, ("dynsystem",)).payload
    s2 = load(a.second, ("dynsystem",)).payload
    if a.alpha is not None or a.beta is not None:
        if a.alpha is None or a.beta is None:
            raise CliError(INVALID, "give both --alpha and --beta, or use --search")
        try:
            alpha, beta = json.loads(a.alpha), json.loads(a.beta)
            ok = check_shift_equivalence(s1, s2, alpha, beta, a.lag)
        except (json.JSONDecodeError, ValueError) as exc:
            raise CliError(INVALID, str(exc)) from None
        return (OK if ok else NEGATIVE), {"shift_equivalent": ok}, "shift equivalence" if ok else "not a shift equivalence"
    try:
        found = search_shift_equivalence(s1, s2, a.lag, a.cap)
    except BoundsExceeded as exc:
        raise CliError(BOUNDS, f"bounds exceeded: {exc}") from None
    if found is None:
        return NEGATIVE, {"shift_equivalent": False}, f"no shift equivalence of lag {a.lag}"
    alpha, beta = found
    result = {"shift_equivalent": True, "alpha": alpha, "beta": beta}
    return OK, result, f"alpha={json.dumps(alpha)} beta={json.dumps(beta)}"


def cmd_zoo(a):
    grid = Grid(tuple(rationals(a.values)))
    if a.what == "grid":
        doc = Document("category", grid_line_category(grid))
    elif a.what == "iepsilon":
        e = grid_interleaving_category(grid, a.mode, Weight(a.eps), a.alpha, Fraction(a.translation))
        if a.windowed:
            e = e.with_windows(*interior_windows(grid, Weight(a.eps), translation=Fraction(a.translation)))
        doc = Document("cospan", e)
    elif a.what == "family":
        fam = standard_family(grid, [Weight(x) for x in ids(a.eps)])
        if a.translated is not None:
            fam.append(translated_cospan(grid, Fraction(a.translated)))
        doc = Document("family", fam)
    else:
        M = interval_module(grid, a.birth, a.death, a.p)
        doc = Document("functor", module_functor(M)) if a.functor else Document("grid-module", M)
    write(doc, a.output)
    return OK, {"kind": doc.kind, "output": a.output}, ""


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="catinterleave", description="Exact distances between finite categories and functors.")
    p.add_argument("--json", action="store_true", help="print a single JSON object")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="validate any document")
    s.add_argument("file")
    s.set_defaults(run=cmd_validate)

    s = sub.add_parser("hausdorff", help="Hausdorff distance in a Lawvere space")
    s.add_argument("space")
    s.add_argument("A", help="comma-separated point ids")
    s.add_argument("B", help="comma-separated point ids")
    s.add_argument("--symmetric", action="store_true")
    s.add_argument("--via-offsets", action="store_true")
    s.set_defaults(run=cmd_hausdorff)

    s = sub.add_parser("pushout", help="horizontal composite of two cospans")
    s.add_argument("first")
    s.add_argument("second")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(run=cmd_pushout)

    s = sub.add_parser("interleave", help="search for (or check) an extension over a cospan")
    s.add_argument("cospan")
    s.add_argument("F")
    s.add_argument("G")
    s.add_argument("--search", default=None, help="finset or finvect:P")
    s.add_argument("--search-cap", type=int, default=12)
    s.add_argument("--extension", help="check this functor instead of searching")
    s.add_argument("-o", "--output")
    s.set_defaults(run=cmd_interleave)

    s = sub.add_parser("distance", help="interleaving distance over a candidate family (upper bound)")
    s.add_argument("F")
    s.add_argument("G")
    s.add_argument("--family", required=True)
    s.add_argument("--symmetric", action="store_true")
    s.add_argument("--search", default=None)
    s.add_argument("--search-cap", type=int, default=12)
    s.set_defaults(run=cmd_distance)

    s = sub.add_parser("fut", help="future equivalences")
    s.add_argument("action", choices=("validate", "compose", "weight", "phi"))
    s.add_argument("files", nargs="+")
    s.add_argument("-o", "--output")
    s.set_defaults(run=cmd_fut)

    s = sub.add_parser("shift-equiv", help="shift equivalence of finite dynamical systems")
    s.add_argument("first")
    s.add_argument("second")
    s.add_argument("--lag", type=int, required=True)
    s.add_argument("--search", action="store_true", help="search for a witness (the default without maps)")
    s.add_argument("--alpha", help="JSON object for the map X -> Y")
    s.add_argument("--beta", help="JSON object for the map Y -> X")
    s.add_argument("--cap", type=int, default=10**6)
    s.set_defaults(run=cmd_shift)

    s = sub.add_parser("zoo", help="emit generated documents")
    s.add_argument("what", choices=("grid", "iepsilon", "family", "interval"))
    s.add_argument("--values", required=True, help="comma-separated grid values, e.g. 0,1/2,1")
    s.add_argument("--mode", default="Ieps", choices=("Ieps", "Ieps+", "Iae", "O"))
    s.add_argument("--eps", default="0", help="epsilon (comma-separated list for 'family')")
    s.add_argument("--alpha", default=None)
    s.add_argument("--translation", default="0")
    s.add_argument("--translated", default=None, help="append a translated cospan to a family")
    s.add_argument("--windowed", action="store_true")
    s.add_argument("--birth", default="0")
    s.add_argument("--death", default="inf")
    s.add_argument("--p", type=int, default=2)
    s.add_argument("--functor", action="store_true", help="emit the interval module as a functor")
    s.add_argument("-o", "--output")
    s.set_defaults(run=cmd_zoo)
    return p


def execute_command(argv: list[str]) -> tuple[int, dict]:
    """Run a command; returns the exit code and the machine-readable report."""
    parser = build_parser()
    args = parser.parse_args(argv)
    run: Callable = args.run
    try:
        code, result, text = run(args)
    except CliError as exc:
        code, result, text = exc.code, {"error": str(exc)}, f"error: {exc}"
    except (ValueError, TypeError) as exc:
        code, result, text = INVALID, {"error": str(exc)}, f"error: {exc}"
    result = {"command": args.command, "exit": code, **result}
    if args.json:
        print(json.dumps(result, ensure_ascii=False))
    elif text:
        stream = sys.stderr if code in (INVALID, BOUNDS, IO_ERROR) else sys.stdout
        print(text, file=stream)
    return code, result


def main(argv: list[str] | None = None) -> int:
    code, _ = execute_command(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
