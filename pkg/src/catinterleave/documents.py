"""JSON documents for every kind of value the package computes with.

Rationals travel as strings ``"p/q"`` (integers may also be bare numbers) and
infinity as ``"inf"``.  Every document is an object with a ``kind`` field;
nested categories are written inline so each file stands alone.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .category import Category, Functor, Report, validate_category, validate_functor, validate_weighted
from .cospan import EmbeddingPair, validate_cospan
from .dynsys import DynSystem
from .futequiv import FutureEquivalence, validate_future_equivalence
from .metric import LawvereSpace, validate_lawvere
from .weights import Weight
from .zoo import Grid, GridModule

KINDS = ("category", "functor", "cospan", "lawvere", "future-equivalence", "grid-module", "dynsystem", "family")


class DocumentError(ValueError):
    """Base class for problems reading a document."""


class DocumentSyntaxError(DocumentError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"syntax error at line {line}, column {column}: {message}")
        self.line, self.column = line, column


class SchemaError(DocumentError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class DuplicateIdError(SchemaError):
    pass


@dataclass(frozen=True)
class Document:
    kind: str
    payload: Any


# ---------------------------------------------------------------------------
# reading


def parse_document(text: str) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    return from_json(data)


def from_json(data: Any) -> Document:
    obj = _obj(data, "document")
    kind = obj.get("kind")
    if kind not in KINDS:
        raise SchemaError("kind", f"expected one of {', '.join(KINDS)}, got {kind!r}")
    reader = _READERS[kind]
    return Document(kind, reader(obj, kind))


def _obj(x: Any, where: str) -> dict:
    if not isinstance(x, dict):
        raise SchemaError(where, "expected an object")
    return x


def _field(obj: dict, name: str, where: str, default: Any = ...) -> Any:
    if name not in obj:
        if default is ...:
            raise SchemaError(f"{where}.{name}", "missing field")
        return default
    return obj[name]


def _str_list(x: Any, where: str) -> list[str]:
    if not isinstance(x, list) or not all(isinstance(v, str) for v in x):
        raise SchemaError(where, "expected a list of strings")
    if len(set(x)) != len(x):
        dup = next(v for v in x if x.count(v) > 1)
        raise DuplicateIdError(where, f"duplicate id {dup!r}")
    return list(x)


def _str_map(x: Any, where: str) -> dict[str, str]:
    if not isinstance(x, dict) or not all(isinstance(v, str) for v in x.values()):
        raise SchemaError(where, "expected an object mapping ids to ids")
    return dict(x)


def _weight(x: Any, where: str) -> Weight:
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise SchemaError(where, "weights are strings like '3/2' or 'inf', or integers")
    try:
        return Weight(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(where, str(exc)) from None


def _rational(x: Any, where: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise SchemaError(where, "rationals are strings like '3/2' or integers")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(where, str(exc)) from None


def read_category(obj: dict, where: str = "category") -> Category:
    obj = _obj(obj, where)
    objects = _str_list(_field(obj, "objects", where), f"{where}.objects")
    raw = _field(obj, "morphisms", where)
    if not isinstance(raw, list):
        raise SchemaError(f"{where}.morphisms", "expected a list")
    morphisms: dict[str, tuple[str, str]] = {}
    weights: dict[str, Weight] = {}
    weighted = None
    for k, m in enumerate(raw):
        mw = f"{where}.morphisms[{k}]"
        m = _obj(m, mw)
        mid = _field(m, "id", mw)
        if mid in morphisms:
            raise DuplicateIdError(f"{mw}.id", f"duplicate id {mid!r}")
        src, dst = _field(m, "src", mw), _field(m, "dst", mw)
        for name, o in (("src", src), ("dst", dst)):
            if o not in objects:
                raise SchemaError(f"{mw}.{name}", f"unknown object {o!r}")
        morphisms[mid] = (src, dst)
        has_weight = "weight" in m
        if weighted is None:
            weighted = has_weight
        elif weighted != has_weight:
            raise SchemaError(f"{mw}.weight", "either every morphism has a weight or none does")
        if has_weight:
            weights[mid] = _weight(m["weight"], f"{mw}.weight")
    identities = _str_map(_field(obj, "identities", where), f"{where}.identities")
    for a, i in identities.items():
        if a not in objects or i not in morphisms:
            raise SchemaError(f"{where}.identities", f"bad identity entry {a!r}: {i!r}")
    comp_raw = _field(obj, "compose", where)
    if not isinstance(comp_raw, list):
        raise SchemaError(f"{where}.compose", "expected a list")
    composition: dict[tuple[str, str], str] = {}
    for k, c in enumerate(comp_raw):
        cw = f"{where}.compose[{k}]"
        c = _obj(c, cw)
        f, g, h = _field(c, "first", cw), _field(c, "then", cw), _field(c, "equals", cw)
        for name, x in (("first", f), ("then", g), ("equals", h)):
            if x not in morphisms:
                raise SchemaError(f"{cw}.{name}", f"unknown morphism {x!r}")
        if (f, g) in composition:
            raise DuplicateIdError(cw, f"composite of {f!r} then {g!r} given twice")
        composition[(f, g)] = h
    return Category(tuple(objects), morphisms, identities, composition, weights if weighted else None)


def _read_map(obj: dict, where: str, source: Category, target: Category) -> Functor:
    obj = _obj(obj, where)
    contract = _field(obj, "contract", where, "none")
    try:
        return Functor(
            source,
            target,
            _str_map(_field(obj, "objMap", where), f"{where}.objMap"),
            _str_map(_field(obj, "morMap", where), f"{where}.morMap"),
            contract,
        )
    except ValueError as exc:
        raise SchemaError(f"{where}.contract", str(exc)) from None


def read_functor(obj: dict, where: str = "functor") -> Functor:
    source = read_category(_field(obj, "source", where), f"{where}.source")
    target = read_category(_field(obj, "target", where), f"{where}.target")
    return _read_map(obj, where, source, target)


def read_cospan(obj: dict, where: str = "cospan") -> EmbeddingPair:
    obj = _obj(obj, where)
    P = read_category(_field(obj, "P", where), f"{where}.P")
    Q = read_category(_field(obj, "Q", where), f"{where}.Q")
    I = read_category(_field(obj, "I", where), f"{where}.I")
    leg_p = _read_map(_field(obj, "legP", where), f"{where}.legP", P, I)
    leg_q = _read_map(_field(obj, "legQ", where), f"{where}.legQ", Q, I)
    wp = obj.get("windowP")
    wq = obj.get("windowQ")
    return EmbeddingPair(
        leg_p,
        leg_q,
        None if wp is None else frozenset(_str_list(wp, f"{where}.windowP")),
        None if wq is None else frozenset(_str_list(wq, f"{where}.windowQ")),
        obj.get("label", ""),
    )


def read_lawvere(obj: dict, where: str = "lawvere") -> LawvereSpace:
    points = _str_list(_field(obj, "points", where), f"{where}.points")
    dist = _field(obj, "dist", where)
    if not isinstance(dist, list) or len(dist) != len(points) or any(
        not isinstance(r, list) or len(r) != len(points) for r in dist
    ):
        raise SchemaError(f"{where}.dist", "expected a square matrix matching the points")
    rows = [[_weight(x, f"{where}.dist[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(dist)]
    return LawvereSpace(tuple(points), rows)


def read_future_equivalence(obj: dict, where: str = "future-equivalence") -> FutureEquivalence:
    P = read_category(_field(obj, "P", where), f"{where}.P")
    Q = read_category(_field(obj, "Q", where), f"{where}.Q")
    gamma = _read_map(_field(obj, "Gamma", where), f"{where}.Gamma", P, Q)
    K = _read_map(_field(obj, "K", where), f"{where}.K", Q, P)
    eta = _str_map(_field(obj, "eta", where), f"{where}.eta")
    nu = _str_map(_field(obj, "nu", where), f"{where}.nu")
    return FutureEquivalence(gamma, K, eta, nu)


def read_grid_module(obj: dict, where: str = "grid-module") -> GridModule:
    values = _field(obj, "grid", where)
    if not isinstance(values, list):
        raise SchemaError(f"{where}.grid", "expected a list of rationals")
    try:
        grid = Grid(tuple(_rational(v, f"{where}.grid[{k}]") for k, v in enumerate(values)))
        p = _field(obj, "p", where)
        if not isinstance(p, int) or p not in (2, 3):
            raise SchemaError(f"{where}.p", "the field size must be 2 or 3")
        dims = _field(obj, "dims", where)
        maps = _field(obj, "maps", where)
        return GridModule(grid, p, tuple(dims), tuple(tuple(m) for m in maps))
    except SchemaError:
        raise
    except (ValueError, TypeError) as exc:
        raise SchemaError(where, str(exc)) from None


def read_dynsystem(obj: dict, where: str = "dynsystem") -> DynSystem:
    carrier = _str_list(_field(obj, "carrier", where), f"{where}.carrier")
    mapping = _str_map(_field(obj, "map", where), f"{where}.map")
    try:
        return DynSystem(tuple(carrier), mapping)
    except ValueError as exc:
        raise SchemaError(f"{where}.map", str(exc)) from None


def read_family(obj: dict, where: str = "family") -> list[EmbeddingPair]:
    items = _field(obj, "cospans", where)
    if not isinstance(items, list):
        raise SchemaError(f"{where}.cospans", "expected a list")
    return [read_cospan(c, f"{where}.cospans[{k}]") for k, c in enumerate(items)]


_READERS = {
    "category": lambda o, w: read_category(o, w),
    "functor": lambda o, w: read_functor(o, w),
    "cospan": lambda o, w: read_cospan(o, w),
    "lawvere": lambda o, w: read_lawvere(o, w),
    "future-equivalence": lambda o, w: read_future_equivalence(o, w),
    "grid-module": lambda o, w: read_grid_module(o, w),
    "dynsystem": lambda o, w: read_dynsystem(o, w),
    "family": lambda o, w: read_family(o, w),
}


# ---------------------------------------------------------------------------
# writing


def category_json(c: Category) -> dict:
    morphisms = []
    for m, (a, b) in c.morphisms.items():
        entry = {"id": m, "src": a, "dst": b}
        if c.weights is not None:
            entry["weight"] = str(c.weights[m])
        morphisms.append(entry)
    return {
        "objects": list(c.objects),
        "morphisms": morphisms,
        "identities": dict(c.identities),
        "compose": [{"first": f, "then": g, "equals": h} for (f, g), h in c.composition.items()],
    }


def _map_json(F: Functor) -> dict:
    return {"objMap": dict(F.obj_map), "morMap": dict(F.mor_map), "contract": F.contract}


def functor_json(F: Functor) -> dict:
    return {"source": category_json(F.source), "target": category_json(F.target), **_map_json(F)}


def cospan_json(e: EmbeddingPair) -> dict:
    out = {
        "P": category_json(e.P),
        "Q": category_json(e.Q),
        "I": category_json(e.I),
        "legP": _map_json(e.leg_p),
        "legQ": _map_json(e.leg_q),
    }
    if e.window_p is not None:
        out["windowP"] = sorted(e.window_p)
    if e.window_q is not None:
        out["windowQ"] = sorted(e.window_q)
    if e.label:
        out["label"] = e.label
    return out


def lawvere_json(s: LawvereSpace) -> dict:
    return {"points": list(s.points), "dist": [[str(x) for x in row] for row in s.dist]}


def future_equivalence_json(fe: FutureEquivalence) -> dict:
    return {
        "P": category_json(fe.P),
        "Q": category_json(fe.Q),
        "Gamma": _map_json(fe.gamma),
        "K": _map_json(fe.K),
        "eta": dict(fe.eta),
        "nu": dict(fe.nu),
    }


def grid_module_json(M: GridModule) -> dict:
    return {
        "grid": [str(v) for v in M.grid.values],
        "p": M.p,
        "dims": list(M.dims),
        "maps": [list(m) for m in M.maps],
    }


def dynsystem_json(s: DynSystem) -> dict:
    return {"carrier": [str(x) for x in s.carrier], "map": {str(k): str(v) for k, v in s.map.items()}}


def family_json(fam: list[EmbeddingPair]) -> dict:
    return {"cospans": [cospan_json(e) for e in fam]}


_WRITERS = {
    "category": category_json,
    "functor": functor_json,
    "cospan": cospan_json,
    "lawvere": lawvere_json,
    "future-equivalence": future_equivalence_json,
    "grid-module": grid_module_json,
    "dynsystem": dynsystem_json,
    "family": family_json,
}


def to_json(doc: Document) -> dict:
    return {"kind": doc.kind, **_WRITERS[doc.kind](doc.payload)}


def emit_document(doc: Document) -> str:
    return json.dumps(to_json(doc), indent=1, ensure_ascii=False) + "\n"


def validate_document(doc: Document) -> Report:
    """Run the validator belonging to the document's kind."""
    p = doc.payload
    if doc.kind == "category":
        return validate_weighted(p) if p.is_weighted else validate_category(p)
    if doc.kind == "functor":
        report = Report()
        for name, c in (("source", p.source), ("target", p.target)):
            report.extend(validate_weighted(c) if c.is_weighted else validate_category(c), f"{name}: ")
        if report.ok:
            report.extend(validate_functor(p))
        return report
    if doc.kind == "cospan":
        report = Report()
        for name, c in (("P", p.P), ("Q", p.Q)):
            report.extend(validate_weighted(c) if c.is_weighted else validate_category(c), f"{name}: ")
        if report.ok:
            report.extend(validate_cospan(p))
        return report
    if doc.kind == "lawvere":
        return validate_lawvere(p)
    if doc.kind == "future-equivalence":
        report = Report()
        for name, c in (("P", p.P), ("Q", p.Q)):
            report.extend(validate_weighted(c) if c.is_weighted else validate_category(c), f"{name}: ")
        if report.ok:
            report.extend(validate_future_equivalence(p))
        return report
    if doc.kind == "family":
        report = Report()
        for k, e in enumerate(p):
            report.extend(validate_document(Document("cospan", e)), f"cospan {k}: ")
        return report
    # grid modules and systems are checked on construction
    return Report()
