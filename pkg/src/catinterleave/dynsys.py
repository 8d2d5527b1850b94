"""Finite dynamical systems, shift equivalence, and the two-object category I_ℓ.

A system is a finite set with a self-map, i.e. a functor from the free
category N on one loop ``φ``.  I_ℓ adds a second loop ``ψ`` and arrows
``a: x -> y``, ``b: y -> x`` with ``ab = ψ^ℓ``, ``ba = φ^ℓ``, ``ψa = aφ`` and
``φb = bψ``.  Both categories are infinite and are handled in normal form:
every morphism is one of ``φ^i``, ``ψ^i``, ``a_i = aφ^i`` or ``b_i = bψ^i``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .cospan import BoundsExceeded

KINDS = ("phi", "psi", "a", "b")
_ENDS = {"phi": ("x", "x"), "psi": ("y", "y"), "a": ("x", "y"), "b": ("y", "x")}


@dataclass(frozen=True)
class DynSystem:
    carrier: tuple
    map: Mapping

    def __post_init__(self):
        object.__setattr__(self, "carrier", tuple(self.carrier))
        if isinstance(self.map, Mapping):
            mapping = dict(self.map)
        else:
            mapping = dict(zip(self.carrier, self.map))
        if len(set(self.carrier)) != len(self.carrier):
            raise ValueError("duplicate point in carrier")
        points = set(self.carrier)
        for x in self.carrier:
            if x not in mapping:
                raise ValueError(f"map is not total: no image for {x!r}")
            if mapping[x] not in points:
                raise ValueError(f"image of {x!r} lies outside the carrier")
        object.__setattr__(self, "map", mapping)
        object.__setattr__(self, "_powers", {})

    def __call__(self, x):
        return self.map[x]

    def power(self, n: int) -> dict:
        """The n-fold iterate as a table (cached; treat as read-only)."""
        cached = self._powers.get(n)
        if cached is not None:
            return cached
        out = {}
        for x in self.carrier:
            y = x
            for _ in range(n):
                y = self.map[y]
            out[x] = y
        self._powers[n] = out
        return out


def _total(m: Mapping, domain: Sequence, codomain: Sequence, name: str) -> None:
    cod = set(codomain)
    for x in domain:
        if x not in m:
            raise ValueError(f"{name} is not total: no image for {x!r}")
        if m[x] not in cod:
            raise ValueError(f"{name} sends {x!r} outside its codomain")


def check_shift_equivalence(s1: DynSystem, s2: DynSystem, alpha: Mapping, beta: Mapping, lag: int) -> bool:
    """``αf = gα``, ``βg = fβ``, ``βα = f^ℓ`` and ``αβ = g^ℓ``, pointwise."""
    _total(alpha, s1.carrier, s2.carrier, "α")
    _total(beta, s2.carrier, s1.carrier, "β")
    f, g = s1.map, s2.map
    fl, gl = s1.power(lag), s2.power(lag)
    return (
        all(alpha[f[x]] == g[alpha[x]] and beta[alpha[x]] == fl[x] for x in s1.carrier)
        and all(beta[g[y]] == f[beta[y]] and alpha[beta[y]] == gl[y] for y in s2.carrier)
    )


def search_shift_equivalence(s1: DynSystem, s2: DynSystem, lag: int, cap: int = 10**6):
    """First ``(α, β)`` in lexicographic order of the tables, or None."""
    X, Y = s1.carrier, s2.carrier
    size = len(Y) ** len(X) * len(X) ** len(Y)
    if size > cap:
        raise BoundsExceeded(f"{size} candidate pairs exceed cap={cap}")
    for a_vals in itertools.product(Y, repeat=len(X)):
        alpha = dict(zip(X, a_vals))
        if any(alpha[s1.map[x]] != s2.map[alpha[x]] for x in X):
            continue
        for b_vals in itertools.product(X, repeat=len(Y)):
            beta = dict(zip(Y, b_vals))
            if check_shift_equivalence(s1, s2, alpha, beta, lag):
                return alpha, beta
    return None


# ---------------------------------------------------------------------------
# normal forms in I_ℓ


@dataclass(frozen=True, order=True)
class ShiftMorphism:
    kind: str
    exponent: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.exponent < 0:
            raise ValueError("exponent must be non-negative")

    @property
    def source(self) -> str:
        return _ENDS[self.kind][0]

    @property
    def target(self) -> str:
        return _ENDS[self.kind][1]

    def __str__(self) -> str:
        if self.kind in ("phi", "psi"):
            return f"{self.kind}^{self.exponent}"
        return f"{self.kind}_{self.exponent}"


@dataclass(frozen=True)
class ShiftCategory:
    lag: int

    def __post_init__(self):
        if self.lag < 0:
            raise ValueError("lag must be non-negative")

    def identity(self, obj: str) -> ShiftMorphism:
        return ShiftMorphism("phi" if obj == "x" else "psi", 0)


def shift_compose(c: ShiftCategory, g: ShiftMorphism, f: ShiftMorphism) -> ShiftMorphism:
    """``g ∘ f`` in normal form."""
    if f.target != g.source:
        raise ValueError(f"cannot compose {g} after {f}: endpoints differ")
    n = f.exponent + g.exponent
    if f.kind in ("phi", "psi") and g.kind in ("phi", "psi"):
        return ShiftMorphism(f.kind, n)
    if f.kind in ("a", "b") and g.kind in ("a", "b"):
        # b_j ∘ a_i = φ^{i+j+ℓ}; a_j ∘ b_i = ψ^{i+j+ℓ}
        return ShiftMorphism("phi" if f.kind == "a" else "psi", n + c.lag)
    return ShiftMorphism(f.kind if f.kind in ("a", "b") else g.kind, n)


def apply_to_system(s: DynSystem, m: ShiftMorphism) -> dict:
    """Image of ``φ^n`` under the functor N -> Set given by the system."""
    if m.kind != "phi":
        raise ValueError("a system only interprets powers of φ")
    return s.power(m.exponent)


@dataclass(frozen=True)
class LagFutureEquivalence:
    """``(Id_N, Id_N, φ^ℓ, φ^ℓ)`` as a future equivalence of N with itself."""

    lag: int

    @property
    def eta(self) -> ShiftMorphism:
        return ShiftMorphism("phi", self.lag)

    @property
    def nu(self) -> ShiftMorphism:
        return ShiftMorphism("phi", self.lag)

    def validate(self, sample: int = 6) -> bool:
        """Naturality on powers up to ``sample`` and both coherence equations."""
        N = ShiftCategory(0)
        for n in range(sample + 1):
            phi_n = ShiftMorphism("phi", n)
            for t in (self.eta, self.nu):
                if shift_compose(N, t, phi_n) != shift_compose(N, phi_n, t):
                    return False
        # Γ and K are identities, so Γη = νΓ and Kν = ηK read η = ν
        return self.eta == self.nu

    def interleaves(self, F: DynSystem, G: DynSystem, phi: Mapping, psi: Mapping) -> bool:
        """Check ``φ: F ⇒ G``, ``ψ: G ⇒ F`` and the two interleaving equations.

        N is free on one loop, so naturality needs checking only on ``φ^1``.
        """
        _total(phi, F.carrier, G.carrier, "φ")
        _total(psi, G.carrier, F.carrier, "ψ")
        one = ShiftMorphism("phi", 1)
        Ff, Gg = apply_to_system(F, one), apply_to_system(G, one)
        if any(phi[Ff[x]] != Gg[phi[x]] for x in F.carrier):
            return False
        if any(psi[Gg[y]] != Ff[psi[y]] for y in G.carrier):
            return False
        F_eta, G_nu = apply_to_system(F, self.eta), apply_to_system(G, self.nu)
        return all(psi[phi[x]] == F_eta[x] for x in F.carrier) and all(
            phi[psi[y]] == G_nu[y] for y in G.carrier
        )


def lag_future_equivalence(lag: int) -> LagFutureEquivalence:
    if lag < 0:
        raise ValueError("lag must be non-negative")
    return LagFutureEquivalence(lag)


def search_lag_interleaving(F: DynSystem, G: DynSystem, lag: int, cap: int = 10**6):
    """First interleaving ``(φ, ψ)`` along the lag-ℓ future equivalence, or None."""
    fe = lag_future_equivalence(lag)
    X, Y = F.carrier, G.carrier
    size = len(Y) ** len(X) * len(X) ** len(Y)
    if size > cap:
        raise BoundsExceeded(f"{size} candidate pairs exceed cap={cap}")
    for a_vals in itertools.product(Y, repeat=len(X)):
        for b_vals in itertools.product(X, repeat=len(Y)):
            phi, psi = dict(zip(X, a_vals)), dict(zip(Y, b_vals))
            if fe.interleaves(F, G, phi, psi):
                return phi, psi
    return None


# ---------------------------------------------------------------------------
# truncated table of I_ℓ, built by rewriting words


OVERFLOW = "overflow"


@dataclass
class ShiftTable:
    """Morphisms of I_ℓ with exponent at most ``cap``.

    Composites whose exponent would exceed ``cap`` are recorded as the
    absorbing marker ``"overflow"``; the table is therefore not a category and
    only serves to cross-check the normal-form arithmetic.
    """

    lag: int
    cap: int
    morphisms: dict[str, tuple[str, str]] = field(default_factory=dict)
    table: dict[tuple[str, str], str] = field(default_factory=dict)

    def compose(self, g: str, f: str) -> str:
        if OVERFLOW in (f, g):
            return OVERFLOW
        return self.table[(f, g)]


def _word(m: ShiftMorphism) -> list[str]:
    """Generators of a normal form in application order."""
    if m.kind == "phi":
        return ["phi"] * m.exponent
    if m.kind == "psi":
        return ["psi"] * m.exponent
    if m.kind == "a":
        return ["phi"] * m.exponent + ["a"]
    return ["psi"] * m.exponent + ["b"]


def _rewrite(word: list[str], lag: int, start: str) -> str:
    """Reduce a word with ``ψa -> aφ``, ``φb -> bψ``, ``ab -> ψ^ℓ``, ``ba -> φ^ℓ``."""
    w = list(word)
    changed = True
    while changed:
        changed = False
        for k in range(len(w) - 1):
            pair = (w[k], w[k + 1])
            if pair == ("a", "psi"):
                w[k : k + 2] = ["phi", "a"]
            elif pair == ("b", "phi"):
                w[k : k + 2] = ["psi", "b"]
            elif pair == ("b", "a"):
                w[k : k + 2] = ["psi"] * lag
            elif pair == ("a", "b"):
                w[k : k + 2] = ["phi"] * lag
            else:
                continue
            changed = True
            break
    loops = [s for s in w if s in ("phi", "psi")]
    arrows = [s for s in w if s in ("a", "b")]
    if len(arrows) > 1 or (arrows and w[-1] != arrows[0]):
        raise AssertionError(f"word did not reach normal form: {w}")
    if arrows:
        return f"{arrows[0]}_{len(loops)}"
    return f"{'phi' if start == 'x' else 'psi'}^{len(loops)}"


def shift_cospan(lag: int, exponent_cap: int) -> ShiftTable:
    """Materialize I_ℓ up to ``exponent_cap`` by word rewriting."""
    if lag < 0:
        raise ValueError("lag must be non-negative")
    if exponent_cap < 2 * lag + 2:
        raise ValueError("exponent_cap must be at least 2*lag + 2")
    t = ShiftTable(lag, exponent_cap)
    elems = [ShiftMorphism(k, i) for k in KINDS for i in range(exponent_cap + 1)]
    for m in elems:
        t.morphisms[str(m)] = (m.source, m.target)
    for f in elems:
        for g in elems:
            if f.target != g.source:
                continue
            result = _rewrite(_word(f) + _word(g), lag, f.source)
            exponent = int(result.replace("^", "_").split("_")[1])
            t.table[(str(f), str(g))] = OVERFLOW if exponent > exponent_cap else result
    return t


def parse_shift_morphism(text: str) -> ShiftMorphism:
    if "^" in text:
        kind, n = text.split("^")
    else:
        kind, n = text.split("_")
    return ShiftMorphism(kind, int(n))
