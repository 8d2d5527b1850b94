"""Finite surrogates for the indexing categories built on the real line.

Grids stand in for (R, <=).  Two tagged copies of a grid with cross
relations chosen by a mode give the two-copy interleaving categories; the
copy tagged 1 can sit at translated positions.  Interval modules over small
prime fields and the matrix category they land in are also generated here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .category import Category, Functor, thin_category
from .cospan import EmbeddingPair
from .weights import Weight, WeightLike, as_weight

MODES = ("Ieps", "Ieps+", "Iae", "O")


def _q(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floats are not accepted; use a Fraction or a 'p/q' string")
    if isinstance(x, Weight):
        return x.value
    return Fraction(x)


@dataclass(frozen=True)
class Grid:
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(_q(v) for v in self.values)
        if not vals:
            raise ValueError("a grid needs at least one point")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise ValueError("grid values must be strictly increasing")
        object.__setattr__(self, "values", vals)

    @classmethod
    def regular(cls, start, stop, step) -> "Grid":
        """``start, start+step, ..., stop`` (inclusive)."""
        start, stop, step = _q(start), _q(stop), _q(step)
        if step <= 0:
            raise ValueError("step must be positive")
        n = int((stop - start) / step)
        return cls(tuple(start + k * step for k in range(n + 1)))

    def label(self, v) -> str:
        return str(_q(v))

    @property
    def labels(self) -> list[str]:
        return [str(v) for v in self.values]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


def grid_line_category(g: Grid) -> Category:
    """Thin category of the order on the grid; ``a <= b`` weighs ``b - a``."""
    pos = dict(zip(g.labels, g.values))
    return thin_category(g.labels, lambda a, b: pos[a] <= pos[b], lambda a, b: Weight(pos[b] - pos[a]))


def _tag(i: int, label: str) -> str:
    return f"{i}:{label}"


def grid_interleaving_category(
    g: Grid,
    mode: str = "Ieps",
    eps: WeightLike = 0,
    alpha: WeightLike | None = None,
    translation: WeightLike | Fraction | int = 0,
    grid_q: Grid | None = None,
) -> EmbeddingPair:
    """Two copies of a grid joined by cross relations.

    Copy 0 holds ``g`` at its own positions; copy 1 holds ``grid_q`` (default
    ``g``) shifted by ``translation``.  Cross relations by mode, on positions:

    * ``Ieps``: either direction when ``eps <= b - a``;
    * ``Ieps+``: either direction when ``eps < b - a``;
    * ``O``: only copy 0 to copy 1, when ``a < b``;
    * ``Iae``: order closure of the chain ``(alpha+2n eps, 1) <= (alpha+(2n+1) eps, 0)
      <= (alpha+(2n+2) eps, 1)``.

    Every relation weighs the position difference.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    eps_q = _q(as_weight(eps))
    shift = Fraction(translation) if not isinstance(translation, Weight) else translation.value
    gq = g if grid_q is None else grid_q
    objects = [_tag(0, l) for l in g.labels] + [_tag(1, l) for l in gq.labels]
    pos = {_tag(0, l): v for l, v in zip(g.labels, g.values)}
    pos.update({_tag(1, l): v + shift for l, v in zip(gq.labels, gq.values)})
    copy = {o: int(o.split(":", 1)[0]) for o in objects}

    if mode == "Iae":
        leq = _alpha_eps_order(objects, pos, copy, alpha, eps_q)
    else:

        def leq(a: str, b: str) -> bool:
            d = pos[b] - pos[a]
            if copy[a] == copy[b]:
                return d >= 0
            if mode == "Ieps":
                return d >= eps_q
            if mode == "Ieps+":
                return d > eps_q
            return copy[a] == 0 and d > 0

    I = thin_category(objects, leq, lambda a, b: Weight(pos[b] - pos[a]))
    P = grid_line_category(g)
    Q = grid_line_category(gq)
    leg_p = _copy_inclusion(P, I, 0)
    leg_q = _copy_inclusion(Q, I, 1)
    label = {"Ieps": f"I_{eps_q}", "Ieps+": f"I_{eps_q}+", "O": "O", "Iae": f"I_{alpha},{eps_q}"}[mode]
    if shift:
        label += f" shifted {shift}"
    return EmbeddingPair(leg_p, leg_q, label=label)


def _copy_inclusion(P: Category, I: Category, i: int) -> Functor:
    return Functor(
        P,
        I,
        {a: _tag(i, a) for a in P.objects},
        {m: f"{_tag(i, a)}->{_tag(i, b)}" for m, (a, b) in P.morphisms.items()},
        "weight-preserving",
    )


def _alpha_eps_order(objects, pos, copy, alpha, eps: Fraction):
    if alpha is None:
        raise ValueError("mode Iae needs alpha")
    if eps <= 0:
        raise ValueError("mode Iae needs eps > 0")
    alpha = _q(alpha)
    lo = min(pos.values())
    hi = max(pos.values())
    at = {(copy[o], pos[o]): o for o in objects}
    # chain points alpha + n eps inside the grid range; copy alternates 1, 0, 1, ...
    n_lo = -((alpha - lo) // eps)
    n = int(n_lo)
    chain: list[str] = []
    while alpha + n * eps <= hi:
        x = alpha + n * eps
        c = 1 if n % 2 == 0 else 0
        o = at.get((c, x))
        if o is None:
            raise ValueError(f"chain point ({x}, {c}) is not on the grid")
        chain.append(o)
        n += 1
    reach = {o: {o} for o in objects}
    edges = {o: set() for o in objects}
    for a in objects:
        for b in objects:
            if copy[a] == copy[b] and pos[a] <= pos[b]:
                edges[a].add(b)
    for a, b in zip(chain, chain[1:]):
        edges[a].add(b)
    for o in objects:
        stack = [o]
        while stack:
            x = stack.pop()
            for y in edges[x]:
                if y not in reach[o]:
                    reach[o].add(y)
                    stack.append(y)
    return lambda a, b: b in reach[a]


def cross_relations(e: EmbeddingPair, translation=0) -> set[tuple[int, Fraction, int, Fraction]]:
    """Cross relations of a two-copy category as ``(copy, position, copy, position)``."""
    shift = Fraction(translation)
    pos = {e.leg_p.obj_map[o]: Fraction(o) for o in e.P.objects}
    pos.update({e.leg_q.obj_map[o]: Fraction(o) + shift for o in e.Q.objects})
    out = set()
    for a, b in e.I.morphisms.values():
        ca, cb = int(a.split(":", 1)[0]), int(b.split(":", 1)[0])
        if ca != cb:
            out.add((ca, pos[a], cb, pos[b]))
    return out


def interior_windows(g: Grid, eps: WeightLike, grid_q: Grid | None = None, translation=0):
    """Windows avoiding the boundary bands where cross relations leave the grid.

    The P window keeps copy-0 points at least ``eps`` below the top of copy 1;
    the Q window keeps copy-1 points at least ``eps`` above the bottom of
    copy 0 (all in positions).
    """
    eps_q = _q(as_weight(eps))
    gq = g if grid_q is None else grid_q
    shift = Fraction(translation)
    top_q = gq.values[-1] + shift
    bottom_p = g.values[0]
    wp = [l for l, v in zip(g.labels, g.values) if v + eps_q <= top_q]
    wq = [l for l, v in zip(gq.labels, gq.values) if v + shift - eps_q >= bottom_p]
    return frozenset(wp), frozenset(wq)


def epsilon_cospan(g: Grid, eps: WeightLike, windowed: bool = True) -> EmbeddingPair:
    e = grid_interleaving_category(g, "Ieps", eps)
    if windowed:
        return e.with_windows(*interior_windows(g, eps))
    return e


def translated_cospan(g: Grid, translation, eps: WeightLike = 0) -> EmbeddingPair:
    """The two-copy category with copy 1 shifted, windowed to the overlap."""
    e = grid_interleaving_category(g, "Ieps", eps, translation=translation)
    return e.with_windows(*interior_windows(g, eps, translation=translation))


def standard_family(g: Grid, epsilons: Iterable[WeightLike], windowed: bool = True) -> list[EmbeddingPair]:
    """The windowed two-copy cospans for each epsilon, in increasing order."""
    eps_sorted = sorted({as_weight(e) for e in epsilons})
    return [epsilon_cospan(g, e, windowed) for e in eps_sorted]


# ---------------------------------------------------------------------------
# target categories


def finset_category(n: int) -> Category:
    """Sets ``{0..k-1}`` for ``k <= n`` and all functions between them."""
    objs = [f"S{k}" for k in range(n + 1)]
    morphisms: dict[str, tuple[str, str]] = {}
    table: dict[str, tuple[int, ...]] = {}
    for a in range(n + 1):
        for b in range(n + 1):
            for f in itertools.product(range(b), repeat=a):
                mid = f"S{a}->S{b}:{''.join(map(str, f))}"
                morphisms[mid] = (f"S{a}", f"S{b}")
                table[mid] = f
    ident = {f"S{k}": f"S{k}->S{k}:{''.join(map(str, range(k)))}" for k in range(n + 1)}
    comp = {}
    for f, (a, b) in morphisms.items():
        for g, (b2, c) in morphisms.items():
            if b == b2:
                h = tuple(table[g][x] for x in table[f])
                comp[(f, g)] = f"{a}->{c}:{''.join(map(str, h))}"
    return Category(tuple(objs), morphisms, ident, comp)


def space(p: int, n: int) -> str:
    return f"F{p}^{n}"


def matrix_id(p: int, rows: int, cols: int, entries: Sequence[int]) -> str:
    """Id of a ``rows x cols`` matrix over F_p, i.e. a map ``F_p^cols -> F_p^rows``."""
    return f"{space(p, cols)}->{space(p, rows)}:{''.join(str(x % p) for x in entries)}"


def finvect_category(p: int, dim_cap: int = 2) -> Category:
    """Spaces ``F_p^n`` for ``n <= dim_cap`` and all linear maps, as matrices."""
    if p not in (2, 3):
        raise ValueError("only the fields with 2 or 3 elements are supported")
    objs = [space(p, n) for n in range(dim_cap + 1)]
    morphisms: dict[str, tuple[str, str]] = {}
    mats: dict[str, tuple[int, int, tuple[int, ...]]] = {}
    for c in range(dim_cap + 1):
        for r in range(dim_cap + 1):
            for entries in itertools.product(range(p), repeat=r * c):
                mid = matrix_id(p, r, c, entries)
                morphisms[mid] = (space(p, c), space(p, r))
                mats[mid] = (r, c, entries)
    ident = {
        space(p, n): matrix_id(p, n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])
        for n in range(dim_cap + 1)
    }
    by_source: dict[str, list[str]] = {}
    for m, (a, _) in morphisms.items():
        by_source.setdefault(a, []).append(m)
    comp = {}
    for f, (a, b) in morphisms.items():
        rf, cf, ef = mats[f]
        for g in by_source[b]:
            rg, cg, eg = mats[g]
            prod = [
                sum(eg[i * cg + k] * ef[k * cf + j] for k in range(cg)) % p
                for i in range(rg)
                for j in range(cf)
            ]
            comp[(f, g)] = matrix_id(p, rg, cf, prod)
    return Category(tuple(objs), morphisms, ident, comp)


# ---------------------------------------------------------------------------
# persistence modules on grids


@dataclass(frozen=True)
class GridModule:
    """Functor from a grid to matrices over F_p, given by consecutive maps.

    ``maps[k]`` is the matrix (row-major tuple) of ``M(v_k <= v_{k+1})``.
    """

    grid: Grid
    p: int
    dims: tuple[int, ...]
    maps: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "maps", tuple(tuple(m) for m in self.maps))
        if len(self.dims) != len(self.grid):
            raise ValueError("one dimension per grid point is required")
        if len(self.maps) != len(self.grid) - 1:
            raise ValueError("one map per consecutive pair is required")
        for k, m in enumerate(self.maps):
            if len(m) != self.dims[k] * self.dims[k + 1]:
                raise ValueError(f"map {k} has the wrong shape")

    def structure_map(self, i: int, j: int) -> tuple[int, ...]:
        """Matrix of ``M(v_i <= v_j)`` as the product of consecutive maps."""
        if j < i:
            raise ValueError("structure maps only go up the grid")
        n = self.dims[i]
        acc = tuple(1 if a == b else 0 for a in range(n) for b in range(n))
        cols = n
        for k in range(i, j):
            r = self.dims[k + 1]
            m = self.maps[k]
            inner = self.dims[k]
            acc = tuple(
                sum(m[a * inner + c] * acc[c * cols + b] for c in range(inner)) % self.p
                for a in range(r)
                for b in range(cols)
            )
        return acc


def interval_module(g: Grid, birth, death, p: int = 2) -> GridModule:
    """Field ``F_p`` on ``[birth, death)`` and zero elsewhere; ``death`` may be ``"inf"``."""
    b = _q(birth)
    d = None if str(death) in ("inf", "infinity", "∞") else _q(death)
    if d is not None and d < b:
        raise ValueError("birth must not exceed death")
    dims = tuple(1 if v >= b and (d is None or v < d) else 0 for v in g.values)
    # a 1x1 identity where both ends are live, the empty matrix otherwise
    maps = tuple((1,) if dims[k] and dims[k + 1] else () for k in range(len(dims) - 1))
    return GridModule(g, p, dims, maps)


def module_functor(M: GridModule, source: Category | None = None, target: Category | None = None, dim_cap: int = 2) -> Functor:
    """The module as a functor from the grid's line category to matrices."""
    g = M.grid
    P = grid_line_category(g) if source is None else source
    C = finvect_category(M.p, dim_cap) if target is None else target
    if max(M.dims) > dim_cap:
        raise ValueError("module dimension exceeds dim_cap")
    labels = g.labels
    idx = {l: k for k, l in enumerate(labels)}
    obj_map = {l: space(M.p, M.dims[idx[l]]) for l in labels}
    mor_map = {}
    for m, (a, b) in P.morphisms.items():
        i, j = idx[a], idx[b]
        mor_map[m] = matrix_id(M.p, M.dims[j], M.dims[i], M.structure_map(i, j))
    return Functor(P, C, obj_map, mor_map)
