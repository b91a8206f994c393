"""Polarities (X, ⊥, Y), their Galois connection and Galois-stable sets.

Subsets of X and Y are Python ints used as bitmasks over point indices.
``U′`` is :meth:`Polarity.polar_right`, ``′V`` is :meth:`Polarity.polar_left`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Sequence

from .lattice import FiniteLattice, validate_lattice
from .report import Check, Report

X_SORT = "1"
Y_SORT = "d"

DEFAULT_MAX_FAMILY = 1 << 16


class FamilyTooLarge(RuntimeError):
    pass


def members(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def to_mask(points: Iterable[int]) -> int:
    out = 0
    for p in points:
        out |= 1 << p
    return out


def subset(a: int, b: int) -> bool:
    return a & ~b == 0


class Polarity:
    """Two nonempty finite sorts with a Galois relation ``gal ⊆ X × Y``."""

    def __init__(self, nx: int, ny: int, gal: Iterable[tuple[int, int]],
                 xnames: Sequence[str] | None = None, ynames: Sequence[str] | None = None):
        if nx <= 0 or ny <= 0:
            raise ValueError("both sorts of a polarity must be nonempty")
        self.nx, self.ny = nx, ny
        self.xnames = tuple(xnames) if xnames else tuple(f"x{i}" for i in range(nx))
        self.ynames = tuple(ynames) if ynames else tuple(f"y{i}" for i in range(ny))
        if len(self.xnames) != nx or len(self.ynames) != ny:
            raise ValueError("name lists do not match universe sizes")
        xrow = [0] * nx
        ycol = [0] * ny
        for x, y in gal:
            if not (0 <= x < nx and 0 <= y < ny):
                raise ValueError(f"pair ({x}, {y}) out of range")
            xrow[x] |= 1 << y
            ycol[y] |= 1 << x
        self.xrow = tuple(xrow)
        self.ycol = tuple(ycol)
        self.full_x = (1 << nx) - 1
        self.full_y = (1 << ny) - 1

    @classmethod
    def from_table(cls, table: Sequence[Sequence[bool]], **kw) -> "Polarity":
        ny = len(table[0]) if table else 0
        pairs = [(x, y) for x, row in enumerate(table) for y, v in enumerate(row) if v]
        return cls(len(table), ny, pairs, **kw)

    def gal(self, x: int, y: int) -> bool:
        return bool(self.xrow[x] >> y & 1)

    def pairs(self) -> list[tuple[int, int]]:
        return [(x, y) for x in range(self.nx) for y in members(self.xrow[x])]

    # -- Galois connection ---------------------------------------------------

    def polar_right(self, U: int) -> int:
        """U′ = {y : x ⊥ y for every x in U}."""
        out = self.full_y
        for x in members(U):
            out &= self.xrow[x]
        return out

    def polar_left(self, V: int) -> int:
        """′V = {x : x ⊥ y for every y in V}."""
        out = self.full_x
        for y in members(V):
            out &= self.ycol[y]
        return out

    def polar(self, side: str, W: int) -> int:
        return self.polar_right(W) if side == X_SORT else self.polar_left(W)

    def stabilize(self, U: int) -> int:
        return self.polar_left(self.polar_right(U))

    def costabilize(self, V: int) -> int:
        return self.polar_right(self.polar_left(V))

    def close(self, side: str, W: int) -> int:
        return self.stabilize(W) if side == X_SORT else self.costabilize(W)

    def is_stable(self, U: int) -> bool:
        return self.stabilize(U) == U

    def is_costable(self, V: int) -> bool:
        return self.costabilize(V) == V

    def is_galois(self, side: str, W: int) -> bool:
        return self.close(side, W) == W

    def full(self, side: str) -> int:
        return self.full_x if side == X_SORT else self.full_y

    def size(self, side: str) -> int:
        return self.nx if side == X_SORT else self.ny

    # -- specialization order ------------------------------------------------

    @cached_property
    def up_x(self) -> tuple[int, ...]:
        """up_x[x] = {z : {x}′ ⊆ {z}′}."""
        return tuple(to_mask(z for z in range(self.nx) if subset(self.xrow[x], self.xrow[z]))
                     for x in range(self.nx))

    @cached_property
    def up_y(self) -> tuple[int, ...]:
        return tuple(to_mask(v for v in range(self.ny) if subset(self.ycol[y], self.ycol[v]))
                     for y in range(self.ny))

    def up(self, side: str) -> tuple[int, ...]:
        return self.up_x if side == X_SORT else self.up_y

    def leq_x(self, x: int, z: int) -> bool:
        return bool(self.up_x[x] >> z & 1)

    def leq_y(self, y: int, v: int) -> bool:
        return bool(self.up_y[y] >> v & 1)

    def specialization_order(self) -> tuple[list[list[bool]], list[list[bool]]]:
        tx = [[self.leq_x(a, b) for b in range(self.nx)] for a in range(self.nx)]
        ty = [[self.leq_y(a, b) for b in range(self.ny)] for a in range(self.ny)]
        return tx, ty

    def check_separated(self) -> bool:
        return len(set(self.xrow)) == self.nx and len(set(self.ycol)) == self.ny

    def upclose(self, side: str, W: int) -> int:
        up = self.up(side)
        out = 0
        for u in members(W):
            out |= up[u]
        return out

    def gamma(self, side: str, u: int) -> int:
        """Γu, the principal up-set of a point; equals {u}″."""
        return self.up(side)[u]

    def closed_elements(self, side: str = X_SORT) -> list[int]:
        return [self.gamma(side, u) for u in range(self.size(side))]

    def open_elements(self, side: str = X_SORT) -> list[int]:
        other = Y_SORT if side == X_SORT else X_SORT
        return [self.polar(other, 1 << w) for w in range(self.size(other))]

    def is_clopen(self, side: str, u: int) -> int | None:
        """The point w with Γu = {w}′, if any (unique when separated)."""
        g = self.gamma(side, u)
        for w, o in enumerate(self.open_elements(side)):
            if o == g:
                return w
        return None

    def enumerate_stable(self, max_family: int = DEFAULT_MAX_FAMILY) -> "StableFamily":
        return enumerate_stable(self, X_SORT, max_family)

    def enumerate_costable(self, max_family: int = DEFAULT_MAX_FAMILY) -> "StableFamily":
        return enumerate_stable(self, Y_SORT, max_family)


# -- stable families ---------------------------------------------------------

@dataclass
class StableFamily:
    """All Galois sets on one side of a polarity, ordered by inclusion.

    ``sets`` is sorted by bit pattern, so indices are reproducible.
    """

    polarity: Polarity
    side: str
    sets: tuple[int, ...]
    index: dict[int, int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __contains__(self, W: int) -> bool:
        return W in self.index

    @property
    def bottom(self) -> int:
        return self.polarity.close(self.side, 0)

    @property
    def top(self) -> int:
        return self.polarity.full(self.side)

    def meet(self, A: int, C: int) -> int:
        return A & C

    def join(self, A: int, C: int) -> int:
        return self.polarity.close(self.side, A | C)

    def meet_all(self, sets: Iterable[int]) -> int:
        out = self.top
        for W in sets:
            out &= W
        return out

    def join_all(self, sets: Iterable[int]) -> int:
        out = 0
        for W in sets:
            out |= W
        return self.polarity.close(self.side, out)

    @cached_property
    def lattice(self) -> FiniteLattice:
        S = self.sets
        order = [[subset(a, b) for b in S] for a in S]
        L = validate_lattice(order)
        # the validated tables must agree with ∩ and stabilized ∪
        for i, j in product(range(len(S)), repeat=2):
            assert S[L.meet[i][j]] == S[i] & S[j]
            assert S[L.join[i][j]] == self.join(S[i], S[j])
        return L


def enumerate_stable(P: Polarity, side: str = X_SORT, max_family: int = DEFAULT_MAX_FAMILY) -> StableFamily:
    """Intersection-closure of the open elements together with the full set."""
    found = {P.full(side)}
    for o in P.open_elements(side):
        new = set()
        for W in found:
            m = W & o
            if m not in found:
                new.add(m)
        found |= new
        if len(found) > max_family:
            raise FamilyTooLarge(f"more than {max_family} Galois sets")
    sets = tuple(sorted(found))
    return StableFamily(P, side, sets, {W: i for i, W in enumerate(sets)})


# -- sorted relations --------------------------------------------------------

@dataclass(frozen=True)
class SortedRelation:
    """An (n+1)-ary relation stored as output sections.

    ``sorts[0]`` is the output sort and ``sorts[1:]`` the input sorts;
    ``sections`` maps every input tuple to the bitmask of outputs ``w`` with
    ``w R inputs``.  Missing keys mean empty sections.
    """

    sorts: tuple[str, ...]
    sections: dict[tuple[int, ...], int]

    @property
    def arity(self) -> int:
        return len(self.sorts)

    def out(self, *inputs: int) -> int:
        return self.sections.get(inputs, 0)

    def holds(self, w: int, *inputs: int) -> bool:
        return bool(self.sections.get(inputs, 0) >> w & 1)

    def tuples(self) -> list[tuple[int, ...]]:
        return sorted((w, *k) for k, m in self.sections.items() for w in members(m))


def input_space(P: Polarity, sorts: Sequence[str]) -> Iterator[tuple[int, ...]]:
    return product(*(range(P.size(s)) for s in sorts))


def relation_from_tuples(P: Polarity, sorts: Sequence[str], tuples: Iterable[Sequence[int]]) -> SortedRelation:
    sorts = tuple(sorts)
    sections: dict[tuple[int, ...], int] = {k: 0 for k in input_space(P, sorts[1:])}
    for t in tuples:
        if len(t) != len(sorts):
            raise ValueError(f"tuple {tuple(t)} has wrong arity")
        for v, s in zip(t, sorts):
            if not 0 <= v < P.size(s):
                raise ValueError(f"tuple {tuple(t)} violates sorts {sorts}")
        sections[tuple(t[1:])] |= 1 << t[0]
    return SortedRelation(sorts, sections)


def relation_from_sections(P: Polarity, sorts: Sequence[str], fn) -> SortedRelation:
    sorts = tuple(sorts)
    return SortedRelation(sorts, {k: fn(*k) for k in input_space(P, sorts[1:])})


def flip(sort: str) -> str:
    return Y_SORT if sort == X_SORT else X_SORT


def galois_dual(P: Polarity, R: SortedRelation) -> SortedRelation:
    """R′ with R′v⃗ = (Rv⃗)′: same inputs, output sort flipped."""
    out_sort = R.sorts[0]
    sections = {k: P.polar(out_sort, R.out(*k)) for k in input_space(P, R.sorts[1:])}
    return SortedRelation((flip(out_sort),) + R.sorts[1:], sections)


def permute(P: Polarity, R: SortedRelation, order: Sequence[int]) -> SortedRelation:
    """New relation whose position i holds old position ``order[i]``."""
    order = tuple(order)
    if sorted(order) != list(range(R.arity)):
        raise ValueError("not a permutation of argument positions")
    sorts = tuple(R.sorts[i] for i in order)
    return relation_from_tuples(P, sorts, (tuple(t[i] for i in order) for t in R.tuples()))


def section(P: Polarity, R: SortedRelation, pattern: Sequence[int | None]) -> int:
    """The section at the single ``None`` position of a full (w, v⃗) pattern."""
    pattern = tuple(pattern)
    if len(pattern) != R.arity or pattern.count(None) != 1:
        raise ValueError("pattern must have the relation's arity and exactly one hole")
    k = pattern.index(None)
    if k == 0:
        return R.out(*pattern[1:])
    w = pattern[0]
    out = 0
    for v in range(P.size(R.sorts[k])):
        inputs = pattern[1:k] + (v,) + pattern[k + 1:]
        if R.holds(w, *inputs):
            out |= 1 << v
    return out


def check_sections_galois(P: Polarity, R: SortedRelation, positions: Iterable[int] | None = None,
                          name: str = "sections_galois") -> Check:
    """Every section at the given positions is a Galois set of its sort."""
    positions = tuple(range(R.arity)) if positions is None else tuple(positions)
    count = 0
    for k in positions:
        others = [i for i in range(R.arity) if i != k]
        for fixed in product(*(range(P.size(R.sorts[i])) for i in others)):
            pattern: list[int | None] = [None] * R.arity
            for i, v in zip(others, fixed):
                pattern[i] = v
            count += 1
            sec = section(P, R, pattern)
            if not P.is_galois(R.sorts[k], sec):
                return Check(name, False, (k, *pattern), count)
    return Check(name, True, None, count)


def polarity_facts(P: Polarity) -> Report:
    """The basic polarity facts, each checked over every point and Galois set."""
    r = Report("polarity facts")
    nx, ny = P.nx, P.ny

    def gal_increasing():
        for x, y in P.pairs():
            for z in members(P.up_x[x]):
                for v in members(P.up_y[y]):
                    if not P.gal(z, v):
                        return (x, y, z, v)
        return None

    w = gal_increasing()
    r.add(Check("gal_increasing", w is None, w, len(P.pairs())))

    def gamma_facts():
        for side in (X_SORT, Y_SORT):
            for u in range(P.size(side)):
                g = P.gamma(side, u)
                single = P.close(side, 1 << u)
                if P.polar(side, g) != P.polar(side, 1 << u) or g != single:
                    return (side, u)
        return None

    w = gamma_facts()
    r.add(Check("gamma_double_polar", w is None, w, nx + ny))

    fams = {X_SORT: enumerate_stable(P, X_SORT), Y_SORT: enumerate_stable(P, Y_SORT)}
    w3 = w4 = w5 = w6 = None
    n3 = n6 = 0
    for side, fam in fams.items():
        up = P.up(side)
        other_size = P.size(flip(side))
        for G in fam:
            for u in members(G):
                n3 += 1
                if w3 is None and not subset(up[u], G):
                    w3 = (side, G, u)
            union = 0
            for u in members(G):
                union |= up[u]
            if w4 is None and union != G:
                w4 = (side, G)
            joined = P.close(side, union)
            met = P.full(side)
            for v in range(other_size):
                if subset(G, P.polar(flip(side), 1 << v)):
                    met &= P.polar(flip(side), 1 << v)
            if w5 is None and not (joined == G == met):
                w5 = (side, G)
            for W in range(1 << P.size(side)) if P.size(side) <= 6 else ():
                n6 += 1
                if w6 is None and subset(P.close(side, W), G) != subset(W, G):
                    w6 = (side, G, W)
    r.add(Check("galois_sets_increasing", w3 is None, w3, n3))
    r.add(Check("union_of_gammas", w4 is None, w4, len(fams[X_SORT]) + len(fams[Y_SORT])))
    r.add(Check("join_and_meet_density", w5 is None, w5, len(fams[X_SORT]) + len(fams[Y_SORT])))
    r.add(Check("closure_below_galois", w6 is None, w6, n6))

    def connection():
        if nx > 6 or ny > 6:
            return None, 0
        n = 0
        for U in range(1 << nx):
            Up = P.polar_right(U)
            for V in range(1 << ny):
                n += 1
                if subset(V, Up) != subset(U, P.polar_left(V)):
                    return (U, V), n
        return None, n

    w, n = connection()
    r.add(Check("galois_connection", w is None, w, n))
    return r
