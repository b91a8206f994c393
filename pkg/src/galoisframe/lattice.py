"""Finite bounded lattices with an implication table.

Elements are the integers ``0..n-1``; order, meet, join and the optional
arrow are total tables (tuples of tuples).  Every axiom checker scans
tuples in lexicographic order and reports the first counterexample.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import product
from typing import Sequence

from .report import Check, Report, scan


class LatticeError(ValueError):
    pass


class NotAPoset(LatticeError):
    pass


class NotALattice(LatticeError):
    pass


class Unbounded(LatticeError):
    pass


class MissingArrow(LatticeError):
    pass


class NotResiduated(LatticeError):
    pass


Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class FiniteLattice:
    leq: tuple[tuple[bool, ...], ...]
    meet: Table
    join: Table
    bot: int
    top: int
    arrow: Table | None = None
    names: tuple[str, ...] = ()

    @property
    def n(self) -> int:
        return len(self.leq)

    @property
    def elems(self) -> range:
        return range(self.n)

    def name(self, a: int) -> str:
        return self.names[a] if self.names else str(a)

    def index(self, name: str) -> int:
        if self.names and name in self.names:
            return self.names.index(name)
        try:
            a = int(name)
        except ValueError:
            raise KeyError(f"unknown element {name!r}") from None
        if not 0 <= a < self.n:
            raise KeyError(f"unknown element {name!r}")
        return a

    def le(self, a: int, b: int) -> bool:
        return self.leq[a][b]

    def imp(self, a: int, b: int) -> int:
        if self.arrow is None:
            raise MissingArrow("lattice has no arrow table")
        return self.arrow[a][b]

    def with_arrow(self, arrow: Sequence[Sequence[int]] | None) -> "FiniteLattice":
        if arrow is None:
            return replace(self, arrow=None)
        table = tuple(tuple(int(v) for v in row) for row in arrow)
        if len(table) != self.n or any(len(row) != self.n for row in table):
            raise LatticeError("arrow table has wrong shape")
        if any(not 0 <= v < self.n for row in table for v in row):
            raise LatticeError("arrow table value out of range")
        return replace(self, arrow=table)

    def upset(self, a: int) -> frozenset[int]:
        return frozenset(b for b in self.elems if self.leq[a][b])

    def downset(self, a: int) -> frozenset[int]:
        return frozenset(b for b in self.elems if self.leq[b][a])

    def meet_all(self, elems) -> int:
        out = self.top
        for a in elems:
            out = self.meet[out][a]
        return out

    def join_all(self, elems) -> int:
        out = self.bot
        for a in elems:
            out = self.join[out][a]
        return out

    def is_chain(self) -> bool:
        return all(self.leq[a][b] or self.leq[b][a] for a in self.elems for b in self.elems)


def _require_arrow(L: FiniteLattice) -> Table:
    if L.arrow is None:
        raise MissingArrow("lattice has no arrow table")
    return L.arrow


def validate_lattice(order, names: Sequence[str] | None = None, arrow=None) -> FiniteLattice:
    """Build a :class:`FiniteLattice` from a boolean order table.

    Raises NotAPoset, NotALattice or Unbounded.
    """
    leq = tuple(tuple(bool(v) for v in row) for row in order)
    n = len(leq)
    if any(len(row) != n for row in leq):
        raise LatticeError("order table is not square")
    if n == 0:
        raise Unbounded("empty universe has no bounds")
    for a in range(n):
        if not leq[a][a]:
            raise NotAPoset(f"not reflexive at {a}")
    for a, b in product(range(n), repeat=2):
        if a != b and leq[a][b] and leq[b][a]:
            raise NotAPoset(f"not antisymmetric at ({a}, {b})")
    for a, b, c in product(range(n), repeat=3):
        if leq[a][b] and leq[b][c] and not leq[a][c]:
            raise NotAPoset(f"not transitive at ({a}, {b}, {c})")

    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for a, b in product(range(n), repeat=2):
        lower = [c for c in range(n) if leq[c][a] and leq[c][b]]
        glb = [c for c in lower if all(leq[d][c] for d in lower)]
        if not glb:
            raise NotALattice(f"no greatest lower bound for ({a}, {b})")
        upper = [c for c in range(n) if leq[a][c] and leq[b][c]]
        lub = [c for c in upper if all(leq[c][d] for d in upper)]
        if not lub:
            raise NotALattice(f"no least upper bound for ({a}, {b})")
        meet[a][b] = glb[0]
        join[a][b] = lub[0]

    bots = [a for a in range(n) if all(leq[a][b] for b in range(n))]
    tops = [a for a in range(n) if all(leq[b][a] for b in range(n))]
    if not bots or not tops:
        raise Unbounded("no global bottom or top")
    L = FiniteLattice(
        leq=leq,
        meet=tuple(map(tuple, meet)),
        join=tuple(map(tuple, join)),
        bot=bots[0],
        top=tops[0],
        names=tuple(names) if names else (),
    )
    if names and len(names) != n:
        raise LatticeError("names list has wrong length")
    return L.with_arrow(arrow) if arrow is not None else L


def order_from_pairs(n: int, pairs) -> list[list[bool]]:
    """Reflexive-transitive closure of ``pairs`` as a boolean table."""
    leq = [[a == b for b in range(n)] for a in range(n)]
    for a, b in pairs:
        leq[a][b] = True
    for k in range(n):
        for i in range(n):
            if leq[i][k]:
                row_k = leq[k]
                row_i = leq[i]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    return leq


def check_lattice_laws(L: FiniteLattice) -> Report:
    """Commutativity, associativity, idempotence and absorption of the tables."""
    E = L.elems
    m, j = L.meet, L.join
    r = Report("lattice laws")
    r.add(scan("commutative", product(E, E), lambda a, b: m[a][b] == m[b][a] and j[a][b] == j[b][a]))
    r.add(scan("associative", product(E, E, E),
               lambda a, b, c: m[m[a][b]][c] == m[a][m[b][c]] and j[j[a][b]][c] == j[a][j[b][c]]))
    r.add(scan("idempotent", ((a,) for a in E), lambda a: m[a][a] == a and j[a][a] == a))
    r.add(scan("absorption", product(E, E), lambda a, b: m[a][j[a][b]] == a and j[a][m[a][b]] == a))
    return r


def check_implicative(L: FiniteLattice) -> Report:
    ar = _require_arrow(L)
    E = L.elems
    m, j, le, top = L.meet, L.join, L.leq, L.top
    r = Report("implicative lattice")
    r.add(scan("A1", product(E, E, E), lambda a, b, c: ar[j[a][b]][c] == m[ar[a][c]][ar[b][c]]))
    r.add(scan("A2", product(E, E, E), lambda a, b, c: ar[a][m[b][c]] == m[ar[a][b]][ar[a][c]]))
    r.add(scan("A3", product(E, E), lambda a, b: le[a][b] == le[top][ar[a][b]]))
    return r


def check_distributive(L: FiniteLattice) -> Check:
    E = L.elems
    m, j = L.meet, L.join
    return scan("A4", product(E, E, E), lambda a, b, c: m[a][j[b][c]] == j[m[a][b]][m[a][c]])


def check_heyting(L: FiniteLattice) -> Report:
    ar = _require_arrow(L)
    E = L.elems
    m, le = L.meet, L.leq
    r = Report("Heyting")
    r.add(scan("H1", product(E, E), lambda a, b: le[m[a][ar[a][b]]][b]))
    r.add(scan("H2", product(E, E), lambda a, b: le[b][ar[a][m[a][b]]]))
    return r


def compute_residual_arrow(L: FiniteLattice) -> Table:
    """Relative pseudo-complement: a->b is the largest c with a & c <= b."""
    E = L.elems
    m, le = L.meet, L.leq
    arrow = []
    for a in E:
        row = []
        for b in E:
            row.append(L.join_all(c for c in E if le[m[a][c]][b]))
        arrow.append(tuple(row))
    for a, b, c in product(E, E, E):
        if le[m[a][c]][b] != le[c][arrow[a][b]]:
            raise NotResiduated(f"meet is not residuated at ({a}, {b}, {c})")
    return tuple(arrow)


def iter_arrow(L: FiniteLattice, a: int, b: int, n: int) -> int:
    """a^n -> b, i.e. a -> (a -> ... (a -> b))."""
    ar = _require_arrow(L)
    if n < 0:
        raise ValueError("n must be non-negative")
    out = b
    for _ in range(n):
        out = ar[a][out]
    return out


def check_An(L: FiniteLattice, n: int) -> Check:
    """a^{n+1} -> b <= a^n -> b for all pairs; the check is named A_n."""
    _require_arrow(L)
    if n < 1:
        raise ValueError("n must be at least 1")
    le = L.leq
    return scan(f"A_{n}", product(L.elems, L.elems),
                lambda a, b: le[iter_arrow(L, a, b, n + 1)][iter_arrow(L, a, b, n)])


@dataclass(frozen=True)
class ResiduatedTriple:
    base: FiniteLattice
    circ: Table
    under: Table
    over: Table


def check_residuated_triple(R: ResiduatedTriple) -> Report:
    """Residuation, unit laws with the top as unit and, when the base carries
    an arrow, certification as a residuated Heyting algebra."""
    L = R.base
    E = L.elems
    le, top = L.leq, L.top
    circ, under, over = R.circ, R.under, R.over
    r = Report("residuated lattice")
    r.add(scan("residuation", product(E, E, E),
               lambda a, b, c: le[circ[a][b]][c] == le[b][under[a][c]] == le[a][over[c][b]]))
    r.add(scan("right_unit", ((a,) for a in E), lambda a: circ[a][top] == a))
    r.add(scan("left_unit", ((a,) for a in E), lambda a: circ[top][a] == a))
    if L.arrow is not None:
        sub = Report()
        sub.add(check_distributive(L))
        sub.extend(check_heyting(L))
        sub.extend(check_implicative(L.with_arrow(under)), prefix="under.")
        ok = r.ok and sub.ok
        first = next(iter(sub.failures()), None)
        r.add(Check("residuated_heyting", ok, first.witness if first else None,
                    sum(c.count for c in sub), detail=first.name if first else ""))
    return r


@dataclass(frozen=True)
class Filter:
    """A filter or ideal of a finite lattice, held by its carrier."""

    carrier: frozenset[int]
    kind: str = "filter"
    proper: bool = True

    def __contains__(self, a: int) -> bool:
        return a in self.carrier


def _enumerate(L: FiniteLattice, kind: str, proper_only: bool) -> list[Filter]:
    E = L.elems
    n = L.n
    if kind == "filter":
        close, op = L.leq, L.meet
    else:
        close = tuple(tuple(L.leq[b][a] for b in E) for a in E)
        op = L.join
    found = []
    for mask in range(1, 1 << n):
        members = [a for a in E if mask >> a & 1]
        # up-closure (down-closure for ideals) first: cheap rejection
        if any(close[a][b] and not mask >> b & 1 for a in members for b in E):
            continue
        if any(not mask >> op[a][b] & 1 for a in members for b in members):
            continue
        proper = mask != (1 << n) - 1
        if proper_only and not proper:
            continue
        found.append((mask, Filter(frozenset(members), kind, proper)))
    found.sort(key=lambda t: t[0])
    return [f for _, f in found]


def enumerate_filters(L: FiniteLattice, proper_only: bool = False) -> list[Filter]:
    return _enumerate(L, "filter", proper_only)


def enumerate_ideals(L: FiniteLattice, proper_only: bool = False) -> list[Filter]:
    return _enumerate(L, "ideal", proper_only)


def is_principal(L: FiniteLattice, f: Filter) -> bool:
    if f.kind == "filter":
        return f.carrier == L.upset(L.meet_all(f.carrier))
    return f.carrier == L.downset(L.join_all(f.carrier))
