"""Seeded generators for lattices, implication tables, polarities and frames."""

from __future__ import annotations

import random
from itertools import product

from .frame import ImplicativeFrame
from .lattice import FiniteLattice, NotALattice, check_implicative, order_from_pairs, validate_lattice
from .polarity import Polarity
from .representation import canonical_frame


def random_lattice(rng: random.Random, n: int, density: float = 0.35) -> FiniteLattice:
    """A bounded lattice on ``n`` elements, 0 the bottom and n-1 the top.

    Orders are drawn as random DAGs over a fixed topological order and
    rejected until they form a lattice."""
    if n < 1:
        raise ValueError("need at least one element")
    while True:
        pairs = [(0, a) for a in range(n)] + [(a, n - 1) for a in range(n)]
        pairs += [(a, b) for a in range(1, n - 1) for b in range(a + 1, n - 1) if rng.random() < density]
        try:
            return validate_lattice(order_from_pairs(n, pairs))
        except NotALattice:
            continue


def random_arrow(rng: random.Random, L: FiniteLattice, max_nodes: int = 20000):
    """A random table satisfying the implicative axioms, found by backtracking
    over cells in row-major order with shuffled candidate values.

    The crisp table (top on the order, bottom elsewhere) always qualifies, so
    the search is bounded and falls back to it."""
    n, E = L.n, L.elems
    m, j, le, top = L.meet, L.join, L.leq, L.top
    cells = list(product(E, E))
    ar: list[list[int | None]] = [[None] * n for _ in E]
    nodes = 0

    # each constraint reads cell0 == meet(cell1, cell2); index them by cell
    watch: dict[tuple[int, int], list] = {cell: [] for cell in cells}
    for a, b, c in product(E, E, E):
        for con in (((j[a][b], c), (a, c), (b, c)), ((a, m[b][c]), (a, b), (a, c))):
            for cell in set(con):
                watch[cell].append(con)

    def consistent(cell) -> bool:
        for (p0, q0), (p1, q1), (p2, q2) in watch[cell]:
            x, y, z = ar[p0][q0], ar[p1][q1], ar[p2][q2]
            if x is not None and y is not None and z is not None and x != m[y][z]:
                return False
        return True

    def fill(k: int) -> bool:
        nonlocal nodes
        if k == len(cells):
            return True
        a, b = cells[k]
        if le[a][b]:
            options = [top]
        else:
            options = [v for v in E if v != top]
            rng.shuffle(options)
        for v in options:
            nodes += 1
            if nodes > max_nodes:
                return False
            ar[a][b] = v
            if consistent((a, b)) and fill(k + 1):
                return True
        ar[a][b] = None
        return False

    if fill(0):
        table = [list(row) for row in ar]
    else:
        table = [[top if le[a][b] else L.bot for b in E] for a in E]
    out = L.with_arrow(table)
    assert check_implicative(out).ok
    return out


def random_implicative_lattice(rng: random.Random, max_n: int = 7) -> FiniteLattice:
    return random_arrow(rng, random_lattice(rng, rng.randint(2, max_n)))


def relabel(rng: random.Random, F: ImplicativeFrame) -> ImplicativeFrame:
    """The same frame with both sorts shuffled."""
    P = F.P
    px = list(range(P.nx))
    py = list(range(P.ny))
    rng.shuffle(px)
    rng.shuffle(py)
    Q = Polarity(P.nx, P.ny, [(px[x], py[y]) for x, y in P.pairs()],
                 [P.xnames[px.index(i)] for i in range(P.nx)],
                 [P.ynames[py.index(i)] for i in range(P.ny)])
    return ImplicativeFrame.from_triples(Q, [(py[y], px[x], py[v]) for y, x, v in F.triples()])


def random_frame(rng: random.Random, max_points: int = 6) -> ImplicativeFrame:
    """A relabelled canonical frame of a random implicative lattice, with at
    most ``max_points`` points per sort."""
    CF = canonical_frame(random_implicative_lattice(rng, max_points + 1), proper_only=True)
    return relabel(rng, CF.frame)


def random_polarity(rng: random.Random, max_x: int = 6, max_y: int = 6) -> Polarity:
    nx, ny = rng.randint(1, max_x), rng.randint(1, max_y)
    p = rng.random()
    return Polarity(nx, ny, [(x, y) for x in range(nx) for y in range(ny) if rng.random() < p])
