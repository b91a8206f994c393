"""Built-in lattices: chains, Boolean algebras, M3, N5 and the
three-element Lukasiewicz chain."""

from __future__ import annotations

from itertools import product

from .lattice import FiniteLattice, compute_residual_arrow, order_from_pairs, validate_lattice

CORPUS_NAMES = ("C2", "C3", "C4", "B4", "B8", "M3", "N5", "L3")
HEYTING_NAMES = ("C2", "C3", "C4", "B4", "B8")
DISTRIBUTIVE_NAMES = ("C2", "C3", "C4", "B4", "B8", "L3")


def _from_covers(names, covers) -> FiniteLattice:
    idx = {nm: i for i, nm in enumerate(names)}
    pairs = [(idx[a], idx[b]) for a, b in covers]
    return validate_lattice(order_from_pairs(len(names), pairs), names)


def heyting(L: FiniteLattice) -> FiniteLattice:
    return L.with_arrow(compute_residual_arrow(L))


def crisp(L: FiniteLattice) -> FiniteLattice:
    """a -> b is top when a <= b and bottom otherwise; implicative on any lattice."""
    return L.with_arrow([[L.top if L.leq[a][b] else L.bot for b in L.elems] for a in L.elems])


def chain(n: int, names=None) -> FiniteLattice:
    names = names or [str(i) for i in range(n)]
    return _from_covers(names, [(names[i], names[i + 1]) for i in range(n - 1)])


def boolean(k: int) -> FiniteLattice:
    """Subsets of a k-element set, named by their members ("0" for the empty set)."""
    masks = list(range(1 << k))
    names = ["".join("abc"[i] for i in range(k) if m >> i & 1) or "0" for m in masks]
    if k:
        names[-1] = "1"
    pairs = [(a, b) for a, b in product(masks, masks) if a & b == a]
    return validate_lattice(order_from_pairs(len(masks), pairs), names)


def lukasiewicz3() -> FiniteLattice:
    L = chain(3, ["0", "half", "1"])
    # in half-units: a -> b = min(1, 1 - a + b)
    return L.with_arrow([[min(2, 2 - a + b) for b in range(3)] for a in range(3)])


def m3() -> FiniteLattice:
    return _from_covers(["0", "a", "b", "c", "1"],
                        [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")])


def n5() -> FiniteLattice:
    return _from_covers(["0", "a", "c", "b", "1"],
                        [("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")])


def get(name: str) -> FiniteLattice:
    """Look up a corpus lattice (with its arrow) by name."""
    builders = {
        "C2": lambda: heyting(chain(2)),
        "C3": lambda: heyting(chain(3, ["0", "m", "1"])),
        "C4": lambda: heyting(chain(4, ["0", "a", "b", "1"])),
        "B4": lambda: heyting(boolean(2)),
        "B8": lambda: heyting(boolean(3)),
        "M3": lambda: crisp(m3()),
        "N5": lambda: crisp(n5()),
        "L3": lukasiewicz3,
    }
    try:
        return builders[name]()
    except KeyError:
        raise KeyError(f"unknown corpus lattice {name!r}; choose from {', '.join(CORPUS_NAMES)}") from None


def all_lattices() -> dict[str, FiniteLattice]:
    return {name: get(name) for name in CORPUS_NAMES}
