"""Canonical filter–ideal frames of finite implicative lattices and the
checks that the lattice embeds into the complex algebra of its frame.

Points are indexed by filter (ideal) carriers, never by lattice elements;
principality of finite filters is something the tests check, not an
assumption of the construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

import networkx as nx

from .frame import (ComplexAlgebra, ImplicativeFrame, check_frame_axioms, check_heyting_frame,
                    full_complex_algebra)
from .lattice import (FiniteLattice, Filter, check_distributive, check_heyting, check_implicative,
                      enumerate_filters, enumerate_ideals)
from .polarity import (DEFAULT_MAX_FAMILY, X_SORT, Y_SORT, Polarity, StableFamily, check_sections_galois,
                       enumerate_stable, galois_dual, members, relation_from_sections, subset, to_mask)
from .report import Check, Report, VerificationFailure, scan


class RequiresImproper(ValueError):
    pass


class PreconditionError(ValueError):
    pass


def _mask(carrier) -> int:
    return to_mask(carrier)


@dataclass
class CanonicalFrame:
    source: FiniteLattice
    frame: ImplicativeFrame
    filters: list[Filter]
    ideals: list[Filter]
    proper_only: bool
    filt_index: dict[int, int | None]
    idl_index: dict[int, int | None]

    @property
    def P(self) -> Polarity:
        return self.frame.P

    @cached_property
    def filter_masks(self) -> list[int]:
        return [_mask(f.carrier) for f in self.filters]

    @cached_property
    def ideal_masks(self) -> list[int]:
        return [_mask(i.carrier) for i in self.ideals]

    def x(self, a: int) -> int | None:
        """Index of the principal filter of ``a`` (None if excluded)."""
        return self.filt_index[a]

    def y(self, a: int) -> int | None:
        return self.idl_index[a]


def _point_names(L: FiniteLattice, items: list[Filter], prefix: str, generator) -> list[str]:
    return [f"{prefix}_{L.name(generator(f.carrier))}" for f in items]


def canonical_frame(L: FiniteLattice, proper_only: bool = True, verify: bool = True) -> CanonicalFrame:
    """Filter–ideal frame with x ⊥ y iff x ∩ y ≠ ∅ and
    yTxv iff (a → b) ∈ y for all a ∈ x, b ∈ v."""
    imp = check_implicative(L)
    if not imp.ok:
        bad = imp.failures()[0]
        raise PreconditionError(f"not an implicative lattice: {bad.name} fails at {bad.witness}")
    filters = enumerate_filters(L, proper_only)
    ideals = enumerate_ideals(L, proper_only)
    fm = [_mask(f.carrier) for f in filters]
    im = [_mask(i.carrier) for i in ideals]
    gal = [(x, y) for x in range(len(fm)) for y in range(len(im)) if fm[x] & im[y]]
    P = Polarity(len(fm), len(im), gal,
                 _point_names(L, filters, "x", L.meet_all),
                 _point_names(L, ideals, "y", L.join_all))
    ar = L.arrow
    # imp_set[x][v]: every a -> b with a in x, b in v
    imp_set = [[to_mask(ar[a][b] for a in f.carrier for b in i.carrier) for i in ideals] for f in filters]

    def section(x, v):
        need = imp_set[x][v]
        return to_mask(y for y in range(len(im)) if subset(need, im[y]))

    T = relation_from_sections(P, (Y_SORT, X_SORT, Y_SORT), section)
    F = ImplicativeFrame(P, T)

    filt_index: dict[int, int | None] = {}
    idl_index: dict[int, int | None] = {}
    by_carrier_f = {f.carrier: k for k, f in enumerate(filters)}
    by_carrier_i = {i.carrier: k for k, i in enumerate(ideals)}
    for a in L.elems:
        filt_index[a] = by_carrier_f.get(L.upset(a))
        idl_index[a] = by_carrier_i.get(L.downset(a))
    CF = CanonicalFrame(L, F, filters, ideals, proper_only, filt_index, idl_index)
    if verify:
        rep = check_frame_axioms(F)
        if not rep.ok:
            bad = rep.failures()[0]
            raise VerificationFailure(f"canonical frame fails {bad.name}", rep, bad.witness)
    return CF


def leadsto(CF: CanonicalFrame, x: int, v: int) -> int:
    """x ⇝ v: index of the ideal generated by {a → b : a ∈ x, b ∈ v}."""
    if CF.proper_only:
        raise RequiresImproper("x ⇝ v may be the improper ideal; build with proper_only=False")
    L = CF.source
    gens = {L.arrow[a][b] for a in CF.filters[x].carrier for b in CF.ideals[v].carrier}
    top = L.join_all(gens)
    target = L.downset(top)
    for k, i in enumerate(CF.ideals):
        if i.carrier == target:
            return k
    raise VerificationFailure("generated ideal missing from the frame", witness=(x, v))


def rep_X(CF: CanonicalFrame, a: int) -> int:
    """X_a = {x : a ∈ x}, checked against Γx_a and ′{y_a} where those points exist."""
    P = CF.P
    Xa = to_mask(k for k, f in enumerate(CF.filters) if a in f.carrier)
    xa, ya = CF.x(a), CF.y(a)
    if xa is not None and P.gamma(X_SORT, xa) != Xa:
        raise VerificationFailure("X_a differs from Γx_a", witness=(a,))
    if ya is not None and P.polar_left(1 << ya) != Xa:
        raise VerificationFailure("X_a differs from ′{y_a}", witness=(a,))
    return Xa


def rep_Y(CF: CanonicalFrame, a: int) -> int:
    """Y^a = {y : a ∈ y}, checked against Γy_a and {x_a}′."""
    P = CF.P
    Ya = to_mask(k for k, i in enumerate(CF.ideals) if a in i.carrier)
    xa, ya = CF.x(a), CF.y(a)
    if ya is not None and P.gamma(Y_SORT, ya) != Ya:
        raise VerificationFailure("Y^a differs from Γy_a", witness=(a,))
    if xa is not None and P.polar_right(1 << xa) != Ya:
        raise VerificationFailure("Y^a differs from {x_a}′", witness=(a,))
    return Ya


def verify_lattice_rep(CF: CanonicalFrame, max_family: int = DEFAULT_MAX_FAMILY) -> Report:
    L = CF.source
    P = CF.P
    E = L.elems
    fam = enumerate_stable(P, X_SORT, max_family)
    cofam = enumerate_stable(P, Y_SORT, max_family)
    Xs = [rep_X(CF, a) for a in E]
    Ys = [rep_Y(CF, a) for a in E]
    r = Report("lattice representation")
    r.add(scan("stable", ((a,) for a in E), lambda a: Xs[a] in fam))
    r.add(scan("injective", product(E, E), lambda a, b: a == b or Xs[a] != Xs[b]))
    r.add(Check("surjective", set(Xs) == set(fam.sets), None, len(fam),
                detail=f"|G(X)|={len(fam)} |L|={L.n}"))
    r.add(scan("order", product(E, E), lambda a, b: L.leq[a][b] == subset(Xs[a], Xs[b])))
    r.add(scan("meet", product(E, E), lambda a, b: Xs[L.meet[a][b]] == Xs[a] & Xs[b]))
    r.add(scan("join", product(E, E), lambda a, b: Xs[L.join[a][b]] == fam.join(Xs[a], Xs[b])))
    r.add(Check("bottom", Xs[L.bot] == fam.bottom, None, 1))
    r.add(Check("top", Xs[L.top] == P.full_x, None, 1))
    r.add(scan("dual_costable", ((a,) for a in E), lambda a: Ys[a] in cofam))
    r.add(Check("dual_bijective", set(Ys) == set(cofam.sets) and len(set(Ys)) == L.n, None, len(cofam)))
    r.add(scan("dual_order", product(E, E), lambda a, b: L.leq[a][b] == subset(Ys[b], Ys[a])))
    r.add(scan("dual_meet", product(E, E), lambda a, b: Ys[L.join[a][b]] == Ys[a] & Ys[b]))
    r.add(scan("dual_join", product(E, E), lambda a, b: Ys[L.meet[a][b]] == cofam.join(Ys[a], Ys[b])))
    return r


def verify_implicative_rep(CF: CanonicalFrame) -> Report:
    L = CF.source
    F = CF.frame
    E = L.elems
    Xs = [rep_X(CF, a) for a in E]
    ar = L.arrow
    r = Report("implicative representation")
    r.add(scan("implication", product(E, E), lambda a, b: F.implies(Xs[a], Xs[b]) == Xs[ar[a][b]]))

    def tdual_char(u, a, b):
        xa, yb = CF.x(a), CF.y(b)
        if xa is None or yb is None:
            return True
        return bool(F.tdual[xa][yb] >> u & 1) == (ar[a][b] in CF.filters[u].carrier)

    r.add(scan("tdual_principal", product(range(F.nx), E, E), tdual_char))
    return r


def canonical_R_meet(CF: CanonicalFrame):
    """xR∧uz iff a ∧ b ∈ x for all a ∈ u, b ∈ z."""
    L = CF.source
    fs = CF.filters
    n = len(fs)

    def section(u, z):
        meets = {L.meet[a][b] for a in fs[u].carrier for b in fs[z].carrier}
        return to_mask(x for x in range(n) if meets <= fs[x].carrier)

    return relation_from_sections(CF.P, (X_SORT, X_SORT, X_SORT), section)


def verify_upper_bound(CF: CanonicalFrame) -> Report:
    P = CF.P
    Rm = canonical_R_meet(CF)
    up = P.up_x
    X = range(P.nx)
    r = Report("upper bound relation")
    r.add(scan("R_meet_is_R_leq", product(X, X), lambda u, z: Rm.out(u, z) == up[u] & up[z]))
    r.add(scan("R_meet_reflexive", ((x,) for x in X), lambda x: Rm.holds(x, x, x)))
    sec = check_sections_galois(P, galois_dual(P, Rm), name="dual_sections_galois")
    if check_distributive(CF.source).passed:
        r.add(sec)
    else:
        r.add(Check(sec.name, sec.passed, sec.witness, sec.count, skipped=True,
                    detail="informational: lattice not distributive"))
    return r


def filter_join(L: FiniteLattice, x: frozenset, u: frozenset) -> frozenset:
    """Smallest filter containing both carriers (possibly the whole lattice)."""
    return L.upset(L.meet_all(x | u))


def verify_heyting_canonical(CF: CanonicalFrame) -> Report:
    L = CF.source
    if not check_heyting(L).ok:
        raise PreconditionError("source lattice is not a Heyting algebra")
    F = CF.frame
    P = CF.P
    fs, ids = CF.filters, CF.ideals
    r = Report("Heyting canonical frame")
    r.extend(check_heyting_frame(F))

    def kernel(x, u, y):
        j = filter_join(L, fs[x].carrier, fs[u].carrier)
        return bool(F.tdual[x][y] >> u & 1) == bool(j & ids[y].carrier)

    r.add(scan("kernel", product(range(P.nx), range(P.nx), range(P.ny)), kernel))

    def gamma_join(x, u):
        j = filter_join(L, fs[x].carrier, fs[u].carrier)
        above = to_mask(w for w, f in enumerate(fs) if j <= f.carrier)
        return P.up_x[x] & P.up_x[u] == above

    r.add(scan("gamma_of_filter_join", product(range(P.nx), range(P.nx)), gamma_join))
    return r


def verify_basis(CF: CanonicalFrame, max_family: int = DEFAULT_MAX_FAMILY) -> Report:
    L = CF.source
    P = CF.P
    E = L.elems
    Xs = [rep_X(CF, a) for a in E]
    Ys = [rep_Y(CF, a) for a in E]
    fam = enumerate_stable(P, X_SORT, max_family)
    r = Report("basis")
    r.add(scan("B_meet_closed", product(E, E), lambda a, b: Xs[a] & Xs[b] == Xs[L.meet[a][b]]))
    r.add(scan("C_meet_closed", product(E, E), lambda a, b: Ys[a] & Ys[b] == Ys[L.join[a][b]]))
    r.add(scan("polar_maps_dual_iso", ((a,) for a in E),
                 lambda a: P.polar_right(Xs[a]) == Ys[a] and P.polar_left(Ys[a]) == Xs[a]))
    r.add(scan("polar_antitone", product(E, E),
                 lambda a, b: subset(Xs[a], Xs[b]) == subset(Ys[b], Ys[a])))

    def dense(G):
        closed = P.stabilize(_or(P.up_x[x] for x in members(G)))
        opens = P.full_x
        for o in P.open_elements(X_SORT):
            if subset(G, o):
                opens &= o
        basis = fam.join_all(Xa for Xa in Xs if subset(Xa, G))
        return closed == G == opens == basis

    r.add(scan("density", ((G,) for G in fam), dense))
    return r


def _or(masks) -> int:
    out = 0
    for m in masks:
        out |= m
    return out


def reduct_report(CF: CanonicalFrame, max_family: int = DEFAULT_MAX_FAMILY) -> Report:
    """The lattice sits inside the complex algebra of its canonical frame."""
    L = CF.source
    E = L.elems
    A = full_complex_algebra(CF.frame, max_family)
    idx = A.family.index
    Xs = [rep_X(CF, a) for a in E]
    pos = [idx[W] for W in Xs]
    M = A.lattice
    r = Report("reduct")
    r.add(scan("embedding", product(E, E), lambda a, b: (
        pos[L.meet[a][b]] == M.meet[pos[a]][pos[b]]
        and pos[L.join[a][b]] == M.join[pos[a]][pos[b]]
        and (a == b or pos[a] != pos[b]))))
    r.add(scan("arrow_restricts", product(E, E), lambda a, b: A.imp[pos[a]][pos[b]] == pos[L.arrow[a][b]]))
    cert = A.certify()
    r.extend(cert, prefix="algebra.")
    distributive = check_distributive(L).passed
    if not distributive and "algebra.residuated_heyting" not in r:
        r.skip("algebra.residuated_heyting", "lattice not distributive")
    if check_heyting(L).ok:
        F = CF.frame
        r.add(scan("imp_is_meet_residual", product(A.family.sets, A.family.sets),
                     lambda P_, C: F.implies(P_, C) == F.kripke_implies(P_, C)))
    else:
        r.skip("imp_is_meet_residual", "lattice not Heyting")
    r.title = f"reduct (complex algebra of size {len(A.family)})"
    return r


# -- isomorphism of stable-set lattices -----------------------------------------

def stable_lattices_isomorphic(F1: ImplicativeFrame, F2: ImplicativeFrame) -> bool:
    """Order isomorphism of the two stable families, by graph isomorphism
    of their strict inclusion relations."""
    def graph(fam: StableFamily):
        g = nx.DiGraph()
        g.add_nodes_from(range(len(fam)))
        S = fam.sets
        g.add_edges_from((i, j) for i in range(len(S)) for j in range(len(S)) if i != j and subset(S[i], S[j]))
        return g

    return nx.is_isomorphic(graph(F1.family), graph(F2.family))


def complex_algebra(CF: CanonicalFrame, max_family: int = DEFAULT_MAX_FAMILY) -> ComplexAlgebra:
    return full_complex_algebra(CF.frame, max_family)
