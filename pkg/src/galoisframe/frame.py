"""Implicative frames (X, ⊥, Y, T) with T ⊆ Y × (X × Y).

The frame relation induces three operations on stable sets: implication
``implies`` (⇒), fusion ``overt`` (⦿) and the left residual ``la`` (⇐).
Stable sets are bitmasks over X, co-stable sets bitmasks over Y.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, product

from .lattice import (FiniteLattice, NotResiduated, ResiduatedTriple, check_residuated_triple,
                      compute_residual_arrow)
from .polarity import (DEFAULT_MAX_FAMILY, X_SORT, Y_SORT, Polarity, SortedRelation, StableFamily,
                       check_sections_galois, enumerate_stable, galois_dual, members,
                       relation_from_sections, relation_from_tuples, subset)
from .report import Check, Report, VerificationFailure, scan

T_SORTS = (Y_SORT, X_SORT, Y_SORT)


class ImplicativeFrame:
    """A polarity with a ternary relation ``yTxv``.

    ``tsec[x][v]`` is the Y-section ``Txv``; ``tdual[x][v]`` is the X-section
    ``T′xv = ′(Txv)``.
    """

    def __init__(self, polarity: Polarity, T: SortedRelation):
        if T.sorts != T_SORTS:
            raise ValueError(f"frame relation must have sorts {T_SORTS}, got {T.sorts}")
        self.P = polarity
        self.T = T
        P = polarity
        self.tsec = tuple(tuple(T.out(x, v) for v in range(P.ny)) for x in range(P.nx))
        self.tdual = tuple(tuple(P.polar_left(s) for s in row) for row in self.tsec)

    @classmethod
    def from_triples(cls, polarity: Polarity, triples) -> "ImplicativeFrame":
        """Build from (y, x, v) triples meaning yTxv."""
        return cls(polarity, relation_from_tuples(polarity, T_SORTS, triples))

    @property
    def nx(self) -> int:
        return self.P.nx

    @property
    def ny(self) -> int:
        return self.P.ny

    def triples(self) -> list[tuple[int, int, int]]:
        return self.T.tuples()

    # -- image operator, implication ----------------------------------------

    def alpha_T(self, U: int, V: int) -> int:
        out = 0
        for x in members(U):
            row = self.tsec[x]
            for v in members(V):
                out |= row[v]
        return out

    def mtright(self, A: int, B: int) -> int:
        """A ⊵ B, the co-stabilized image of a stable and a co-stable set."""
        return self.P.costabilize(self.alpha_T(A, B))

    def implies(self, A: int, C: int) -> int:
        """A ⇒ C computed as ′(A ⊵ C′) and checked against the pointwise form
        {u : uT′xy for all x in A and all y with C ⊥ y}."""
        P = self.P
        Cp = P.polar_right(C)
        via_image = P.polar_left(self.mtright(A, Cp))
        pointwise = P.full_x
        for x in members(A):
            row = self.tdual[x]
            for y in members(Cp):
                pointwise &= row[y]
        if via_image != pointwise:
            raise VerificationFailure("the two implication formulas disagree", witness=(A, C))
        return pointwise

    def kripke_implies(self, A: int, C: int) -> int:
        """{x : every z above x that lies in A lies in C}."""
        up = self.P.up_x
        return sum(1 << x for x in range(self.nx) if subset(up[x] & A, C))

    # -- derived relations and the fusion/left residual ----------------------

    @cached_property
    def derived(self) -> "DerivedRelations":
        return derive_relations(self)

    def overt(self, A: int, F: int) -> int:
        """A ⦿ F: stabilized union of R¹¹¹zx over z in A, x in F."""
        r111 = self.derived.r111
        out = 0
        for z in members(A):
            row = r111[z]
            for x in members(F):
                out |= row[x]
        return self.P.stabilize(out)

    def la(self, C: int, F: int) -> int:
        """C ⇐ F = {z : xT′zv for every x in F and every v with C ⊥ v}."""
        P = self.P
        Cp = P.polar_right(C)
        out = 0
        for z in range(self.nx):
            row = self.tdual[z]
            if all(subset(F, row[v]) for v in members(Cp)):
                out |= 1 << z
        return out

    def la_via_image(self, C: int, F: int) -> int:
        """(C′ ◁ F)′ with ◁ the closed image of S∂∂¹ (yS vx iff yTxv)."""
        P = self.P
        Cp = P.polar_right(C)
        img = 0
        for v in members(Cp):
            for x in members(F):
                img |= self.tsec[x][v]
        return P.polar_left(P.costabilize(img))

    @cached_property
    def family(self) -> StableFamily:
        return enumerate_stable(self.P, X_SORT)

    def stable_family(self, max_family: int = DEFAULT_MAX_FAMILY) -> StableFamily:
        if "family" in self.__dict__:
            fam = self.__dict__["family"]
            if len(fam) <= max_family:
                return fam
        fam = enumerate_stable(self.P, X_SORT, max_family)
        self.__dict__["family"] = fam
        return fam

    @cached_property
    def is_heyting(self) -> bool:
        d = self.derived
        return all(d.r111[x][z] == d.rleq[x][z] for x in range(self.nx) for z in range(self.nx))


@dataclass(frozen=True)
class DerivedRelations:
    """The relations derived from T, as relation objects and as section grids.

    Grid conventions: ``rd11[z][x]`` is the Y-section R∂¹¹zx, ``r111[z][x]``
    the X-section R¹¹¹zx, ``sdd1[v][x]`` the Y-section S∂∂¹vx, ``s1d1[v][x]``
    the X-section S¹∂¹vx, ``rleq[u][z]`` = Γu ∩ Γz and ``rleq_dual[u][z]``
    its polar.
    """

    tdual_rel: SortedRelation
    rd11_rel: SortedRelation
    r111_rel: SortedRelation
    sdd1_rel: SortedRelation
    s1d1_rel: SortedRelation
    rleq_rel: SortedRelation
    rleq_dual_rel: SortedRelation
    rd11: tuple
    r111: tuple
    sdd1: tuple
    s1d1: tuple
    rleq: tuple
    rleq_dual: tuple


def derive_relations(F: ImplicativeFrame) -> DerivedRelations:
    """Materialize the derived relations and re-verify each defining
    biconditional by direct quantifier evaluation."""
    P = F.P
    nx, ny = P.nx, P.ny
    tdual = galois_dual(P, F.T)
    rd11 = relation_from_sections(
        P, (Y_SORT, X_SORT, X_SORT),
        lambda z, x: sum(1 << v for v in range(ny) if F.tdual[z][v] >> x & 1))
    r111 = galois_dual(P, rd11)
    sdd1 = relation_from_sections(P, (Y_SORT, Y_SORT, X_SORT), lambda v, x: F.tsec[x][v])
    s1d1 = galois_dual(P, sdd1)
    up = P.up_x
    rleq = relation_from_sections(P, (X_SORT, X_SORT, X_SORT), lambda u, z: up[u] & up[z])
    rleq_dual = galois_dual(P, rleq)

    X, Y = range(nx), range(ny)
    for x, z, v in product(X, X, Y):
        lhs = tdual.holds(x, z, v)
        if lhs != all(P.gal(x, y) for y in Y if F.T.holds(y, z, v)):
            raise VerificationFailure("T′ definition", witness=(x, z, v))
        if rd11.holds(v, z, x) != lhs:
            raise VerificationFailure("R∂¹¹ definition", witness=(v, z, x))
    for y, v, x in product(Y, Y, X):
        if sdd1.holds(y, v, x) != F.T.holds(y, x, v):
            raise VerificationFailure("S∂∂¹ definition", witness=(y, v, x))
    for u, z, x in product(X, X, X):
        if r111.holds(u, z, x) != all(P.gal(u, v) for v in Y if rd11.holds(v, z, x)):
            raise VerificationFailure("R¹¹¹ definition", witness=(u, z, x))
        if rleq.holds(u, z, x) != (P.leq_x(z, u) and P.leq_x(x, u)):
            raise VerificationFailure("R≤ definition", witness=(u, z, x))
    for u, v, x in product(X, Y, X):
        if s1d1.holds(u, v, x) != all(P.gal(u, y) for y in Y if sdd1.holds(y, v, x)):
            raise VerificationFailure("S¹∂¹ definition", witness=(u, v, x))

    def grid(rel, n1, n2):
        return tuple(tuple(rel.out(a, b) for b in range(n2)) for a in range(n1))

    return DerivedRelations(
        tdual, rd11, r111, sdd1, s1d1, rleq, rleq_dual,
        rd11=grid(rd11, nx, nx), r111=grid(r111, nx, nx),
        sdd1=grid(sdd1, ny, nx), s1d1=grid(s1d1, ny, nx),
        rleq=grid(rleq, nx, nx), rleq_dual=grid(rleq_dual, nx, nx),
    )


# -- axioms -----------------------------------------------------------------

def check_frame_axioms(F: ImplicativeFrame) -> Report:
    P = F.P
    X, Y = range(P.nx), range(P.ny)
    r = Report("implicative frame axioms")

    # F0: x ⊥ y iff every u has uT′xy
    r.add(scan("F0", ((x, y) for x in X for y in Y),
                 lambda x, y: P.gal(x, y) == (F.tdual[x][y] == P.full_x)))

    r.add(Check("F1", P.check_separated(), None if P.check_separated() else _separation_witness(P),
                P.nx + P.ny, detail="separated"))

    # F2: each section Txv is Γy for some y; an empty section is accepted
    # only when ∅ is itself co-stable
    closed_y = set(P.closed_elements(Y_SORT))
    empty_ok = P.costabilize(0) == 0

    def f2(x, v):
        s = F.tsec[x][v]
        return s in closed_y or (s == 0 and empty_ok)

    r.add(scan("F2", product(X, Y), f2))

    # F3: yT is decreasing in both places under the specialization orders
    def f3(y, x, v):
        if not F.T.holds(y, x, v):
            return True
        return (all(F.T.holds(y, x2, v) for x2 in X if P.leq_x(x2, x))
                and all(F.T.holds(y, x, v2) for v2 in Y if P.leq_y(v2, v)))

    r.add(scan("F3", product(Y, X, Y), f3))

    # F4: the sections zT′[_]v and zT′x[_] are Galois sets
    def f4(z, a, b):
        if b == "x":
            v = a
            sec = sum(1 << x for x in X if F.tdual[x][v] >> z & 1)
            return P.is_stable(sec)
        x = a
        sec = sum(1 << v for v in Y if F.tdual[x][v] >> z & 1)
        return P.is_costable(sec)

    cases = [(z, v, "x") for z in X for v in Y] + [(z, x, "v") for z in X for x in X]
    r.add(scan("F4", cases, f4))
    return r


def _separation_witness(P: Polarity):
    for a in range(P.nx):
        for b in range(a + 1, P.nx):
            if P.xrow[a] == P.xrow[b]:
                return ("x", a, b)
    for a in range(P.ny):
        for b in range(a + 1, P.ny):
            if P.ycol[a] == P.ycol[b]:
                return ("y", a, b)
    return None


# -- exhaustive checks over the stable family ----------------------------------

@dataclass
class OperationTables:
    family: StableFamily
    imp: tuple
    overt: tuple
    la: tuple


def operation_tables(F: ImplicativeFrame, max_family: int = DEFAULT_MAX_FAMILY) -> OperationTables:
    fam = F.stable_family(max_family)
    S, idx = fam.sets, fam.index

    def table(op):
        out = []
        for A in S:
            row = []
            for C in S:
                W = op(A, C)
                if W not in idx:
                    raise VerificationFailure("operation left the stable family", witness=(A, C, W))
                row.append(idx[W])
            out.append(tuple(row))
        return tuple(out)

    return OperationTables(fam, table(F.implies), table(F.overt), table(F.la))


def check_residuation(F: ImplicativeFrame, max_family: int = DEFAULT_MAX_FAMILY) -> Report:
    """A ⊆ C⇐F  iff  A⦿F ⊆ C  iff  F ⊆ A⇒C over all stable triples."""
    try:
        tabs = operation_tables(F, max_family)
    except VerificationFailure as exc:
        r = Report("residuation")
        r.add(Check("residuation", False, exc.witness, 0, detail=str(exc)))
        return r
    S = tabs.family.sets
    m = len(S)
    witness = None
    for a, f, c in product(range(m), repeat=3):
        A, Fs, C = S[a], S[f], S[c]
        l1 = subset(A, S[tabs.la[c][f]])
        l2 = subset(S[tabs.overt[a][f]], C)
        l3 = subset(Fs, S[tabs.imp[a][c]])
        if not l1 == l2 == l3:
            witness = (A, Fs, C)
            break
    r = Report("residuation")
    r.add(Check("residuation", witness is None, witness, m ** 3, detail=f"family size {m}"))
    return r


def check_distributivity(F: ImplicativeFrame, max_family: int = DEFAULT_MAX_FAMILY) -> Report:
    """Section condition on R′≤ versus brute-force distributivity of the family."""
    P = F.P
    d = F.derived
    r = Report("distributivity")
    sec = check_sections_galois(P, d.rleq_dual_rel, name="section_condition")
    r.add(sec)
    fam = F.stable_family(max_family)
    S = fam.sets

    def dist(A, B, C):
        return A & fam.join(B, C) == fam.join(A & B, A & C)

    r.add(scan("brute_force", product(S, S, S), dist))
    implied = (not sec.passed) or r["brute_force"].passed
    r.add(Check("section_implies_brute_force", implied, None, 1))
    return r


def check_heyting_frame(F: ImplicativeFrame) -> Report:
    """R¹¹¹ = R≤ pointwise, plus both pointwise inclusion equivalences,
    each side evaluated on its own."""
    P = F.P
    d = F.derived
    X = range(P.nx)
    g = P.up_x
    r = Report("Heyting frame")
    r.add(scan("definition", product(X, X), lambda x, z: d.r111[x][z] == d.rleq[x][z]))

    def incl_1(x, z):
        algebraic = subset(g[x] & g[z], F.overt(g[x], g[z]))
        relational = subset(d.rleq[x][z], d.r111[x][z])
        return algebraic == relational

    def incl_2(x, z):
        algebraic = subset(F.overt(g[x], g[z]), g[x] & g[z])
        relational = subset(d.r111[x][z], d.rleq[x][z])
        return algebraic == relational

    r.add(scan("gamma_meet_below_fusion", product(X, X), incl_1))
    r.add(scan("fusion_below_gamma_meet", product(X, X), incl_2))
    return r


# -- full complex algebra -----------------------------------------------------

@dataclass
class ComplexAlgebra:
    family: StableFamily
    imp: tuple
    overt: tuple
    la: tuple
    lattice: FiniteLattice

    def triple(self, heyting: bool = False) -> ResiduatedTriple:
        base = self.lattice
        if heyting:
            base = base.with_arrow(compute_residual_arrow(base))
        return ResiduatedTriple(base, circ=self.overt, under=self.imp, over=self.la)

    def certify(self) -> Report:
        """Residuated lattice certification; adds the residuated Heyting
        certification when the family is distributive."""
        try:
            R = self.triple(heyting=True)
        except NotResiduated:
            R = self.triple(heyting=False)
        return check_residuated_triple(R)

    def set_of(self, i: int) -> int:
        return self.family.sets[i]


def full_complex_algebra(F: ImplicativeFrame, max_family: int = DEFAULT_MAX_FAMILY) -> ComplexAlgebra:
    tabs = operation_tables(F, max_family)
    return ComplexAlgebra(tabs.family, tabs.imp, tabs.overt, tabs.la, tabs.family.lattice)


# -- identities of the implication and the left residual ---------------------

def _subfamilies(sets, k: int):
    for size in range(1, k + 1):
        yield from combinations(sets, size)


def implication_facts(F: ImplicativeFrame, max_family: int = DEFAULT_MAX_FAMILY,
                      max_sub: int = 3) -> Report:
    """Pointwise and set-level identities satisfied by ⇒ and ⇐ in any frame
    passing F0–F4.  Joins and meets range over subfamilies of size at most
    ``max_sub``."""
    P = F.P
    fam = F.stable_family(max_family)
    S = fam.sets
    X, Y = range(P.nx), range(P.ny)
    g = P.up_x
    co = [P.polar_left(1 << y) for y in Y]
    imp = lru_cache(maxsize=None)(F.implies)
    la = lru_cache(maxsize=None)(F.la)
    r = Report("implication facts")

    def monotone(A, B, C):
        ok = True
        if subset(A, B):
            ok &= subset(imp(B, C), imp(A, C))
            ok &= subset(imp(C, A), imp(C, B))
        return ok

    r.add(scan("imp_antitone_monotone", product(S, S, S), monotone))
    subs = list(_subfamilies(S, max_sub))

    def join_meet(As, Cs):
        lhs = imp(fam.join_all(As), fam.meet_all(Cs))
        rhs = P.full_x
        for A in As:
            for C in Cs:
                rhs &= imp(A, C)
        return lhs == rhs

    r.add(scan("imp_join_meet", product(subs, subs), join_meet))

    def la_meet_join(Cs, As):
        lhs = la(fam.meet_all(Cs), fam.join_all(As))
        rhs = P.full_x
        for A in As:
            for C in Cs:
                rhs &= la(C, A)
        return lhs == rhs

    r.add(scan("la_meet_join", product(subs, subs), la_meet_join))

    def gamma_decomposition(A, C):
        rhs = P.full_x
        for x in members(A):
            for y in members(P.polar_right(C)):
                rhs &= imp(g[x], co[y])
        return imp(A, C) == rhs

    r.add(scan("imp_gamma_decomposition", product(S, S), gamma_decomposition))
    r.add(scan("tdual_is_point_implication", product(X, X, Y),
               lambda u, x, y: bool(F.tdual[x][y] >> u & 1) == bool(imp(g[x], co[y]) >> u & 1)))

    def pointwise(A, C):
        Cp = P.polar_right(C)
        expect = sum(1 << u for u in X
                     if all(F.tdual[x][y] >> u & 1 for x in members(A) for y in members(Cp)))
        return imp(A, C) == expect

    r.add(scan("imp_pointwise", product(S, S), pointwise))
    r.add(scan("inclusion_iff_valid", product(S, S),
               lambda A, C: subset(A, C) == (imp(A, C) == P.full_x)))
    s1d1 = F.derived.s1d1
    r.add(scan("s1d1_is_point_residual", product(X, Y, X),
               lambda x, y, z: bool(s1d1[y][z] >> x & 1) == bool(la(co[y], g[x]) >> z & 1)))
    return r
