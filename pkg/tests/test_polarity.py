import random

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from conftest import canon
from galoisframe import corpus
from galoisframe.polarity import (X_SORT, Y_SORT, FamilyTooLarge, Polarity, check_sections_galois,
                                  enumerate_stable, galois_dual, permute, polarity_facts,
                                  relation_from_tuples, section, subset, to_mask)
from galoisframe.randomgen import random_polarity


def polarities():
    seeds = st.integers(0, 2**32)
    return seeds.map(lambda s: random_polarity(random.Random(s)))


def test_empty_sorts_rejected():
    with pytest.raises(ValueError):
        Polarity(0, 1, [])


def test_polar_examples():
    P = canon("C2").P
    assert (P.nx, P.ny) == (1, 1) and not P.gal(0, 0)
    assert P.polar_right(0) == P.full_y
    assert P.polar_right(1) == 0
    Q = Polarity(2, 2, [(0, 0), (1, 0), (1, 1)])
    assert Q.polar_right(Q.full_x) == 0b01


def test_stabilize_examples():
    P = canon("C2", False).P
    assert P.xnames == ("x_1", "x_0")
    assert P.stabilize(0) == 1 << P.xnames.index("x_0")
    for W in enumerate_stable(P):
        assert P.stabilize(W) == W


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32))
def test_stabilize_is_a_closure(seed):
    rng = random.Random(seed)
    P = random_polarity(rng, 5, 5)
    U, V = rng.getrandbits(P.nx), rng.getrandbits(P.nx)
    assert subset(U, P.stabilize(U))
    assert P.stabilize(P.stabilize(U)) == P.stabilize(U)
    if subset(U, V):
        assert subset(P.stabilize(U), P.stabilize(V))


def test_specialization_examples():
    for name in corpus.CORPUS_NAMES:
        assert canon(name).P.check_separated()
        assert canon(name, False).P.check_separated()
    assert not Polarity(2, 1, [(0, 0), (1, 0)]).check_separated()
    P = canon("C2", False).P
    x1, x0 = P.xnames.index("x_1"), P.xnames.index("x_0")
    assert P.leq_x(x1, x0) and not P.leq_x(x0, x1)


def test_gamma_examples():
    P = canon("C2").P
    assert P.gamma(X_SORT, 0) == 1
    # the witness y_1 = down-set of 1 is an improper ideal
    assert P.is_clopen(X_SORT, 0) is None
    Q = canon("C2", False).P
    x1 = Q.xnames.index("x_1")
    assert Q.is_clopen(X_SORT, x1) == Q.ynames.index("y_1")
    for name in corpus.CORPUS_NAMES:
        Q = canon(name).P
        for side in (X_SORT, Y_SORT):
            for u in range(Q.size(side)):
                assert Q.is_galois(side, Q.gamma(side, u))
    # a maximal point has a singleton up-set
    P = canon("C3").P
    maximal = [x for x in range(P.nx) if all(not P.leq_x(x, z) or z == x for z in range(P.nx))]
    assert maximal and all(P.gamma(X_SORT, x) == 1 << x for x in maximal)


def test_enumerate_examples():
    assert enumerate_stable(canon("C2").P).sets == (0, 1)
    fam = enumerate_stable(canon("M3").P)
    assert len(fam) == 5
    assert not fam.lattice.is_chain()
    full = Polarity(3, 2, [(x, y) for x in range(3) for y in range(2)])
    assert enumerate_stable(full).sets == (full.full_x,)
    with pytest.raises(FamilyTooLarge):
        enumerate_stable(canon("B8").P, max_family=4)


@pytest.mark.parametrize("proper", [True, False])
@pytest.mark.parametrize("name", corpus.CORPUS_NAMES)
def test_stable_family_matches_brute_force(name, proper):
    F, _, _ = oracle.canonical(corpus.get(name), proper)
    P = canon(name, proper).P
    assert list(enumerate_stable(P).sets) == [to_mask(U) for U in F.stable_sets()]


@settings(max_examples=60, deadline=None)
@given(polarities())
def test_stable_family_matches_brute_force_random(P):
    gal = [(x, y) for x in range(P.nx) for y in range(P.ny) if P.gal(x, y)]
    F = oracle.Frame(P.nx, P.ny, gal, [])
    fam = enumerate_stable(P)
    assert list(fam.sets) == [to_mask(U) for U in F.stable_sets()]
    for A in fam:
        for C in fam:
            assert fam.meet(A, C) == A & C
            assert fam.join(A, C) == P.stabilize(A | C)
    assert fam.bottom == P.stabilize(0) and fam.top == P.full_x
    fam.lattice  # validates and cross-checks tables


def test_galois_dual_examples():
    P = canon("C2").P
    T = canon("C2").frame.T
    assert T.tuples() == [(0, 0, 0)]
    Td = galois_dual(P, T)
    assert Td.out(0, 0) == 0
    empty = relation_from_tuples(P, (Y_SORT, X_SORT, Y_SORT), [])
    assert galois_dual(P, empty).out(0, 0) == P.full_x


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32))
def test_double_dual_stabilizes(seed):
    rng = random.Random(seed)
    P = random_polarity(rng, 4, 4)
    sorts = (Y_SORT, X_SORT, Y_SORT)
    tuples = [(y, x, v) for y in range(P.ny) for x in range(P.nx) for v in range(P.ny) if rng.random() < 0.3]
    R = relation_from_tuples(P, sorts, tuples)
    R2 = galois_dual(P, galois_dual(P, R))
    assert R2.sorts == sorts
    for k, m in R.sections.items():
        assert R2.out(*k) == P.costabilize(m)


def test_sections():
    P = Polarity(2, 2, [(0, 0), (1, 1)])
    R = relation_from_tuples(P, (X_SORT, Y_SORT), [(0, 0), (1, 0), (1, 1)])
    assert section(P, R, (None, 0)) == 0b11
    assert section(P, R, (1, None)) == 0b11
    E = relation_from_tuples(P, (X_SORT, Y_SORT), [])
    assert section(P, E, (None, 1)) == 0
    with pytest.raises(ValueError):
        section(P, R, (None, None))


def test_section_of_canonical_c3_t():
    CF = canon("C3")
    L, F = CF.source, CF.frame
    for x, f in enumerate(CF.filters):
        for v, i in enumerate(CF.ideals):
            need = {L.arrow[a][b] for a in f.carrier for b in i.carrier}
            expect = to_mask(y for y, d in enumerate(CF.ideals) if need <= d.carrier)
            assert section(F.P, F.T, (None, x, v)) == expect


def test_permute():
    P = canon("C3").P
    T = canon("C3").frame.T
    S = permute(P, T, (0, 2, 1))
    assert S.sorts == (Y_SORT, Y_SORT, X_SORT)
    assert all(S.holds(y, v, x) == T.holds(y, x, v) for y, x, v in T.tuples())
    with pytest.raises(ValueError):
        permute(P, T, (0, 0, 1))


def test_sections_galois_examples():
    for name in corpus.CORPUS_NAMES:
        F = canon(name).frame
        assert check_sections_galois(F.P, F.derived.tdual_rel).passed
    F = canon("M3").frame
    assert not check_sections_galois(F.P, F.derived.rleq_dual_rel).passed
    P = Polarity(2, 2, [(0, 0)])
    full = relation_from_tuples(P, (X_SORT, Y_SORT), [(x, y) for x in range(2) for y in range(2)])
    assert check_sections_galois(P, full, positions=[0]).passed


@pytest.mark.parametrize("name", corpus.CORPUS_NAMES)
def test_polarity_facts_on_corpus(name):
    assert polarity_facts(canon(name).P).ok
    assert polarity_facts(canon(name, False).P).ok


@settings(max_examples=100, deadline=None)
@given(polarities())
def test_polarity_facts_random(P):
    r = polarity_facts(P)
    assert r.ok, r.to_text()
