import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from conftest import canon
from galoisframe import corpus
from galoisframe.polarity import members, subset
from galoisframe.representation import rep_X
from galoisframe.semantics import (And, Atom, Bot, FormulaSyntaxError, Imp, Model, Or, Top, UnboundAtom,
                                   atoms, check_clause_equivalences, entails, interpret, parse_formula,
                                   pointwise, random_formula, refutes, satisfies, subformulas, to_text,
                                   validity)

p, q, r = Atom("p"), Atom("q"), Atom("r")


def formulas():
    return st.integers(0, 2**32).map(lambda s: random_formula(random.Random(s)))


def model(name, proper=True, **vals):
    CF = canon(name, proper)
    L = CF.source
    return Model(CF.frame, {a: rep_X(CF, L.index(e)) for a, e in vals.items()})


def random_model(name, rng, proper=True):
    F = canon(name, proper).frame
    S = F.family.sets
    return Model(F, {a: rng.choice(S) for a in "pqr"})


# -- syntax --------------------------------------------------------------------

def test_parse_examples():
    assert parse_formula("p -> q -> r") == Imp(p, Imp(q, r))
    assert parse_formula("p & q | r") == Or(And(p, q), r)
    with pytest.raises(FormulaSyntaxError) as e:
        parse_formula("(")
    assert e.value.position == 1
    assert isinstance(e.value, SyntaxError)


def test_parse_details():
    assert parse_formula("0") == Bot() and parse_formula("1") == Top()
    assert parse_formula("p ∧ q ∨ ⊥ → ⊤") == Imp(Or(And(p, q), Bot()), Top())
    assert parse_formula("p & q & r") == And(And(p, q), r)
    assert parse_formula("(p -> q) -> r") == Imp(Imp(p, q), r)
    for text, pos in [(")", 1), ("p q", 3), ("", 1), ("p -> ", 6), ("p $ q", 3), ("((p)", 1), ("p)", 2)]:
        with pytest.raises(FormulaSyntaxError) as e:
            parse_formula(text)
        assert e.value.position == pos, text


@settings(max_examples=200, deadline=None)
@given(formulas())
def test_round_trip(f):
    assert parse_formula(to_text(f)) == f


def test_subformulas_and_atoms():
    f = parse_formula("(p -> q) | p")
    assert subformulas(f) == [p, q, Imp(p, q), Or(Imp(p, q), p)]
    assert atoms(f) == {"p", "q"}


# -- interpretation --------------------------------------------------------------

def test_interpret_top():
    M = model("C3")
    P = M.frame.P
    assert interpret(M, Top()) == (P.full_x, P.polar_right(P.full_x))
    assert all(satisfies(M, x, Top()) for x in range(P.nx))


def test_interpret_examples():
    M = model("C2", p="0")
    assert M.valuation["p"] == 0
    assert interpret(M, Imp(p, p))[0] == M.frame.P.full_x
    assert not satisfies(M, 0, p)
    CF = canon("L3")
    M = model("L3", p="half", q="0")
    assert interpret(M, Imp(p, q))[0] == rep_X(CF, CF.source.index("half"))


def test_bot_is_stabilized_empty_set():
    M = model("C2", False)
    P = M.frame.P
    assert P.stabilize(0) != 0
    assert interpret(M, Bot()) == (P.stabilize(0), P.full_y)


def test_unbound_and_unstable():
    M = model("C3")
    with pytest.raises(UnboundAtom):
        interpret(M, p)
    with pytest.raises(UnboundAtom):
        pointwise(M, q)
    F = canon("C3").frame
    bad = next(W for W in range(1 << F.nx) if not F.P.is_stable(W))
    with pytest.raises(ValueError):
        Model(F, {"p": bad})


def test_conjunction_clause_on_random_pairs():
    rng = random.Random(20)
    M = random_model("C4", rng)
    for _ in range(20):
        f, g = random_formula(rng), random_formula(rng)
        for x in range(M.frame.nx):
            assert satisfies(M, x, And(f, g)) == (satisfies(M, x, f) and satisfies(M, x, g))


def test_refutation_of_disjunction():
    rng = random.Random(5)
    M = random_model("N5", rng)
    for _ in range(20):
        f, g = random_formula(rng), random_formula(rng)
        for y in range(M.frame.ny):
            assert refutes(M, y, Or(f, g)) == (refutes(M, y, f) and refutes(M, y, g))


@pytest.mark.parametrize("name", corpus.CORPUS_NAMES)
def test_coherence_invariants(name):
    rng = random.Random(name)
    for proper in (True, False):
        M = random_model(name, rng, proper)
        P = M.frame.P
        for _ in range(15):
            f = random_formula(rng)
            val, coval = interpret(M, f)
            assert P.is_stable(val)
            assert coval == P.polar_right(val) and val == P.polar_left(coval)
            assert pointwise(M, f) == (val, coval)
            for x, z in product(range(P.nx), range(P.nx)):
                if P.leq_x(x, z) and val >> x & 1:
                    assert val >> z & 1
            g = random_formula(rng)
            assert entails(M, f, g) == subset(val, interpret(M, g)[0])


def test_clause_examples():
    rng = random.Random(3)
    f = parse_formula("(p -> q) -> q")
    for _ in range(5):
        r_ = check_clause_equivalences(random_model("C3", rng), f)
        assert r_.ok and not any(c.skipped for c in r_)
    r_ = check_clause_equivalences(model("L3", p="half", q="0"), parse_formula("p -> (p -> q)"))
    assert r_["ternary_clause"].passed and r_["disjunction_clause"].passed
    assert r_["kripke_clause"].skipped
    assert list(check_clause_equivalences(model("C3", p="m"), p)) == []


def test_validity_examples():
    M = model("C3", p="m")
    assert entails(M, p, p)
    assert not validity(M, parse_formula("p | (p -> 0)"))
    M = model("L3", p="half", q="0")
    assert not validity(M, parse_formula("(p -> (p -> q)) -> (p -> q)"))
    M = model("C3", p="m", q="0")
    assert validity(M, parse_formula("(p->q)->((q->0)->(p->0))"))


def kripke_textbook(M, f):
    """Evaluation over (X, ≤) with up-sets, the Kripke clause for ->, and
    disjunction as the stabilized union."""
    P = M.frame.P
    up = P.up_x
    if isinstance(f, Atom):
        return M.valuation[f.name]
    if isinstance(f, Top):
        return P.full_x
    if isinstance(f, Bot):
        return P.stabilize(0)
    a, b = kripke_textbook(M, f.left), kripke_textbook(M, f.right)
    if isinstance(f, And):
        return a & b
    if isinstance(f, Or):
        return P.stabilize(a | b)
    return sum(1 << x for x in range(P.nx) if all(not (a >> z & 1) or b >> z & 1 for z in members(up[x])))


@pytest.mark.parametrize("name", corpus.HEYTING_NAMES)
def test_heyting_frames_agree_with_kripke_semantics(name):
    rng = random.Random(name)
    for proper in (True, False):
        F = canon(name, proper).frame
        S = F.family.sets
        for vals in product(S, repeat=2):
            M = Model(F, dict(zip("pq", vals)))
            for _ in range(5):
                f = random_formula(rng, 4, ("p", "q"))
                assert interpret(M, f)[0] == kripke_textbook(M, f)


@settings(max_examples=50, deadline=None)
@given(formulas(), st.sampled_from(corpus.CORPUS_NAMES), st.integers(0, 2**16))
def test_clause_equivalences_property(f, name, seed):
    M = random_model(name, random.Random(seed))
    r_ = check_clause_equivalences(M, f)
    assert r_.ok
    if not M.frame.is_heyting and any(isinstance(g, Imp) for g in subformulas(f)):
        assert r_["kripke_clause"].skipped
