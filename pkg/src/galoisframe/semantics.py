"""Propositional formulas over {0, 1, &, |, ->} and their two-sorted
interpretation in implicative frames.

A formula is interpreted by a stable set (the points satisfying it) and a
co-stable set (the points refuting it).  Alongside the set-algebraic
evaluation there is a pointwise one that follows the satisfaction and
refutation clauses literally; the two are compared on every query.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Union

from .frame import ImplicativeFrame
from .polarity import members, subset
from .report import Check, Report, VerificationFailure


# -- syntax ------------------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


Formula = Union[Atom, Bot, Top, And, Or, Imp]

# binding strength: higher binds tighter
_PREC = {Imp: 1, Or: 2, And: 3}
_SYMBOL = {Imp: "->", Or: "|", And: "&"}


class FormulaSyntaxError(SyntaxError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at {position}")
        self.position = position


class UnboundAtom(KeyError):
    pass


_TOKEN = re.compile(r"\s*(?:(->|→)|([&∧])|([|∨])|([()])|([01⊥⊤])|([A-Za-z_][A-Za-z0-9_']*))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise FormulaSyntaxError(f"unexpected character {text[start]!r}", start + 1)
        col = m.start(m.lastindex) + 1
        kind = ("imp", "and", "or", "paren", "const", "atom")[m.lastindex - 1]
        tokens.append((kind, m.group(m.lastindex), col))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        depth = []
        for kind, val, col in self.tokens:
            if val == "(":
                depth.append(col)
            elif val == ")":
                if not depth:
                    raise FormulaSyntaxError("unmatched ')'", col)
                depth.pop()
        if depth:
            raise FormulaSyntaxError("unclosed '('", depth[-1])

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def end_pos(self) -> int:
        return len(self.text) + 1

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Formula:
        f = self.imp()
        tok = self.peek()
        if tok is not None:
            raise FormulaSyntaxError(f"unexpected {tok[1]!r}", tok[2])
        return f

    def imp(self) -> Formula:
        left = self.disj()
        tok = self.peek()
        if tok and tok[0] == "imp":
            self.take()
            return Imp(left, self.imp())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while (tok := self.peek()) and tok[0] == "or":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.primary()
        while (tok := self.peek()) and tok[0] == "and":
            self.take()
            f = And(f, self.primary())
        return f

    def primary(self) -> Formula:
        tok = self.take()
        if tok is None:
            raise FormulaSyntaxError("expected a formula", self.end_pos())
        kind, val, col = tok
        if val == "(":
            f = self.imp()
            self.take()  # balanced by construction
            return f
        if kind == "const":
            return Top() if val in ("1", "⊤") else Bot()
        if kind == "atom":
            return Atom(val)
        raise FormulaSyntaxError(f"unexpected {val!r}", col)


def parse_formula(text: str) -> Formula:
    """Parse ``->`` (right associative, loosest), ``|``, then ``&``."""
    return _Parser(text).parse()


def to_text(f: Formula) -> str:
    """Print with the fewest parentheses that still parse back to ``f``."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Top):
        return "1"
    if isinstance(f, Bot):
        return "0"
    p = _PREC[type(f)]
    left, right = to_text(f.left), to_text(f.right)
    lp = _PREC.get(type(f.left), 9)
    rp = _PREC.get(type(f.right), 9)
    # & and | associate left, -> associates right
    if lp < p or (isinstance(f, Imp) and lp == p):
        left = f"({left})"
    if rp < p or (not isinstance(f, Imp) and rp == p):
        right = f"({right})"
    return f"{left} {_SYMBOL[type(f)]} {right}"


def subformulas(f: Formula) -> list[Formula]:
    """Post-order list of distinct subformulas."""
    out: list[Formula] = []
    seen = set()

    def walk(g):
        if isinstance(g, (And, Or, Imp)):
            walk(g.left)
            walk(g.right)
        if g not in seen:
            seen.add(g)
            out.append(g)

    walk(f)
    return out


def atoms(f: Formula) -> set[str]:
    return {g.name for g in subformulas(f) if isinstance(g, Atom)}


def random_formula(rng: random.Random, depth: int = 5, names=("p", "q", "r")) -> Formula:
    if depth == 0 or rng.random() < 0.25:
        k = rng.random()
        if k < 0.08:
            return Bot()
        if k < 0.14:
            return Top()
        return Atom(rng.choice(names))
    op = rng.choice((And, Or, Imp, Imp))
    return op(random_formula(rng, depth - 1, names), random_formula(rng, depth - 1, names))


# -- models ------------------------------------------------------------------

@dataclass
class Model:
    frame: ImplicativeFrame
    valuation: dict[str, int]
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        P = self.frame.P
        for name, A in self.valuation.items():
            if not P.is_stable(A):
                raise ValueError(f"valuation of {name!r} is not a stable set")


def interpret(M: Model, f: Formula) -> tuple[int, int]:
    """(interpretation, co-interpretation) of ``f``."""
    if f in M._cache:
        return M._cache[f]
    F = M.frame
    P = F.P
    if isinstance(f, Atom):
        if f.name not in M.valuation:
            raise UnboundAtom(f.name)
        val = M.valuation[f.name]
        out = (val, P.polar_right(val))
    elif isinstance(f, Top):
        out = (P.full_x, P.polar_right(P.full_x))
    elif isinstance(f, Bot):
        out = (P.stabilize(0), P.full_y)
    elif isinstance(f, And):
        val = interpret(M, f.left)[0] & interpret(M, f.right)[0]
        out = (val, P.polar_right(val))
    elif isinstance(f, Or):
        coval = interpret(M, f.left)[1] & interpret(M, f.right)[1]
        out = (P.polar_left(coval), coval)
    else:
        val = F.implies(interpret(M, f.left)[0], interpret(M, f.right)[0])
        out = (val, P.polar_right(val))
    M._cache[f] = out
    return out


def pointwise(M: Model, f: Formula, _memo: dict | None = None) -> tuple[int, int]:
    """Satisfaction and refutation sets evaluated point by point from the
    clauses, without the polar-map algebra used by :func:`interpret`."""
    memo = {} if _memo is None else _memo
    if f in memo:
        return memo[f]
    F = M.frame
    P = F.P
    X, Y = range(P.nx), range(P.ny)

    def refuted_by_all_sat(sat):
        # y refutes f iff every x satisfying f has x ⊥ y
        return sum(1 << y for y in Y if all(P.gal(x, y) for x in members(sat)))

    if isinstance(f, Atom):
        if f.name not in M.valuation:
            raise UnboundAtom(f.name)
        sat = M.valuation[f.name]
        ref = refuted_by_all_sat(sat)
    elif isinstance(f, Top):
        sat = P.full_x
        ref = refuted_by_all_sat(sat)
    elif isinstance(f, Bot):
        ref = P.full_y
        sat = sum(1 << x for x in X if all(P.gal(x, y) for y in Y))
    elif isinstance(f, And):
        sat = pointwise(M, f.left, memo)[0] & pointwise(M, f.right, memo)[0]
        ref = refuted_by_all_sat(sat)
    elif isinstance(f, Or):
        ref = pointwise(M, f.left, memo)[1] & pointwise(M, f.right, memo)[1]
        # x ⊩ φ∨ψ iff for all y, xIy implies y does not refute both
        sat = sum(1 << x for x in X if all(P.gal(x, y) for y in members(ref)))
    else:
        sat = ternary_clause(M, f, memo)
        ref = refuted_by_all_sat(sat)
    memo[f] = (sat, ref)
    return sat, ref


def ternary_clause(M: Model, f: Imp, memo: dict | None = None) -> int:
    """{x : for all u, z, u ⊩ φ and z refutes ψ imply xT′uz}."""
    memo = {} if memo is None else memo
    F = M.frame
    sat_l = pointwise(M, f.left, memo)[0]
    ref_r = pointwise(M, f.right, memo)[1]
    out = 0
    for x in range(F.nx):
        if all(F.tdual[u][z] >> x & 1 for u in members(sat_l) for z in members(ref_r)):
            out |= 1 << x
    return out


def kripke_clause(M: Model, f: Imp, memo: dict | None = None) -> int:
    """{x : every u ≥ x satisfying φ satisfies ψ}, with ≥ the specialization order."""
    memo = {} if memo is None else memo
    up = M.frame.P.up_x
    sat_l = pointwise(M, f.left, memo)[0]
    sat_r = pointwise(M, f.right, memo)[0]
    return sum(1 << x for x in range(M.frame.nx) if subset(up[x] & sat_l, sat_r))


def _agree(M: Model, f: Formula) -> tuple[int, int]:
    val = interpret(M, f)
    pw = pointwise(M, f)
    if val != pw:
        raise VerificationFailure("pointwise and algebraic semantics disagree", witness=(to_text(f),))
    return val


def satisfies(M: Model, x: int, f: Formula) -> bool:
    return bool(_agree(M, f)[0] >> x & 1)


def refutes(M: Model, y: int, f: Formula) -> bool:
    return bool(_agree(M, f)[1] >> y & 1)


def validity(M: Model, f: Formula) -> bool:
    return interpret(M, f)[0] == M.frame.P.full_x


def entails(M: Model, f: Formula, g: Formula) -> bool:
    by_inclusion = subset(interpret(M, f)[0], interpret(M, g)[0])
    by_validity = validity(M, Imp(f, g))
    if by_inclusion != by_validity:
        raise VerificationFailure("entailment routes disagree", witness=(to_text(f), to_text(g)))
    return by_inclusion


def check_clause_equivalences(M: Model, f: Formula) -> Report:
    """Compare the clause forms against the algebraic interpretation for every
    connective subformula of ``f``."""
    P = M.frame.P
    memo: dict = {}
    imps = [g for g in subformulas(f) if isinstance(g, Imp)]
    ors = [g for g in subformulas(f) if isinstance(g, Or)]
    r = Report(f"clauses of {to_text(f)}")
    if not imps and not ors:
        return r

    def first_bad(items, pred):
        for g in items:
            if not pred(g):
                return (to_text(g),)
        return None

    w = first_bad(imps, lambda g: ternary_clause(M, g, memo) == interpret(M, g)[0])
    r.add(Check("ternary_clause", w is None, w, len(imps)))

    def or_ok(g):
        co = interpret(M, g.left)[1] & interpret(M, g.right)[1]
        return pointwise(M, g, memo)[0] == P.polar_left(co)

    w = first_bad(ors, or_ok)
    r.add(Check("disjunction_clause", w is None, w, len(ors)))
    if M.frame.is_heyting:
        w = first_bad(imps, lambda g: kripke_clause(M, g, memo) == ternary_clause(M, g, memo))
        r.add(Check("kripke_clause", w is None, w, len(imps)))
    else:
        r.skip("kripke_clause", "not a Heyting frame")
    return r
