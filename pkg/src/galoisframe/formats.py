"""Line-oriented text formats for lattices and frames.

Lattice documents::

    GLATTICE 1
    elements 0 a b 1
    leq 0 a            # order pairs, closed reflexively and transitively
    leq a b
    leq b 1
    arrow a b 1        # a -> b = 1; either no arrow lines or all n*n
    expect distributive

Instead of ``leq`` lines the order may be given as ``row`` lines, one per
element, each holding n digits 0/1.

Frame documents::

    GFRAME 1
    X x0 x1
    Y y0 y1
    gal x0 y0          # x0 ⊥ y0
    T y1 x0 y0         # y1 T x0 y0

Blank lines and ``#`` comments are ignored everywhere.
"""

from __future__ import annotations

from pathlib import Path

from .frame import ImplicativeFrame
from .lattice import FiniteLattice, LatticeError, order_from_pairs, validate_lattice
from .polarity import Polarity

LATTICE_HEADER = "GLATTICE 1"
FRAME_HEADER = "GFRAME 1"
EXPECT_FLAGS = ("distributive", "heyting")


class ParseError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].split()
        if body:
            yield no, body


def _header(text: str) -> tuple[int, str]:
    for no, body in _lines(text):
        return no, " ".join(body)
    raise ParseError("empty document", 1)


def sniff(text: str) -> str:
    """'lattice' or 'frame' according to the header line."""
    no, head = _header(text)
    if head == LATTICE_HEADER:
        return "lattice"
    if head == FRAME_HEADER:
        return "frame"
    raise ParseError(f"unknown header {head!r}", no)


def parse_lattice(text: str) -> tuple[FiniteLattice, set[str]]:
    """Parse a lattice document; returns the lattice and its expect flags."""
    lines = list(_lines(text))
    if not lines or " ".join(lines[0][1]) != LATTICE_HEADER:
        raise ParseError(f"expected header {LATTICE_HEADER!r}", lines[0][0] if lines else 1)
    names: list[str] | None = None
    index: dict[str, int] = {}
    pairs: list[tuple[int, int]] = []
    rows: list[list[bool]] = []
    arrows: dict[tuple[int, int], int] = {}
    expect: set[str] = set()
    last = lines[0][0]

    def elem(tok, no):
        if tok not in index:
            raise ParseError(f"unknown element {tok!r}", no)
        return index[tok]

    for no, body in lines[1:]:
        last = no
        key, args = body[0], body[1:]
        if key != "elements" and names is None:
            raise ParseError("'elements' must come first", no)
        if key == "elements":
            if names is not None:
                raise ParseError("duplicate 'elements' line", no)
            if not args or len(set(args)) != len(args):
                raise ParseError("element names must be nonempty and distinct", no)
            names = args
            index = {nm: i for i, nm in enumerate(names)}
        elif key == "leq":
            if len(args) != 2:
                raise ParseError("'leq' takes two elements", no)
            pairs.append((elem(args[0], no), elem(args[1], no)))
        elif key == "row":
            digits = "".join(args)
            if len(digits) != len(names) or set(digits) - {"0", "1"}:
                raise ParseError(f"'row' needs {len(names)} digits 0/1", no)
            rows.append([d == "1" for d in digits])
        elif key == "arrow":
            if len(args) != 3:
                raise ParseError("'arrow' takes three elements", no)
            a, b, c = (elem(t, no) for t in args)
            if (a, b) in arrows:
                raise ParseError(f"duplicate arrow for ({args[0]}, {args[1]})", no)
            arrows[a, b] = c
        elif key == "expect":
            if len(args) != 1 or args[0] not in EXPECT_FLAGS:
                raise ParseError(f"'expect' takes one of {', '.join(EXPECT_FLAGS)}", no)
            expect.add(args[0])
        else:
            raise ParseError(f"unknown keyword {key!r}", no)

    if names is None:
        raise ParseError("missing 'elements' line", last)
    n = len(names)
    if rows and pairs:
        raise ParseError("give the order as 'leq' pairs or 'row' lines, not both", last)
    if rows and len(rows) != n:
        raise ParseError(f"expected {n} 'row' lines, got {len(rows)}", last)
    order = rows if rows else order_from_pairs(n, pairs)
    arrow = None
    if arrows:
        if len(arrows) != n * n:
            raise ParseError(f"arrow table has {len(arrows)} of {n * n} entries", last)
        arrow = [[arrows[a, b] for b in range(n)] for a in range(n)]
    try:
        L = validate_lattice(order, names, arrow)
    except LatticeError as exc:
        raise ParseError(str(exc), last) from None
    return L, expect


def format_lattice(L: FiniteLattice, expect=()) -> str:
    names = [L.name(a) for a in L.elems]
    out = [LATTICE_HEADER, "elements " + " ".join(names)]
    for a in L.elems:
        out.append("row " + "".join("1" if L.leq[a][b] else "0" for b in L.elems))
    if L.arrow is not None:
        for a in L.elems:
            for b in L.elems:
                out.append(f"arrow {names[a]} {names[b]} {names[L.arrow[a][b]]}")
    for flag in sorted(expect):
        out.append(f"expect {flag}")
    return "\n".join(out) + "\n"


def parse_frame(text: str) -> ImplicativeFrame:
    lines = list(_lines(text))
    if not lines or " ".join(lines[0][1]) != FRAME_HEADER:
        raise ParseError(f"expected header {FRAME_HEADER!r}", lines[0][0] if lines else 1)
    xs: list[str] | None = None
    ys: list[str] | None = None
    gal: list[tuple[int, int]] = []
    triples: list[tuple[int, int, int]] = []
    last = lines[0][0]

    def point(names, tok, no, sort):
        if names is None:
            raise ParseError(f"{sort} points must be declared first", no)
        try:
            return names.index(tok)
        except ValueError:
            raise ParseError(f"unknown {sort} point {tok!r}", no) from None

    for no, body in lines[1:]:
        last = no
        key, args = body[0], body[1:]
        if key in ("X", "Y"):
            if not args or len(set(args)) != len(args):
                raise ParseError(f"{key} names must be nonempty and distinct", no)
            if (xs if key == "X" else ys) is not None:
                raise ParseError(f"duplicate '{key}' line", no)
            if key == "X":
                xs = args
            else:
                ys = args
        elif key == "gal":
            if len(args) != 2:
                raise ParseError("'gal' takes an X point and a Y point", no)
            gal.append((point(xs, args[0], no, "X"), point(ys, args[1], no, "Y")))
        elif key == "T":
            if len(args) != 3:
                raise ParseError("'T' takes points of sorts Y X Y", no)
            triples.append((point(ys, args[0], no, "Y"), point(xs, args[1], no, "X"),
                            point(ys, args[2], no, "Y")))
        else:
            raise ParseError(f"unknown keyword {key!r}", no)
    if xs is None or ys is None:
        raise ParseError("missing 'X' or 'Y' line", last)
    P = Polarity(len(xs), len(ys), gal, xs, ys)
    return ImplicativeFrame.from_triples(P, triples)


def format_frame(F: ImplicativeFrame) -> str:
    P = F.P
    xn, yn = P.xnames, P.ynames
    out = [FRAME_HEADER, "X " + " ".join(xn), "Y " + " ".join(yn)]
    out += [f"gal {xn[x]} {yn[y]}" for x, y in P.pairs()]
    out += [f"T {yn[y]} {xn[x]} {yn[v]}" for y, x, v in sorted(F.triples(), key=lambda t: (t[1], t[2], t[0]))]
    return "\n".join(out) + "\n"


def read(path: str | Path) -> str:
    return Path(path).read_text(encoding="utf-8")
