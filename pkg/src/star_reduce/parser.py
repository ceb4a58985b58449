"""Text syntax for Weyl and polynomial elements.

Grammar::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := postfix ('^' nat)?
    postfix:= atom ("'")*
    atom   := nat ('/' nat)? | 'i' | gen | '(' expr ')'
    gen    := ('q' | 'p' | 'z' | 'zb') nat

The apostrophe is the *-involution. Products keep their order, which matters
in the Weyl algebra. :func:`render` produces text in this grammar from an
element, listing terms in graded-lexicographic order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from . import poly as P
from . import weyl as W
from .errors import ExpressionSyntaxError, IndexOutOfRange, MixedAlgebra
from .scalars import I, ONE, GaussianRational

Span = Tuple[int, int]


@dataclass(frozen=True)
class Scalar:
    value: GaussianRational
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Generator:
    kind: str  # "q", "p", "z" or "zb"
    index: int
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Sum:
    terms: Tuple["Expression", ...]
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Neg:
    child: "Expression"
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Product:
    factors: Tuple["Expression", ...]
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Power:
    base: "Expression"
    exponent: int
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Star:
    child: "Expression"
    span: Span = field(default=(0, 0), compare=False)


Expression = Union[Scalar, Generator, Sum, Neg, Product, Power, Star]

_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<nat>\d+)|(?P<gen>zb\d+|[qpz]\d+)|(?P<imag>i)(?![A-Za-z0-9])|(?P<op>[-+*^/()'])"
)


@dataclass(frozen=True)
class _Tok:
    kind: str  # nat, gen, imag, op, end
    text: str
    pos: int


def _tokenize(text: str) -> List[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExpressionSyntaxError(
                pos, {"number", "generator", "'i'", "'('", "'-'"}, text[pos]
            )
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), pos))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


_ATOM_START = {"number", "generator", "'i'", "'('"}


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def advance(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, expected):
        raise ExpressionSyntaxError(self.tok.pos, expected, self.tok.text)

    def is_op(self, ch: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == ch

    def parse(self) -> Expression:
        e = self.expr()
        if self.tok.kind != "end":
            self.fail({"'+'", "'-'", "'*'", "'^'", "\"'\"", "end of input"})
        return e

    def expr(self) -> Expression:
        start = self.tok.pos
        terms = []
        if self.is_op("-"):
            op = self.advance()
            t = self.term()
            terms.append(Neg(t, (op.pos, _end(t))))
        else:
            terms.append(self.term())
        while self.is_op("+") or self.is_op("-"):
            op = self.advance()
            t = self.term()
            terms.append(Neg(t, (op.pos, _end(t))) if op.text == "-" else t)
        if len(terms) == 1 and not isinstance(terms[0], Neg):
            return terms[0]
        return Sum(tuple(terms), (start, _end(terms[-1])))

    def term(self) -> Expression:
        factors = [self.factor()]
        while self.is_op("*"):
            self.advance()
            factors.append(self.factor())
        if len(factors) == 1:
            return factors[0]
        return Product(tuple(factors), (factors[0].span[0], _end(factors[-1])))

    def factor(self) -> Expression:
        base = self.postfix()
        if self.is_op("^"):
            self.advance()
            if self.tok.kind != "nat":
                self.fail({"natural number"})
            e = self.advance()
            return Power(base, int(e.text), (base.span[0], e.pos + len(e.text)))
        return base

    def postfix(self) -> Expression:
        node = self.atom()
        while self.is_op("'"):
            t = self.advance()
            node = Star(node, (node.span[0], t.pos + 1))
        return node

    def atom(self) -> Expression:
        t = self.tok
        if t.kind == "nat":
            self.advance()
            num = int(t.text)
            end = t.pos + len(t.text)
            if self.is_op("/"):
                self.advance()
                if self.tok.kind != "nat":
                    self.fail({"natural number"})
                d = self.advance()
                if int(d.text) == 0:
                    raise ExpressionSyntaxError(d.pos, {"nonzero denominator"}, d.text)
                end = d.pos + len(d.text)
                return Scalar(GaussianRational(Fraction(num, int(d.text))), (t.pos, end))
            return Scalar(GaussianRational(num), (t.pos, end))
        if t.kind == "imag":
            self.advance()
            return Scalar(I, (t.pos, t.pos + 1))
        if t.kind == "gen":
            self.advance()
            kind = "zb" if t.text.startswith("zb") else t.text[0]
            return Generator(kind, int(t.text[len(kind):]), (t.pos, t.pos + len(t.text)))
        if self.is_op("("):
            self.advance()
            inner = self.expr()
            if not self.is_op(")"):
                self.fail({"')'", "'+'", "'-'", "'*'", "'^'", "\"'\""})
            close = self.advance()
            return _respan(inner, (t.pos, close.pos + 1))
        self.fail(_ATOM_START)


def _end(e: Expression) -> int:
    return e.span[1]


def _respan(e: Expression, span: Span) -> Expression:
    return type(e)(*[getattr(e, f) for f in e.__dataclass_fields__ if f != "span"], span=span)


def parse(text: str) -> Expression:
    """Parse expression text into an AST with source spans."""
    return _Parser(text).parse()


# elaboration -------------------------------------------------------------------

_WEYL_KINDS = {"q", "p"}
_POLY_KINDS = {"z", "zb"}


def generators(e: Expression) -> List[Generator]:
    if isinstance(e, Generator):
        return [e]
    if isinstance(e, Scalar):
        return []
    if isinstance(e, (Sum, Product)):
        children = e.terms if isinstance(e, Sum) else e.factors
        return [g for c in children for g in generators(c)]
    if isinstance(e, Power):
        return generators(e.base)
    return generators(e.child)


def infer_algebra(e: Expression) -> Optional[str]:
    """``"weyl"``, ``"poly"`` or ``None`` for generator-free expressions."""
    gens = generators(e)
    kinds = {g.kind for g in gens}
    if kinds & _WEYL_KINDS and kinds & _POLY_KINDS:
        g = next(g for g in gens if g.kind in _POLY_KINDS)
        raise MixedAlgebra(
            f"position/momentum and z/zb generators mixed at offset {g.span[0]}",
            {"position": g.span[0]},
        )
    if kinds & _WEYL_KINDS:
        return "weyl"
    if kinds & _POLY_KINDS:
        return "poly"
    return None


def max_index(e: Expression) -> int:
    return max((g.index for g in generators(e)), default=-1)


def elaborate(e: Expression, algebra: str, dim: int):
    """Build the element an expression denotes.

    ``dim`` is the Weyl dimension m for ``algebra="weyl"`` and ``n`` for
    ``algebra="poly"`` (so z indices run over 0..n).
    """
    inferred = infer_algebra(e)
    if inferred is not None and inferred != algebra:
        g = generators(e)[0]
        raise MixedAlgebra(
            f"generator {g.kind}{g.index} does not belong to the {algebra} algebra",
            {"position": g.span[0]},
        )
    limit = dim if algebra == "weyl" else dim + 1
    for g in generators(e):
        if g.index >= limit:
            raise IndexOutOfRange(
                f"{g.kind}{g.index} at offset {g.span[0]} exceeds index range 0..{limit - 1}",
                {"position": g.span[0], "index": g.index, "limit": limit - 1},
            )
    if algebra == "weyl":
        one = W.WeylElement.one(dim)
        gen = {"q": lambda j: W.generator_q(j, dim), "p": lambda j: W.generator_p(j, dim)}
    elif algebra == "poly":
        one = P.PolyElement.one(dim)
        gen = {"z": lambda j: P.z(j, dim), "zb": lambda j: P.zb(j, dim)}
    else:
        raise ValueError(f"unknown algebra {algebra!r}")
    return _build(e, one, gen)


def _build(e: Expression, one, gen):
    if isinstance(e, Scalar):
        return one.scale(e.value)
    if isinstance(e, Generator):
        return gen[e.kind](e.index)
    if isinstance(e, Sum):
        out = one.scale(0)
        for t in e.terms:
            out = out + _build(t, one, gen)
        return out
    if isinstance(e, Neg):
        return -_build(e.child, one, gen)
    if isinstance(e, Product):
        out = one
        for f in e.factors:
            out = out * _build(f, one, gen)
        return out
    if isinstance(e, Power):
        return _build(e.base, one, gen) ** e.exponent
    if isinstance(e, Star):
        return _build(e.child, one, gen).star()
    raise TypeError(f"not an expression node: {e!r}")


def parse_element(text: str, algebra: str | None = None, dim: int | None = None):
    """Parse and elaborate in one step, inferring the algebra and size when omitted."""
    e = parse(text)
    algebra = algebra or infer_algebra(e) or "poly"
    if dim is None:
        top = max_index(e)
        dim = max(1, top + 1) if algebra == "weyl" else max(1, top)
    return elaborate(e, algebra, dim)


# rendering -------------------------------------------------------------------------


def _fmt_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _coeff_parts(c: GaussianRational) -> Tuple[bool, Optional[str]]:
    """``(negative, magnitude_text)``; magnitude ``None`` means a unit factor."""
    if c.im == 0:
        mag = abs(c.re)
        return c.re < 0, None if mag == 1 else _fmt_rational(mag)
    if c.re == 0:
        mag = abs(c.im)
        return c.im < 0, "i" if mag == 1 else f"{_fmt_rational(mag)}*i"
    re_txt = ("-" if c.re < 0 else "") + _fmt_rational(abs(c.re))
    im_mag = abs(c.im)
    im_txt = "i" if im_mag == 1 else f"{_fmt_rational(im_mag)}*i"
    return False, f"({re_txt}{'+' if c.im > 0 else '-'}{im_txt})"


def _power(name: str, e: int) -> str:
    return name if e == 1 else f"{name}^{e}"


def _monomial_text(element, mono, offset: int = 0) -> List[str]:
    if isinstance(element, W.WeylElement):
        parts = [_power(f"p{j + offset}", e) for j, e in enumerate(mono.k) if e]
        parts += [_power(f"q{j + offset}", e) for j, e in enumerate(mono.l) if e]
    else:
        parts = [_power(f"z{j}", e) for j, e in enumerate(mono.a) if e]
        parts += [_power(f"zb{j}", e) for j, e in enumerate(mono.b) if e]
    return parts


def render(element, offset: int = 0) -> str:
    """Text form that :func:`parse_element` maps back to the same element.

    ``offset`` shifts the printed Weyl indices; reduced elements of W(R^n) are
    printed with ``offset=1`` so they keep the labels of the coordinates they
    came from.
    """
    terms = element.sorted_terms()
    if not terms:
        return "0"
    pieces = []
    for idx, (mono, c) in enumerate(terms):
        negative, mag = _coeff_parts(c)
        factors = _monomial_text(element, mono, offset)
        body = "*".join(([mag] if mag else []) + factors) or (mag or "1")
        if idx == 0:
            pieces.append(("-" if negative else "") + body)
        else:
            pieces.append((" - " if negative else " + ") + body)
    return "".join(pieces)


def render_scalar(c: GaussianRational) -> str:
    return str(c)
