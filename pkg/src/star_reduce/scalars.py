"""Exact coefficient arithmetic.

``GaussianRational`` is a complex number with rational real and imaginary
parts. ``SymbolicScalar`` is a finite Laurent polynomial in two commuting
formal symbols, pi and k, with Gaussian rational coefficients; it carries the
k-dependent prefactors of the Gaussian compression in :mod:`star_reduce.weyl`
so that the limit k -> infinity is an exact computation.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Tuple, Union

from .errors import LimitDiverges, TranscendentalResidue

RationalLike = Union[int, Fraction]
ScalarLike = Union[int, Fraction, "GaussianRational"]


class GaussianRational:
    """Immutable complex number ``re + i*im`` with ``Fraction`` components."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        if isinstance(x, str):
            return cls.parse(x)
        raise TypeError(f"cannot convert {type(x).__name__} to GaussianRational")

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse ``"3"``, ``"-3/4"``, ``"i"``, ``"2*i"``, ``"1/2-3/4*i"``."""
        s = text.replace(" ", "")
        if not s.endswith("i"):
            return cls(_parse_rational(s, text))
        body = s[:-1]
        if body.endswith("*"):
            body = body[:-1]
            if not body or body[-1] in "+-":
                raise ValueError(f"not a Gaussian rational: {text!r}")
        cut = max(body.rfind("+"), body.rfind("-"))
        if cut > 0:
            re_txt, im_txt = body[:cut], body[cut:]
        else:
            re_txt, im_txt = "", body
        re_part = _parse_rational(re_txt, text) if re_txt else Fraction(0)
        if im_txt in ("", "+", "-"):
            im_part = Fraction(-1 if im_txt == "-" else 1)
        else:
            im_part = _parse_rational(im_txt, text)
        return cls(re_part, im_part)

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        d = self.norm2()
        if d == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational(self.re / d, -self.im / d)

    def __truediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    # predicates -------------------------------------------------------------

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return _fmt_fraction(self.re)
        im_mag = abs(self.im)
        im_txt = "i" if im_mag == 1 else f"{_fmt_fraction(im_mag)}*i"
        if self.re == 0:
            return im_txt if self.im > 0 else f"-{im_txt}"
        sign = "+" if self.im > 0 else "-"
        return f"{_fmt_fraction(self.re)}{sign}{im_txt}"


_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


def _parse_rational(s: str, original: str) -> Fraction:
    if not _RATIONAL.match(s):
        raise ValueError(f"not a Gaussian rational: {original!r}")
    return Fraction(s)


def _fmt_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def as_gaussian(x) -> GaussianRational:
    return GaussianRational.coerce(x)


Exponent = Tuple[int, int]  # (power of pi, power of k)


class SymbolicScalar:
    """Finite sum of ``c * pi**epi * k**ek`` with Gaussian rational ``c``.

    pi and k are treated as positive real commuting symbols, so conjugation
    acts on the coefficients only.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Exponent, ScalarLike] | Iterable = ()):
        items = terms.items() if isinstance(terms, dict) else terms
        clean: Dict[Exponent, GaussianRational] = {}
        for (epi, ek), c in items:
            key = (int(epi), int(ek))
            val = clean.get(key, ZERO) + GaussianRational.coerce(c)
            if val:
                clean[key] = val
            else:
                clean.pop(key, None)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("SymbolicScalar is immutable")

    @classmethod
    def constant(cls, c: ScalarLike) -> "SymbolicScalar":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, c: ScalarLike, epi: int, ek: int) -> "SymbolicScalar":
        return cls({(epi, ek): c})

    def __add__(self, other):
        other = _coerce_symbolic(other)
        if other is None:
            return NotImplemented
        return SymbolicScalar(list(self.terms.items()) + list(other.terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return SymbolicScalar({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce_symbolic(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce_symbolic(other)
        if other is None:
            return NotImplemented
        out = []
        for (p1, k1), c1 in self.terms.items():
            for (p2, k2), c2 in other.terms.items():
                out.append(((p1 + p2, k1 + k2), c1 * c2))
        return SymbolicScalar(out)

    __rmul__ = __mul__

    def conj(self) -> "SymbolicScalar":
        return SymbolicScalar({e: c.conj() for e, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = _coerce_symbolic(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self):
        return f"SymbolicScalar({dict(self.sorted_terms())!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (epi, ek), c in self.sorted_terms():
            factors = [f"({c})"]
            if epi:
                factors.append("pi" if epi == 1 else f"pi^{epi}")
            if ek:
                factors.append("k" if ek == 1 else f"k^{ek}")
            parts.append("*".join(factors))
        return " + ".join(parts)


def _coerce_symbolic(x):
    if isinstance(x, SymbolicScalar):
        return x
    try:
        return SymbolicScalar.constant(GaussianRational.coerce(x))
    except TypeError:
        return None


def double_factorial(n: int) -> int:
    """``n!!`` with the convention ``(-1)!! = 0!! = 1``."""
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def gaussian_moment(m: int) -> SymbolicScalar:
    """Moment ``(1/k) * integral x**m exp(-pi x**2 / k**2) dx`` as a symbolic scalar.

    Zero for odd ``m``; ``(2j-1)!! / 2**j * pi**(-j) * k**(2j)`` for ``m = 2j``.
    """
    if m < 0:
        raise ValueError("moment order must be nonnegative")
    if m % 2:
        return SymbolicScalar()
    j = m // 2
    return SymbolicScalar.monomial(Fraction(double_factorial(2 * j - 1), 2**j), -j, 2 * j)


def k_limit(x: SymbolicScalar) -> GaussianRational:
    """Exact limit k -> infinity of a symbolic scalar."""
    for (epi, ek), c in x.terms.items():
        if ek > 0:
            raise LimitDiverges(
                f"term with k^{ek} diverges", {"epi": epi, "ek": ek, "c": str(c)}
            )
        if ek == 0 and epi != 0:
            raise TranscendentalResidue(
                f"limit retains pi^{epi}", {"epi": epi, "ek": ek, "c": str(c)}
            )
    return x.terms.get((0, 0), ZERO)
