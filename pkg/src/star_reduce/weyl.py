"""The Weyl algebra W(R^m) in the normal-ordered basis p^k q^l.

Elements are finite maps from monomials ``p^k q^l`` (all momentum factors to
the left of all position factors) to Gaussian rational coefficients. The
commutation rule is ``q_j p_j = p_j q_j + i`` with distinct coordinates
commuting, and the Poisson bracket is ``{a, b} = -i (ab - ba)``.

Coordinate 0 carries the translation symmetry generated by ``p_0``. The
functions after the basic arithmetic implement its invariants, the splitting
of invariant elements along ``p_0 - mu``, the reduction map onto W(R^{m-1}),
and the Gaussian compression whose k -> infinity limit recovers the reduction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, List, NamedTuple, Tuple

from .errors import DimensionMismatch, DimensionTooSmall, NonRealMu, NotInvariant
from .scalars import (
    I,
    ONE,
    ZERO,
    GaussianRational,
    SymbolicScalar,
    as_gaussian,
    gaussian_moment,
    k_limit,
)

__all__ = [
    "WeylMonomial",
    "WeylElement",
    "CentralTaylorForm",
    "generator_q",
    "generator_p",
    "number_operator",
    "mul",
    "star",
    "poisson",
    "is_invariant",
    "central_taylor",
    "decompose",
    "reduce",
    "alpha",
    "compress",
    "compress_limit",
]


class WeylMonomial(NamedTuple):
    k: Tuple[int, ...]  # momentum exponents
    l: Tuple[int, ...]  # position exponents

    @property
    def degree(self) -> int:
        return sum(self.k) + sum(self.l)

    def sort_key(self):
        return (self.degree, self.k, self.l)


class WeylElement:
    """Immutable element of W(R^dim)."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms=()):
        if dim < 1:
            raise ValueError("Weyl algebra dimension must be positive")
        items = terms.items() if isinstance(terms, dict) else terms
        clean: Dict[WeylMonomial, GaussianRational] = {}
        for mono, c in items:
            mono = WeylMonomial(tuple(mono[0]), tuple(mono[1]))
            if len(mono.k) != dim or len(mono.l) != dim:
                raise DimensionMismatch(f"monomial {mono} does not live in W(R^{dim})")
            val = clean.get(mono, ZERO) + as_gaussian(c)
            if val:
                clean[mono] = val
            else:
                clean.pop(mono, None)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("WeylElement is immutable")

    @classmethod
    def _raw(cls, dim: int, terms: Dict[WeylMonomial, GaussianRational]) -> "WeylElement":
        obj = object.__new__(cls)
        object.__setattr__(obj, "dim", dim)
        object.__setattr__(obj, "terms", terms)
        return obj

    @classmethod
    def zero(cls, dim: int) -> "WeylElement":
        return cls._raw(dim, {})

    @classmethod
    def scalar(cls, c, dim: int) -> "WeylElement":
        c = as_gaussian(c)
        if not c:
            return cls.zero(dim)
        return cls._raw(dim, {WeylMonomial((0,) * dim, (0,) * dim): c})

    @classmethod
    def one(cls, dim: int) -> "WeylElement":
        return cls.scalar(ONE, dim)

    @classmethod
    def monomial(cls, k, l, c=ONE) -> "WeylElement":
        return cls(len(k), {(tuple(k), tuple(l)): c})

    # ring structure ----------------------------------------------------------

    def _coerce(self, other) -> "WeylElement | None":
        if isinstance(other, WeylElement):
            if other.dim != self.dim:
                raise DimensionMismatch(f"W(R^{self.dim}) vs W(R^{other.dim})")
            return other
        try:
            return WeylElement.scalar(as_gaussian(other), self.dim)
        except TypeError:
            return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for mono, c in other.terms.items():
            val = out.get(mono, ZERO) + c
            if val:
                out[mono] = val
            else:
                out.pop(mono, None)
        return WeylElement._raw(self.dim, out)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement._raw(self.dim, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "WeylElement":
        c = as_gaussian(c)
        if not c:
            return WeylElement.zero(self.dim)
        return WeylElement._raw(self.dim, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, WeylElement):
            return mul(self, other)
        try:
            return self.scale(as_gaussian(other))
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(as_gaussian(other))
        except TypeError:
            return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = WeylElement.one(self.dim)
        base = self
        while e:
            if e & 1:
                result = mul(result, base)
            base = mul(base, base)
            e >>= 1
        return result

    def star(self) -> "WeylElement":
        return star(self)

    def __eq__(self, other):
        if isinstance(other, WeylElement):
            return self.dim == other.dim and self.terms == other.terms
        try:
            c = as_gaussian(other)
        except TypeError:
            return NotImplemented
        return self == WeylElement.scalar(c, self.dim)

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((m.degree for m in self.terms), default=0)

    def sorted_terms(self) -> List[Tuple[WeylMonomial, GaussianRational]]:
        """Terms in graded-lexicographic order on (|k|+|l|, k, l)."""
        return sorted(self.terms.items(), key=lambda t: t[0].sort_key())

    def __repr__(self):
        from .parser import render

        return f"WeylElement({self.dim}, {render(self)!r})"

    def __str__(self):
        from .parser import render

        return render(self)


def generator_q(j: int, dim: int) -> WeylElement:
    l = [0] * dim
    l[j] = 1
    return WeylElement._raw(dim, {WeylMonomial((0,) * dim, tuple(l)): ONE})


def generator_p(j: int, dim: int) -> WeylElement:
    k = [0] * dim
    k[j] = 1
    return WeylElement._raw(dim, {WeylMonomial(tuple(k), (0,) * dim): ONE})


def number_operator(dim: int = 1) -> WeylElement:
    """``N = 1/2 * sum_j (q_j + i p_j)^* (q_j + i p_j)``."""
    out = WeylElement.zero(dim)
    for j in range(dim):
        a = generator_q(j, dim) + generator_p(j, dim).scale(I)
        out = out + mul(star(a), a)
    return out.scale(Fraction(1, 2))


# multiplication --------------------------------------------------------------


@lru_cache(maxsize=None)
def _reorder(l: int, m: int) -> Tuple[Tuple[int, GaussianRational], ...]:
    """``q^l p^m = sum_r coeff_r p^(m-r) q^(l-r)`` for a single coordinate."""
    out = []
    for r in range(min(l, m) + 1):
        c = factorial(r) * comb(l, r) * comb(m, r)
        out.append((r, I**r * c))
    return tuple(out)


def _mul_monomials(x: WeylMonomial, y: WeylMonomial):
    """Yield ``(monomial, coeff)`` for ``(p^k q^l)(p^k' q^l')``."""
    per_coord = []
    for j in range(len(x.k)):
        lj, mj = x.l[j], y.k[j]
        if lj == 0 or mj == 0:
            per_coord.append(((0, ONE),))
        else:
            per_coord.append(_reorder(lj, mj))
    for choice in itertools.product(*per_coord):
        coeff = ONE
        k = []
        l = []
        for j, (r, c) in enumerate(choice):
            if r:
                coeff = coeff * c
            k.append(x.k[j] + y.k[j] - r)
            l.append(x.l[j] - r + y.l[j])
        yield WeylMonomial(tuple(k), tuple(l)), coeff


def mul(a: WeylElement, b: WeylElement) -> WeylElement:
    """Product in the normal-ordered basis."""
    if a.dim != b.dim:
        raise DimensionMismatch(f"W(R^{a.dim}) vs W(R^{b.dim})")
    out: Dict[WeylMonomial, GaussianRational] = {}
    for x, cx in a.terms.items():
        for y, cy in b.terms.items():
            cxy = cx * cy
            for mono, c in _mul_monomials(x, y):
                val = out.get(mono, ZERO) + cxy * c
                if val:
                    out[mono] = val
                else:
                    out.pop(mono, None)
    return WeylElement._raw(a.dim, out)


def star(a: WeylElement) -> WeylElement:
    """Antilinear involution: ``(c p^k q^l)^* = conj(c) q^l p^k``, renormal-ordered."""
    zeros = (0,) * a.dim
    out: Dict[WeylMonomial, GaussianRational] = {}
    for mono, c in a.terms.items():
        cc = c.conj()
        for m2, c2 in _mul_monomials(WeylMonomial(zeros, mono.l), WeylMonomial(mono.k, zeros)):
            val = out.get(m2, ZERO) + cc * c2
            if val:
                out[m2] = val
            else:
                out.pop(m2, None)
    return WeylElement._raw(a.dim, out)


def poisson(a: WeylElement, b: WeylElement) -> WeylElement:
    """``{a, b} = -i (ab - ba)``."""
    return (mul(a, b) - mul(b, a)).scale(-I)


# the p_0 symmetry -------------------------------------------------------------


def is_invariant(a: WeylElement) -> bool:
    """True iff no monomial contains ``q_0``, i.e. ``{a, p_0} = 0``."""
    return all(m.l[0] == 0 for m in a.terms)


def _check_invariant_real(a: WeylElement, mu) -> GaussianRational:
    mu = as_gaussian(mu)
    if not mu.is_real():
        raise NonRealMu(f"mu must be real, got {mu}", str(mu))
    if not is_invariant(a):
        bad = next(m for m in a.terms if m.l[0] != 0)
        raise NotInvariant("element contains q_0", {"monomial": {"k": list(bad.k), "l": list(bad.l)}})
    return mu


@dataclass(frozen=True)
class CentralTaylorForm:
    """``a = sum_l (p_0 - mu)^l parts[l]`` with parts free of ``p_0`` and ``q_0``."""

    mu: GaussianRational
    parts: Tuple[WeylElement, ...]

    def reassemble(self, dim: int | None = None) -> WeylElement:
        if not self.parts:
            if dim is None:
                raise ValueError("dimension needed to reassemble an empty form")
            return WeylElement.zero(dim)
        d = self.parts[0].dim
        shift = generator_p(0, d) - self.mu
        out = WeylElement.zero(d)
        power = WeylElement.one(d)
        for part in self.parts:
            out = out + mul(power, part)
            power = mul(power, shift)
        return out


def central_taylor(a: WeylElement, mu) -> CentralTaylorForm:
    """Expand an invariant element in powers of the central element ``p_0 - mu``.

    Uses ``p_0^k = sum_l C(k, l) mu^(k-l) (p_0 - mu)^l`` on each monomial.
    """
    mu = _check_invariant_real(a, mu)
    buckets: Dict[int, Dict[WeylMonomial, GaussianRational]] = {}
    for mono, c in a.terms.items():
        k0 = mono.k[0]
        rest = WeylMonomial((0,) + mono.k[1:], mono.l)
        for ell in range(k0 + 1):
            coeff = c * comb(k0, ell) * mu ** (k0 - ell)
            if not coeff:
                continue
            bucket = buckets.setdefault(ell, {})
            val = bucket.get(rest, ZERO) + coeff
            if val:
                bucket[rest] = val
            else:
                bucket.pop(rest, None)
    top = max((ell for ell, b in buckets.items() if b), default=-1)
    parts = tuple(WeylElement._raw(a.dim, buckets.get(ell, {})) for ell in range(top + 1))
    return CentralTaylorForm(mu, parts)


def decompose(a: WeylElement, mu):
    """Split an invariant element as ``(p_0 - mu) * cofactor + complement``.

    Returns ``(ideal_part, cofactor, complement)``; the complement contains
    neither ``p_0`` nor ``q_0``, and the splitting is unique.
    """
    form = central_taylor(a, mu)
    zero = WeylElement.zero(a.dim)
    if not form.parts:
        return zero, zero, zero
    complement = form.parts[0]
    tail = CentralTaylorForm(form.mu, form.parts[1:])
    cofactor = tail.reassemble(a.dim)
    ideal_part = a - complement
    return ideal_part, cofactor, complement


def _drop_coordinate_zero(mono: WeylMonomial) -> WeylMonomial:
    return WeylMonomial(mono.k[1:], mono.l[1:])


def reduce(a: WeylElement, mu) -> WeylElement:
    """The reduction map ``[p^k q^l]_mu = mu^k0 p^k' q^l'`` into W(R^{dim-1})."""
    mu = _check_invariant_real(a, mu)
    if a.dim < 2:
        raise DimensionTooSmall("reduction needs W(R^{1+n}) with n >= 1", a.dim)
    out: Dict[WeylMonomial, GaussianRational] = {}
    for mono, c in a.terms.items():
        target = _drop_coordinate_zero(mono)
        val = out.get(target, ZERO) + c * mu ** mono.k[0]
        if val:
            out[target] = val
        else:
            out.pop(target, None)
    return WeylElement._raw(a.dim - 1, out)


# Gaussian compression ----------------------------------------------------------


@lru_cache(maxsize=None)
def alpha(ell: int) -> Tuple[SymbolicScalar, ...]:
    """Coefficients with ``(p_0 - mu)^ell iota_k = sum_m alpha[m] q_0^m iota_k``.

    Recurrence: ``alpha[l+1][m] = i pi k^-2 alpha[l][m-1] + pi k^-2 l alpha[l-1][m]``.
    """
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    step = SymbolicScalar.monomial(ONE, 1, -2)  # pi k^-2
    rows: List[List[SymbolicScalar]] = [[SymbolicScalar.constant(ONE)]]
    for L in range(ell):
        prev = rows[L]
        prev2 = rows[L - 1] if L >= 1 else []
        row = []
        for m in range(L + 2):
            val = SymbolicScalar()
            if 1 <= m <= L + 1 and m - 1 < len(prev):
                val = val + step * prev[m - 1] * I
            if m < len(prev2):
                val = val + step * prev2[m] * L
            row.append(val)
        rows.append(row)
    return tuple(rows[ell])


@lru_cache(maxsize=None)
def _compression_factor(ell: int) -> SymbolicScalar:
    """``sum_m alpha[ell][m] * c_m`` with ``c_m`` the Gaussian moments."""
    total = SymbolicScalar()
    for m, a in enumerate(alpha(ell)):
        if a:
            total = total + a * gaussian_moment(m)
    return total


def compress(a: WeylElement, mu) -> Dict[WeylMonomial, SymbolicScalar]:
    """``iota_k^* a iota_k`` as a W(R^{dim-1}) element with symbolic coefficients."""
    form = central_taylor(a, mu)
    if a.dim < 2:
        raise DimensionTooSmall("compression needs W(R^{1+n}) with n >= 1", a.dim)
    out: Dict[WeylMonomial, SymbolicScalar] = {}
    for ell, part in enumerate(form.parts):
        factor = _compression_factor(ell)
        if not factor:
            continue
        for mono, c in part.terms.items():
            target = _drop_coordinate_zero(mono)
            val = out.get(target, SymbolicScalar()) + factor * c
            if val:
                out[target] = val
            else:
                out.pop(target, None)
    return out


def compress_limit(a: WeylElement, mu) -> WeylElement:
    """Coefficientwise k -> infinity limit of :func:`compress`."""
    compressed = compress(a, mu)
    return WeylElement(a.dim - 1, {m: k_limit(s) for m, s in compressed.items()})
