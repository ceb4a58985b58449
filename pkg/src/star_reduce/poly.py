"""The polynomial *-algebra P(C^{1+n}) in z_i and their conjugates zb_i.

A monomial ``z^a zb^b`` has bidegree ``(|a|, |b|)``; the U(1) symmetry
``z -> e^{it} z`` fixes exactly the bidegree-diagonal part. A signature
``s`` fixes the weights ``nu_i = +1 (i < s), -1 (i >= s)`` entering both the
Poisson bracket and the momentum map ``J = sum_i nu_i z_i zb_i``.

Membership in the ideal generated by ``J - mu`` inside the invariant
subalgebra is decided by homogenization: an invariant ``f`` with diagonal
components ``f_0, ..., f_d`` lies in the ideal iff
``sum_l (J/mu)^(d-l) f_l`` vanishes identically.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Sequence, Tuple

from .errors import (
    DimensionMismatch,
    NonPositiveMu,
    NotAHomMatrix,
    NotInvariant,
    ZeroMomentumPoint,
)
from .scalars import I, ONE, ZERO, GaussianRational, as_gaussian

__all__ = [
    "Signature",
    "PolyMonomial",
    "PolyElement",
    "ProjPoint",
    "HomMatrix",
    "HomClass",
    "z",
    "zb",
    "poisson",
    "momentum",
    "average",
    "homogeneous_components",
    "homogenize",
    "ideal_member",
    "reduced_equal",
    "evaluate",
    "evaluate_float",
    "momentum_value",
    "reduced_evaluate",
    "hom_matrix",
    "reconstruct_point",
    "classify_hom",
]


@dataclass(frozen=True)
class Signature:
    n: int
    s: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if not 1 <= self.s <= 1 + self.n:
            raise ValueError(f"signature s must lie in 1..{1 + self.n}, got {self.s}")

    @property
    def nu(self) -> Tuple[int, ...]:
        return tuple(1 if i < self.s else -1 for i in range(self.n + 1))


class PolyMonomial(NamedTuple):
    a: Tuple[int, ...]  # z exponents
    b: Tuple[int, ...]  # zb exponents

    @property
    def bidegree(self) -> Tuple[int, int]:
        return sum(self.a), sum(self.b)

    def is_diagonal(self) -> bool:
        return sum(self.a) == sum(self.b)

    def sort_key(self):
        return (sum(self.a) + sum(self.b), self.a, self.b)


class PolyElement:
    """Immutable element of P(C^{1+n})."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=()):
        if n < 1:
            raise ValueError("n must be positive")
        items = terms.items() if isinstance(terms, dict) else terms
        clean: Dict[PolyMonomial, GaussianRational] = {}
        for mono, c in items:
            mono = PolyMonomial(tuple(mono[0]), tuple(mono[1]))
            if len(mono.a) != n + 1 or len(mono.b) != n + 1:
                raise DimensionMismatch(f"monomial {mono} does not live in P(C^{n + 1})")
            val = clean.get(mono, ZERO) + as_gaussian(c)
            if val:
                clean[mono] = val
            else:
                clean.pop(mono, None)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("PolyElement is immutable")

    @classmethod
    def _raw(cls, n: int, terms) -> "PolyElement":
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "terms", terms)
        return obj

    @classmethod
    def zero(cls, n: int) -> "PolyElement":
        return cls._raw(n, {})

    @classmethod
    def scalar(cls, c, n: int) -> "PolyElement":
        c = as_gaussian(c)
        if not c:
            return cls.zero(n)
        z0 = (0,) * (n + 1)
        return cls._raw(n, {PolyMonomial(z0, z0): c})

    @classmethod
    def one(cls, n: int) -> "PolyElement":
        return cls.scalar(ONE, n)

    def _coerce(self, other):
        if isinstance(other, PolyElement):
            if other.n != self.n:
                raise DimensionMismatch(f"P(C^{self.n + 1}) vs P(C^{other.n + 1})")
            return other
        try:
            return PolyElement.scalar(as_gaussian(other), self.n)
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
        return PolyElement._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return PolyElement._raw(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "PolyElement":
        c = as_gaussian(c)
        if not c:
            return PolyElement.zero(self.n)
        return PolyElement._raw(self.n, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, PolyElement):
            try:
                return self.scale(as_gaussian(other))
            except TypeError:
                return NotImplemented
        other = self._coerce(other)
        out: Dict[PolyMonomial, GaussianRational] = {}
        for x, cx in self.terms.items():
            for y, cy in other.terms.items():
                mono = PolyMonomial(
                    tuple(i + j for i, j in zip(x.a, y.a)),
                    tuple(i + j for i, j in zip(x.b, y.b)),
                )
                val = out.get(mono, ZERO) + cx * cy
                if val:
                    out[mono] = val
                else:
                    out.pop(mono, None)
        return PolyElement._raw(self.n, out)

    def __rmul__(self, other):
        try:
            return self.scale(as_gaussian(other))
        except TypeError:
            return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = PolyElement.one(self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def star(self) -> "PolyElement":
        """Pointwise conjugation: swap z and zb exponents, conjugate coefficients."""
        return PolyElement._raw(
            self.n, {PolyMonomial(m.b, m.a): c.conj() for m, c in self.terms.items()}
        )

    def is_invariant(self) -> bool:
        return all(m.is_diagonal() for m in self.terms)

    def is_hermitian(self) -> bool:
        return self == self.star()

    def derivative(self, j: int, conjugate: bool = False) -> "PolyElement":
        """Formal partial derivative along ``z_j`` (or ``zb_j`` when ``conjugate``)."""
        out: Dict[PolyMonomial, GaussianRational] = {}
        for m, c in self.terms.items():
            exps = m.b if conjugate else m.a
            e = exps[j]
            if e == 0:
                continue
            lowered = exps[:j] + (e - 1,) + exps[j + 1 :]
            mono = PolyMonomial(m.a, lowered) if conjugate else PolyMonomial(lowered, m.b)
            out[mono] = out.get(mono, ZERO) + c * e
        return PolyElement._raw(self.n, {m: c for m, c in out.items() if c})

    def __eq__(self, other):
        if isinstance(other, PolyElement):
            return self.n == other.n and self.terms == other.terms
        try:
            c = as_gaussian(other)
        except TypeError:
            return NotImplemented
        return self == PolyElement.scalar(c, self.n)

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((sum(m.a) + sum(m.b) for m in self.terms), default=0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0].sort_key())

    def __repr__(self):
        from .parser import render

        return f"PolyElement({self.n}, {render(self)!r})"

    def __str__(self):
        from .parser import render

        return render(self)


def z(i: int, n: int) -> PolyElement:
    a = [0] * (n + 1)
    a[i] = 1
    return PolyElement._raw(n, {PolyMonomial(tuple(a), (0,) * (n + 1)): ONE})


def zb(i: int, n: int) -> PolyElement:
    b = [0] * (n + 1)
    b[i] = 1
    return PolyElement._raw(n, {PolyMonomial((0,) * (n + 1), tuple(b)): ONE})


def _check_dim(f: PolyElement, sig: Signature):
    if f.n != sig.n:
        raise DimensionMismatch(f"element in P(C^{f.n + 1}) but signature has n={sig.n}")


def poisson(f: PolyElement, g: PolyElement, sig: Signature) -> PolyElement:
    """``(1/i) sum_j nu_j (df/dzb_j dg/dz_j - df/dz_j dg/dzb_j)``."""
    if f.n != g.n:
        raise DimensionMismatch(f"P(C^{f.n + 1}) vs P(C^{g.n + 1})")
    _check_dim(f, sig)
    total = PolyElement.zero(f.n)
    for j, nu in enumerate(sig.nu):
        term = f.derivative(j, True) * g.derivative(j) - f.derivative(j) * g.derivative(j, True)
        total = total + term.scale(nu)
    return total.scale(-I)


def momentum(sig: Signature) -> PolyElement:
    """``J = sum_i nu_i z_i zb_i``."""
    terms = {}
    for i, nu in enumerate(sig.nu):
        e = tuple(1 if j == i else 0 for j in range(sig.n + 1))
        terms[PolyMonomial(e, e)] = GaussianRational(nu)
    return PolyElement._raw(sig.n, terms)


def average(f: PolyElement) -> PolyElement:
    """U(1) average: keep exactly the bidegree-diagonal monomials."""
    return PolyElement._raw(f.n, {m: c for m, c in f.terms.items() if m.is_diagonal()})


def homogeneous_components(f: PolyElement) -> Dict[int, PolyElement]:
    """Split an invariant element into its ``(l, l)`` components."""
    buckets: Dict[int, Dict[PolyMonomial, GaussianRational]] = {}
    for m, c in f.terms.items():
        buckets.setdefault(sum(m.a), {})[m] = c
    return {ell: PolyElement._raw(f.n, b) for ell, b in buckets.items()}


def _check_reduction_args(f: PolyElement, sig: Signature, mu) -> GaussianRational:
    _check_dim(f, sig)
    mu = as_gaussian(mu)
    if not mu.is_real() or mu.re <= 0:
        raise NonPositiveMu(f"mu must be a positive rational, got {mu}", str(mu))
    if not f.is_invariant():
        bad = next(m for m in f.terms if not m.is_diagonal())
        raise NotInvariant(
            "element is not U(1)-invariant",
            {"monomial": {"a": list(bad.a), "b": list(bad.b)}},
        )
    return mu


def homogenize(f: PolyElement, sig: Signature, mu) -> Tuple[PolyElement, PolyElement]:
    """Return ``(f_h, cofactor)`` with ``f - f_h = (mu - J) * cofactor``.

    ``f_h = sum_l (J/mu)^(d-l) f_l`` is bihomogeneous of bidegree ``(d, d)``.
    """
    mu = _check_reduction_args(f, sig, mu)
    n = f.n
    if f.is_zero():
        return PolyElement.zero(n), PolyElement.zero(n)
    comps = homogeneous_components(f)
    d = max(comps)
    J = momentum(sig)
    J_powers = [PolyElement.one(n)]
    for _ in range(d):
        J_powers.append(J_powers[-1] * J)
    inv_mu = mu.inverse()
    f_h = PolyElement.zero(n)
    cofactor = PolyElement.zero(n)
    for ell, f_ell in comps.items():
        gap = d - ell
        f_h = f_h + (J_powers[gap] * f_ell).scale(inv_mu**gap)
        if gap:
            inner = PolyElement.zero(n)
            for k in range(1, gap + 1):
                inner = inner + J_powers[k - 1].scale(mu ** (gap - k))
            cofactor = cofactor + (f_ell * inner).scale(inv_mu**gap)
    return f_h, cofactor


def ideal_member(f: PolyElement, sig: Signature, mu) -> Tuple[bool, PolyElement]:
    """Decide ``f in <J - mu>``.

    Returns ``(True, g)`` with ``f = (mu - J) * g`` or ``(False, f_h)`` where
    the nonzero homogenization ``f_h`` is the obstruction.
    """
    f_h, cofactor = homogenize(f, sig, mu)
    if f_h.is_zero():
        return True, cofactor
    return False, f_h


def reduced_equal(f: PolyElement, g: PolyElement, sig: Signature, mu) -> bool:
    """Equality of ``[f]_mu`` and ``[g]_mu`` in the reduced algebra."""
    if f.n != g.n:
        raise DimensionMismatch(f"P(C^{f.n + 1}) vs P(C^{g.n + 1})")
    return ideal_member(f - g, sig, mu)[0]


def _as_point(w, n: int | None = None) -> Tuple[GaussianRational, ...]:
    if isinstance(w, ProjPoint):
        w = w.w
    w = tuple(as_gaussian(x) for x in w)
    if n is not None and len(w) != n + 1:
        raise DimensionMismatch(f"point has {len(w)} coordinates, expected {n + 1}")
    return w


def evaluate(f: PolyElement, w: Sequence) -> GaussianRational:
    """Substitute ``w_i`` for ``z_i`` and ``conj(w_i)`` for ``zb_i``."""
    w = _as_point(w, f.n)
    wb = tuple(x.conj() for x in w)
    total = ZERO
    for m, c in f.terms.items():
        val = c
        for i in range(f.n + 1):
            if m.a[i]:
                val = val * w[i] ** m.a[i]
            if m.b[i]:
                val = val * wb[i] ** m.b[i]
        total = total + val
    return total


def evaluate_float(f: PolyElement, w) -> complex:
    """Floating-point evaluation at a complex vector."""
    w = [complex(x) for x in w]
    if len(w) != f.n + 1:
        raise DimensionMismatch(f"point has {len(w)} coordinates, expected {f.n + 1}")
    wb = [x.conjugate() for x in w]
    total = 0j
    for m, c in f.terms.items():
        val = complex(c)
        for i in range(f.n + 1):
            if m.a[i]:
                val *= w[i] ** m.a[i]
            if m.b[i]:
                val *= wb[i] ** m.b[i]
        total += val
    return total


def momentum_value(w, sig: Signature) -> GaussianRational:
    w = _as_point(w, sig.n)
    return sum((x * x.conj() * nu for x, nu in zip(w, sig.nu)), ZERO)


class ProjPoint:
    """A point of CP^n, compared projectively by cross-multiplication."""

    __slots__ = ("w",)

    def __init__(self, w: Sequence):
        w = tuple(as_gaussian(x) for x in w)
        if not any(w):
            raise ValueError("projective point needs a nonzero representative")
        object.__setattr__(self, "w", w)

    def __setattr__(self, name, value):
        raise AttributeError("ProjPoint is immutable")

    @property
    def n(self) -> int:
        return len(self.w) - 1

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        if len(self.w) != len(other.w):
            return False
        u, v = self.w, other.w
        return all(
            u[i] * v[j] == u[j] * v[i] for i in range(len(u)) for j in range(i + 1, len(u))
        ) and all((u[i] == 0) == (v[i] == 0) for i in range(len(u)))

    __hash__ = None

    def __repr__(self):
        return f"ProjPoint([{', '.join(str(x) for x in self.w)}])"


def _nonzero_momentum(w: ProjPoint, sig: Signature) -> GaussianRational:
    if w.n != sig.n:
        raise DimensionMismatch(f"point in CP^{w.n} but signature has n={sig.n}")
    Jw = momentum_value(w, sig)
    if not Jw:
        raise ZeroMomentumPoint("J(w) = 0", [str(x) for x in w.w])
    return Jw


def reduced_evaluate(f: PolyElement, w: ProjPoint, sig: Signature, mu) -> GaussianRational:
    """``delta_[w]([f]_mu) = sum_l f_l(w) (mu / J(w))^l``."""
    if not isinstance(w, ProjPoint):
        w = ProjPoint(w)
    mu = _check_reduction_args(f, sig, mu)
    ratio = mu / _nonzero_momentum(w, sig)
    total = ZERO
    for ell, f_ell in homogeneous_components(f).items():
        total = total + evaluate(f_ell, w.w) * ratio**ell
    return total


@dataclass(frozen=True)
class HomMatrix:
    """Square matrix of Gaussian rationals, stored row-major."""

    rows: Tuple[Tuple[GaussianRational, ...], ...]

    @classmethod
    def from_rows(cls, rows) -> "HomMatrix":
        return cls(tuple(tuple(as_gaussian(x) for x in row) for row in rows))

    @property
    def size(self) -> int:
        return len(self.rows)

    def adjoint(self) -> "HomMatrix":
        k = self.size
        return HomMatrix(tuple(tuple(self.rows[j][i].conj() for j in range(k)) for i in range(k)))

    def violations(self, sig: Signature) -> List[str]:
        """Names of the failed conditions among idempotent / hermitian / trace."""
        k = self.size
        if k != sig.n + 1 or any(len(r) != k for r in self.rows):
            return ["shape"]
        nu = sig.nu
        nx = [[self.rows[i][j] * nu[i] for j in range(k)] for i in range(k)]
        failed = []
        sq = [[sum((nx[i][t] * nx[t][j] for t in range(k)), ZERO) for j in range(k)] for i in range(k)]
        if sq != nx:
            failed.append("idempotent")
        if self.adjoint() != self:
            failed.append("hermitian")
        if sum((nx[i][i] for i in range(k)), ZERO) != ONE:
            failed.append("trace")
        return failed


def hom_matrix(w: ProjPoint, sig: Signature) -> HomMatrix:
    """``X_ij = w_i conj(w_j) / J(w)``."""
    if not isinstance(w, ProjPoint):
        w = ProjPoint(w)
    inv = _nonzero_momentum(w, sig).inverse()
    return HomMatrix(tuple(tuple(wi * wj.conj() * inv for wj in w.w) for wi in w.w))


def reconstruct_point(X: HomMatrix, sig: Signature) -> ProjPoint:
    """Recover ``[w]`` from a matrix satisfying the three conditions.

    Every nonzero column is proportional to ``w``; the lowest-index one is used.
    """
    failed = X.violations(sig)
    if failed:
        raise NotAHomMatrix(f"conditions violated: {', '.join(failed)}", failed)
    for j in range(X.size):
        col = [X.rows[i][j] for i in range(X.size)]
        if any(col):
            return ProjPoint(col)
    raise NotAHomMatrix("zero matrix", ["trace"])


class HomClass(enum.Enum):
    InsideMred = "inside"
    OutsideMred = "outside"


def classify_hom(w: ProjPoint, sig: Signature, mu=1) -> HomClass:
    """Whether ``delta_[w]`` is positive, i.e. ``J(w) > 0``.

    The sign of ``J(w)`` is cross-checked against the value of ``delta_[w]`` on
    ``sum_{i >= s} z_i zb_i``.
    """
    if not isinstance(w, ProjPoint):
        w = ProjPoint(w)
    Jw = _nonzero_momentum(w, sig)
    G = sum((z(i, sig.n) * zb(i, sig.n) for i in range(sig.s, sig.n + 1)), PolyElement.zero(sig.n))
    gen_value = reduced_evaluate(G, w, sig, mu)
    inside = Jw.re > 0
    if inside != (gen_value.re >= 0):
        raise AssertionError(f"sign test disagrees with J(w) = {Jw} at {w}")
    return HomClass.InsideMred if inside else HomClass.OutsideMred
