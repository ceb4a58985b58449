"""Concrete states on the polynomial and Weyl algebras.

Exact kinds (point evaluations, reduced point evaluations, mixtures of those,
and the averaged pull-back) return :class:`GaussianRational` values. Hermite
vector states realize q and p as truncated ladder matrices and return complex
floats; they are the only floating-point path.

Truncation contract for Hermite states: a monomial of degree d applied to a
vector supported on the first ``N - d`` basis states is computed without
truncation error. :func:`state_expect` refuses anything outside that range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Tuple, Union

import numpy as np

from . import poly as P
from . import weyl as W
from .errors import (
    AlgebraMismatch,
    InvalidState,
    NotReducible,
    TruncationTooSmall,
    WeylHasNoEigenstates,
)
from .scalars import ONE, ZERO, GaussianRational, as_gaussian

DEFAULT_TRUNCATION = 64
HERMITE_TOL = 1e-9


@dataclass(frozen=True)
class PointEvaluation:
    """``f -> f(w)`` on P(C^{1+n})."""

    w: Tuple[GaussianRational, ...]

    def __post_init__(self):
        object.__setattr__(self, "w", tuple(as_gaussian(x) for x in self.w))
        if len(self.w) < 2:
            raise InvalidState("point evaluation needs at least two coordinates")

    @property
    def algebra(self):
        return ("poly", len(self.w) - 1)


@dataclass(frozen=True)
class ReducedPointEvaluation:
    """``delta_[w]`` on the reduced algebra, applied to invariant representatives."""

    w: P.ProjPoint
    sig: P.Signature
    mu: GaussianRational

    def __post_init__(self):
        if not isinstance(self.w, P.ProjPoint):
            object.__setattr__(self, "w", P.ProjPoint(self.w))
        object.__setattr__(self, "mu", as_gaussian(self.mu))
        if self.w.n != self.sig.n:
            raise InvalidState("point and signature dimensions differ")
        if not self.mu.is_real() or self.mu.re <= 0:
            raise InvalidState(f"mu must be a positive rational, got {self.mu}")
        if P.momentum_value(self.w, self.sig).re <= 0:
            raise InvalidState("reduced evaluation is a state only for J(w) > 0")

    @property
    def algebra(self):
        return ("poly", self.sig.n)


@dataclass(frozen=True)
class Mixture:
    """Convex combination with exact positive weights summing to one."""

    entries: Tuple[Tuple[Fraction, "StateSpec"], ...]

    def __post_init__(self):
        entries = tuple((Fraction(wt), st) for wt, st in self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise InvalidState("mixture needs at least one entry")
        if any(wt <= 0 for wt, _ in entries):
            raise InvalidState("mixture weights must be positive")
        if sum(wt for wt, _ in entries) != 1:
            raise InvalidState("mixture weights must sum to 1")
        tags = {st.algebra for _, st in entries}
        if len(tags) != 1:
            raise AlgebraMismatch(f"mixture over different algebras: {sorted(tags)}")

    @property
    def algebra(self):
        return self.entries[0][1].algebra


@dataclass(frozen=True, eq=False)
class HermiteVectorState:
    """Product vector state on W(R^m), one Hermite-basis coefficient array per coordinate."""

    coeffs: Tuple[np.ndarray, ...]
    truncation: int = DEFAULT_TRUNCATION

    def __post_init__(self):
        arrays = tuple(np.asarray(c, dtype=complex).ravel() for c in self.coeffs)
        object.__setattr__(self, "coeffs", arrays)
        if not arrays:
            raise InvalidState("Hermite state needs at least one coordinate")
        for c in arrays:
            if len(c) > self.truncation:
                raise TruncationTooSmall(
                    f"{len(c)} coefficients exceed truncation {self.truncation}"
                )
            if abs(np.linalg.norm(c) - 1.0) > 1e-12:
                raise InvalidState(f"coefficient vector has norm {np.linalg.norm(c)!r}, not 1")

    @property
    def algebra(self):
        return ("weyl", len(self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, HermiteVectorState):
            return NotImplemented
        return (
            self.truncation == other.truncation
            and len(self.coeffs) == len(other.coeffs)
            and all(np.array_equal(a, b) for a, b in zip(self.coeffs, other.coeffs))
        )

    __hash__ = None


@dataclass(frozen=True)
class AveragePullback:
    """``f -> base(average(f))``: extends a functional on invariants to all of P."""

    base: "StateSpec"

    def __post_init__(self):
        if self.base.algebra[0] != "poly":
            raise AlgebraMismatch("averaging exists only for the polynomial algebra")

    @property
    def algebra(self):
        return self.base.algebra


StateSpec = Union[PointEvaluation, ReducedPointEvaluation, Mixture, HermiteVectorState, AveragePullback]


def ground_state(dim: int = 1, truncation: int = DEFAULT_TRUNCATION) -> HermiteVectorState:
    e0 = np.zeros(1, dtype=complex)
    e0[0] = 1
    return HermiteVectorState(tuple(e0.copy() for _ in range(dim)), truncation)


def is_exact(omega: StateSpec) -> bool:
    if isinstance(omega, HermiteVectorState):
        return False
    if isinstance(omega, Mixture):
        return all(is_exact(st) for _, st in omega.entries)
    return True


# Hermite realization ---------------------------------------------------------------


class HermiteOperatorRep:
    """Truncated matrices of q and p in the Hermite (number) basis."""

    def __init__(self, truncation: int = DEFAULT_TRUNCATION):
        N = truncation
        self.truncation = N
        lower = np.diag(np.sqrt(np.arange(1, N, dtype=float)), 1).astype(complex)  # a
        raise_ = lower.conj().T  # a^dagger
        self.q = (lower + raise_) / math.sqrt(2)
        self.p = 1j * (raise_ - lower) / math.sqrt(2)

    def check(self, degree: int = 2) -> None:
        """Assert Hermiticity and the canonical commutator on the reliable block."""
        assert np.allclose(self.q, self.q.conj().T, atol=1e-12)
        assert np.allclose(self.p, self.p.conj().T, atol=1e-12)
        k = self.truncation - degree
        comm = self.q @ self.p - self.p @ self.q
        assert np.allclose(comm[:k, :k], 1j * np.eye(k), atol=1e-9)

    def monomial_matrix(self, k: int, l: int) -> np.ndarray:
        """Matrix of ``p^k q^l`` for one coordinate."""
        return np.linalg.matrix_power(self.p, k) @ np.linalg.matrix_power(self.q, l)

    def matrix(self, x: W.WeylElement) -> np.ndarray:
        """Matrix of ``x`` on the tensor product of the truncated spaces."""
        N = self.truncation
        out = np.zeros((N**x.dim, N**x.dim), dtype=complex)
        for mono, c in x.terms.items():
            block = np.ones((1, 1), dtype=complex)
            for j in range(x.dim):
                block = np.kron(block, self.monomial_matrix(mono.k[j], mono.l[j]))
            out += complex(c) * block
        return out


@lru_cache(maxsize=8)
def hermite_rep(truncation: int) -> HermiteOperatorRep:
    return HermiteOperatorRep(truncation)


def hermite_diagonal(
    x: W.WeylElement, size: int, truncation: int | None = None
) -> Tuple[GaussianRational, ...]:
    """Exact diagonal entries ``<n| x |n>`` for ``n < size`` (single coordinate).

    With ``truncation`` every ladder step is followed by the projection onto the
    first ``truncation`` basis states, which reproduces the product of the
    truncated q and p matrices exactly.

    Works in the unnormalized basis ``e_n = (a^dagger)^n |0>`` where
    ``a e_n = n e_{n-1}`` and ``a^dagger e_n = e_{n+1}``; the factors of
    ``sqrt(2)`` from ``q = (a + a^dagger)/sqrt(2)`` and ``p = i(a^dagger - a)/sqrt(2)``
    pair up on the diagonal because only even-degree monomials contribute.
    """
    if x.dim != 1:
        raise AlgebraMismatch("exact Hermite diagonal is implemented for W(R^1)")
    out = []
    for n in range(size):
        total = ZERO
        for mono, c in x.terms.items():
            k, l = mono.k[0], mono.l[0]
            if (k + l) % 2:
                continue
            vec = {n: ONE}
            for _ in range(l):
                vec = _apply_ladder(vec, ONE, ONE, truncation)  # a + a^dagger
            for _ in range(k):
                vec = _apply_ladder(vec, GaussianRational(0, -1), GaussianRational(0, 1), truncation)
            total = total + c * vec.get(n, ZERO) * Fraction(1, 2 ** ((k + l) // 2))
        out.append(total)
    return tuple(out)


def _apply_ladder(vec, c_lower, c_raise, truncation=None):
    out = {}
    for m, v in vec.items():
        if m:
            out[m - 1] = out.get(m - 1, ZERO) + v * c_lower * m
        if truncation is None or m + 1 < truncation:
            out[m + 1] = out.get(m + 1, ZERO) + v * c_raise
    return {m: v for m, v in out.items() if v}


def _hermite_expect(omega: HermiteVectorState, x: W.WeylElement) -> complex:
    N = omega.truncation
    if x.degree >= N / 2:
        raise TruncationTooSmall(f"degree {x.degree} needs truncation above {2 * x.degree}")
    rep = hermite_rep(N)
    vecs = []
    for c in omega.coeffs:
        v = np.zeros(N, dtype=complex)
        v[: len(c)] = c
        vecs.append(v)
    support = [int(np.flatnonzero(v).max(initial=0)) for v in vecs]
    total = 0j
    cache = {}
    for mono, c in x.terms.items():
        value = 1.0 + 0j
        for j, psi in enumerate(vecs):
            k, l = mono.k[j], mono.l[j]
            if support[j] + k + l >= N:
                raise TruncationTooSmall(
                    f"coordinate {j}: support {support[j]} plus degree {k + l} reaches truncation {N}"
                )
            key = (j, k, l)
            if key not in cache:
                v = psi
                for _ in range(l):
                    v = rep.q @ v
                for _ in range(k):
                    v = rep.p @ v
                cache[key] = np.vdot(psi, v) / np.vdot(psi, psi).real
            value *= cache[key]
        total += complex(c) * complex(value)
    return complex(total)


# expectation values --------------------------------------------------------------------


def _check_algebra(omega: StateSpec, x):
    if isinstance(x, P.PolyElement):
        tag = ("poly", x.n)
    elif isinstance(x, W.WeylElement):
        tag = ("weyl", x.dim)
    else:
        raise TypeError(f"not an algebra element: {x!r}")
    if omega.algebra != tag:
        raise AlgebraMismatch(f"state on {omega.algebra} applied to element of {tag}")


def state_expect(omega: StateSpec, x):
    """``omega(x)``: exact for exact kinds, complex float for Hermite states."""
    _check_algebra(omega, x)
    if isinstance(omega, PointEvaluation):
        return P.evaluate(x, omega.w)
    if isinstance(omega, ReducedPointEvaluation):
        return P.reduced_evaluate(x, omega.w, omega.sig, omega.mu)
    if isinstance(omega, AveragePullback):
        return state_expect(omega.base, P.average(x))
    if isinstance(omega, HermiteVectorState):
        return _hermite_expect(omega, x)
    if isinstance(omega, Mixture):
        if is_exact(omega):
            return sum((state_expect(st, x) * wt for wt, st in omega.entries), ZERO)
        return sum(complex(state_expect(st, x)) * float(wt) for wt, st in omega.entries)
    raise TypeError(f"unknown state kind: {omega!r}")


class EigenstateResult(NamedTuple):
    is_eigenstate: bool
    eigenvalue: Union[GaussianRational, complex]
    variance: Union[GaussianRational, complex]


def eigenstate_check(omega: StateSpec, a, tol: float | None = None) -> EigenstateResult:
    """Test ``omega(a^* a) = |omega(a)|^2``; the eigenvalue is ``omega(a)``."""
    value = state_expect(omega, a)
    second = state_expect(omega, a.star() * a)
    if is_exact(omega):
        if tol:
            raise ValueError("exact states are checked with tol = 0")
        variance = second - value * value.conj()
        return EigenstateResult(not variance, value, variance)
    tol = HERMITE_TOL if tol is None else tol
    variance = complex(second) - abs(value) ** 2
    return EigenstateResult(abs(variance) <= tol, value, variance)


def cauchy_schwarz_check(omega: StateSpec, a, b) -> bool:
    """``|omega(a^* b)|^2 <= omega(a^* a) omega(b^* b)``."""
    ab = state_expect(omega, a.star() * b)
    aa = state_expect(omega, a.star() * a)
    bb = state_expect(omega, b.star() * b)
    if is_exact(omega):
        return ab.norm2() <= aa.re * bb.re
    return abs(ab) ** 2 <= complex(aa).real * complex(bb).real + HERMITE_TOL


# state reduction ----------------------------------------------------------------------


def reduce_state(omega: StateSpec, sig: P.Signature, mu) -> StateSpec:
    """The reduced state on P(M_red) of an eigenstate of J with eigenvalue mu."""
    mu = as_gaussian(mu)
    if omega.algebra[0] == "weyl":
        raise WeylHasNoEigenstates("p_0 admits no eigenstates on the Weyl algebra")
    if not _built_from_points(omega):
        raise AlgebraMismatch("only point evaluations and their mixtures can be reduced")
    if omega.algebra != ("poly", sig.n):
        raise AlgebraMismatch(f"state on {omega.algebra} vs signature n={sig.n}")
    J = P.momentum(sig)
    check = eigenstate_check(omega, J)
    if not (check.is_eigenstate and check.eigenvalue == mu):
        point, value = _offending_point(omega, sig, mu)
        raise NotReducible(
            f"not an eigenstate of J with eigenvalue {mu}: J({point}) = {value}",
            {"w": point, "J": value},
        )
    return _reduce_exact(omega, sig, mu)


def _built_from_points(omega) -> bool:
    if isinstance(omega, PointEvaluation):
        return True
    if isinstance(omega, Mixture):
        return all(_built_from_points(st) for _, st in omega.entries)
    return False


def _offending_point(omega, sig, mu):
    if isinstance(omega, PointEvaluation):
        return [str(x) for x in omega.w], str(P.momentum_value(omega.w, sig))
    for _, st in omega.entries:
        pt, val = _offending_point(st, sig, mu)
        if val != str(mu):
            return pt, val
    return None, None


def _reduce_exact(omega, sig, mu):
    if isinstance(omega, PointEvaluation):
        return ReducedPointEvaluation(P.ProjPoint(omega.w), sig, mu)
    return Mixture(tuple((wt, _reduce_exact(st, sig, mu)) for wt, st in omega.entries))


def average_pullback(omega: StateSpec) -> AveragePullback:
    """Extend a functional on invariant polynomials to all of P via averaging."""
    return AveragePullback(omega)
