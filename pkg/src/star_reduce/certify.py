"""Checking explicit positivity certificates, plus a float falsifier.

Every verifier re-multiplies the certificate and compares with the target
exactly; nothing here searches for certificates. The sampler and falsifier
are floating point and advisory only: a missing counterexample proves nothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Sequence, Tuple, Union

import numpy as np

from . import poly as P
from . import weyl as W
from .errors import (
    AlgebraMismatch,
    BadGeneratorIndex,
    NonCommutativeAlgebra,
    NotHermitian,
    NotInvariant,
)
from .scalars import as_gaussian

UNIT = "unit"
FALSIFY_THRESHOLD = -1e-6

Element = Union[W.WeylElement, P.PolyElement]


@dataclass(frozen=True)
class QMCertificate:
    """Terms ``(a_m, s_m)`` claiming ``target = sum a_m^* s_m a_m``; ``s_m`` is an index or UNIT."""

    terms: Tuple[Tuple[Element, Union[int, str]], ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((a, s) for a, s in self.terms))


@dataclass(frozen=True)
class POCertificate:
    """Terms ``(a_m, multiset)``; the multiset of generator indices is multiplied out, empty means 1."""

    terms: Tuple[Tuple[P.PolyElement, Tuple[int, ...]], ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((a, tuple(ms)) for a, ms in self.terms))


@dataclass(frozen=True)
class PositivstellensatzCertificate:
    """Witness for ``p^m2 (f + eps p^m1) = (J - mu) g + sum a^* s a`` with ``g = ideal_cofactor``."""

    m1: int
    eps: Fraction
    m2: int
    ideal_cofactor: P.PolyElement
    qm: QMCertificate
    p: P.PolyElement

    def __post_init__(self):
        object.__setattr__(self, "eps", Fraction(self.eps))
        if self.m1 < 0 or self.m2 < 0:
            raise ValueError("exponents m1, m2 must be nonnegative")
        if self.eps < 0:
            raise ValueError("eps must be nonnegative")


def _tag(x) -> Tuple[str, int]:
    if isinstance(x, W.WeylElement):
        return ("weyl", x.dim)
    if isinstance(x, P.PolyElement):
        return ("poly", x.n)
    raise TypeError(f"not an algebra element: {x!r}")


def _check_same_algebra(target, elements):
    tag = _tag(target)
    for x in elements:
        if _tag(x) != tag:
            raise AlgebraMismatch(f"{_tag(x)} element in a {tag} certificate")


def _generator(S: Sequence[Element], index, one: Element) -> Element:
    if index == UNIT:
        return one
    if isinstance(index, bool) or not isinstance(index, int) or not 0 <= index < len(S):
        raise BadGeneratorIndex(f"generator index {index!r} outside 0..{len(S) - 1}")
    return S[index]


def _one_like(x: Element) -> Element:
    if isinstance(x, W.WeylElement):
        return W.WeylElement.scalar(1, x.dim)
    return P.PolyElement.scalar(1, x.n)


def _zero_like(x: Element) -> Element:
    if isinstance(x, W.WeylElement):
        return W.WeylElement.zero(x.dim)
    return P.PolyElement.zero(x.n)


def qm_sum(S: Sequence[Element], cert: QMCertificate, like: Element) -> Element:
    """Reassemble ``sum a_m^* s_m a_m``."""
    one = _one_like(like)
    total = _zero_like(like)
    for a, index in cert.terms:
        total = total + a.star() * _generator(S, index, one) * a
    return total


def po_sum(S: Sequence[P.PolyElement], cert: POCertificate, like: P.PolyElement) -> P.PolyElement:
    """Reassemble ``sum a_m^* (prod of generators) a_m``."""
    one = _one_like(like)
    total = _zero_like(like)
    for a, multiset in cert.terms:
        s = one
        for index in multiset:
            s = s * _generator(S, index, one)
        total = total + a.star() * s * a
    return total


def verify_qm(target: Element, S: Sequence[Element], cert: QMCertificate) -> bool:
    """True iff ``sum a_m^* s_m a_m == target`` exactly."""
    _check_same_algebra(target, list(S) + [a for a, _ in cert.terms])
    return qm_sum(S, cert, target) == target


def verify_po(target: P.PolyElement, S: Sequence[P.PolyElement], cert: POCertificate) -> bool:
    """True iff ``sum a_m^* (prod s) a_m == target`` exactly; polynomial algebra only."""
    everything = [target] + list(S) + [a for a, _ in cert.terms]
    if any(isinstance(x, W.WeylElement) for x in everything):
        raise NonCommutativeAlgebra("preorderings need a commutative algebra")
    _check_same_algebra(target, everything[1:])
    return po_sum(S, cert, target) == target


def psatz_generators(sig: P.Signature) -> List[P.PolyElement]:
    """``[sum_{i>=s} z_i zb_i]``, or the empty list when that sum is empty (s = 1+n)."""
    if sig.s == sig.n + 1:
        return []
    G = P.PolyElement.zero(sig.n)
    for i in range(sig.s, sig.n + 1):
        G = G + P.z(i, sig.n) * P.zb(i, sig.n)
    return [G]


def _require_invariant_hermitian(f: P.PolyElement, name: str, hermitian: bool = True):
    if not f.is_invariant():
        raise NotInvariant(f"{name} is not U(1)-invariant")
    if hermitian and not f.is_hermitian():
        raise NotHermitian(f"{name} is not Hermitian")


def verify_positivstellensatz(
    f: P.PolyElement, sig: P.Signature, mu, cert: PositivstellensatzCertificate
) -> bool:
    """Check one instance ``p^m2 (f + eps p^m1) = (J - mu) g + sum a^* s a``.

    The generator list is :func:`psatz_generators`. The growth condition on
    ``p`` and its membership in ``1 + QM(G)`` are not checked.
    """
    mu = as_gaussian(mu)
    _require_invariant_hermitian(f, "f")
    _require_invariant_hermitian(cert.p, "p")
    _check_same_algebra(f, [cert.p, cert.ideal_cofactor] + [a for a, _ in cert.qm.terms])
    if f.n != sig.n:
        raise AlgebraMismatch(f"element in P(C^{f.n + 1}) but signature has n={sig.n}")
    S = psatz_generators(sig)
    ideal_part = (P.momentum(sig) - mu) * cert.ideal_cofactor
    if not ideal_part.is_hermitian():
        return False
    lhs = cert.p ** cert.m2 * (f + (cert.p ** cert.m1).scale(cert.eps))
    return lhs == ideal_part + qm_sum(S, cert.qm, f)


# float sampling ----------------------------------------------------------------------


def _unit_complex(rng: np.random.Generator, size: int) -> np.ndarray:
    v = rng.normal(size=size) + 1j * rng.normal(size=size)
    return v / np.linalg.norm(v)


def sample_levelset(sig: P.Signature, mu: float, count: int, seed: int) -> List[Tuple[complex, ...]]:
    """Seeded float points of ``Z_mu = {J(w) = mu}``.

    The sphere case normalizes Gaussian vectors. Otherwise the positive block is
    ``sqrt(mu) cosh(t) u`` and the negative block ``sqrt(mu) sinh(t) v`` with
    random unit directions ``u, v`` and ``t ~ N(0, 1)``.
    """
    mu = float(mu)
    if mu <= 0:
        raise ValueError("mu must be positive")
    rng = np.random.default_rng(seed)
    size = sig.n + 1
    out = []
    for _ in range(count):
        if sig.s == size:
            w = math.sqrt(mu) * _unit_complex(rng, size)
        else:
            t = rng.normal()
            pos = math.sqrt(mu) * math.cosh(t) * _unit_complex(rng, sig.s)
            neg = math.sqrt(mu) * math.sinh(t) * _unit_complex(rng, size - sig.s)
            w = np.concatenate([pos, neg])
        out.append(tuple(complex(x) for x in w))
    return out


class NoCounterexample(NamedTuple):
    samples: int


class Counterexample(NamedTuple):
    w: Tuple[complex, ...]
    value: float


def pointwise_falsify(f: P.PolyElement, sig: P.Signature, mu: float, count: int, seed: int):
    """Search sampled levelset points for ``f(w) < -1e-6``; returns the worst one."""
    _require_invariant_hermitian(f, "f")
    if f.n != sig.n:
        raise AlgebraMismatch(f"element in P(C^{f.n + 1}) but signature has n={sig.n}")
    worst = None
    for w in sample_levelset(sig, mu, count, seed):
        value = P.evaluate_float(f, w).real
        if value < FALSIFY_THRESHOLD and (worst is None or value < worst.value):
            worst = Counterexample(w, value)
    return worst if worst is not None else NoCounterexample(count)
