import random
from fractions import Fraction

import numpy as np
import pytest

from helpers import rand_point, rand_poly, rand_weyl, rational_levelset_point
from star_reduce import poly as P
from star_reduce import states as St
from star_reduce import weyl as W
from star_reduce.errors import (
    AlgebraMismatch,
    InvalidState,
    NotReducible,
    TruncationTooSmall,
    WeylHasNoEigenstates,
)
from star_reduce.parser import parse_element
from star_reduce.scalars import I, GaussianRational

CP1 = P.Signature(1, 2)


def pe(text, n=1):
    return parse_element(text, "poly", n)


def we(text, dim=1):
    return parse_element(text, "weyl", dim)


def _random_hermite(nrng, dim, length=6, truncation=64):
    coeffs = []
    for _ in range(dim):
        v = nrng.normal(size=length) + 1j * nrng.normal(size=length)
        coeffs.append(v / np.linalg.norm(v))
    return St.HermiteVectorState(tuple(coeffs), truncation)


def test_ground_state_examples():
    g = St.ground_state(1, 16)
    assert abs(St.state_expect(g, we("q0^2")) - 0.5) < 1e-9
    assert abs(St.state_expect(g, we("q0*p0")) - 0.5j) < 1e-9
    assert St.state_expect(St.PointEvaluation((3, I)), pe("1")) == 1


def test_hermite_matches_matrix_oracle():
    """Product-state factorization agrees with <psi, X psi> for the full matrix of X."""
    nrng = np.random.default_rng(31)
    rng = random.Random(31)
    for dim in (1, 2):
        rep = St.hermite_rep(12)
        for _ in range(10):
            omega = _random_hermite(nrng, dim, 4, 12)
            x = rand_weyl(rng, dim, 3, 3)
            psi = np.ones(1, dtype=complex)
            for c in omega.coeffs:
                v = np.zeros(12, dtype=complex)
                v[: len(c)] = c
                psi = np.kron(psi, v)
            expected = np.vdot(psi, rep.matrix(x) @ psi)
            assert abs(St.state_expect(omega, x) - expected) < 1e-9


def test_hermite_diagonal_matches_matrices():
    rng = random.Random(32)
    rep = St.hermite_rep(40)
    for _ in range(20):
        x = rand_weyl(rng, 1, 4, 3)
        exact = St.hermite_diagonal(x, 30)
        numeric = np.diag(rep.matrix(x))[:30]
        assert np.allclose([complex(c) for c in exact], numeric, atol=1e-8)
        truncated = St.hermite_diagonal(x, 40, truncation=40)
        assert np.allclose([complex(c) for c in truncated], np.diag(rep.matrix(x)), atol=1e-8)


def test_operator_rep_invariants():
    rep = St.HermiteOperatorRep(64)
    rep.check(degree=2)
    assert np.allclose(rep.q, rep.q.conj().T, atol=1e-12)


def test_number_operator_is_diagonal():
    N = W.number_operator(1)
    assert St.hermite_diagonal(N, 10) == tuple(GaussianRational(n) for n in range(10))
    assert St.eigenstate_check(St.ground_state(1), N).is_eigenstate


def test_truncation_guard():
    g = St.ground_state(1, 8)
    with pytest.raises(TruncationTooSmall):
        St.state_expect(g, we("q0^4"))
    wide = St.HermiteVectorState((np.ones(15) / np.sqrt(15),), 20)  # degree 7 < 10, but 14 + 7 >= 20
    with pytest.raises(TruncationTooSmall):
        St.state_expect(wide, we("q0^7"))


def test_invalid_states():
    with pytest.raises(InvalidState):
        St.HermiteVectorState((np.array([1.0, 1.0]),), 8)
    with pytest.raises(InvalidState):
        St.Mixture(((Fraction(1, 2), St.PointEvaluation((1, 0))),))
    with pytest.raises(InvalidState):
        St.ReducedPointEvaluation(P.ProjPoint((1, 2)), P.Signature(1, 1), 1)
    with pytest.raises(AlgebraMismatch):
        St.Mixture(((Fraction(1, 2), St.PointEvaluation((1, 0))), (Fraction(1, 2), St.ground_state(1))))


def test_algebra_mismatch():
    with pytest.raises(AlgebraMismatch):
        St.state_expect(St.PointEvaluation((1, 0)), we("q0"))
    with pytest.raises(AlgebraMismatch):
        St.state_expect(St.PointEvaluation((1, 0, 0)), pe("z0"))


def test_eigenstate_examples():
    J = P.momentum(CP1)
    r = St.eigenstate_check(St.PointEvaluation((1, 0)), J)
    assert r.is_eigenstate and r.eigenvalue == 1
    mix = St.Mixture(((Fraction(1, 2), St.PointEvaluation((1, 0))), (Fraction(1, 2), St.PointEvaluation((0, 1)))))
    r = St.eigenstate_check(mix, pe("z0*zb0"))
    assert not r.is_eigenstate and r.eigenvalue == Fraction(1, 2) and r.variance == Fraction(1, 4)
    r = St.eigenstate_check(St.ground_state(1), W.number_operator(1))
    assert r.is_eigenstate and abs(r.eigenvalue) < 1e-9
    with pytest.raises(ValueError):
        St.eigenstate_check(St.PointEvaluation((1, 0)), J, tol=1e-3)


def _exact_states(rng):
    pts = [St.PointEvaluation(rand_point(rng, 1)) for _ in range(2)]
    yield pts[0]
    yield St.Mixture(((Fraction(2, 5), pts[0]), (Fraction(3, 5), pts[1])))
    yield St.AveragePullback(pts[1])
    yield St.ReducedPointEvaluation(P.ProjPoint(rational_levelset_point(rng, CP1)), CP1, 2)


def test_hermitian_and_normalized():
    rng, nrng = random.Random(33), np.random.default_rng(33)
    for _ in range(20):
        for omega in _exact_states(rng):
            inv = isinstance(omega, St.ReducedPointEvaluation)
            f = rand_poly(rng, 1, 4, invariant=inv)
            assert St.state_expect(omega, f.star()) == St.state_expect(omega, f).conj()
            assert St.state_expect(omega, pe("1")) == 1
        omega = _random_hermite(nrng, 2)
        x = rand_weyl(rng, 2, 4)
        assert abs(St.state_expect(omega, x.star()) - St.state_expect(omega, x).conjugate()) < 1e-9
        assert St.state_expect(omega, W.WeylElement.one(2)) == 1


def test_eigenstate_factorization():
    """If omega is an eigenstate of a then omega(a^* b) = conj(omega(a)) omega(b)."""
    rng = random.Random(34)
    for _ in range(10):
        w = rand_point(rng, 1)
        omega = St.PointEvaluation(w)
        a = rand_poly(rng, 1)
        r = St.eigenstate_check(omega, a)
        assert r.is_eigenstate
        for _ in range(20):
            b = rand_poly(rng, 1)
            assert St.state_expect(omega, a.star() * b) == r.eigenvalue.conj() * St.state_expect(omega, b)
    g = St.ground_state(1)
    a = we("q0 + i*p0")  # annihilation operator times sqrt(2): ground state is an eigenstate
    r = St.eigenstate_check(g, a)
    assert r.is_eigenstate
    for _ in range(20):
        b = rand_weyl(rng, 1, 3)
        lhs = St.state_expect(g, a.star() * b)
        assert abs(lhs - np.conj(r.eigenvalue) * St.state_expect(g, b)) < 1e-9


def test_no_eigenstate_of_p0_among_hermite_states():
    nrng = np.random.default_rng(35)
    p0 = we("p0")
    for _ in range(20):
        r = St.eigenstate_check(_random_hermite(nrng, 1), p0)
        assert not r.is_eigenstate and r.variance.real > 0


def test_cauchy_schwarz_examples():
    g = St.ground_state(1)
    assert St.cauchy_schwarz_check(g, we("q0"), we("p0"))
    rng = random.Random(36)
    for _ in range(50):
        w = St.PointEvaluation(rand_point(rng, 1))
        a, b = rand_poly(rng, 1), rand_poly(rng, 1)
        assert St.cauchy_schwarz_check(w, a, b)
        ab = St.state_expect(w, a.star() * b)
        assert ab.norm2() == (St.state_expect(w, a.star() * a) * St.state_expect(w, b.star() * b)).re


def test_reduce_state_examples():
    red = St.reduce_state(St.PointEvaluation((1, 0)), CP1, 1)
    assert red == St.ReducedPointEvaluation(P.ProjPoint((1, 0)), CP1, 1)
    with pytest.raises(NotReducible) as info:
        St.reduce_state(St.PointEvaluation((1, 1)), CP1, 1)
    assert info.value.detail == {"w": ["1", "1"], "J": "2"}
    mix = St.Mixture(((Fraction(1, 2), St.PointEvaluation((1, 0))), (Fraction(1, 2), St.PointEvaluation((0, 1)))))
    red = St.reduce_state(mix, CP1, 1)
    assert [st.w for _, st in red.entries] == [P.ProjPoint((1, 0)), P.ProjPoint((0, 1))]
    with pytest.raises(WeylHasNoEigenstates):
        St.reduce_state(St.ground_state(1), CP1, 1)
    with pytest.raises(AlgebraMismatch):
        St.reduce_state(red, CP1, 1)


def test_reduction_identity():
    rng = random.Random(37)
    for sig in (CP1, P.Signature(1, 1), P.Signature(2, 2)):
        mix = St.Mixture(
            ((Fraction(1, 3), St.PointEvaluation(rational_levelset_point(rng, sig))),
             (Fraction(2, 3), St.PointEvaluation(rational_levelset_point(rng, sig))))
        )
        red = St.reduce_state(mix, sig, 1)
        for _ in range(20):
            f = rand_poly(rng, sig.n, 4, invariant=True)
            assert St.state_expect(mix, f) == St.state_expect(red, f)


def test_average_pullback_examples():
    base = St.ReducedPointEvaluation(P.ProjPoint((1, 1)), CP1, 1)
    # the reduced functional only accepts invariants; the pull-back extends it to all of P
    ext = St.average_pullback(base)
    assert St.state_expect(ext, pe("z0")) == 0
    assert St.state_expect(ext, pe("z0*zb0")) == St.state_expect(base, pe("z0*zb0"))
    assert St.state_expect(ext, pe("z0 + z0*zb0")) == St.state_expect(base, pe("z0*zb0"))
    with pytest.raises(AlgebraMismatch):
        St.average_pullback(St.ground_state(1))
