import random
from fractions import Fraction

import pytest

from helpers import rand_poly
from star_reduce import certify as C
from star_reduce import poly as P
from star_reduce.errors import (
    AlgebraMismatch,
    BadGeneratorIndex,
    NonCommutativeAlgebra,
    NotHermitian,
    NotInvariant,
)
from star_reduce.parser import parse_element

CP1, DISC = P.Signature(1, 2), P.Signature(1, 1)


def pe(text, n=1):
    return parse_element(text, "poly", n)


def we(text, dim=1):
    return parse_element(text, "weyl", dim)


def test_verify_qm_examples():
    assert C.verify_qm(pe("zb0*z0"), [], C.QMCertificate([(pe("z0"), C.UNIT)]))
    assert C.verify_qm(we("q0^2 + p0^2"), [], C.QMCertificate([(we("q0"), C.UNIT), (we("p0"), C.UNIT)]))
    assert not C.verify_qm(we("q0^2 + p0^2 + 1"), [], C.QMCertificate([(we("q0"), C.UNIT), (we("p0"), C.UNIT)]))
    # noncommutative: (q + i p)^* (q + i p) = q^2 + p^2 - 1
    assert C.verify_qm(we("q0^2 + p0^2 - 1"), [], C.QMCertificate([(we("q0 + i*p0"), C.UNIT)]))


def test_verify_qm_errors():
    with pytest.raises(BadGeneratorIndex):
        C.verify_qm(pe("1"), [], C.QMCertificate([(pe("1"), 0)]))
    with pytest.raises(AlgebraMismatch):
        C.verify_qm(pe("1"), [], C.QMCertificate([(we("1"), C.UNIT)]))


def test_verify_po_examples():
    G = pe("z1*zb1")
    assert C.verify_po(G * G, [G], C.POCertificate([(pe("1"), (0, 0))]))
    assert C.verify_po(G * pe("z0*zb0"), [G], C.POCertificate([(pe("z0"), (0,))]))
    with pytest.raises(NonCommutativeAlgebra):
        C.verify_po(we("q0"), [], C.POCertificate([(we("1"), ())]))


def test_preordering_with_two_generators():
    G1, G2 = pe("z0*zb0"), pe("z1*zb1")
    target = G1 * G2 + pe("2")
    cert = C.POCertificate([(pe("1"), (0, 1)), (pe("1"), ()), (pe("1"), ())])
    assert C.verify_po(target, [G1, G2], cert)
    # the product G1*G2 is not a single generator, so the quadratic module needs more than index 0 or 1
    assert not C.verify_qm(target, [G1, G2], C.QMCertificate([(pe("1"), 0), (pe("1"), 1), (pe("1"), C.UNIT)]))


def test_positivstellensatz_examples():
    cp1 = C.PositivstellensatzCertificate(0, 0, 0, pe("-1"), C.QMCertificate([(pe("z0"), C.UNIT)]), pe("1"))
    assert C.verify_positivstellensatz(pe("1 - z1*zb1"), CP1, 1, cp1)
    disc = C.PositivstellensatzCertificate(0, 0, 0, pe("1"), C.QMCertificate([(pe("1"), 0)]), pe("1"))
    assert C.verify_positivstellensatz(pe("z0*zb0 - 1"), DISC, 1, disc)
    assert not C.verify_positivstellensatz(pe("-1"), DISC, 1, disc)
    with pytest.raises(BadGeneratorIndex):
        C.verify_positivstellensatz(pe("z0*zb0 - 1"), CP1, 1, disc)  # no generator when s = 1+n


def test_positivstellensatz_with_eps_and_scaling():
    # f = z0 zb0 - 1 on the sphere is not >= 0, but f + 2 = (J - 1) + z0 zb0 + ... : use eps = 2, p = 1
    cert = C.PositivstellensatzCertificate(
        0, 2, 0, pe("1"), C.QMCertificate([(pe("z0"), C.UNIT), (pe("1"), C.UNIT)]), pe("1")
    )
    # LHS = f + 2 = z0 zb0 + 1;  RHS = (z0 zb0 + z1 zb1 - 1) + z0 zb0 + 1 differs, so rejected
    assert not C.verify_positivstellensatz(pe("z0*zb0 - 1"), CP1, 1, cert)
    good = C.PositivstellensatzCertificate(
        0, 2, 0, pe("0"), C.QMCertificate([(pe("z0"), C.UNIT), (pe("1"), C.UNIT)]), pe("1")
    )
    assert C.verify_positivstellensatz(pe("z0*zb0 - 1"), CP1, 1, good)
    # scaling element p = 1 + G on the disc: p (f) with f = G
    p = pe("1 + z1*zb1")
    scaled = C.PositivstellensatzCertificate(
        0, 0, 1, pe("0"), C.QMCertificate([(pe("1"), 0), (pe("z1*zb1"), C.UNIT)]), p
    )
    assert C.verify_positivstellensatz(pe("z1*zb1"), DISC, 1, scaled)


def test_positivstellensatz_preconditions():
    cert = C.PositivstellensatzCertificate(0, 0, 0, pe("0"), C.QMCertificate([]), pe("1"))
    with pytest.raises(NotInvariant):
        C.verify_positivstellensatz(pe("z0"), CP1, 1, cert)
    with pytest.raises(NotHermitian):
        C.verify_positivstellensatz(pe("i*z0*zb0"), CP1, 1, cert)
    non_hermitian_ideal = C.PositivstellensatzCertificate(0, 0, 0, pe("i"), C.QMCertificate([]), pe("1"))
    assert not C.verify_positivstellensatz(pe("0"), CP1, 1, non_hermitian_ideal)
    with pytest.raises(ValueError):
        C.PositivstellensatzCertificate(0, -1, 0, pe("0"), C.QMCertificate([]), pe("1"))


def test_sample_levelset():
    for sig in (CP1, DISC, P.Signature(2, 2), P.Signature(3, 1)):
        for mu in (1.0, 2.5):
            pts = C.sample_levelset(sig, mu, 200, seed=3)
            assert len(pts) == 200
            for w in pts:
                J = sum(nu * abs(x) ** 2 for nu, x in zip(sig.nu, w))
                assert abs(J - mu) <= 1e-9
    assert C.sample_levelset(CP1, 1, 0, seed=0) == []
    assert C.sample_levelset(DISC, 1, 5, seed=9) == C.sample_levelset(DISC, 1, 5, seed=9)
    assert C.sample_levelset(DISC, 1, 5, seed=9) != C.sample_levelset(DISC, 1, 5, seed=10)


def test_falsify_examples():
    assert isinstance(C.pointwise_falsify(pe("z0*zb0"), CP1, 1, 300, seed=1), C.NoCounterexample)
    result = C.pointwise_falsify(pe("z0*zb0 - 1"), CP1, 1, 300, seed=1)
    assert isinstance(result, C.Counterexample)
    assert result.value < -0.9 and abs(result.w[1]) > 0.95
    assert isinstance(C.pointwise_falsify(pe("z0*zb0 - 1"), DISC, 1, 300, seed=1), C.NoCounterexample)
    with pytest.raises(NotInvariant):
        C.pointwise_falsify(pe("z0"), CP1, 1, 10, seed=1)


def test_averaging_is_positive():
    rng = random.Random(41)
    for _ in range(50):
        n = rng.randint(1, 2)
        g = rand_poly(rng, n, 3, 3)
        avg = P.average(g.star() * g)
        import numpy as np

        nrng = np.random.default_rng(rng.randint(0, 10**6))
        for _ in range(200):
            w = nrng.normal(size=n + 1) + 1j * nrng.normal(size=n + 1)
            assert P.evaluate_float(avg, w).real >= -1e-6


def test_cpn_certificates_with_empty_generator_list():
    """For s = 1+n an ideal-plus-sum-of-squares certificate needs no generators."""
    sig = P.Signature(2, 3)
    J = P.momentum(sig)
    a, b = pe("z0 + z1", 2), pe("z2*zb0", 2)
    f = (J - 1) * pe("z1*zb1", 2) + a.star() * a + b.star() * b
    cert = C.PositivstellensatzCertificate(
        0, 0, 0, pe("z1*zb1", 2), C.QMCertificate([(a, C.UNIT), (b, C.UNIT)]), pe("1", 2)
    )
    assert C.psatz_generators(sig) == []
    assert C.verify_positivstellensatz(f, sig, 1, cert)
    f_eps = f + 1 - Fraction(1, 3)
    cert_eps = C.PositivstellensatzCertificate(
        0, Fraction(1, 3), 0, pe("z1*zb1", 2), C.QMCertificate([(a, C.UNIT), (b, C.UNIT), (pe("1", 2), C.UNIT)]), pe("1", 2)
    )
    assert C.verify_positivstellensatz(f_eps, sig, 1, cert_eps)
