"""Commutator ideal membership, generator certificates, telescoping."""

import random
from fractions import Fraction

import pytest

from trisemi import (
    APPoint,
    DegeneratePhase,
    DilationIndex,
    Element,
    Frequency,
    IdealId,
    InvalidScale,
    NotInAmbient,
    Scalar,
    aap_eval,
    adjoint,
    certificate_dict,
    commutator_certificate,
    in_ideal,
    jt_reduce,
    mul,
    quotient_defect,
    verify_certificate,
)

from helpers import random_ap_element, random_z_element

ONE = Frequency.rational(1)
TWO = Frequency.rational(2)


def commutator(x, y):
    return mul(x, y) - mul(y, x)


def test_cp_membership_oracles(table):
    assert in_ideal(mul(Element.m(ONE), Element.d(ONE)), IdealId.cp(), table)
    assert not in_ideal(Element.m(ONE), IdealId.cp(), table)
    assert not in_ideal(Element.d(ONE), IdealId.cp(), table)
    assert not in_ideal(Element.identity(), IdealId.cp(), table)
    # sums of cross terms stay inside
    x = mul(Element.m(ONE), Element.d(TWO)) - mul(Element.m(TWO), Element.d(ONE))
    assert in_ideal(x, IdealId.cp(), table)


def test_cp_rejects_elements_outside_the_ambient(table):
    with pytest.raises(NotInAmbient):
        in_ideal(Element.v(DilationIndex.unit(1)), IdealId.cp(), table)
    with pytest.raises(NotInAmbient):
        in_ideal(Element.m(Frequency.rational(-1)), IdealId.cp(), table)


def test_cph_membership_oracles(table):
    v1 = Element.v(DilationIndex.unit(1))
    x = mul(Element.m(ONE), v1) - mul(Element.m(TWO), v1)
    assert in_ideal(x, IdealId.cph_g(), table)
    assert not in_ideal(mul(Element.m(ONE), v1), IdealId.cph_g(), table)
    # pure generators are excluded
    assert not in_ideal(Element.m(ONE), IdealId.cph_g(), table)
    assert not in_ideal(Element.d(ONE), IdealId.cph_g(), table)
    assert not in_ideal(v1, IdealId.cph_g(), table)
    # M D cross terms belong
    assert in_ideal(mul(Element.m(ONE), Element.d(ONE)), IdealId.cph_g(), table)


def test_cph_t_level_sums_must_vanish(table):
    v1 = Element.v(DilationIndex.unit(1))
    # matching M and D level sums cancel at t = 1
    x = mul(Element.m(ONE), v1) - mul(Element.m(TWO), v1)
    y = mul(Element.d(ONE), v1) - mul(Element.d(TWO), v1)
    assert in_ideal(x + y, IdealId.cph_g(), table)
    # breaking one sum breaks membership
    assert not in_ideal(x + mul(Element.d(ONE), v1), IdealId.cph_g(), table)


def test_random_commutators_land_in_the_ideals(table):
    rng = random.Random(23)
    for _ in range(60):
        a, b = random_ap_element(rng, 3), random_ap_element(rng, 3)
        assert in_ideal(commutator(a, b), IdealId.cp(), table)
    for _ in range(60):
        a, b = random_z_element(rng, 3), random_z_element(rng, 3)
        assert in_ideal(commutator(a, b), IdealId.cph_g(), table)


def test_quotient_defect(table):
    rng = random.Random(29)
    for _ in range(40):
        x = random_ap_element(rng, 4)
        assert in_ideal(quotient_defect(x), IdealId.cp(), table)


def test_i0_membership(table):
    x = Element.m(ONE) - Element.m(TWO)
    assert in_ideal(x, IdealId.i0(), table)
    assert not in_ideal(Element.m(ONE), IdealId.i0(), table)
    # nonzero constant term is excluded even when the sum cancels
    y = Element.identity() - Element.m(ONE)
    assert not in_ideal(y, IdealId.i0(), table)


def test_jt_matches_i0_and_validates_the_step(table):
    x = Element.m(ONE) - Element.m(TWO)
    assert in_ideal(x, IdealId.jt(DilationIndex.unit(1)), table)
    with pytest.raises(InvalidScale):
        in_ideal(x, IdealId.jt(DilationIndex.zero()), table)
    with pytest.raises(InvalidScale):
        in_ideal(x, IdealId.jt(DilationIndex.unit(-2)), table)


def test_commutator_certificate_exact(table):
    for lam, s in ((ONE, ONE), (ONE, TWO), (Frequency.atom("s2"), ONE)):
        cert = commutator_certificate(lam, s)
        assert verify_certificate(cert)
        lhs = commutator(cert.f, Element.d(s))
        assert lhs == cert.target
        assert in_ideal(cert.target, IdealId.cp(), table)


def test_commutator_certificate_degenerate_inputs():
    with pytest.raises(DegeneratePhase):
        commutator_certificate(Frequency.zero(), ONE)
    with pytest.raises(DegeneratePhase):
        commutator_certificate(ONE, Frequency.zero())


def test_jt_reduce_oracles():
    cert = jt_reduce(3.0, 0.7)
    assert cert.items  # nontrivial telescope
    assert verify_certificate(cert)
    # lam = 1: the difference is zero, certificate is empty
    trivial = jt_reduce(1.0, 0.5)
    assert not trivial.items
    assert verify_certificate(trivial)
    # lam < 1 exercises the negative-step branch
    low = jt_reduce(0.37, 0.9)
    assert verify_certificate(low)


def test_jt_reduce_randomized():
    rng = random.Random(31)
    for _ in range(30):
        lam = rng.uniform(0.1, 10.0)
        t = rng.uniform(0.1, 3.0)
        assert verify_certificate(jt_reduce(lam, t))


def test_certificate_serialization():
    d = certificate_dict(commutator_certificate(ONE, TWO))
    assert d["kind"] == "commutator"
    assert d["verified"] is True
    d2 = certificate_dict(jt_reduce(2.0, 0.5))
    assert d2["kind"] == "telescope"
    assert d2["residual"] < 1e-9
    assert {"sign", "kappa", "mu"} <= set(d2["items"][0])


def test_membership_agrees_with_character_vanishing(table):
    # i0 membership is equivalent to vanishing at the origin and at infinity
    rng = random.Random(37)
    for _ in range(40):
        x = Element.zero()
        for _ in range(rng.randint(1, 4)):
            lam = Frequency.rational(Fraction(rng.randint(0, 5), rng.randint(1, 2)))
            x = x + Element.m(lam).scale(Scalar.gaussian(rng.randint(-3, 3), rng.randint(-3, 3)))
        member = in_ideal(x, IdealId.i0(), table)
        at_origin = aap_eval(x, APPoint.x1(), table)
        at_inf = aap_eval(x, APPoint.infinity(), table)
        vanishes = abs(at_origin) < 1e-9 and abs(at_inf) < 1e-9
        assert member == vanishes


def test_adjoint_commutator_stays_in_the_ideal(table):
    rng = random.Random(41)
    for _ in range(20):
        a, b = random_ap_element(rng, 3), random_ap_element(rng, 3)
        c = commutator(a, b)
        # the adjoint of a commutator is a commutator of the adjoint algebra
        assert in_ideal(adjoint(adjoint(c)), IdealId.cp(), table)
