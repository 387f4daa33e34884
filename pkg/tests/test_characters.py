"""Multiplicative functionals: evaluation points, families, composites."""

import cmath
import math
import random
import warnings
from fractions import Fraction

import pytest

from trisemi import (
    APPoint,
    BohrCharacter,
    DilationIndex,
    DiscPoint,
    Element,
    Frequency,
    GroupModeError,
    HalfPlanePoint,
    NotAnalytic,
    NotInDomain,
    TripleCharacter,
    UntrustedCharacterWarning,
    aap_eval,
    arens_automorphism,
    composite_eval,
    eval_character,
    mul,
    vanishing_point,
)

from helpers import random_m_poly, random_z_element

ONE = Frequency.rational(1)
TWO = Frequency.rational(2)


def test_aap_eval_at_the_origin_point(table):
    # trivial character, zero decay: evaluation at 0, i.e. coefficient sum
    f = Element.m(ONE) + Element.m(TWO) + Element.m(Frequency.zero())
    assert aap_eval(f, APPoint.x1(), table) == pytest.approx(3.0)
    g = Element.m(ONE) - Element.m(TWO)
    assert aap_eval(g, APPoint.x1(), table) == pytest.approx(0.0)


def test_aap_eval_at_infinity_keeps_the_constant_term(table):
    f = Element.m(ONE) + Element.identity() + Element.identity()
    assert aap_eval(f, APPoint.infinity(), table) == pytest.approx(2.0)


def test_aap_eval_decay(table):
    f = Element.m(ONE)
    p = APPoint.finite(BohrCharacter.trivial(), 1)
    assert aap_eval(f, p, table) == pytest.approx(math.exp(-1.0))
    chi = BohrCharacter({"ONE": Fraction(1, 2)})
    q = APPoint.finite(chi, Fraction(1, 2))
    assert aap_eval(f, q, table) == pytest.approx(cmath.exp(0.5j) * math.exp(-0.5))


def test_aap_eval_rejects_bad_inputs(table):
    with pytest.raises(NotAnalytic):
        aap_eval(Element.m(Frequency.rational(-1)), APPoint.x1(), table)
    with pytest.raises(NotInDomain):
        aap_eval(Element.d(ONE), APPoint.x1(), table)
    with pytest.raises(NotInDomain):
        aap_eval(Element.v(DilationIndex.unit(1)), APPoint.x1(), table)


def test_disc_point_powers():
    p = DiscPoint(0.5j)
    assert p.value(DilationIndex.unit(2)) == pytest.approx(-0.25)
    assert p.value(DilationIndex.zero()) == 1.0
    with pytest.raises(GroupModeError):
        p.value(DilationIndex.unit(Fraction(1, 2)))
    with pytest.raises(NotInDomain):
        p.value(DilationIndex.unit(-1))
    with pytest.raises(ValueError):
        DiscPoint(2.0)


def test_vanishing_points_kill_positive_dilations(table):
    z = vanishing_point("Z")
    assert z.value(DilationIndex.unit(3)) == 0
    assert z.is_vanishing()
    r = vanishing_point("R")
    assert r.value(DilationIndex.unit(3), table) == 0
    assert r.value(DilationIndex.zero(), table) == 1.0
    with pytest.raises(GroupModeError):
        vanishing_point("Q")


def test_d1_evaluates_m_and_kills_d_and_v(table):
    chi = TripleCharacter.d1(APPoint.finite(BohrCharacter.trivial(), 1))
    f = Element.m(ONE) + Element.d(ONE)
    assert eval_character(chi, f, table) == pytest.approx(math.exp(-1.0))
    g = Element.m(ONE) + Element.v(DilationIndex.unit(1))
    assert eval_character(chi, g, table) == pytest.approx(math.exp(-1.0))


def test_d2_is_the_shift_side_mirror(table):
    chi = TripleCharacter.d2(APPoint.finite(BohrCharacter.trivial(), 1))
    f = Element.d(ONE) + Element.m(ONE)
    assert eval_character(chi, f, table) == pytest.approx(math.exp(-1.0))


def test_d3_d4_delegate_to_the_dilation_point(table):
    w = 0.3 + 0.4j
    chi = TripleCharacter.d3(DiscPoint(w))
    x = mul(Element.m(Frequency.zero()), Element.v(DilationIndex.unit(1)))
    assert eval_character(chi, x, table) == pytest.approx(w)
    chi4 = TripleCharacter.d4(DiscPoint(w))
    y = Element.v(DilationIndex.unit(2))
    assert eval_character(chi4, y, table) == pytest.approx(w * w)


def test_glue_point_agreement(table):
    rng = random.Random(1)
    chi1 = TripleCharacter.d1(APPoint.infinity())
    chi2 = TripleCharacter.d2(APPoint.infinity())
    chiinf = TripleCharacter.chi_inf("Z")
    for _ in range(25):
        x = random_z_element(rng, 4)
        a = eval_character(chi1, x, table)
        b = eval_character(chi2, x, table)
        c = eval_character(chiinf, x, table)
        assert a == b == c


def test_multiplicativity_randomized(table):
    rng = random.Random(7)
    chis = [
        TripleCharacter.d1(APPoint.finite(BohrCharacter({"s2": Fraction(1, 3)}), Fraction(1, 2))),
        TripleCharacter.d2(APPoint.x1()),
        TripleCharacter.d3(DiscPoint(0.6)),
        TripleCharacter.d4(DiscPoint(-0.2 + 0.1j)),
        TripleCharacter.chi_inf("Z"),
    ]
    for _ in range(40):
        x = random_z_element(rng, 3)
        y = random_z_element(rng, 3)
        for chi in chis:
            lhs = eval_character(chi, mul(x, y), table)
            rhs = eval_character(chi, x, table) * eval_character(chi, y, table)
            assert abs(lhs - rhs) < 1e-9


def test_character_domain_guard(table):
    chi = TripleCharacter.d1(APPoint.x1())
    with pytest.raises(NotInDomain):
        eval_character(chi, Element.m(Frequency.rational(-2)), table)


def test_untrusted_chi0_warns(table):
    off = TripleCharacter.chi0(DiscPoint(0.5))
    assert not off.trusted
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        eval_character(off, Element.v(DilationIndex.unit(1)), table)
    assert any(issubclass(w.category, UntrustedCharacterWarning) for w in caught)
    trusted = TripleCharacter.chi0(vanishing_point("Z"))
    assert trusted.trusted


def test_composites_match_families_at_level_zero(table):
    rng = random.Random(11)
    d3v = TripleCharacter.d3(vanishing_point("Z"))
    d4v = TripleCharacter.d4(vanishing_point("Z"))
    for _ in range(25):
        x = random_z_element(rng, 4)
        assert composite_eval(x, "m", None, table) == pytest.approx(
            eval_character(d3v, x, table), abs=1e-12
        )
        assert composite_eval(x, "d", None, table) == pytest.approx(
            eval_character(d4v, x, table), abs=1e-12
        )


def test_composites_multiplicative_at_level_zero(table):
    rng = random.Random(13)
    for _ in range(30):
        x = random_z_element(rng, 3)
        y = random_z_element(rng, 3)
        for side in ("m", "d"):
            lhs = composite_eval(mul(x, y), side, None, table)
            rhs = composite_eval(x, side, None, table) * composite_eval(y, side, None, table)
            assert abs(lhs - rhs) < 1e-9


def test_composites_fail_multiplicativity_above_level_zero(table):
    # V_1 * V_1 = V_2: the level-1 slice sees V_1 but not V_2
    x = Element.v(DilationIndex.unit(1))
    t = DilationIndex.unit(1)
    lhs = composite_eval(mul(x, x), "m", t, table)
    rhs = composite_eval(x, "m", t, table) ** 2
    assert abs(lhs - rhs) == pytest.approx(1.0)


def test_arens_automorphism_is_isometric(table):
    rng = random.Random(17)
    chi = BohrCharacter({"ONE": Fraction(2, 7), "s2": Fraction(-1, 3)})
    k = DilationIndex.unit(1)
    for _ in range(20):
        x = random_m_poly(rng, 4)
        y = random_m_poly(rng, 3)
        fx = arens_automorphism(x, chi, k, table)
        fy = arens_automorphism(y, chi, k, table)
        assert arens_automorphism(mul(x, y), chi, k, table) == mul(fx, fy)
        assert fx.l1_norm(table) == pytest.approx(x.l1_norm(table), rel=1e-12)
