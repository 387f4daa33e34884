"""Analytic Gaussian backend: inner products, generator action, limits."""

import cmath
import math
import random

import pytest
from scipy.integrate import quad

from trisemi import (
    AtomTable,
    DilationIndex,
    DivergentPacket,
    Element,
    Frequency,
    GaussianPacket,
    M,
    PacketSum,
    ScheduleTooShort,
    apply_element,
    apply_word,
    column_norms,
    fourier_conjugation_check,
    lr_apply,
    mul,
    norm_lower_bound,
    packet_inner,
    relation_residual,
    wot_compression_demo,
    wot_limit,
)

from helpers import (
    mp_diff_norm,
    mp_norm,
    random_element,
    random_packet,
    random_packet_sum,
    random_word,
)

ONE = Frequency.rational(1)


def quad_inner(f: PacketSum, g: PacketSum) -> complex:
    re = quad(lambda x: (f.value(x) * g.value(x).conjugate()).real, -40, 40, limit=400)[0]
    im = quad(lambda x: (f.value(x) * g.value(x).conjugate()).imag, -40, 40, limit=400)[0]
    return complex(re, im)


def test_packet_inner_matches_quadrature():
    rng = random.Random(5)
    for _ in range(8):
        f = random_packet_sum(rng, 2)
        g = random_packet_sum(rng, 2)
        exact = packet_inner(f, g)
        numeric = quad_inner(f, g)
        assert abs(exact - numeric) < 1e-10 * (1 + abs(exact))


def test_unit_packet_norm():
    f = PacketSum.single()
    assert math.isclose(f.norm_sq(), math.sqrt(math.pi / 2), rel_tol=1e-14)
    assert math.isclose(f.norm(), (math.pi / 2) ** 0.25, rel_tol=1e-14)


def test_generator_letters_are_unitary():
    rng = random.Random(11)
    for _ in range(20):
        f = random_packet_sum(rng, 3)
        n0 = f.norm_sq()
        for g in (
            f.modulate(rng.uniform(-4, 4)),
            f.translate(rng.uniform(-4, 4)),
            f.dilate(rng.uniform(-1.5, 1.5)),
        ):
            assert math.isclose(g.norm_sq(), n0, rel_tol=1e-10)


def test_relation_residuals_unit_packet():
    # with centered packets the dilation relations map parameters identically
    f = PacketSum.single()
    assert relation_residual("dilM", (0.7, 1.3), f) == 0.0
    assert relation_residual("dilD", (0.7, 1.3), f) == 0.0


def test_relation_residuals_random():
    rng = random.Random(13)
    for _ in range(15):
        f = random_packet_sum(rng, 2)
        lam, mu = rng.uniform(0.2, 3), rng.uniform(0.2, 3)
        t = rng.uniform(-1, 1)
        # all three relations hold analytically; only rounding noise remains
        assert relation_residual("dilM", (t, lam), f) < 1e-6 * f.norm()
        assert relation_residual("dilD", (t, mu), f) < 1e-6 * f.norm()
        assert relation_residual("weyl", (lam, mu), f) < 1e-6 * f.norm()
        lhs = f.translate(mu).modulate(lam)
        rhs = f.modulate(lam).translate(mu).scale(cmath.exp(1j * lam * mu))
        assert mp_diff_norm(lhs, rhs) < 1e-12 * float(mp_norm(f))


def test_relation_residual_rejects_unknown_kind():
    with pytest.raises(ValueError):
        relation_residual("braid", (1.0, 1.0), PacketSum.single())


def test_fourier_round_trip():
    rng = random.Random(17)
    for _ in range(10):
        f = random_packet_sum(rng, 2)
        back = f.fourier().inv_fourier()
        assert mp_diff_norm(f, back) < 1e-12 * float(mp_norm(f))
        # Plancherel
        assert math.isclose(f.fourier().norm_sq(), f.norm_sq(), rel_tol=1e-10)


def test_fourier_conjugation():
    rng = random.Random(19)
    for lam in (0.5, 1.0, 2.0):
        for _ in range(4):
            f, g = random_packet_sum(rng, 2), random_packet_sum(rng, 2)
            assert fourier_conjugation_check(lam, f, g) < 1e-8
            assert fourier_conjugation_check(lam, f, g, dual=True) < 1e-8


def test_apply_element_matches_letterwise_action(table):
    rng = random.Random(23)
    for _ in range(10):
        word = random_word(rng, 4)
        f = random_packet_sum(rng, 2)
        via_word = apply_word(word, f, table)
        via_element = apply_element(Element.from_word(word), f, table)
        assert mp_diff_norm(via_word, via_element) < 1e-10 * (1 + float(mp_norm(via_word)))


def test_norm_lower_bound_respects_l1(table):
    rng = random.Random(29)
    for _ in range(10):
        x = random_element(rng, max_terms=3)
        bound = norm_lower_bound(x, trials=20, seed=rng.randrange(10**6), table=table)
        assert 0.0 <= bound <= x.l1_norm(table) + 1e-8


def test_norm_lower_bound_is_tight_for_a_single_unitary(table):
    x = mul(Element.m(ONE), Element.d(ONE))
    bound = norm_lower_bound(x, trials=5, seed=0, table=table)
    assert math.isclose(bound, 1.0, rel_tol=1e-9)


def test_lr_apply_and_column_norms(table):
    from trisemi import LRVector

    x = Element.m(ONE) + Element.d(ONE)
    xi = PacketSum.single()
    v = lr_apply(x, LRVector.delta(Frequency.zero(), xi), table=table)
    # one fiber per translation level in the support
    assert set(v.components) == {Frequency.zero(), ONE}
    lhs, rhs = column_norms(x, xi, grading="translation", table=table)
    assert math.isclose(lhs, rhs, rel_tol=1e-9)
    lhs2, rhs2 = column_norms(x, xi, grading="dilation", table=table)
    assert math.isclose(lhs2, rhs2, rel_tol=1e-9)


def test_wot_limit_translation_keeps_the_zero_dilation_fiber():
    x = Element.m(ONE) + mul(Element.m(ONE), Element.v(DilationIndex.unit(1)))
    assert wot_limit(x, "translation") == Element.m(ONE)


def test_wot_compression_demo_report(table):
    x = Element.m(ONE) + mul(Element.m(ONE), Element.v(DilationIndex.unit(1)))
    f = PacketSum.single()
    g = PacketSum.single(GaussianPacket(amp=1.0, a=0.7, b=0.4, c=-0.3))
    report = wot_compression_demo(x, f, g, "translation", [151, 622], table)
    assert report.mode == "translation"
    assert len(report.values) == 2
    assert report.errors[1] < report.errors[0]
    payload = report.to_dict()
    assert payload["mode"] == "translation"
    assert len(payload["steps"]) == 2
    assert {"re", "im"} <= set(payload["limit"])


def test_wot_compression_demo_needs_two_steps(table):
    x = Element.m(ONE)
    f = PacketSum.single()
    with pytest.raises(ScheduleTooShort):
        wot_compression_demo(x, f, f, "translation", [151], table)


def test_report_ok_thresholds():
    from trisemi import ConvergenceReport

    good = ConvergenceReport(
        mode="translation",
        schedule=(1, 2),
        values=(1.0, 1.0),
        limit_value=1.0,
        errors=(0.2, 0.01),
        relative_errors=(0.2, 0.01),
        nonmonotone_fraction=0.0,
    )
    assert good.ok()
    assert not good.ok(tol=0.001)


def test_divergent_packet_rejected():
    with pytest.raises(DivergentPacket):
        GaussianPacket(a=-1.0)
    with pytest.raises(DivergentPacket):
        GaussianPacket(a=0.0)


def test_letterwise_word_action_matches_normal_form(table):
    # normalize first, then act: same vector as acting letter by letter
    rng = random.Random(31)
    for _ in range(10):
        word = [M(ONE)] + random_word(rng, 3)
        f = random_packet_sum(rng, 2)
        literal = apply_word(word, f, table)
        normal = apply_element(Element.from_word(word), f, table)
        assert mp_diff_norm(literal, normal) < 1e-10 * (1 + float(mp_norm(literal)))
