"""Membership tests and constructive certificates for the commutator
and function ideals.

Membership is decided by exact coefficient conditions on polynomials.
Certificates come in two flavours: an exact commutator pair whose
re-expansion reproduces the target on the nose, and a numeric
telescoping combination of dilation-difference generators checked by
coefficient matching at 10^-9.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraId, Axis, Element, coeff_map, mul, support_predicate
from .errors import DegeneratePhase, InvalidScale, NotInAmbient
from .exactnum import (
    AtomTable,
    DEFAULT_GUARD,
    DilationIndex,
    Frequency,
    PhaseSum,
    Scalar,
    dilation_sign,
    phase_product,
)

_KINDS = ("cp", "cph", "i0", "jt")


@dataclass(frozen=True)
class IdealId:
    kind: str
    t: DilationIndex | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown ideal {self.kind!r}")
        if (self.kind == "jt") != (self.t is not None):
            raise ValueError("exactly the jt ideal carries a dilation step")

    @classmethod
    def cp(cls) -> "IdealId":
        return cls("cp")

    @classmethod
    def cph_g(cls) -> "IdealId":
        return cls("cph")

    @classmethod
    def i0(cls) -> "IdealId":
        return cls("i0")

    @classmethod
    def jt(cls, t: DilationIndex) -> "IdealId":
        return cls("jt", t)


def _require_m_only(x: Element):
    for lam, mu, t in x.terms:
        if not mu.is_zero() or not t.is_zero():
            raise NotInAmbient(
                "the function ideals live in the multiplication polynomials"
            )


def in_ideal(
    x: Element,
    ideal: IdealId,
    table: AtomTable | None = None,
    guard: float = DEFAULT_GUARD,
) -> bool:
    """Exact coefficient test for membership in the given ideal."""
    table = table or AtomTable.default()
    if ideal.kind == "cp":
        if not support_predicate(x, AlgebraId.AP, table, guard):
            raise NotInAmbient("element leaves the parabolic algebra")
        # both axis-zero fibers must vanish identically
        return all(
            not mu.is_zero() and not lam.is_zero() for lam, mu, _ in x.terms
        )
    if ideal.kind == "cph":
        if not support_predicate(x, AlgebraId.APH_G_PLUS, table, guard):
            raise NotInAmbient("element leaves the triple semigroup algebra")
        m_sums: dict = {}
        d_sums: dict = {}
        for (lam, mu, t), coeff in x.terms.items():
            lone_m = mu.is_zero() and t.is_zero()
            lone_d = lam.is_zero() and t.is_zero()
            lone_v = lam.is_zero() and mu.is_zero()
            if lone_m or lone_d or lone_v:
                return False
            if mu.is_zero():
                m_sums[t] = m_sums.get(t, Scalar.zero()) + coeff
            if lam.is_zero():
                d_sums[t] = d_sums.get(t, Scalar.zero()) + coeff
        zero = Scalar.zero()
        return all(s == zero for s in m_sums.values()) and all(
            s == zero for s in d_sums.values()
        )
    if ideal.kind == "jt":
        if dilation_sign(ideal.t, table, guard) <= 0:
            raise InvalidScale("the telescoping ideal needs a positive step")
    # i0 and jt share the same membership conditions: vanishing at the
    # origin and at infinity (the telescoping lemma collapses jt to i0).
    if not support_predicate(x, AlgebraId.AP, table, guard):
        raise NotInAmbient("element leaves the parabolic algebra")
    _require_m_only(x)
    total = Scalar.zero()
    constant = Scalar.zero()
    for (lam, _, _), coeff in x.terms.items():
        total = total + coeff
        if lam.is_zero():
            constant = constant + coeff
    zero = Scalar.zero()
    return total == zero and constant == zero


def quotient_defect(x: Element) -> Element:
    """The part of x outside both axis-zero fibers and the constants.

    Subtracting both fibers and restoring the constant coefficient
    always lands in the commutator ideal; this is the exact form of the
    quotient description of the parabolic algebra.
    """
    e0 = coeff_map(x, Axis.TRANSLATION, Frequency.zero())
    z0 = coeff_map(x, Axis.MULTIPLICATION, Frequency.zero())
    chi = x.coefficient(
        (Frequency.zero(), Frequency.zero(), DilationIndex.zero())
    )
    return x - e0 - z0 + Element.identity().scale(chi)


# ---------------------------------------------------------------- exact side


@dataclass(frozen=True)
class CommutatorCertificate:
    """f with [f, D_s] equal to the target, exactly."""

    f: Element
    s: Frequency
    target: Element


def commutator_certificate(lam: Frequency, s: Frequency) -> CommutatorCertificate:
    """Produce f with f D_s - D_s f = M_lam D_s in closed form.

    The multiplier is M_lam divided by 1 - e^{-i lam s}; the phase
    lam*s is a nonzero quadratic exponent whenever both inputs are
    nonzero, so the denominator never degenerates in the free model.
    """
    if lam.is_zero() or s.is_zero():
        raise DegeneratePhase("both frequencies must be nonzero")
    theta = phase_product(lam, s)
    if theta.is_zero():
        raise DegeneratePhase("the pairing phase vanished")
    den = PhaseSum.one() + (-PhaseSum.phase(-theta))
    f = Element.m(lam).scale(Scalar(PhaseSum.one(), den))
    target = mul(Element.m(lam), Element.d(s))
    return CommutatorCertificate(f=f, s=s, target=target)


# -------------------------------------------------------------- numeric side


@dataclass(frozen=True)
class TelescopeCertificate:
    """Finite combination of dilation-difference generators.

    Each item (sign, kappa, mu) contributes sign * e^{i kappa x} *
    (e^{i mu x} - e^{i mu e^t x}); kappa None means multiplier one.
    The combination reproduces e^{i lam x} - e^{i x} within the
    numeric residual policy.
    """

    lam: float
    t: float
    items: tuple

    def expand(self) -> dict:
        """Frequency to coefficient map of the expanded combination."""
        out: dict = {}
        growth = math.exp(self.t)
        for sign, kappa, mu in self.items:
            base = 0.0 if kappa is None else kappa
            for freq, c in ((base + mu, sign), (base + mu * growth, -sign)):
                out[freq] = out.get(freq, 0.0) + c
        return out

    def target(self) -> dict:
        out: dict = {}
        for freq, c in ((self.lam, 1.0), (1.0, -1.0)):
            out[freq] = out.get(freq, 0.0) + c
        return out


Certificate = CommutatorCertificate | TelescopeCertificate


def jt_reduce(lam: float, t: float) -> TelescopeCertificate:
    """Telescope e^{i lam x} - e^{i x} into step-t generators.

    Writes lam = rho * e^{n t} with rho in [1, e^t), crosses the base
    interval with one multiplied generator, then walks the remaining n
    dilation steps with bare generators.
    """
    if lam <= 0 or t <= 0:
        raise InvalidScale("frequency and step must be positive")
    growth = math.exp(t)
    n = math.floor(math.log(lam) / t)
    rho = lam * math.exp(-n * t)
    # guard the floor against rounding at the interval edge
    if rho < 1.0:
        n -= 1
        rho = lam * math.exp(-n * t)
    elif rho >= growth:
        n += 1
        rho = lam * math.exp(-n * t)
    items = []
    lam_base = (rho - 1.0) / (growth - 1.0)
    if lam_base > 0:
        items.append((-1, 1.0 - lam_base, lam_base))
    if n >= 0:
        for k in range(n):
            items.append((-1, None, rho * math.exp(k * t)))
    else:
        for k in range(n, 0):
            items.append((1, None, rho * math.exp(k * t)))
    return TelescopeCertificate(lam=lam, t=t, items=tuple(items))


# ------------------------------------------------------------- verification


def _merge_tolerant(entries: list, tol: float) -> float:
    """Largest cluster-sum modulus after merging nearby frequencies."""
    entries = sorted(entries)
    worst = 0.0
    i = 0
    while i < len(entries):
        j = i + 1
        freq, coeff = entries[i]
        while j < len(entries) and entries[j][0] - entries[j - 1][0] <= tol:
            coeff += entries[j][1]
            j += 1
        worst = max(worst, abs(coeff))
        i = j
    return worst


def certificate_residual(cert: Certificate, tol: float = 1e-9) -> float:
    if isinstance(cert, CommutatorCertificate):
        d = Element.d(cert.s)
        achieved = mul(cert.f, d) - mul(d, cert.f)
        return 0.0 if achieved == cert.target else math.inf
    entries = [(f, c) for f, c in cert.expand().items()]
    entries += [(f, -c) for f, c in cert.target().items()]
    return _merge_tolerant(entries, tol)


def verify_certificate(cert: Certificate, tol: float = 1e-9) -> bool:
    """Re-expand the certificate and compare against its target."""
    return certificate_residual(cert, tol) < tol


def certificate_dict(cert: Certificate) -> dict:
    """Serializable summary for the command line."""
    from .exprs import element_text, freq_text

    if isinstance(cert, CommutatorCertificate):
        return {
            "kind": "commutator",
            "multiplier": element_text(cert.f),
            "shift": freq_text(cert.s),
            "target": element_text(cert.target),
            "policy": "exact",
            "verified": verify_certificate(cert),
        }
    return {
        "kind": "telescope",
        "lam": cert.lam,
        "t": cert.t,
        "items": [
            {"sign": s, "kappa": k, "mu": m} for s, k, m in cert.items
        ],
        "policy": "residual<1e-9",
        "residual": certificate_residual(cert),
        "verified": verify_certificate(cert),
    }
