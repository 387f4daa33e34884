"""Computable character families of the semigroup algebras.

Points of the almost periodic character disc are a Bohr character plus
an exponential decay rate, with one extra point at infinity reading off
the constant term.  Triple algebra characters come in five families
that kill two of the three generator axes in the classified patterns;
the surviving axis is evaluated through a disc point (integer dilation
group) or another disc-with-infinity point (real dilation group).
"""

from __future__ import annotations

import cmath
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import AlgebraId, Element, support_predicate
from .errors import GroupModeError, NotAnalytic, NotInDomain, UntrustedCharacterWarning
from .exactnum import (
    AtomTable,
    BohrCharacter,
    DilationIndex,
    Frequency,
    FrequencyAtom,
    Scalar,
    UNIT_SYMBOL,
    _frac,
    freq_sign,
    scalar_numeric,
    DEFAULT_GUARD,
)

GROUP_MODES = ("Z", "R")


def _dil_as_frequency(t: DilationIndex) -> Frequency:
    pairs = []
    for sym, q in t.pairs:
        if sym == UNIT_SYMBOL:
            pairs.append((FrequencyAtom.one(), q))
        else:
            pairs.append((FrequencyAtom(sym), q))
    return Frequency(pairs)


# ---------------------------------------------------------------- AP points


@dataclass(frozen=True)
class APPoint:
    """Point of the analytic almost periodic character space.

    A finite point pairs a Bohr character with a decay rate y >= 0 and
    sends e^{i lam x} to c(lam) e^{-lam y}; the infinity point reads
    off the constant coefficient.
    """

    at_infinity: bool
    char: BohrCharacter = field(default_factory=BohrCharacter.trivial)
    decay: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "decay", _frac(self.decay))
        if self.decay < 0:
            raise ValueError("decay rate must be nonnegative")

    @classmethod
    def finite(cls, char: BohrCharacter | None = None, decay=0) -> "APPoint":
        return cls(False, char or BohrCharacter.trivial(), _frac(decay))

    @classmethod
    def infinity(cls) -> "APPoint":
        return cls(True)

    @classmethod
    def x1(cls) -> "APPoint":
        """Evaluation at the origin: trivial character, no decay."""
        return cls.finite()

    def value(self, freq: Frequency, table: AtomTable) -> complex:
        if self.at_infinity:
            return 1.0 if freq.is_zero() else 0.0
        num = freq.numeric(table)
        return self.char.value(freq) * cmath.exp(-num * float(self.decay))

    def describe(self) -> dict:
        if self.at_infinity:
            return {"kind": "infinity"}
        angles = {base: str(angle) for base, angle in self.char.angles}
        return {"kind": "finite", "decay": str(self.decay), "angles": angles}


def aap_eval(f: Element, p: APPoint, table: AtomTable | None = None,
             guard: float = DEFAULT_GUARD) -> complex:
    """Evaluate an analytic multiplication polynomial at an AP point."""
    table = table or AtomTable.default()
    total = 0.0 + 0.0j
    for (lam, mu, t), coeff in f.sorted_terms():
        if not mu.is_zero() or not t.is_zero():
            raise NotInDomain(
                "evaluation needs a pure multiplication polynomial"
            )
        if freq_sign(lam, table, guard) < 0:
            raise NotAnalytic(f"negative frequency {lam!r}")
        total += scalar_numeric(coeff, table) * p.value(lam, table)
    return total


# ----------------------------------------------------------- dilation points


@dataclass(frozen=True)
class DiscPoint:
    """Disc algebra point for the integer dilation semigroup."""

    w: complex

    def __post_init__(self):
        if abs(self.w) > 1 + 1e-12:
            raise ValueError("disc point must have modulus at most 1")

    def value(self, t: DilationIndex) -> complex:
        n = t.integer_unit()
        if n is None:
            raise GroupModeError(
                f"dilation index {t!r} is not an integer; the disc point "
                "model needs the integer dilation group"
            )
        if n < 0:
            raise NotInDomain("negative dilation power")
        if n == 0:
            return 1.0
        return self.w**n

    def is_vanishing(self) -> bool:
        return self.w == 0

    def describe(self) -> dict:
        return {"kind": "disc", "re": self.w.real, "im": self.w.imag}


class HalfPlanePoint:
    """AP point reused on the dilation axis for the real dilation group."""

    __slots__ = ("point",)

    def __init__(self, point: APPoint):
        self.point = point

    def value(self, t: DilationIndex, table: AtomTable) -> complex:
        return self.point.value(_dil_as_frequency(t), table)

    def is_vanishing(self) -> bool:
        return self.point.at_infinity

    def describe(self) -> dict:
        out = self.point.describe()
        out["kind"] = "half-plane-" + out["kind"]
        return out

    def __eq__(self, other):
        return isinstance(other, HalfPlanePoint) and self.point == other.point

    def __hash__(self):
        return hash(("half-plane", self.point))


def vanishing_point(group: str = "Z"):
    """The dilation-side point that kills every V_t with t > 0."""
    if group == "Z":
        return DiscPoint(0j)
    if group == "R":
        return HalfPlanePoint(APPoint.infinity())
    raise GroupModeError(f"unknown group mode {group!r}")


def _v_value(point, t: DilationIndex, table: AtomTable) -> complex:
    if isinstance(point, DiscPoint):
        return point.value(t)
    return point.value(t, table)


# ------------------------------------------------------------- triple family

_FAMILIES = ("d1", "d2", "d3", "d4", "chi0")


@dataclass(frozen=True)
class TripleCharacter:
    """One multiplicative functional from the classified families.

    d1 keeps the multiplication axis (an AP point) and kills the other
    two; d2 keeps the translation axis.  d3 and d4 send the kept axis
    to one identically and carry a dilation-side point; chi0 kills both
    function axes.  A chi0 point away from the vanishing point is
    marked untrusted: it is formally multiplicative on polynomials but
    its boundedness on the closed algebra is an open point, and every
    evaluation through it warns.
    """

    family: str
    ap: APPoint | None = None
    v: object | None = None
    trusted: bool = True

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown character family {self.family!r}")

    @classmethod
    def d1(cls, p: APPoint) -> "TripleCharacter":
        return cls("d1", ap=p)

    @classmethod
    def d2(cls, p: APPoint) -> "TripleCharacter":
        return cls("d2", ap=p)

    @classmethod
    def d3(cls, v) -> "TripleCharacter":
        return cls("d3", v=v)

    @classmethod
    def d4(cls, v) -> "TripleCharacter":
        return cls("d4", v=v)

    @classmethod
    def chi0(cls, v) -> "TripleCharacter":
        trusted = v.is_vanishing()
        return cls("chi0", v=v, trusted=trusted)

    @classmethod
    def chi_inf(cls, group: str = "Z") -> "TripleCharacter":
        """Constant term functional: the glue point of the two discs."""
        return cls.chi0(vanishing_point(group))

    def describe(self) -> dict:
        out = {"family": self.family, "trusted": self.trusted}
        if self.ap is not None:
            out["point"] = self.ap.describe()
        if self.v is not None:
            out["dilation_point"] = self.v.describe()
        return out


def eval_character(
    chi: TripleCharacter,
    x: Element,
    table: AtomTable | None = None,
    guard: float = DEFAULT_GUARD,
) -> complex:
    """Multiplicative-linear extension of the family rule to a polynomial."""
    table = table or AtomTable.default()
    if not support_predicate(x, AlgebraId.APH_G_PLUS, table, guard):
        raise NotInDomain("element leaves the triple semigroup algebra")
    if not chi.trusted:
        warnings.warn(
            "evaluating through an untrusted interior chi0 point",
            UntrustedCharacterWarning,
            stacklevel=2,
        )
    total = 0.0 + 0.0j
    for (lam, mu, t), coeff in x.sorted_terms():
        if chi.family == "d1":
            val = chi.ap.value(lam, table)
            val *= 1.0 if mu.is_zero() else 0.0
            val *= 1.0 if t.is_zero() else 0.0
        elif chi.family == "d2":
            val = 1.0 if lam.is_zero() else 0.0
            val *= chi.ap.value(mu, table)
            val *= 1.0 if t.is_zero() else 0.0
        elif chi.family == "d3":
            val = 1.0 if mu.is_zero() else 0.0
            val *= _v_value(chi.v, t, table)
        elif chi.family == "d4":
            val = 1.0 if lam.is_zero() else 0.0
            val *= _v_value(chi.v, t, table)
        else:  # chi0
            val = 1.0 if lam.is_zero() else 0.0
            val *= 1.0 if mu.is_zero() else 0.0
            val *= _v_value(chi.v, t, table)
        if val != 0:
            total += scalar_numeric(coeff, table) * val
    return total


def composite_eval(
    x: Element,
    side: str,
    t: DilationIndex | None = None,
    table: AtomTable | None = None,
) -> complex:
    """Origin evaluation of one function axis of the dilation fiber at t.

    The m side sums the coefficients of terms (lam, 0, t); the d side
    sums those of (0, mu, t).  At t = 0 these are exactly the d3 and d4
    characters through the vanishing point; at t > 0 they are honest
    linear functionals but fail multiplicativity (a single V_t already
    breaks it), so no character object is built for them.
    """
    table = table or AtomTable.default()
    t = t if t is not None else DilationIndex.zero()
    if side not in ("m", "d"):
        raise ValueError("side must be 'm' or 'd'")
    total = 0.0 + 0.0j
    for (lam, mu, dil), coeff in x.sorted_terms():
        if dil != t:
            continue
        if side == "m" and mu.is_zero():
            total += scalar_numeric(coeff, table)
        elif side == "d" and lam.is_zero():
            total += scalar_numeric(coeff, table)
    return total


# ------------------------------------------------------- Arens automorphisms


def arens_automorphism(
    f: Element,
    c: BohrCharacter,
    k: DilationIndex,
    table: AtomTable | None = None,
    guard: float = DEFAULT_GUARD,
) -> Element:
    """Exact isometric twist-and-rescale of an analytic polynomial.

    Termwise: the coefficient picks up the unimodular c(lam) and the
    frequency is scaled by e^k through the exponent bookkeeping, so the
    map is a homomorphism with exact rational angles.
    """
    table = table or AtomTable.default()
    out: dict = {}
    for (lam, mu, t), coeff in f.sorted_terms():
        if not mu.is_zero() or not t.is_zero():
            raise NotInDomain(
                "the twist is defined on pure multiplication polynomials"
            )
        if freq_sign(lam, table, guard) < 0:
            raise NotAnalytic(f"negative frequency {lam!r}")
        angle = c.angle(lam)
        key = (lam.scale_exp(k), mu, t)
        scaled = coeff * Scalar.rational_angle(angle)
        out[key] = out[key] + scaled if key in out else scaled
    return Element(out)
