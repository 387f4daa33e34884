"""Noncommutative polynomial algebra over the three semigroups.

Generators are modulations M(lam) (multiply by e^{i lam x}), translations
D(mu) (shift by mu) and dilations V(t) (unitary scaling by e^t).  Every
word rewrites to the normal order coeff * M * D * V using the exact
commutation phases, and an element is a finite sum of such monomials keyed
by the frequency triple (lam, mu, t).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    AxisMismatch,
    EmptyElement,
    IllegalFlip,
    IndeterminateSign,
    InvalidScale,
)
from .exactnum import (
    AtomTable,
    BohrCharacter,
    DEFAULT_GUARD,
    DilationIndex,
    Frequency,
    PhaseExponent,
    Scalar,
    dilation_sign,
    freq_sign,
)
import math

Key = tuple[Frequency, Frequency, DilationIndex]


def as_frequency(x) -> Frequency:
    if isinstance(x, Frequency):
        return x
    return Frequency.rational(x)


def as_dilation(x) -> DilationIndex:
    if isinstance(x, DilationIndex):
        return x
    return DilationIndex.unit(x)


def as_scalar(x) -> Scalar:
    return Scalar.from_number(x)


class M:
    """Modulation letter."""

    __slots__ = ("freq",)

    def __init__(self, freq):
        self.freq = as_frequency(freq)

    def __repr__(self):
        return f"M({self.freq!r})"


class D:
    """Translation letter."""

    __slots__ = ("freq",)

    def __init__(self, freq):
        self.freq = as_frequency(freq)

    def __repr__(self):
        return f"D({self.freq!r})"


class V:
    """Dilation letter."""

    __slots__ = ("index",)

    def __init__(self, index):
        self.index = as_dilation(index)

    def __repr__(self):
        return f"V({self.index!r})"


class Sc:
    """Scalar letter."""

    __slots__ = ("value",)

    def __init__(self, value):
        self.value = as_scalar(value)

    def __repr__(self):
        return f"Sc({self.value!r})"


Letter = M | D | V | Sc


@dataclass(frozen=True)
class Monomial:
    """Normal ordered word coeff * M(mod) * D(shift) * V(dil)."""

    coeff: Scalar
    mod: Frequency
    shift: Frequency
    dil: DilationIndex

    def key(self) -> Key:
        return (self.mod, self.shift, self.dil)

    def letters(self) -> list:
        """The monomial spelled back out as a word."""
        return [Sc(self.coeff), M(self.mod), D(self.shift), V(self.dil)]

    def as_element(self) -> "Element":
        return Element({self.key(): self.coeff})


def normalize_word(word: Sequence) -> Monomial:
    """Rewrite a word of letters into normal order.

    Appending letters left to right keeps an accumulated normal monomial;
    moving a modulation past the accumulated translation produces the
    exact commutation phase, and moving anything past the accumulated
    dilation rescales its frequency by the matching power of e.
    """
    coeff = Scalar.one()
    mod = Frequency.zero()
    shift = Frequency.zero()
    dil = DilationIndex.zero()
    for letter in word:
        if isinstance(letter, M):
            scaled = letter.freq.scale_exp(dil)
            pe = PhaseExponent.product(scaled, shift)
            if not pe.is_zero():
                coeff = coeff * Scalar.phase(-pe)
            mod = mod + scaled
        elif isinstance(letter, D):
            shift = shift + letter.freq.scale_exp(-dil)
        elif isinstance(letter, V):
            dil = dil + letter.index
        elif isinstance(letter, Sc):
            coeff = coeff * letter.value
        else:
            raise TypeError(f"not a word letter: {letter!r}")
    return Monomial(coeff, mod, shift, dil)


class Element:
    """Finite sum of normal monomials with exact scalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Key, Scalar] | Iterable[tuple] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Key, Scalar] = {}
        for key, c in items:
            prev = acc.get(key)
            total = c if prev is None else prev + c
            if total.is_zero():
                acc.pop(key, None)
            else:
                acc[key] = total
        self.terms = acc

    @classmethod
    def zero(cls) -> "Element":
        return cls()

    @classmethod
    def identity(cls) -> "Element":
        return cls.scalar(1)

    @classmethod
    def scalar(cls, z) -> "Element":
        c = as_scalar(z)
        if c.is_zero():
            return cls()
        return cls({(Frequency.zero(), Frequency.zero(), DilationIndex.zero()): c})

    @classmethod
    def m(cls, freq, coeff=1) -> "Element":
        return cls({(as_frequency(freq), Frequency.zero(), DilationIndex.zero()): as_scalar(coeff)})

    @classmethod
    def d(cls, freq, coeff=1) -> "Element":
        return cls({(Frequency.zero(), as_frequency(freq), DilationIndex.zero()): as_scalar(coeff)})

    @classmethod
    def v(cls, index, coeff=1) -> "Element":
        return cls({(Frequency.zero(), Frequency.zero(), as_dilation(index)): as_scalar(coeff)})

    @classmethod
    def from_word(cls, word: Sequence) -> "Element":
        return normalize_word(word).as_element()

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[Key, Scalar]]:
        return sorted(
            self.terms.items(),
            key=lambda kv: (kv[0][0].key(), kv[0][1].key(), kv[0][2].key()),
        )

    def support(self) -> set[Key]:
        return set(self.terms)

    def coefficient(self, key: Key) -> Scalar:
        return self.terms.get(key, Scalar.zero())

    def __add__(self, other: "Element") -> "Element":
        if not self.terms:
            return other
        if not other.terms:
            return self
        merged = dict(self.terms)
        for key, c in other.terms.items():
            prev = merged.get(key)
            total = c if prev is None else prev + c
            if total.is_zero():
                merged.pop(key, None)
            else:
                merged[key] = total
        out = Element.__new__(Element)
        out.terms = merged
        return out

    def __neg__(self) -> "Element":
        out = Element.__new__(Element)
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, z) -> "Element":
        c = as_scalar(z)
        if c.is_zero():
            return Element()
        return Element({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: "Element") -> "Element":
        return mul(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(c == other.terms[k] for k, c in self.terms.items())

    __hash__ = None

    def adjoint(self) -> "Element":
        return adjoint(self)

    def l1_norm(self, table: AtomTable | None = None) -> float:
        return sum(c.modulus(table) for c in self.terms.values())

    def __str__(self) -> str:
        from .exprs import element_text

        return element_text(self)

    def __repr__(self) -> str:
        return f"Element<{len(self.terms)} terms>"


def mul(x: Element, y: Element) -> Element:
    """Product in the algebra, one exact phase per monomial pair."""
    out: dict[Key, Scalar] = {}
    for (lam1, mu1, t1), c1 in x.terms.items():
        for (lam2, mu2, t2), c2 in y.terms.items():
            scaled = lam2.scale_exp(t1)
            c = c1 * c2
            pe = PhaseExponent.product(scaled, mu1)
            if not pe.is_zero():
                c = c * Scalar.phase(-pe)
            key = (lam1 + scaled, mu1 + mu2.scale_exp(-t1), t1 + t2)
            prev = out.get(key)
            total = c if prev is None else prev + c
            if total.is_zero():
                out.pop(key, None)
            else:
                out[key] = total
    result = Element.__new__(Element)
    result.terms = out
    return result


def adjoint(x: Element) -> Element:
    """Involution: reverse each monomial and conjugate its coefficient."""
    out: dict[Key, Scalar] = {}
    for (lam, mu, t), c in x.terms.items():
        word = [Sc(c.conj()), V(-t), D(-mu), M(-lam)]
        mono = normalize_word(word)
        key = mono.key()
        prev = out.get(key)
        total = mono.coeff if prev is None else prev + mono.coeff
        if total.is_zero():
            out.pop(key, None)
        else:
            out[key] = total
    result = Element.__new__(Element)
    result.terms = out
    return result


class Axis(Enum):
    """Coefficient axis: E reads translation fibers, Z modulation fibers,
    H dilation fibers."""

    TRANSLATION = "E"
    MULTIPLICATION = "Z"
    DILATION = "H"

    @classmethod
    def parse(cls, text: str) -> "Axis":
        t = text.strip().lower()
        for axis in cls:
            if t in (axis.value.lower(), axis.name.lower()):
                return axis
        if t == "translation":
            return cls.TRANSLATION
        if t == "multiplication":
            return cls.MULTIPLICATION
        if t == "dilation":
            return cls.DILATION
        raise AxisMismatch(f"unknown axis {text!r}")


def coeff_map(x: Element, axis: Axis | str, index) -> Element:
    """Fourier coefficient along one axis.

    E with index s keeps terms with translation frequency s and strips the
    translation factor; Z does the same on the modulation side; H selects
    one dilation level and strips the dilation factor.  E and Z require an
    element without dilation support, so on the triple algebra H comes
    first.
    """
    axis = Axis.parse(axis) if isinstance(axis, str) else axis
    zero_f = Frequency.zero()
    zero_t = DilationIndex.zero()
    out: dict[Key, Scalar] = {}
    if axis is Axis.DILATION:
        if not isinstance(index, DilationIndex):
            raise AxisMismatch("H expects a dilation index")
        for (lam, mu, t), c in x.terms.items():
            if t == index:
                out[(lam, mu, zero_t)] = c
        return Element(out)
    if not isinstance(index, Frequency):
        raise AxisMismatch(f"{axis.value} expects a frequency index")
    for (lam, mu, t), c in x.terms.items():
        if not t.is_zero():
            raise AxisMismatch("E and Z need an element with no dilation support")
    if axis is Axis.TRANSLATION:
        for (lam, mu, _t), c in x.terms.items():
            if mu == index:
                out[(lam, zero_f, zero_t)] = c
    else:
        for (lam, mu, _t), c in x.terms.items():
            if lam == index:
                out[(zero_f, mu, zero_t)] = c
    return Element(out)


def first_coeff(
    x: Element, table: AtomTable, guard: float = DEFAULT_GUARD
) -> tuple[Frequency, Element]:
    """Smallest translation frequency in the support together with its
    fiber.  Numeric ties break by canonical key order."""
    if x.is_zero():
        raise EmptyElement("first coefficient of the zero element")
    freqs = {mu for (_lam, mu, _t) in x.terms}
    best = min(freqs, key=lambda f: (f.numeric(table), f.key()))
    return best, coeff_map(x, Axis.TRANSLATION, best)


class AlgebraId(Enum):
    """Support classes recognized by the membership predicate."""

    BP = "bp"
    AP = "ap"
    BPH_G = "bph"
    APH_G_PLUS = "aph"
    APH_G_PLUS_ADJOINT = "aph-adj"

    @classmethod
    def parse(cls, text: str) -> "AlgebraId":
        t = text.strip().lower().replace("_", "-")
        aliases = {
            "bp": cls.BP,
            "ap": cls.AP,
            "bph": cls.BPH_G,
            "bphg": cls.BPH_G,
            "aph": cls.APH_G_PLUS,
            "aphg": cls.APH_G_PLUS,
            "aphgplus": cls.APH_G_PLUS,
            "aph-adj": cls.APH_G_PLUS_ADJOINT,
            "aphadj": cls.APH_G_PLUS_ADJOINT,
            "aphgplusadjoint": cls.APH_G_PLUS_ADJOINT,
        }
        try:
            return aliases[t]
        except KeyError:
            raise InvalidScale(f"unknown algebra {text!r}") from None


def support_predicate(
    x: Element,
    algebra: AlgebraId | str,
    table: AtomTable,
    guard: float = DEFAULT_GUARD,
) -> bool:
    """Whether every monomial of x sits in the stated support cone.

    Signs of frequencies are decided numerically behind the guard band;
    the exact zero frequency counts as nonnegative and nonpositive.
    """
    algebra = AlgebraId.parse(algebra) if isinstance(algebra, str) else algebra
    for (lam, mu, t) in x.terms:
        if algebra in (AlgebraId.BP, AlgebraId.AP) and not t.is_zero():
            return False
        if algebra is AlgebraId.AP:
            if freq_sign(lam, table, guard) < 0 or freq_sign(mu, table, guard) < 0:
                return False
        elif algebra is AlgebraId.APH_G_PLUS:
            if (
                freq_sign(lam, table, guard) < 0
                or freq_sign(mu, table, guard) < 0
                or dilation_sign(t, table, guard) < 0
            ):
                return False
        elif algebra is AlgebraId.APH_G_PLUS_ADJOINT:
            if (
                freq_sign(lam, table, guard) > 0
                or freq_sign(mu, table, guard) > 0
                or dilation_sign(t, table, guard) > 0
            ):
                return False
    return True


@dataclass(frozen=True)
class AutomorphismSpec:
    """Twisted dilation conjugation.

    Sends coeff*M(lam)D(mu)V(s) to
    coeff * modchar(lam) * shiftchar(mu) * e^{i v_angle numeric(s)}
          * M(e^dil lam) D(e^-dil mu) V(s).
    The twist angles are exact rationals, so the map stays inside the
    exact layer.  flip marks the formal generator exchange, which is not a
    homomorphism and is only consumed by the contradiction check.
    """

    dil: DilationIndex = field(default_factory=DilationIndex.zero)
    mod_char: BohrCharacter = field(default_factory=BohrCharacter.trivial)
    shift_char: BohrCharacter = field(default_factory=BohrCharacter.trivial)
    v_angle: Fraction = Fraction(0)
    flip: bool = False


def _dil_exact_numeric(t: DilationIndex, table: AtomTable | None) -> Fraction:
    if table is not None:
        return t.exact_numeric(table)
    if not t.unit_only():
        raise ValueError("atom table required for non UNIT dilation symbols")
    return sum((q for _s, q in t.pairs), Fraction(0))


def apply_automorphism(
    x: Element, spec: AutomorphismSpec, table: AtomTable | None = None
) -> Element:
    if spec.flip:
        raise IllegalFlip("generator exchange is not an automorphism")
    out: dict[Key, Scalar] = {}
    for (lam, mu, t), c in x.terms.items():
        angle = spec.mod_char.angle(lam) + spec.shift_char.angle(mu)
        if spec.v_angle and not t.is_zero():
            angle += spec.v_angle * _dil_exact_numeric(t, table)
        if angle:
            c = c * Scalar.rational_angle(angle)
        key = (lam.scale_exp(spec.dil), mu.scale_exp(-spec.dil), t)
        out[key] = c
    return Element(out)


@dataclass(frozen=True)
class FlipReport:
    """Outcome of the generator exchange contradiction check."""

    k1: float
    k2: float
    gap_at_1_1: Fraction
    gap_at_1_2: Fraction
    contradiction: bool


def check_flip_contradiction(k1: float, k2: float) -> FlipReport:
    """Show that M(lam) -> D(k1 lam), D(mu) -> M(k2 mu) cannot extend to a
    homomorphism for positive scales.

    Equality of the two images of the commutation identity would force the
    phase e^{i lam mu (1 + k1 k2)} to be 1; the check evaluates the exact
    phase gap lam*mu*(1 + k1*k2) at (1, 1) and (1, 2) and both are
    nonzero, since 1 + k1 k2 > 1.
    """
    for k in (k1, k2):
        kf = float(k)
        if not math.isfinite(kf) or kf <= 0.0:
            raise InvalidScale(f"scale {k!r} must be positive and finite")
    phi = 1 + Fraction(float(k1)) * Fraction(float(k2))
    gap11 = phi
    gap12 = 2 * phi
    return FlipReport(float(k1), float(k2), gap11, gap12, gap11 != 0 or gap12 != 0)


class CompressionMode(Enum):
    TRANSLATION = "translation"
    DILATION_IN = "dilation-in"
    DILATION_OUT = "dilation-out"

    @classmethod
    def parse(cls, text: str) -> "CompressionMode":
        t = text.strip().lower().replace("_", "-")
        for mode in cls:
            if t == mode.value:
                return mode
        raise InvalidScale(f"unknown compression mode {text!r}")


def compress(x: Element, mode: CompressionMode | str, n: int) -> Element:
    """Unitary conjugation used in the weak limit demonstrations.

    translation conjugates by the translation of length n, dilation-in by
    the inverse dilation (V* x V) and dilation-out by the direct one.
    """
    mode = CompressionMode.parse(mode) if isinstance(mode, str) else mode
    if mode is CompressionMode.TRANSLATION:
        u = Element.d(Frequency.rational(n))
        return mul(mul(u, x), adjoint(u))
    v = Element.v(DilationIndex.unit(n))
    if mode is CompressionMode.DILATION_IN:
        return mul(mul(adjoint(v), x), v)
    return mul(mul(v, x), adjoint(v))
