"""Almost periodic approximation tools.

Rational basis extraction by exact elimination, weighted sections with
factorial lattice weights, summation kernels, numeric gauge twists,
Cesaro means by trapezoid quadrature, and recurrence time search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .algebra import Axis, Element, as_dilation, as_frequency
from .errors import AxisMismatch, BasisTooShort, NonIntegerLattice, NotFound
from .exactnum import (
    AtomTable,
    DilationIndex,
    Frequency,
    FrequencyAtom,
    Scalar,
    UNIT_SYMBOL,
    _frac,
)

GRADINGS = ("translation", "multiplication", "dilation")

_GRADING_ALIASES = {
    "translation": "translation",
    "e": "translation",
    "multiplication": "multiplication",
    "z": "multiplication",
    "dilation": "dilation",
    "h": "dilation",
}


def normalize_grading(grading) -> str:
    if isinstance(grading, Axis):
        grading = grading.value
    key = str(grading).strip().lower()
    if key not in _GRADING_ALIASES:
        raise ValueError(f"unknown grading {grading!r}")
    return _GRADING_ALIASES[key]


def _dil_as_frequency(t: DilationIndex) -> Frequency:
    # linear embedding so dilation indices share the elimination code
    pairs = []
    for sym, q in t.pairs:
        if sym == UNIT_SYMBOL:
            pairs.append((FrequencyAtom.one(), q))
        else:
            pairs.append((FrequencyAtom(sym), q))
    return Frequency(pairs)


def _grading_raw(key, grading: str):
    lam, mu, t = key
    if grading == "translation":
        return mu
    if grading == "multiplication":
        return lam
    return t


def _grading_vector(key, grading: str) -> Frequency:
    raw = _grading_raw(key, grading)
    if grading == "dilation":
        return _dil_as_frequency(raw)
    return raw


# ------------------------------------------------------------ rational basis


class RationalBasis:
    """Echelon family spanning a list of frequencies over the rationals.

    The basis is the subsequence of inputs that were independent when
    first seen; every input, and any later query in the span, gets an
    exact coordinate vector.
    """

    __slots__ = ("basis", "coords", "_rows")

    def __init__(self, freqs: list[Frequency]):
        basis: list[Frequency] = []
        # each row: (pivot atom, reduced dict, expansion over current basis)
        rows: list[tuple[object, dict, list[Fraction]]] = []
        coords: dict = {}
        for f in freqs:
            vec = {atom: q for atom, q in f.pairs}
            reduced, combo = self._reduce(vec, rows, len(basis))
            if reduced:
                pivot = min(reduced, key=lambda a: a.key())
                expansion = [-c for c in combo] + [Fraction(1)]
                for i in range(len(rows)):
                    p, r, e = rows[i]
                    rows[i] = (p, r, e + [Fraction(0)])
                rows.append((pivot, reduced, expansion))
                basis.append(f)
                combo = [Fraction(0)] * (len(basis) - 1) + [Fraction(1)]
            if f.key() not in coords:
                coords[f.key()] = tuple(combo) + (Fraction(0),) * (
                    len(basis) - len(combo)
                )
        self.basis = tuple(basis)
        self._rows = rows
        # pad early vectors to the final dimension
        k = len(basis)
        self.coords = {
            key: tuple(c) + (Fraction(0),) * (k - len(c))
            for key, c in coords.items()
        }

    @staticmethod
    def _reduce(vec: dict, rows, width: int):
        rem = dict(vec)
        combo = [Fraction(0)] * width
        for idx, (pivot, red, expansion) in enumerate(rows):
            if pivot in rem and rem[pivot]:
                factor = rem[pivot] / red[pivot]
                for atom, q in red.items():
                    val = rem.get(atom, Fraction(0)) - factor * q
                    if val:
                        rem[atom] = val
                    else:
                        rem.pop(atom, None)
                for j, e in enumerate(expansion):
                    combo[j] += factor * e
        return rem, combo

    def __len__(self) -> int:
        return len(self.basis)

    def coords_of(self, f: Frequency):
        """Exact coordinates over the basis, or None if outside the span."""
        hit = self.coords.get(f.key())
        if hit is not None:
            return hit
        vec = {atom: q for atom, q in f.pairs}
        rem, combo = self._reduce(vec, self._rows, len(self.basis))
        if rem:
            return None
        return tuple(combo)

    def numeric(self, table: AtomTable) -> list[float]:
        return [b.numeric(table) for b in self.basis]


def rational_basis(freqs: list[Frequency]) -> RationalBasis:
    return RationalBasis(list(freqs))


# --------------------------------------------------------- weighted sections


@dataclass(frozen=True)
class BFSpec:
    m: int
    grading: str = "translation"

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("section order m must be at least 1")
        object.__setattr__(self, "grading", normalize_grading(self.grading))


def support_basis(x: Element, grading) -> RationalBasis:
    grading = normalize_grading(grading)
    seen = []
    keys = set()
    for key, _ in x.sorted_terms():
        vec = _grading_vector(key, grading)
        if vec.key() not in keys:
            keys.add(vec.key())
            seen.append(vec)
    return rational_basis(seen)


def _section_weight(coords, fac: int, strict: bool) -> Fraction:
    big = fac * fac
    weight = Fraction(1)
    for c in coords:
        nu = c * fac
        if nu.denominator != 1:
            if strict:
                raise NonIntegerLattice(
                    f"coordinate {c} times {fac} is not an integer"
                )
            return Fraction(0)
        n = abs(int(nu))
        if n >= big:
            if strict:
                raise NonIntegerLattice(
                    f"lattice point {n} outside the bound {big}"
                )
            return Fraction(0)
        weight *= Fraction(big - n, big)
    return weight


def bochner_fejer(x: Element, spec: BFSpec, strict: bool = False) -> Element:
    """Weighted section of x along the grading of the given spec.

    Terms keep their keys; each coefficient is scaled by the exact
    product weight read off the term's lattice coordinates.  Support
    points whose coordinates miss the order-m lattice are dropped, or
    rejected when strict is set.
    """
    basis = support_basis(x, spec.grading)
    if len(basis) > spec.m:
        raise BasisTooShort(
            f"support spans {len(basis)} independent directions, "
            f"section order is {spec.m}"
        )
    fac = math.factorial(spec.m)
    out: dict = {}
    for key, coeff in x.terms.items():
        coords = basis.coords_of(_grading_vector(key, spec.grading))
        weight = _section_weight(coords, fac, strict)
        if weight:
            out[key] = coeff * Scalar.from_rational(weight)
    return Element(out)


def section_weights(x: Element, spec: BFSpec) -> dict:
    """Surviving weight per support index, as exact fractions."""
    basis = support_basis(x, spec.grading)
    if len(basis) > spec.m:
        raise BasisTooShort(
            f"support spans {len(basis)} independent directions, "
            f"section order is {spec.m}"
        )
    fac = math.factorial(spec.m)
    out = {}
    for key, _ in x.sorted_terms():
        raw = _grading_raw(key, spec.grading)
        if raw in out:
            continue
        coords = basis.coords_of(_grading_vector(key, spec.grading))
        out[raw] = _section_weight(coords, fac, strict=False)
    return out


def bf_report(x: Element, grading, m_values, table: AtomTable | None = None):
    """Convergence rows (m, weights, l1 error) for the CLI table."""
    table = table or AtomTable.default()
    rows = []
    for m in m_values:
        spec = BFSpec(m, grading)
        image = bochner_fejer(x, spec)
        weights = section_weights(x, spec)
        err = (x - image).l1_norm(table)
        rows.append({"m": m, "weights": weights, "l1_error": err})
    return rows


# ------------------------------------------------------------- gauge twists


def gauge(x: Element, grading, theta, table: AtomTable | None = None) -> Element:
    """Twist each coefficient by the unimodular e^{i theta * index}.

    Angles are exact rational multiples whenever the grading index has
    an exact numeric value (always true for dilation indices and for
    exponent-free frequencies), so the twist is then a homomorphism on
    the nose; otherwise the angle rounds through a double.
    """
    grading = normalize_grading(grading)
    table = table or AtomTable.default()
    theta_q = _frac(theta)
    out: dict = {}
    for key, coeff in x.terms.items():
        idx = _grading_raw(key, grading)
        exact = idx.exact_numeric(table)
        if exact is not None:
            angle = theta_q * exact
        else:
            angle = _frac(float(theta_q) * idx.numeric(table))
        out[key] = coeff * Scalar.rational_angle(angle)
    return Element(out)


def cesaro_mean(
    x: Element,
    grading,
    s,
    T: float,
    steps: int = 4096,
    table: AtomTable | None = None,
) -> Element:
    """Trapezoid quadrature of the gauge integral at grading index s.

    Converges to the coefficient map at s with error of order 1/T; the
    result carries the stripped keys of the matching axis map.
    """
    grading = normalize_grading(grading)
    table = table or AtomTable.default()
    if T <= 0:
        raise ValueError("averaging length T must be positive")
    if steps < 2:
        raise ValueError("need at least two quadrature panels")
    if grading in ("translation", "multiplication"):
        s = as_frequency(s)
        if any(not key[2].is_zero() for key in x.terms):
            raise AxisMismatch(
                "translation and multiplication means need a dilation-free "
                "element; strip the dilation axis first"
            )
        s_num = s.numeric(table)
    else:
        s = as_dilation(s)
        s_num = s.numeric(table)

    entries = []
    deltas = []
    for key, coeff in x.terms.items():
        idx = _grading_raw(key, grading)
        deltas.append(idx.numeric(table) - s_num)
        lam, mu, t = key
        if grading == "translation":
            stripped = (lam, Frequency.zero(), DilationIndex.zero())
        elif grading == "multiplication":
            stripped = (Frequency.zero(), mu, DilationIndex.zero())
        else:
            stripped = (lam, mu, DilationIndex.zero())
        entries.append((stripped, coeff))
    if not entries:
        return Element.zero()
    weights = _kernels.phase_mean_weights(np.array(deltas), float(T), int(steps))
    out: dict = {}
    for (stripped, coeff), w in zip(entries, weights):
        scaled = coeff * Scalar.gaussian(_frac(w.real), _frac(w.imag))
        if stripped in out:
            out[stripped] = out[stripped] + scaled
        else:
            out[stripped] = scaled
    return Element(out)


# ---------------------------------------------------------- summation kernel


def bf_kernel(
    basis: RationalBasis, m: int, t: float, table: AtomTable | None = None
) -> float:
    return float(bf_kernel_many(basis, m, [t], table)[0])


def bf_kernel_many(
    basis: RationalBasis, m: int, ts, table: AtomTable | None = None
):
    if m < 1:
        raise ValueError("kernel order m must be at least 1")
    if m > len(basis):
        raise BasisTooShort(
            f"kernel order {m} exceeds basis length {len(basis)}"
        )
    table = table or AtomTable.default()
    betas = np.array([b.numeric(table) for b in basis.basis[:m]])
    return _kernels.bf_kernel_values(np.asarray(ts, dtype=float), betas, math.factorial(m))


# --------------------------------------------------------------- recurrence


def recurrence_search(freqs, eps: float, limit: int) -> int:
    """Smallest integer M in [1, limit] with |e^{i f M} - 1| < eps for all f."""
    if eps <= 0:
        raise ValueError("tolerance must be positive")
    limit = int(limit)
    if limit < 1:
        raise ValueError("scan limit must be at least 1")
    devs = _kernels.recurrence_devs(np.asarray(list(freqs), dtype=float), limit)
    hits = np.nonzero(devs < eps)[0]
    if hits.size == 0:
        raise NotFound(
            f"no recurrence time up to {limit} at tolerance {eps}; "
            "raise the limit or loosen the tolerance"
        )
    return int(hits[0]) + 1


def recurrence_schedule(freqs, eps: float, limit: int) -> list[int]:
    """Recurrence times with strictly improving deviation, in scan order."""
    if eps <= 0:
        raise ValueError("tolerance must be positive")
    limit = int(limit)
    if limit < 1:
        raise ValueError("scan limit must be at least 1")
    devs = _kernels.recurrence_devs(np.asarray(list(freqs), dtype=float), limit)
    flags = _kernels.successive_minima(devs, eps)
    ms = (np.nonzero(flags)[0] + 1).tolist()
    if not ms:
        raise NotFound(
            f"no recurrence time up to {limit} at tolerance {eps}; "
            "raise the limit or loosen the tolerance"
        )
    return [int(m) for m in ms]
