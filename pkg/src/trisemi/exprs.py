"""Canonical text form and parser for elements.

A monomial prints as ``coeff * M(freq) * D(freq) * V(t)`` with zero index
factors and unit coefficients left out, terms joined by `` + ``.
Frequencies print as rational combinations ``q*atom@{t}`` where plain
rationals stand for multiples of ONE and ``@{t}`` carries the exponent
shift.  Phases print as ``exp(i*...)`` with degree two monomials spelled
``atom*atom``.  Printing then parsing is the identity on canonical forms.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import Element, adjoint, mul
from .errors import ParseError
from .exactnum import (
    DilationIndex,
    Frequency,
    FrequencyAtom,
    ONE_ATOM,
    PhaseExponent,
    PhaseMonomial,
    PhaseSum,
    QI,
    Scalar,
    UNIT_SYMBOL,
)

# ---------------------------------------------------------------- printing


def _signed_join(parts: list[tuple[str, bool]]) -> str:
    out: list[str] = []
    for i, (text, neg) in enumerate(parts):
        if i == 0:
            out.append(("-" if neg else "") + text)
        else:
            out.append((" - " if neg else " + ") + text)
    return "".join(out)


def _frac_abs(q: Fraction) -> str:
    return str(abs(q))


def dil_text(t: DilationIndex) -> str:
    if t.is_zero():
        return "0"
    parts = []
    for sym, q in t.pairs:
        if sym == UNIT_SYMBOL:
            parts.append((_frac_abs(q), q < 0))
        elif abs(q) == 1:
            parts.append((sym, q < 0))
        else:
            parts.append((f"{_frac_abs(q)}*{sym}", q < 0))
    return _signed_join(parts)


def _atom_name(atom: FrequencyAtom) -> str:
    if atom.exp.is_zero():
        return atom.base
    return f"{atom.base}@{{{dil_text(atom.exp)}}}"


def freq_text(f: Frequency) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for atom, q in f.pairs:
        if atom.base == ONE_ATOM and atom.exp.is_zero():
            parts.append((_frac_abs(q), q < 0))
        elif abs(q) == 1:
            parts.append((_atom_name(atom), q < 0))
        else:
            parts.append((f"{_frac_abs(q)}*{_atom_name(atom)}", q < 0))
    return _signed_join(parts)


def _mono_body(m: PhaseMonomial) -> str:
    if not m.bases:
        return f"{ONE_ATOM}@{{{dil_text(m.exp)}}}"
    body = "*".join(m.bases)
    if not m.exp.is_zero():
        body += f"@{{{dil_text(m.exp)}}}"
    return body


def _phase_exp_parts(pe: PhaseExponent) -> list[tuple[str, bool]]:
    parts = []
    for mono, q in pe.terms:
        if mono == PhaseMonomial.empty():
            parts.append((_frac_abs(q), q < 0))
        elif abs(q) == 1:
            parts.append((_mono_body(mono), q < 0))
        else:
            parts.append((f"{_frac_abs(q)}*{_mono_body(mono)}", q < 0))
    return parts


def _phase_factor(pe: PhaseExponent) -> str:
    parts = _phase_exp_parts(pe)
    if len(parts) == 1:
        text, neg = parts[0]
        return f"exp(-i*{text})" if neg else f"exp(i*{text})"
    return f"exp(i*({_signed_join(parts)}))"


def _amp_parts(a: QI) -> tuple[str, bool]:
    """Text and sign flag for a Gaussian rational amplitude."""
    if not a.im:
        return _frac_abs(a.re), a.re < 0
    if not a.re:
        body = "i" if abs(a.im) == 1 else f"{_frac_abs(a.im)}*i"
        return body, a.im < 0
    im_body = "i" if abs(a.im) == 1 else f"{_frac_abs(a.im)}*i"
    inner = _signed_join([(_frac_abs(a.re), a.re < 0), (im_body, a.im < 0)])
    return f"({inner})", False


def _phase_sum_parts(ps: PhaseSum) -> list[tuple[str, bool]]:
    parts = []
    for pe, amp in ps.terms:
        if pe.is_zero():
            parts.append(_amp_parts(amp))
        elif amp == QI(1):
            parts.append((_phase_factor(pe), False))
        elif amp == QI(-1):
            parts.append((_phase_factor(pe), True))
        else:
            body, neg = _amp_parts(amp)
            parts.append((f"{body}*{_phase_factor(pe)}", neg))
    return parts


def _phase_sum_text(ps: PhaseSum, atomic: bool) -> str:
    if ps.is_zero():
        return "0"
    parts = _phase_sum_parts(ps)
    text = _signed_join(parts)
    if atomic and len(parts) > 1:
        return f"({text})"
    return text


def scalar_text(s: Scalar, atomic: bool = False) -> str:
    if s.den == PhaseSum.one():
        return _phase_sum_text(s.num, atomic)
    return f"({_phase_sum_text(s.num, False)})/({_phase_sum_text(s.den, False)})"


def element_text(x: Element) -> str:
    if x.is_zero():
        return "0"
    chunks = []
    for (lam, mu, t), c in x.sorted_terms():
        factors = []
        if not lam.is_zero():
            factors.append(f"M({freq_text(lam)})")
        if not mu.is_zero():
            factors.append(f"D({freq_text(mu)})")
        if not t.is_zero():
            factors.append(f"V({dil_text(t)})")
        if not factors:
            chunks.append(scalar_text(c, atomic=False))
        elif c == Scalar.one():
            chunks.append(" * ".join(factors))
        else:
            chunks.append(" * ".join([scalar_text(c, atomic=True)] + factors))
    return " + ".join(chunks)


# ----------------------------------------------------------------- parsing

_SYMBOLS = "+-*/(){}@,"


class _Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind: str, text: str, pos: int):
        self.kind = kind
        self.text = text
        self.pos = pos

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r}, {self.pos})"


def _tokenize(text: str) -> list[_Token]:
    toks: list[_Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _SYMBOLS:
            toks.append(_Token(ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i + 1
            seen_dot = False
            while j < n and (text[j].isdigit() or (text[j] == "." and not seen_dot)):
                if text[j] == ".":
                    seen_dot = True
                j += 1
            toks.append(_Token("num", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Token("name", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", (i, i + 1))
    toks.append(_Token("end", "", n))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, ahead: int = 0) -> _Token:
        j = min(self.i + ahead, len(self.toks) - 1)
        return self.toks[j]

    def advance(self) -> _Token:
        tok = self.toks[self.i]
        if tok.kind != "end":
            self.i += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(
                f"expected {kind!r}, found {tok.text or 'end of input'!r}",
                (tok.pos, tok.pos + max(1, len(tok.text))),
            )
        return self.advance()

    def fail(self, message: str) -> ParseError:
        tok = self.peek()
        return ParseError(message, (tok.pos, tok.pos + max(1, len(tok.text))))

    # rationals ------------------------------------------------------

    def rational(self) -> Fraction:
        neg = False
        while self.peek().kind in "+-":
            if self.advance().kind == "-":
                neg = not neg
        tok = self.expect("num")
        q = Fraction(tok.text)
        if self.peek().kind == "/" and self.peek(1).kind == "num":
            self.advance()
            q /= Fraction(self.expect("num").text)
        return -q if neg else q

    # dilation index -------------------------------------------------

    def dilation(self) -> DilationIndex:
        pairs: list[tuple[str, Fraction]] = []
        first = True
        while True:
            sign = 1
            tok = self.peek()
            if tok.kind in "+-":
                if first and tok.kind == "+":
                    pass
                self.advance()
                sign = -1 if tok.kind == "-" else 1
            elif not first:
                break
            first = False
            if self.peek().kind == "num":
                q = sign * self.rational()
                if self.peek().kind == "*" and self.peek(1).kind == "name":
                    self.advance()
                    sym = self.advance().text
                    pairs.append((sym, q))
                else:
                    pairs.append((UNIT_SYMBOL, q))
            elif self.peek().kind == "name":
                sym = self.advance().text
                pairs.append((sym, Fraction(sign)))
            else:
                raise self.fail("expected a dilation term")
            if self.peek().kind not in "+-":
                break
        return DilationIndex(pairs)

    # frequencies ----------------------------------------------------

    def _atomref(self) -> FrequencyAtom:
        name = self.expect("name").text
        exp = DilationIndex.zero()
        if self.peek().kind == "@":
            self.advance()
            self.expect("{")
            exp = self.dilation()
            self.expect("}")
        return FrequencyAtom(name, exp)

    def frequency(self) -> Frequency:
        pairs: list[tuple[FrequencyAtom, Fraction]] = []
        first = True
        while True:
            sign = 1
            tok = self.peek()
            if tok.kind in "+-":
                self.advance()
                sign = -1 if tok.kind == "-" else 1
            elif not first:
                break
            first = False
            if self.peek().kind == "num":
                q = sign * self.rational()
                if self.peek().kind == "*" and self.peek(1).kind == "name":
                    self.advance()
                    pairs.append((self._atomref(), q))
                else:
                    pairs.append((FrequencyAtom(ONE_ATOM), q))
            elif self.peek().kind == "name":
                pairs.append((self._atomref(), Fraction(sign)))
            else:
                raise self.fail("expected a frequency term")
            if self.peek().kind not in "+-":
                break
        return Frequency(pairs)

    # phase exponents ------------------------------------------------

    def _phase_term(self) -> PhaseExponent:
        if self.peek().kind == "num":
            q = self.rational()
            atoms = []
            while self.peek().kind == "*" and self.peek(1).kind == "name":
                self.advance()
                atoms.append(self._atomref())
                if len(atoms) > 2:
                    raise self.fail("phase monomials have degree at most two")
        elif self.peek().kind == "name":
            q = Fraction(1)
            atoms = [self._atomref()]
            while self.peek().kind == "*" and self.peek(1).kind == "name":
                self.advance()
                atoms.append(self._atomref())
                if len(atoms) > 2:
                    raise self.fail("phase monomials have degree at most two")
        else:
            raise self.fail("expected a phase term")
        if not atoms:
            mono = PhaseMonomial.empty()
        elif len(atoms) == 1:
            mono = PhaseMonomial.from_atom(atoms[0])
        else:
            mono = PhaseMonomial.product(atoms[0], atoms[1])
        return PhaseExponent(((mono, q),))

    def _phase_expr(self) -> PhaseExponent:
        total = PhaseExponent.zero()
        first = True
        while True:
            sign = 1
            tok = self.peek()
            if tok.kind in "+-":
                self.advance()
                sign = -1 if tok.kind == "-" else 1
            elif not first:
                break
            first = False
            term = self._phase_term()
            total = total + (term if sign > 0 else -term)
            if self.peek().kind not in "+-":
                break
        return total

    def _exp_call(self) -> Element:
        # after the name "exp"
        self.expect("(")
        sign = 1
        while self.peek().kind in "+-":
            if self.advance().kind == "-":
                sign = -sign
        tok = self.expect("name")
        if tok.text != "i":
            raise ParseError("exp argument must start with i*", (tok.pos, tok.pos + len(tok.text)))
        self.expect("*")
        if self.peek().kind == "(":
            self.advance()
            pe = self._phase_expr()
            self.expect(")")
        else:
            pe = self._phase_term()
        self.expect(")")
        if sign < 0:
            pe = -pe
        return Element.scalar(Scalar.phase(pe))

    # elements -------------------------------------------------------

    def element(self) -> Element:
        total = self._term()
        while self.peek().kind in "+-":
            op = self.advance().kind
            rhs = self._term()
            total = total + rhs if op == "+" else total - rhs
        return total

    def _term(self) -> Element:
        value = self._unary()
        while self.peek().kind in "*/":
            op = self.advance().kind
            rhs = self._unary()
            if op == "*":
                value = mul(value, rhs)
            else:
                s = _pure_scalar(rhs)
                if s is None or s.is_zero():
                    raise self.fail("division needs a nonzero scalar divisor")
                value = value.scale(s.inverse())
        return value

    def _unary(self) -> Element:
        if self.peek().kind == "-":
            self.advance()
            return -self._unary()
        if self.peek().kind == "+":
            self.advance()
            return self._unary()
        return self._primary()

    def _primary(self) -> Element:
        tok = self.peek()
        if tok.kind == "(":
            self.advance()
            inner = self.element()
            self.expect(")")
            return inner
        if tok.kind == "num":
            return Element.scalar(Scalar.from_rational(Fraction(self.advance().text)))
        if tok.kind == "name":
            name = tok.text
            if name == "i":
                self.advance()
                return Element.scalar(Scalar.gaussian(0, 1))
            if name in ("M", "D"):
                self.advance()
                self.expect("(")
                f = self.frequency()
                self.expect(")")
                return Element.m(f) if name == "M" else Element.d(f)
            if name == "V":
                self.advance()
                self.expect("(")
                t = self.dilation()
                self.expect(")")
                return Element.v(t)
            if name == "adj":
                self.advance()
                self.expect("(")
                inner = self.element()
                self.expect(")")
                return adjoint(inner)
            if name == "exp":
                self.advance()
                return self._exp_call()
            raise ParseError(f"unknown name {name!r}", (tok.pos, tok.pos + len(name)))
        raise self.fail("expected an expression")


def _pure_scalar(x: Element) -> Scalar | None:
    if x.is_zero():
        return Scalar.zero()
    if len(x.terms) != 1:
        return None
    (key, c), = x.terms.items()
    lam, mu, t = key
    if lam.is_zero() and mu.is_zero() and t.is_zero():
        return c
    return None


def _finish(parser: _Parser):
    tok = parser.peek()
    if tok.kind != "end":
        raise ParseError(
            f"unexpected trailing input {tok.text!r}",
            (tok.pos, tok.pos + max(1, len(tok.text))),
        )


def parse_element(text: str) -> Element:
    if not text.strip():
        return Element.identity()
    parser = _Parser(text)
    out = parser.element()
    _finish(parser)
    return out


def parse_frequency(text: str) -> Frequency:
    parser = _Parser(text)
    out = parser.frequency()
    _finish(parser)
    return out


def parse_dilation(text: str) -> DilationIndex:
    parser = _Parser(text)
    out = parser.dilation()
    _finish(parser)
    return out
