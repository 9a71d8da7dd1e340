"""Exact arithmetic in the field Q(q) of rational functions in q.

Two layers:

* `LaurentPoly` — Laurent polynomials in q with rational coefficients,
  stored densely as (lowest exponent, coefficient list).  No floating
  point anywhere; coefficients are fractions.Fraction or gmpy2.mpq
  (see qhyperboloid.backend).

* `QScalar` — fractions of Laurent polynomials kept in canonical form:
  numerator and denominator coprime, denominator with lowest exponent 0
  and leading coefficient 1.  Equality is structural comparison of
  canonical forms.

The module also provides the two computation modes used across the
engine: `symbolic()` (scalars are QScalar) and `numeric(q)` (scalars are
plain rationals obtained by evaluating at a fixed rational q, default
3/2).  A numeric-mode equality is evidence, not proof; callers that need
certification run symbolically.

Values of both kinds are immutable and safe to share across workers.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .backend import RAT, kernel
from .exceptions import EvalAtZeroError, ParseError, PoleError

_R0 = RAT(0)
_R1 = RAT(1)


def _to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def _poly_gcd(a: list, b: list) -> list:
    """Monic gcd of ordinary dense polynomials over the rationals."""
    a, b = list(a), list(b)
    while b:
        a, b = b, kernel.poly_divmod(a, b)[1]
    if not a:
        return []
    if a[-1] == _R1:
        return a
    inv = 1 / a[-1]
    return [c * inv if c else 0 for c in a]


def _poly_exact_div(a: list, b: list) -> list:
    q, r = kernel.poly_divmod(a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


class LaurentPoly:
    """Laurent polynomial in q.  Immutable.

    `terms` exposes the abstract view: a mapping exponent -> nonzero
    rational coefficient (empty for the zero polynomial).
    """

    __slots__ = ("lo", "coeffs")

    def __init__(self, lo: int = 0, coeffs: tuple = ()):
        # assumes trimmed input; use the classmethods for raw data
        self.lo = lo
        self.coeffs = tuple(coeffs)

    @classmethod
    def _make(cls, lo: int, coeffs) -> "LaurentPoly":
        lo, coeffs = kernel.lp_trim(lo, list(coeffs))
        return cls(lo, tuple(coeffs))

    @classmethod
    def from_terms(cls, terms) -> "LaurentPoly":
        items = dict(terms)
        if not items:
            return _LP_ZERO
        lo = min(items)
        hi = max(items)
        coeffs = [_R0] * (hi - lo + 1)
        for e, c in items.items():
            coeffs[e - lo] = RAT(c)
        return cls._make(lo, coeffs)

    @classmethod
    def constant(cls, r) -> "LaurentPoly":
        r = RAT(r)
        return cls(0, (r,)) if r else _LP_ZERO

    @classmethod
    def monomial(cls, exp: int, coeff=1) -> "LaurentPoly":
        c = RAT(coeff)
        return cls(exp, (c,)) if c else _LP_ZERO

    @property
    def terms(self) -> dict:
        return {self.lo + i: c for i, c in enumerate(self.coeffs) if c}

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def degree_span(self) -> tuple:
        """(lowest, highest) exponent; raises on the zero polynomial."""
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return self.lo, self.lo + len(self.coeffs) - 1

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return LaurentPoly(*_t(kernel.lp_add(self.lo, list(self.coeffs), other.lo, list(other.coeffs))))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.lo, tuple(-c if c else 0 for c in self.coeffs))

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return LaurentPoly(*_t(kernel.lp_mul(self.lo, list(self.coeffs), other.lo, list(other.coeffs))))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial; use QScalar")
        out = _LP_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.lo == other.lo and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)) or type(other) is type(_R0):
            return self == LaurentPoly.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.lo, self.coeffs))

    def mirror(self) -> "LaurentPoly":
        """Substitute q -> 1/q."""
        if not self.coeffs:
            return self
        return LaurentPoly(-(self.lo + len(self.coeffs) - 1), tuple(reversed(self.coeffs)))

    def eval_at(self, r) -> Fraction:
        r = RAT(r)
        if not r:
            raise EvalAtZeroError("cannot evaluate a Laurent polynomial at q = 0")
        acc = _R0
        for c in reversed(self.coeffs):
            acc = acc * r + c
        acc = acc * r ** self.lo
        return _to_fraction(acc)

    def __str__(self):
        return _render_poly(self)

    def __repr__(self):
        return f"LaurentPoly({_render_poly(self)!r})"


def _t(pair):
    return pair[0], tuple(pair[1])


_LP_ZERO = LaurentPoly(0, ())
_LP_ONE = LaurentPoly(0, (_R1,))
_LP_Q = LaurentPoly(1, (_R1,))


def _as_poly(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int) or isinstance(x, Fraction) or type(x) is type(_R0):
        return LaurentPoly.constant(x)
    return NotImplemented


class QScalar:
    """Element of Q(q) in canonical form.  Immutable.

    Supports +, -, *, /, ** with QScalar, LaurentPoly, int and Fraction
    operands.  Division by zero raises ZeroDivisionError.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=None):
        if den is None:
            if isinstance(num, QScalar):
                self.num, self.den = num.num, num.den
                return
            p = _as_poly(num)
            if p is NotImplemented:
                raise TypeError(f"cannot build QScalar from {type(num).__name__}")
            self.num, self.den = p, _LP_ONE
            return
        p, d = _as_poly(num), _as_poly(den)
        if p is NotImplemented or d is NotImplemented:
            raise TypeError("QScalar requires polynomial or rational arguments")
        self.num, self.den = _canonical(p, d)

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> "QScalar":
        # trusted: (num, den) already canonical
        self = object.__new__(cls)
        self.num, self.den = num, den
        return self

    @property
    def is_polynomial(self) -> bool:
        return self.den == _LP_ONE

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            if self.den == _LP_ONE:
                return QScalar._raw(self.num + other.num, _LP_ONE)
            return QScalar(self.num + other.num, self.den)
        return QScalar(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return QScalar._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == _LP_ONE and other.den == _LP_ONE:
            return QScalar._raw(self.num * other.num, _LP_ONE)
        return QScalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("division by the zero scalar")
        return QScalar(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if n < 0:
            if not self.num:
                raise ZeroDivisionError("negative power of zero")
            return (QScalar._raw(_LP_ONE, _LP_ONE) / self) ** (-n)
        out = QScalar._raw(_LP_ONE, _LP_ONE)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def mirror(self) -> "QScalar":
        return QScalar(self.num.mirror(), self.den.mirror())

    def eval_at(self, r) -> Fraction:
        """Exact value at a nonzero rational q; PoleError if the denominator vanishes."""
        d = self.den.eval_at(r)
        if not d:
            raise PoleError(f"pole at q = {r}")
        return self.num.eval_at(r) / d

    def __str__(self):
        if self.den == _LP_ONE:
            return f"({_render_poly(self.num)})"
        return f"({_render_poly(self.num)})/({_render_poly(self.den)})"

    def __repr__(self):
        return f"QScalar({str(self)!r})"


def _as_scalar(x):
    if isinstance(x, QScalar):
        return x
    p = _as_poly(x)
    if p is NotImplemented:
        return NotImplemented
    return QScalar._raw(p, _LP_ONE)


def _canonical(num: LaurentPoly, den: LaurentPoly) -> tuple:
    if not den.coeffs:
        raise ZeroDivisionError("zero denominator")
    if not num.coeffs:
        return _LP_ZERO, _LP_ONE
    nlo = num.lo - den.lo
    nc, dc = list(num.coeffs), list(den.coeffs)
    if len(nc) > 1 and len(dc) > 1:
        g = _poly_gcd(nc, dc)
        if len(g) > 1:
            nc = _poly_exact_div(nc, g)
            dc = _poly_exact_div(dc, g)
    lead = dc[-1]
    if lead != _R1:
        inv = 1 / lead
        nc = [c * inv if c else 0 for c in nc]
        dc = [c * inv if c else 0 for c in dc]
    if len(dc) == 1:
        return LaurentPoly._make(nlo, nc), _LP_ONE
    return LaurentPoly._make(nlo, nc), LaurentPoly(0, tuple(dc))


ZERO = QScalar._raw(_LP_ZERO, _LP_ONE)
ONE = QScalar._raw(_LP_ONE, _LP_ONE)
Q = QScalar._raw(_LP_Q, _LP_ONE)


def q_power(k: int) -> QScalar:
    return QScalar._raw(LaurentPoly(k, (_R1,)), _LP_ONE)


def qint(n: int) -> QScalar:
    """The q-integer [n] = (q^n - q^-n)/(q - q^-1) = q^(n-1) + q^(n-3) + ... + q^(1-n)."""
    if n == 0:
        return ZERO
    sign = 1
    if n < 0:
        sign, n = -1, -n
    coeff = RAT(sign)
    coeffs = []
    for i in range(2 * n - 1):
        coeffs.append(coeff if i % 2 == 0 else 0)
    return QScalar._raw(LaurentPoly(1 - n, tuple(coeffs)), _LP_ONE)


# --- rendering and parsing ------------------------------------------------
#
# grammar (round-trips with the renderer):
#   scalar   := "(" sum ")" "/" "(" sum ")" | "(" sum ")" | sum
#   sum      := ["-"] term (("+"|"-") term)*
#   term     := coeff "*" qpow | qpow | coeff
#   qpow     := "q" ["^" ["-"] int]
#   coeff    := int ["/" int]


def _render_coeff(c) -> str:
    f = _to_fraction(c)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def _render_poly(p: LaurentPoly) -> str:
    if not p.coeffs:
        return "0"
    parts = []
    for e in sorted(p.terms, reverse=True):
        c = p.terms[e]
        neg = c < 0
        mag = -c if neg else c
        if e == 0:
            body = _render_coeff(mag)
        else:
            qp = "q" if e == 1 else f"q^{e}"
            body = qp if mag == _R1 else f"{_render_coeff(mag)}*{qp}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"-{body}" if neg else f"+{body}")
    return "".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|(q)|(\^)|(\*)|(/)|(\+)|(-)|(\()|(\)))")


def _tokenize(s: str) -> list:
    toks, i = [], 0
    while i < len(s):
        m = _TOKEN.match(s, i)
        if not m or m.end() == i:
            raise ParseError(f"bad character in scalar literal at {s[i:i+8]!r}")
        i = m.end()
        toks.append(m.group().strip())
    return [t for t in toks if t]


def _parse_sum(toks: list, i: int) -> tuple:
    terms: dict = {}
    first = True
    while True:
        sign = 1
        if i < len(toks) and toks[i] in "+-":
            if toks[i] == "-":
                sign = -1
            i += 1
        elif not first:
            break
        if i >= len(toks):
            raise ParseError("dangling sign in scalar literal")
        coeff = RAT(sign)
        exp = 0
        seen = False
        if toks[i].isdigit():
            nume = int(toks[i])
            i += 1
            deno = 1
            if i < len(toks) and toks[i] == "/" and i + 1 < len(toks) and toks[i + 1].isdigit():
                deno = int(toks[i + 1])
                i += 2
            coeff = coeff * RAT(nume, deno)
            seen = True
            if i < len(toks) and toks[i] == "*":
                i += 1
                if i >= len(toks) or toks[i] != "q":
                    raise ParseError("expected q after '*'")
        if i < len(toks) and toks[i] == "q":
            i += 1
            exp = 1
            seen = True
            if i < len(toks) and toks[i] == "^":
                i += 1
                esign = 1
                if i < len(toks) and toks[i] == "-":
                    esign = -1
                    i += 1
                if i >= len(toks) or not toks[i].isdigit():
                    raise ParseError("expected integer exponent")
                exp = esign * int(toks[i])
                i += 1
        if not seen:
            raise ParseError("empty term in scalar literal")
        terms[exp] = terms.get(exp, _R0) + coeff
        first = False
        if i >= len(toks) or toks[i] not in "+-":
            break
    return LaurentPoly.from_terms(terms), i


def _parse_group(toks: list, i: int) -> tuple:
    if i < len(toks) and toks[i] == "(":
        depth, j = 1, i + 1
        while j < len(toks) and depth:
            if toks[j] == "(":
                depth += 1
            elif toks[j] == ")":
                depth -= 1
            j += 1
        if depth:
            raise ParseError("unbalanced parentheses")
        poly, k = _parse_sum(toks[: j - 1], i + 1)
        if k != j - 1:
            raise ParseError("trailing tokens inside parentheses")
        return poly, j
    return _parse_sum(toks, i)


def parse_scalar(s: str) -> QScalar:
    """Parse the canonical textual rendering of a QScalar."""
    toks = _tokenize(s)
    if not toks:
        raise ParseError("empty scalar literal")
    num, i = _parse_group(toks, 0)
    if i < len(toks) and toks[i] == "/":
        den, j = _parse_group(toks, i + 1)
        if j != len(toks):
            raise ParseError("trailing tokens after denominator")
        return QScalar(num, den)
    if i != len(toks):
        raise ParseError(f"trailing tokens: {' '.join(toks[i:])!r}")
    return QScalar(num)


# --- computation modes ----------------------------------------------------


class SymbolicDomain:
    """Scalars are QScalar; identities proved here hold for generic q."""

    is_symbolic = True
    key = ("symbolic",)
    zero = ZERO
    one = ONE
    q = Q

    def q_power(self, k: int) -> QScalar:
        return q_power(k)

    def qint(self, n: int) -> QScalar:
        return qint(n)

    def rational(self, r) -> QScalar:
        return QScalar(LaurentPoly.constant(r))

    def scalar(self, x) -> QScalar:
        if isinstance(x, QScalar):
            return x
        if isinstance(x, str):
            return parse_scalar(x)
        return QScalar(x)

    def render(self, x) -> str:
        return str(x)

    def __repr__(self):
        return "SymbolicDomain()"


class NumericDomain:
    """Scalars are exact rationals: everything evaluated at a fixed q."""

    is_symbolic = False

    def __init__(self, q):
        q = RAT(Fraction(q) if isinstance(q, str) else q)
        if not q:
            raise EvalAtZeroError("numeric mode requires q != 0")
        self.q = q
        self.zero = _R0
        self.one = _R1
        self.key = ("numeric", (int(q.numerator), int(q.denominator)))
        self._powers = {0: _R1, 1: q}

    def q_power(self, k: int):
        p = self._powers.get(k)
        if p is None:
            p = self._powers[k] = self.q ** k
        return p

    def qint(self, n: int):
        if n == 0:
            return _R0
        sign = 1
        if n < 0:
            sign, n = -1, -n
        return sign * sum(self.q_power(n - 1 - 2 * i) for i in range(n))

    def rational(self, r):
        return RAT(r)

    def scalar(self, x):
        if isinstance(x, str):
            return RAT(parse_scalar(x).eval_at(self.q))
        if isinstance(x, QScalar):
            return RAT(x.eval_at(self.q))
        return RAT(x)

    def render(self, x) -> str:
        f = _to_fraction(x)
        return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"

    def __repr__(self):
        return f"NumericDomain(q={self.render(self.q)})"


_SYMBOLIC = SymbolicDomain()
_NUMERIC_CACHE: dict = {}


def symbolic() -> SymbolicDomain:
    return _SYMBOLIC


def numeric(q=Fraction(3, 2)) -> NumericDomain:
    dom = NumericDomain(q)
    return _NUMERIC_CACHE.setdefault(dom.key, dom)
