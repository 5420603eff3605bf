"""Exact arithmetic in Q(q).

Polynomials over Z are tuples of ints, lowest degree first, with no trailing
zeros; the zero polynomial is ``()``.  A :class:`RationalFunction` stores
``q**shift * num / den`` in canonical form:

* ``gcd(num, den) == 1`` in Z[q] (so contents are coprime as integers),
* ``den`` has positive leading coefficient,
* neither ``num`` nor ``den`` is divisible by ``q``.

Canonical form makes equality and hashing structural.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd
from typing import Union

Poly = tuple


class ScalarError(ArithmeticError):
    pass


class GenericityError(ScalarError):
    """A numeric value of q is a root of unity or otherwise degenerate."""


class PoleError(ScalarError):
    pass


# ---------------------------------------------------------------------------
# integer polynomials

def _trim(c: list) -> Poly:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def p_add(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    c = list(a)
    for i, x in enumerate(b):
        c[i] += x
    return _trim(c)


def p_neg(a: Poly) -> Poly:
    return tuple(-x for x in a)


def p_sub(a: Poly, b: Poly) -> Poly:
    return p_add(a, p_neg(b))


def p_scale(a: Poly, k: int) -> Poly:
    if k == 0:
        return ()
    return tuple(x * k for x in a)


def p_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    if len(a) == 1:
        return p_scale(b, a[0])
    if len(b) == 1:
        return p_scale(a, b[0])
    c = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                c[i + j] += x * y
    return _trim(c)


def p_shift(a: Poly, k: int) -> Poly:
    """Multiply by q**k, k >= 0."""
    if not a or k == 0:
        return a
    return (0,) * k + a


def p_content(a: Poly) -> int:
    g = 0
    for x in a:
        g = igcd(g, x)
        if g == 1:
            break
    return g


def p_exquo_int(a: Poly, k: int) -> Poly:
    return tuple(x // k for x in a)


def p_divmod_exact(a: Poly, b: Poly) -> Poly:
    """Quotient a / b in Z[q]; raises if b does not divide a."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return ()
    if len(b) == 1:
        k = b[0]
        if any(x % k for x in a):
            raise ScalarError("inexact polynomial division")
        return p_exquo_int(a, k)
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    qd = len(a) - len(b)
    if qd < 0:
        raise ScalarError("inexact polynomial division")
    quo = [0] * (qd + 1)
    for i in range(qd, -1, -1):
        c = r[i + db]
        if c == 0:
            continue
        if c % lb:
            raise ScalarError("inexact polynomial division")
        t = c // lb
        quo[i] = t
        for j, y in enumerate(b):
            r[i + j] -= t * y
    if any(r):
        raise ScalarError("inexact polynomial division")
    return _trim(quo)


def p_prem(a: Poly, b: Poly) -> Poly:
    """Pseudo-remainder of a by b."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    delta = len(a) - len(b) + 1
    while len(r) - 1 >= db and r:
        c = r[-1]
        shift = len(r) - 1 - db
        r = [x * lb for x in r]
        for j, y in enumerate(b):
            r[shift + j] -= c * y
        r.pop()  # leading term cancels by construction
        while r and r[-1] == 0:
            r.pop()
        delta -= 1
    if delta > 0 and r:
        f = lb ** delta
        r = [x * f for x in r]
    return tuple(r)


def p_primitive(a: Poly) -> Poly:
    if not a:
        return a
    c = p_content(a)
    if a[-1] < 0:
        c = -c
    return a if c == 1 else p_exquo_int(a, c)


def p_gcd(a: Poly, b: Poly) -> Poly:
    """gcd in Z[q] with positive leading coefficient (subresultant PRS)."""
    if not a:
        return _normalize_sign(b)
    if not b:
        return _normalize_sign(a)
    if len(a) == 1 or len(b) == 1:
        return (igcd(p_content(a), p_content(b)),)
    c = igcd(p_content(a), p_content(b))
    a = p_primitive(a)
    b = p_primitive(b)
    if len(a) < len(b):
        a, b = b, a
    if a == b:
        return p_scale(a, c)
    g = h = 1
    while True:
        d = len(a) - len(b)
        r = p_prem(a, b)
        if not r:
            break
        if len(r) == 1:
            return (c,)
        a, b = b, p_exquo_int(r, g * h ** d)
        g = a[-1]
        if d == 0:
            pass
        elif d == 1:
            h = g
        else:
            h = g ** d // h ** (d - 1)
    return p_scale(p_primitive(b), c)


def _normalize_sign(a: Poly) -> Poly:
    if a and a[-1] < 0:
        return p_neg(a)
    return a


def _strip_q(a: Poly) -> tuple[Poly, int]:
    k = 0
    while k < len(a) and a[k] == 0:
        k += 1
    return (a[k:], k) if k else (a, 0)


def p_eval(a: Poly, x: Fraction) -> Fraction:
    r = Fraction(0)
    for c in reversed(a):
        r = r * x + c
    return r


# ---------------------------------------------------------------------------

_ONE: Poly = (1,)


class RationalFunction:
    """An element ``q**shift * num / den`` of Q(q), always canonical."""

    __slots__ = ("num", "den", "shift", "_hash")

    def __init__(self, value: Union[int, Fraction, str, "RationalFunction"] = 0):
        if isinstance(value, RationalFunction):
            self.num, self.den, self.shift = value.num, value.den, value.shift
        elif isinstance(value, bool):
            raise TypeError("bool is not a scalar")
        elif isinstance(value, int):
            self.num, self.den, self.shift = ((value,) if value else ()), _ONE, 0
        elif isinstance(value, Fraction):
            n, d = value.numerator, value.denominator
            self.num, self.den, self.shift = ((n,) if n else ()), (d,), 0
        elif isinstance(value, str):
            r = parse(value)
            self.num, self.den, self.shift = r.num, r.den, r.shift
        else:
            raise TypeError(f"cannot build a scalar from {type(value).__name__}")
        self._hash = None

    @classmethod
    def _raw(cls, num: Poly, den: Poly, shift: int) -> "RationalFunction":
        r = object.__new__(cls)
        r.num, r.den, r.shift, r._hash = num, den, shift, None
        return r

    @classmethod
    def from_parts(cls, num: Poly, den: Poly = _ONE, shift: int = 0) -> "RationalFunction":
        """Canonicalize an arbitrary ``q**shift * num/den``."""
        num, den = tuple(num), tuple(den)
        if not den or not any(den):
            raise ZeroDivisionError("zero denominator")
        num = _trim(list(num))
        den = _trim(list(den))
        if not num:
            return ZERO
        num, k1 = _strip_q(num)
        den, k2 = _strip_q(den)
        shift += k1 - k2
        if den != _ONE:
            g = p_gcd(num, den)
            if g != _ONE:
                num = p_divmod_exact(num, g)
                den = p_divmod_exact(den, g)
            if den[-1] < 0:
                num, den = p_neg(num), p_neg(den)
        return cls._raw(num, den, shift)

    @classmethod
    def laurent(cls, coeffs: dict[int, int]) -> "RationalFunction":
        """Build from ``{exponent: integer coefficient}``."""
        coeffs = {e: c for e, c in coeffs.items() if c}
        if not coeffs:
            return ZERO
        lo, hi = min(coeffs), max(coeffs)
        return cls._raw(tuple(coeffs.get(e, 0) for e in range(lo, hi + 1)), _ONE, lo)

    # -- predicates ------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.num)

    def is_laurent(self) -> bool:
        return self.den == _ONE

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1 and (self.shift == 0 or not self.num)

    def is_unit_monomial(self) -> bool:
        """True for ``±q**k``."""
        return self.den == _ONE and len(self.num) == 1 and abs(self.num[0]) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        if not self.num:
            return Fraction(0)
        return Fraction(self.num[0], self.den[0])

    # -- arithmetic --------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
                other = RationalFunction(other)
            else:
                return NotImplemented
        return self.num == other.num and self.shift == other.shift and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den, self.shift))
        return self._hash

    def __neg__(self) -> "RationalFunction":
        if not self.num:
            return self
        return RationalFunction._raw(p_neg(self.num), self.den, self.shift)

    def __add__(self, other) -> "RationalFunction":
        if not isinstance(other, RationalFunction):
            if isinstance(other, int) and not isinstance(other, bool) or isinstance(other, Fraction):
                other = RationalFunction(other)
            else:
                return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        s1, s2 = self.shift, other.shift
        s = min(s1, s2)
        n1 = p_shift(self.num, s1 - s)
        n2 = p_shift(other.num, s2 - s)
        d1, d2 = self.den, other.den
        if d1 == d2:
            num = p_add(n1, n2)
            if not num:
                return ZERO
            num, k = _strip_q(num)
            if d1 == _ONE:
                return RationalFunction._raw(num, _ONE, s + k)
            g = p_gcd(num, d1)
            if g == _ONE:
                return RationalFunction._raw(num, d1, s + k)
            return RationalFunction._raw(p_divmod_exact(num, g), p_divmod_exact(d1, g), s + k)
        if d1 == _ONE:
            num = p_add(p_mul(n1, d2), n2)
            den = d2
        elif d2 == _ONE:
            num = p_add(n1, p_mul(n2, d1))
            den = d1
        else:
            g = p_gcd(d1, d2)
            if g == _ONE:
                num = p_add(p_mul(n1, d2), p_mul(n2, d1))
                den = p_mul(d1, d2)
            else:
                e1 = p_divmod_exact(d1, g)
                e2 = p_divmod_exact(d2, g)
                num = p_add(p_mul(n1, e2), p_mul(n2, e1))
                den = p_mul(d1, e2)
        if not num:
            return ZERO
        num, k = _strip_q(num)
        g = p_gcd(num, den)
        if g != _ONE:
            num = p_divmod_exact(num, g)
            den = p_divmod_exact(den, g)
        return RationalFunction._raw(num, den, s + k)

    __radd__ = __add__

    def __sub__(self, other) -> "RationalFunction":
        if not isinstance(other, RationalFunction):
            if isinstance(other, int) and not isinstance(other, bool) or isinstance(other, Fraction):
                other = RationalFunction(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RationalFunction":
        return RationalFunction(other) - self

    def __mul__(self, other) -> "RationalFunction":
        if not isinstance(other, RationalFunction):
            if isinstance(other, int) and not isinstance(other, bool) or isinstance(other, Fraction):
                other = RationalFunction(other)
            else:
                return NotImplemented
        if not self.num or not other.num:
            return ZERO
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if d1 == _ONE and d2 == _ONE:
            return RationalFunction._raw(p_mul(n1, n2), _ONE, self.shift + other.shift)
        if d2 != _ONE:
            g = p_gcd(n1, d2)
            if g != _ONE:
                n1, d2 = p_divmod_exact(n1, g), p_divmod_exact(d2, g)
        if d1 != _ONE:
            g = p_gcd(n2, d1)
            if g != _ONE:
                n2, d1 = p_divmod_exact(n2, g), p_divmod_exact(d1, g)
        num, den = p_mul(n1, n2), p_mul(d1, d2)
        if den[-1] < 0:
            num, den = p_neg(num), p_neg(den)
        return RationalFunction._raw(num, den, self.shift + other.shift)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num:
            raise ZeroDivisionError("inverse of zero in Q(q)")
        num, den = self.den, self.num
        if den[-1] < 0:
            num, den = p_neg(num), p_neg(den)
        return RationalFunction._raw(num, den, -self.shift)

    def __truediv__(self, other) -> "RationalFunction":
        if not isinstance(other, RationalFunction):
            if isinstance(other, int) and not isinstance(other, bool) or isinstance(other, Fraction):
                other = RationalFunction(other)
            else:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "RationalFunction":
        return RationalFunction(other) * self.inverse()

    def __pow__(self, k: int) -> "RationalFunction":
        if k < 0:
            return self.inverse() ** (-k)
        if self.den == _ONE and len(self.num) == 1:
            return RationalFunction._raw((self.num[0] ** k,), _ONE, self.shift * k)
        r, b = ONE, self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    # -- evaluation ----------------------------------------------------------
    def evaluate(self, q0) -> Fraction:
        """Exact value at q = q0 (no genericity guard)."""
        q0 = Fraction(q0)
        if not self.num:
            return Fraction(0)
        d = p_eval(self.den, q0)
        if d == 0:
            raise PoleError(f"{self} has a pole at q = {q0}")
        if q0 == 0 and self.shift < 0:
            raise PoleError(f"{self} has a pole at q = 0")
        return p_eval(self.num, q0) / d * q0 ** self.shift

    def __repr__(self) -> str:
        return f"RationalFunction({str(self)!r})"

    def __str__(self) -> str:
        return emit(self)


Scalar = RationalFunction
ZERO = RationalFunction._raw((), _ONE, 0)
ONE = RationalFunction._raw((1,), _ONE, 0)
Q = RationalFunction._raw((1,), _ONE, 1)


def as_scalar(x) -> RationalFunction:
    return x if isinstance(x, RationalFunction) else RationalFunction(x)


def q_power(k: int) -> RationalFunction:
    return RationalFunction._raw((1,), _ONE, k)


def q_number(k: int, base: RationalFunction | None = None) -> RationalFunction:
    """``(x**k - x**-k) / (x - x**-1)`` with ``x = base`` (default q)."""
    if k < 0:
        return -q_number(-k, base)
    if k == 0:
        return ZERO
    if base is None or base == Q:
        return RationalFunction.laurent({k - 1 - 2 * j: 1 for j in range(k)})
    base = as_scalar(base)
    total = ZERO
    for j in range(k):
        total = total + base ** (k - 1 - 2 * j)
    return total


def q_factorial(k: int, base: RationalFunction | None = None) -> RationalFunction:
    if k < 0:
        raise ValueError("q_factorial needs k >= 0")
    r = ONE
    for j in range(1, k + 1):
        r = r * q_number(j, base)
    return r


def check_generic(q0, bound: int = 6) -> Fraction:
    """Reject numeric q0 for which the Hecke recursions break down."""
    q0 = Fraction(q0)
    if q0 in (0, 1, -1):
        raise GenericityError(f"q = {q0} is not generic")
    for k in range(1, bound + 1):
        if q_number(k).evaluate(q0) == 0:
            raise GenericityError(f"{k}_q vanishes at q = {q0}")
    return q0


def specialize(x: RationalFunction, q0, generic: bool = True) -> Fraction:
    """Exact rational value of x at q = q0."""
    if generic:
        check_generic(q0, bound=1)
    return as_scalar(x).evaluate(q0)


def sqrt(x: RationalFunction) -> RationalFunction | None:
    """Square root in Q(q) if one exists (sign: positive leading coefficient)."""
    x = as_scalar(x)
    if not x.num:
        return ZERO
    if x.shift % 2:
        return None
    n = _poly_sqrt(x.num)
    d = _poly_sqrt(x.den)
    if n is None or d is None:
        # contents may need rebalancing, e.g. 1/2 = 2/4
        return None
    return RationalFunction.from_parts(n, d, x.shift // 2)


def _isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    from math import isqrt
    r = isqrt(n)
    return r if r * r == n else None


def _poly_sqrt(a: Poly) -> Poly | None:
    if (len(a) - 1) % 2:
        return None
    lead = _isqrt_exact(a[-1])
    if lead is None:
        return None
    # work over Q from the top coefficient down
    m = (len(a) - 1) // 2
    r = [Fraction(0)] * (m + 1)
    r[m] = Fraction(lead)
    for k in range(m - 1, -1, -1):
        # coefficient of q^(m+k) in r^2 determines r[k]
        s = Fraction(a[m + k])
        for i in range(k + 1, m):
            j = m + k - i
            if k < j <= m:
                s -= r[i] * r[j]
        r[k] = s / (2 * r[m])
    if any(c.denominator != 1 for c in r):
        return None
    cand = tuple(int(c) for c in r)
    return cand if p_mul(cand, cand) == a else None


# ---------------------------------------------------------------------------
# string syntax: integers, q, + - * / ^ ( )

class ParseError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        super().__init__(f"{msg} at position {pos} in {text!r}")
        self.pos = pos


def _tokenize(text: str):
    toks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(("int", int(text[i:j]), i))
            i = j
        elif ch in "+-*/^()":
            toks.append((ch, ch, i))
            i += 1
        elif ch == "q":
            toks.append(("q", "q", i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", text, i)
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}", self.text, tok[2])
        self.i += 1
        return tok

    def expr(self):
        v = self.term()
        while self.peek() in "+-":
            op = self.take()[0]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek() in ("*", "/"):
            op, _, pos = self.take()
            w = self.unary()
            if op == "*":
                v = v * w
            else:
                if not w:
                    raise ParseError("division by zero", self.text, pos)
                v = v / w
        return v

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            _, _, pos = self.take()
            e = self.exponent()
            if e < 0 and not base:
                raise ParseError("zero to a negative power", self.text, pos)
            base = base ** e
        return base

    def exponent(self) -> int:
        sign = 1
        if self.peek() == "(":
            self.take()
            e = self.exponent()
            self.take(")")
            return e
        while self.peek() in "+-":
            if self.take()[0] == "-":
                sign = -sign
        return sign * self.take("int")[1]

    def atom(self):
        kind, val, pos = self.toks[self.i]
        if kind == "int":
            self.take()
            return RationalFunction(val)
        if kind == "q":
            self.take()
            return Q
        if kind == "(":
            self.take()
            v = self.expr()
            self.take(")")
            return v
        raise ParseError("expected a number, q or '('", self.text, pos)


def parse(text: str) -> RationalFunction:
    p = _Parser(text)
    v = p.expr()
    if p.peek() != "end":
        raise ParseError("trailing input", text, p.toks[p.i][2])
    return v


def _laurent_str(coeffs: Poly, shift: int) -> str:
    parts = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if not c:
            continue
        k = e + shift
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = "q" if k == 1 else f"q^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sgn, body in parts[1:]:
        out += f" {sgn} {body}"
    return out


def emit(x: RationalFunction) -> str:
    """Canonical string; ``parse(emit(x)) == x``."""
    if not x.num:
        return "0"
    num = _laurent_str(x.num, x.shift)
    if x.den == _ONE:
        return num
    den = _laurent_str(x.den, 0)
    nterms = sum(1 for c in x.num if c)
    dterms = sum(1 for c in x.den if c)
    if nterms > 1:
        num = f"({num})"
    if dterms > 1:
        den = f"({den})"
    return f"{num}/{den}"
