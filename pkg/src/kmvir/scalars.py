"""Exact arithmetic in the coefficient field Q(k, c, lambda, mu).

Every coefficient in the system lives in this one field, so vectors built
in different modules can be mixed freely.  Numerators and denominators are
FLINT multivariate polynomials over Q; canonicalization happens eagerly on
every operation (gcd-free, monic denominator), so ``==`` is a cheap
coefficient-wise comparison.

Monomial order is graded-lex with ``k < c < lambda < mu``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Mapping, Union

import flint

from .errors import PoleError

__all__ = [
    "PARAMS",
    "RationalFunction",
    "Laurent",
    "rf",
    "symbol",
    "rf_arith",
    "rf_eval",
    "rf_series",
    "to_text",
    "from_text",
    "ZERO",
    "ONE",
    "INFINITY",
]

PARAMS = ("k", "c", "lambda", "mu")

# flint variable order is the reverse of PARAMS so deglex ranks mu > lambda > c > k
_FLINT_NAMES = ("mu", "lam", "c", "k")
_CTX = flint.fmpq_mpoly_ctx.get(_FLINT_NAMES, "deglex")
_GENS = _CTX.gens()
_NVARS = len(_FLINT_NAMES)

_ALIASES = {
    "k": "k",
    "c": "c",
    "lambda": "lambda",
    "lam": "lambda",
    "λ": "lambda",
    "mu": "mu",
    "μ": "mu",
}
_SLOT = {"mu": 0, "lambda": 1, "c": 2, "k": 3}


def _param_name(name: str) -> str:
    try:
        return _ALIASES[name]
    except KeyError:
        raise KeyError(f"unknown parameter {name!r}; expected one of {PARAMS}") from None


def _const(value) -> "flint.fmpq_mpoly":
    if isinstance(value, Fraction):
        value = flint.fmpq(value.numerator, value.denominator)
    return _CTX.constant(value)


class RationalFunction:
    """Immutable element of Q(k, c, lambda, mu) in canonical form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, *, _canonical=False):
        if not isinstance(num, flint.fmpq_mpoly):
            num = _const(num)
        if den is None:
            den = _ONE_POLY
        elif not isinstance(den, flint.fmpq_mpoly):
            den = _const(den)
        if not _canonical:
            num, den = _canonicalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # -- predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.den.is_one() and self.num.is_constant()

    def __bool__(self):
        return not self.num.is_zero()

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        if self.num.is_zero():
            return Fraction(0)
        q = self.num.leading_coefficient()
        return Fraction(int(q.numerator), int(q.denominator))

    def variables(self) -> tuple[str, ...]:
        used = [False] * _NVARS
        for poly in (self.num, self.den):
            for mono in poly.monoms():
                for i, e in enumerate(mono):
                    if e:
                        used[i] = True
        return tuple(p for p in PARAMS if used[_SLOT[p]])

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den.is_one() and other.den.is_one():
            return RationalFunction(self.num + other.num, _ONE_POLY, _canonical=True)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return ZERO
            return RationalFunction(self.num * other, self.den, _canonical=True)
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        if self.den.is_one() and other.den.is_one():
            return RationalFunction(self.num * other.num, _ONE_POLY, _canonical=True)
        # cross-cancel before multiplying to keep the gcds small
        g1 = _gcd(self.num, other.den)
        g2 = _gcd(other.num, self.den)
        n1, d2 = _div(self.num, g1), _div(other.den, g1)
        n2, d1 = _div(other.num, g2), _div(self.den, g2)
        return RationalFunction(n1 * n2, d1 * d2, _canonical=False)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return self * RationalFunction(other.den, other.num)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            if self.num.is_zero():
                raise ZeroDivisionError("zero to a negative power")
            return RationalFunction(self.den**-exponent, self.num**-exponent)
        return RationalFunction(self.num**exponent, self.den**exponent, _canonical=True)

    # -- comparison / hashing -------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            other = _coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.to_fraction())
            else:
                self._hash = hash((_poly_key(self.num), _poly_key(self.den)))
        return self._hash

    def __repr__(self):
        return f"RationalFunction({to_text(self)!r})"

    def __str__(self):
        return to_text(self)

    def __reduce__(self):
        return (from_text, (to_text(self),))


def _poly_key(p):
    return tuple((m, (int(c.numerator), int(c.denominator))) for m, c in list(p.terms()))


_ONE_POLY = _CTX.constant(1)
_ZERO_POLY = _CTX.constant(0)


def _gcd(a, b):
    if a.is_constant() or b.is_constant():
        return _ONE_POLY
    return a.gcd(b)


def _div(a, g):
    return a if g.is_one() else a / g


def _canonicalize(num, den):
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return _ZERO_POLY, _ONE_POLY
    if den.is_constant():
        lc = den.leading_coefficient()
        return (num if lc == 1 else num * (1 / lc)), _ONE_POLY
    g = _gcd(num, den)
    if not g.is_one():
        num, den = num / g, den / g
        if den.is_constant():
            lc = den.leading_coefficient()
            return num * (1 / lc), _ONE_POLY
    lc = den.leading_coefficient()
    if lc != 1:
        inv = 1 / lc
        num, den = num * inv, den * inv
    return num, den


def _coerce(value):
    if isinstance(value, RationalFunction):
        return value
    if isinstance(value, int):
        return _small_int(value)
    if isinstance(value, Fraction):
        return RationalFunction(value, _canonical=False)
    if isinstance(value, (flint.fmpq, flint.fmpz)):
        return RationalFunction(_CTX.constant(value), _ONE_POLY, _canonical=True)
    return NotImplemented


_INT_CACHE: dict[int, RationalFunction] = {}


def _small_int(n: int) -> RationalFunction:
    r = _INT_CACHE.get(n)
    if r is None:
        r = RationalFunction(_CTX.constant(n), _ONE_POLY, _canonical=True)
        if -64 <= n <= 64:
            _INT_CACHE[n] = r
    return r


ZERO = RationalFunction(_ZERO_POLY, _ONE_POLY, _canonical=True)
ONE = RationalFunction(_ONE_POLY, _ONE_POLY, _canonical=True)


def rf(value) -> RationalFunction:
    """Coerce int, Fraction, str or RationalFunction into the field."""
    if isinstance(value, str):
        return from_text(value)
    out = _coerce(value)
    if out is NotImplemented:
        raise TypeError(f"cannot coerce {type(value).__name__} to RationalFunction")
    return out


def symbol(name: str) -> RationalFunction:
    return RationalFunction(_GENS[_SLOT[_param_name(name)]], _ONE_POLY, _canonical=True)


def rf_arith(op: str, a, b) -> RationalFunction:
    a, b = rf(a), rf(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# text serialization


def _poly_text(terms: list[tuple[tuple[int, ...], int]]) -> str:
    if not terms:
        return "0"
    pieces = []
    for mono, coeff in terms:
        factors = []
        for name in PARAMS:
            e = mono[_SLOT[name]]
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        body = "*".join(factors)
        mag = abs(coeff)
        if not body:
            term = str(mag)
        elif mag == 1:
            term = body
        else:
            term = f"{mag}*{body}"
        if not pieces:
            pieces.append(term if coeff > 0 else f"-{term}")
        else:
            pieces.append(f" + {term}" if coeff > 0 else f" - {term}")
    return "".join(pieces)


def to_text(f: RationalFunction) -> str:
    """Canonical text form with integer coefficients, e.g. ``(3*k)/(k + 2)``.

    Numerator and denominator are scaled by one positive rational so that
    all coefficients are integers with overall content 1.
    """
    f = rf(f)
    nt = list(f.num.terms())
    dt = list(f.den.terms())
    denominators = [int(c.denominator) for _, c in nt] + [int(c.denominator) for _, c in dt]
    scale = lcm(*denominators) if denominators else 1
    num = [(m, int(c.numerator) * (scale // int(c.denominator))) for m, c in nt]
    den = [(m, int(c.numerator) * (scale // int(c.denominator))) for m, c in dt]
    content = 0
    for _, c in num + den:
        content = gcd(content, c)
    if content > 1:
        num = [(m, c // content) for m, c in num]
        den = [(m, c // content) for m, c in den]
    if len(den) == 1 and den[0][1] == 1 and not any(den[0][0]):
        return _poly_text(num)
    return f"({_poly_text(num)})/({_poly_text(den)})"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-zλμ_]+)|(.))")


def from_text(text: str) -> RationalFunction:
    """Parse an arithmetic expression in k, c, lambda, mu (inverse of to_text)."""
    tokens = []
    for num, ident, op in _TOKEN.findall(text):
        if num:
            tokens.append(("num", int(num)))
        elif ident:
            tokens.append(("id", ident))
        elif op.strip():
            tokens.append(("op", op))
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else ("end", None)

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if expected is not None and tok != ("op", expected):
            raise ValueError(f"expected {expected!r} in {text!r}, got {tok[1]!r}")
        pos += 1
        return tok

    def expr():
        value = term()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term():
        value = unary()
        while peek() in (("op", "*"), ("op", "/")):
            op = take()[1]
            rhs = unary()
            value = value * rhs if op == "*" else value / rhs
        return value

    def unary():
        if peek() == ("op", "-"):
            take()
            return -unary()
        if peek() == ("op", "+"):
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() in (("op", "^"),):
            take()
            sign = 1
            if peek() == ("op", "-"):
                take()
                sign = -1
            kind, exp = take()
            if kind != "num":
                raise ValueError(f"integer exponent expected in {text!r}")
            return base ** (sign * exp)
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return _small_int(val)
        if kind == "id":
            return symbol(val)
        if (kind, val) == ("op", "("):
            inner = expr()
            take(")")
            return inner
        raise ValueError(f"unexpected token {val!r} in {text!r}")

    result = expr()
    if pos != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return result


# ---------------------------------------------------------------------------
# specialization


def _numeric(value):
    if isinstance(value, RationalFunction) and value.is_constant():
        value = value.to_fraction()
    if isinstance(value, int):
        return flint.fmpq(value)
    if isinstance(value, Fraction):
        return flint.fmpq(value.numerator, value.denominator)
    return None


def _poly_eval(p, images: list[RationalFunction]) -> RationalFunction:
    total = ZERO
    for mono, coeff in list(p.terms()):
        term = RationalFunction(_CTX.constant(coeff), _ONE_POLY, _canonical=True)
        for i, e in enumerate(mono):
            if e:
                term = term * images[i] ** int(e)
        total = total + term
    return total


def rf_eval(f, subst: Mapping[str, Union[int, Fraction, str, RationalFunction]]) -> RationalFunction:
    """Substitute parameters and recanonicalize; raises PoleError on a vanishing denominator."""
    f = rf(f)
    numeric = {}
    symbolic = {}
    for name, value in subst.items():
        slot = _SLOT[_param_name(name)]
        if isinstance(value, str):
            value = from_text(value)
        q = _numeric(value)
        if q is not None:
            numeric[_FLINT_NAMES[slot]] = q
        else:
            symbolic[slot] = rf(value)
    num, den = f.num, f.den
    if numeric:
        num = num.subs(numeric)
        den_sub = den.subs(numeric)
        if den_sub.is_zero():
            raise PoleError(f"substitution {dict(subst)} hits a pole of {f}", _vanishing_factor(den, numeric))
        den = den_sub
    if not symbolic:
        return RationalFunction(num, den)
    images = [RationalFunction(g, _ONE_POLY, _canonical=True) for g in _GENS]
    for slot, value in symbolic.items():
        images[slot] = value
    num_v = _poly_eval(num, images)
    den_v = _poly_eval(den, images)
    if den_v.is_zero():
        raise PoleError(f"substitution {dict(subst)} hits a pole of {f}", RationalFunction(den))
    return num_v / den_v


def _vanishing_factor(den, numeric):
    _, factors = den.factor()
    for fac, _mult in factors:
        if fac.subs(numeric).is_zero():
            return RationalFunction(fac)
    return RationalFunction(den)


# ---------------------------------------------------------------------------
# Laurent expansion


class _Infinity:
    def __repr__(self):
        return "INFINITY"


INFINITY = _Infinity()


@dataclass(frozen=True)
class Laurent:
    """Truncated Laurent expansion in ``t = param - center`` (or ``1/param``).

    ``coeffs[i]`` is the coefficient of ``t**(leading + i)``; ``leading`` is
    None for the zero function.  The expansion is exact through ``t**order``.
    """

    param: str
    center: object
    leading: int | None
    order: int
    coeffs: tuple[RationalFunction, ...]

    def coefficient(self, exponent: int) -> RationalFunction:
        if exponent > self.order:
            raise ValueError(f"exponent {exponent} beyond expansion order {self.order}")
        if self.leading is None or exponent < self.leading:
            return ZERO
        return self.coeffs[exponent - self.leading]


def _split(poly, slot):
    """Coefficients of ``poly`` as a polynomial in one variable, lowest degree first."""
    buckets: dict[int, list] = {}
    for mono, coeff in list(poly.terms()):
        e = mono[slot]
        stripped = tuple(0 if i == slot else x for i, x in enumerate(mono))
        buckets.setdefault(e, []).append((stripped, coeff))
    if not buckets:
        return []
    top = max(buckets)
    return [
        RationalFunction(_CTX.from_dict(dict(buckets[j])), _ONE_POLY, _canonical=True) if j in buckets else ZERO
        for j in range(top + 1)
    ]


def rf_series(f, param: str, center, order: int) -> Laurent:
    """Laurent coefficients of ``f`` around ``param = center`` up to ``t**order``.

    Use ``center=INFINITY`` (or the string ``"oo"``) to expand in ``1/param``.
    Poles give negative leading exponents; nothing is raised.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    f = rf(f)
    name = _param_name(param)
    slot = _SLOT[name]
    at_infinity = center is INFINITY or center == "oo"
    if f.is_zero():
        return Laurent(name, INFINITY if at_infinity else center, None, order, ())
    num, den = f.num, f.den
    if not at_infinity:
        shift = rf(center)
        if not shift.is_constant():
            raise ValueError("expansion center must be a rational number or INFINITY")
        q = shift.to_fraction()
        images = list(_GENS)
        images[slot] = _GENS[slot] + flint.fmpq(q.numerator, q.denominator)
        num, den = num.compose(*images), den.compose(*images)
    ncoef = _split(num, slot)
    dcoef = _split(den, slot)
    if at_infinity:
        # p(1/t) = t^(-deg p) * reversed(p)(t)
        shift_exp = (len(dcoef) - 1) - (len(ncoef) - 1)
        ncoef = ncoef[::-1]
        dcoef = dcoef[::-1]
    else:
        shift_exp = 0
    a = next(i for i, x in enumerate(ncoef) if not x.is_zero())
    b = next(i for i, x in enumerate(dcoef) if not x.is_zero())
    ncoef, dcoef = ncoef[a:], dcoef[b:]
    leading = a - b + shift_exp
    count = order - leading + 1
    series: list[RationalFunction] = []
    d0 = dcoef[0]
    for j in range(max(count, 0)):
        acc = ncoef[j] if j < len(ncoef) else ZERO
        for i in range(1, min(j, len(dcoef) - 1) + 1):
            acc = acc - dcoef[i] * series[j - i]
        series.append(acc / d0)
    return Laurent(name, INFINITY if at_infinity else center, leading, order, tuple(series))
