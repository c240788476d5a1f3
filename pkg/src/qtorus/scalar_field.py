"""Exact coefficient arithmetic for the quantum torus machinery.

Two coefficient fields are supported:

* ``QMode.generic()``: rational functions in a formal symbol ``q`` over the
  rationals. ``q^n = 1`` only for ``n = 0``.
* ``QMode.root(d)``: the cyclotomic field ``Q(zeta_d)`` with ``q = zeta_d`` a
  primitive d-th root of unity, elements stored as residues modulo the d-th
  cyclotomic polynomial.

Both are extended by a formal ``eps`` with ``eps**2 = -1/2`` (the scalar by
which the fermionic zero mode acts); see :class:`Scalar`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from gmpy2 import mpq

ZERO = mpq(0)
ONE = mpq(1)
HALF = mpq(1, 2)


class DivisionByNonUnit(ZeroDivisionError):
    pass


class QModeError(ValueError):
    pass


# ---------------------------------------------------------------------------
# dense polynomial helpers (lists of mpq, index = degree)
# ---------------------------------------------------------------------------

def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _pmul(a, b):
    if not a or not b:
        return []
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _pdivmod(a, b):
    a = list(a)
    q = [ZERO] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        k = len(a) - len(b)
        q[k] = c
        for j, y in enumerate(b):
            a[k + j] -= c * y
        a.pop()
        _trim(a)
    return _trim(q), a


def _pgcd(a, b):
    a, b = list(a), list(b)
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _pxgcd(a, b):
    """Return (g, s) with g = s*a mod b, g monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [ONE], []
    while r1:
        qt, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(qt, s1))
    lead = r0[-1]
    return [c / lead for c in r0], [c / lead for c in s0]


def _psub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else ZERO) - (b[i] if i < len(b) else ZERO) for i in range(n)]
    return _trim(out)


@lru_cache(maxsize=None)
def cyclotomic_poly(d: int) -> tuple:
    """Integer coefficients (low degree first) of the d-th cyclotomic polynomial."""
    if d < 1:
        raise QModeError("cyclotomic order must be >= 1")
    num = [mpq(-1)] + [ZERO] * (d - 1) + [ONE]
    for e in range(1, d):
        if d % e == 0:
            num, rem = _pdivmod(num, list(cyclotomic_poly(e)))
            assert not rem
    return tuple(num)


# ---------------------------------------------------------------------------
# generic mode: rational functions in q
# ---------------------------------------------------------------------------

def _laurent_to_dense(terms):
    lo = min(terms)
    hi = max(terms)
    out = [ZERO] * (hi - lo + 1)
    for e, c in terms.items():
        out[e - lo] = c
    return lo, out


def _dense_to_laurent(lo, dense):
    return {lo + i: c for i, c in enumerate(dense) if c}


class RationalFunction:
    """Reduced ratio ``num/den`` of Laurent polynomials in q.

    ``den`` is an ordinary monic polynomial with nonzero constant term; every
    power of q lives in ``num``.  Both are dicts exponent -> mpq.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        self._hash = None
        if den is None or _is_one(den):
            self.num = num
            self.den = _ONE_POLY
            return
        if not num:
            self.num = {}
            self.den = _ONE_POLY
            return
        if len(den) == 1:
            (e, c), = den.items()
            self.num = {k - e: v / c for k, v in num.items()}
            self.den = _ONE_POLY
            return
        dlo, dd = _laurent_to_dense(den)
        nlo, nd = _laurent_to_dense(num)
        g = _pgcd(nd, dd)
        if len(g) > 1:
            nd, _ = _pdivmod(nd, g)
            dd, _ = _pdivmod(dd, g)
        # strip powers of q from the denominator into the numerator
        shift = 0
        while dd[0] == 0:
            dd.pop(0)
            shift += 1
        lead = dd[-1]
        dd = [c / lead for c in dd]
        self.num = _dense_to_laurent(nlo - dlo - shift, [c / lead for c in nd])
        self.den = _dense_to_laurent(0, dd) if len(dd) > 1 else _ONE_POLY

    # construction -------------------------------------------------------
    @classmethod
    def constant(cls, c):
        c = mpq(c)
        return cls({0: c} if c else {})

    @classmethod
    def monomial(cls, k: int, c=ONE):
        return cls({k: mpq(c)} if c else {})

    # arithmetic ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction.constant(other)
        if self.den is _ONE_POLY and other.den is _ONE_POLY:
            return RationalFunction(_ladd(self.num, other.num))
        num = _ladd(_lmul(self.num, other.den), _lmul(other.num, self.den))
        return RationalFunction(num, _lmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        out = RationalFunction.__new__(RationalFunction)
        out.num = {k: -v for k, v in self.num.items()}
        out.den = self.den
        out._hash = None
        return out

    def __sub__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RationalFunction):
            c = mpq(other)
            if not c:
                return RationalFunction({})
            out = RationalFunction.__new__(RationalFunction)
            out.num = {k: v * c for k, v in self.num.items()}
            out.den = self.den
            out._hash = None
            return out
        if self.den is _ONE_POLY and other.den is _ONE_POLY:
            return RationalFunction(_lmul(self.num, other.num))
        return RationalFunction(_lmul(self.num, other.num), _lmul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByNonUnit("division by zero rational function")
        return RationalFunction(dict(self.den), dict(self.num))

    def __truediv__(self, other):
        if not isinstance(other, RationalFunction):
            c = mpq(other)
            if not c:
                raise DivisionByNonUnit("division by zero")
            return self * (1 / c)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RationalFunction.constant(other) * self.inverse()

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            try:
                other = RationalFunction.constant(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.num.items()), frozenset(self.den.items())))
        return self._hash

    def constant_value(self):
        """The rational value if this is a constant, else None."""
        if self.den is not _ONE_POLY and self.den != _ONE_POLY:
            return None
        if not self.num:
            return ZERO
        if set(self.num) == {0}:
            return self.num[0]
        return None

    def __str__(self):
        if self.den is _ONE_POLY or self.den == _ONE_POLY:
            return _laurent_str(self.num)
        return f"({_laurent_str(self.num)})/({_laurent_str(self.den)})"

    __repr__ = __str__


_ONE_POLY = {0: ONE}


def _is_one(d):
    return d is _ONE_POLY or d == _ONE_POLY


def _ladd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for k, v in b.items():
        w = out.get(k)
        if w is None:
            out[k] = v
        else:
            w = w + v
            if w:
                out[k] = w
            else:
                del out[k]
    return out


def _lmul(a, b):
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            k = i + j
            out[k] = out.get(k, ZERO) + x * y
    return {k: v for k, v in out.items() if v}


def _coef_str(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _laurent_str(terms):
    if not terms:
        return "0"
    parts = []
    for e in sorted(terms, reverse=True):
        c = terms[e]
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if e == 0:
            body = _coef_str(a)
        else:
            mono = "q" if e == 1 else f"q^{e}"
            body = mono if a == 1 else f"{_coef_str(a)}*{mono}"
        parts.append((sign, body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


_TERM_RE = re.compile(r"^(?:(\d+(?:/\d+)?)(?:\*)?)?(q(?:\^(-?\d+))?)?$")


def parse_laurent(text: str) -> dict:
    """Parse the K-string grammar: ``3/2*q^-2 - q + 1``."""
    text = text.replace(" ", "")
    if text in ("", "0"):
        return {}
    tokens = re.findall(r"([+-]?)((?:\d+(?:/\d+)?\*?)?(?:q(?:\^-?\d+)?)?)", text)
    out = {}
    for sign, body in tokens:
        if not body:
            continue
        m = _TERM_RE.match(body)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ValueError(f"bad term {body!r} in {text!r}")
        c = mpq(m.group(1)) if m.group(1) else ONE
        if sign == "-":
            c = -c
        if m.group(2):
            e = int(m.group(3)) if m.group(3) is not None else 1
        else:
            e = 0
        out[e] = out.get(e, ZERO) + c
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# root-of-unity mode: Q(zeta_d)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _cyclo_tables(d: int):
    phi = [c for c in cyclotomic_poly(d)]
    deg = len(phi) - 1
    # x^k mod Phi_d for k in [0, d)
    powers = []
    for k in range(d):
        mono = [ZERO] * k + [ONE]
        _, r = _pdivmod(mono, phi)
        powers.append(tuple(r[i] if i < len(r) else ZERO for i in range(deg)))
    # x^k mod Phi_d for k in [0, 2*deg-1) used by multiplication
    red = []
    for k in range(max(2 * deg - 1, 1)):
        mono = [ZERO] * k + [ONE]
        _, r = _pdivmod(mono, phi)
        red.append(tuple(r[i] if i < len(r) else ZERO for i in range(deg)))
    return deg, tuple(powers), tuple(red), phi


class CyclotomicElement:
    """Element of Q(zeta_d) as coefficients of 1, q, ..., q^(phi(d)-1)."""

    __slots__ = ("d", "c")

    def __init__(self, d: int, coeffs):
        self.d = d
        self.c = tuple(coeffs)

    @classmethod
    def constant(cls, d, value):
        deg = _cyclo_tables(d)[0]
        v = mpq(value)
        return cls(d, (v,) + (ZERO,) * (deg - 1))

    @classmethod
    def q_power(cls, d, k):
        return cls(d, _cyclo_tables(d)[1][k % d])

    def is_zero(self):
        return not any(self.c)

    def _coerce(self, other):
        if isinstance(other, CyclotomicElement):
            if other.d != self.d:
                raise QModeError("mixing cyclotomic fields of different order")
            return other
        return CyclotomicElement.constant(self.d, other)

    def __add__(self, other):
        other = self._coerce(other)
        return CyclotomicElement(self.d, [a + b for a, b in zip(self.c, other.c)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicElement(self.d, [-a for a in self.c])

    def __sub__(self, other):
        other = self._coerce(other)
        return CyclotomicElement(self.d, [a - b for a, b in zip(self.c, other.c)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, CyclotomicElement):
            v = mpq(other)
            return CyclotomicElement(self.d, [a * v for a in self.c])
        deg, _, red, _ = _cyclo_tables(self.d)
        prod = [ZERO] * (2 * deg - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    if b:
                        prod[i + j] += a * b
        out = [ZERO] * deg
        for k, v in enumerate(prod):
            if v:
                for i, r in enumerate(red[k]):
                    if r:
                        out[i] += v * r
        return CyclotomicElement(self.d, out)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise DivisionByNonUnit("division by zero in cyclotomic field")
        deg, _, _, phi = _cyclo_tables(self.d)
        a = _trim(list(self.c))
        g, s = _pxgcd(a, list(phi))
        if len(g) != 1:  # pragma: no cover - Phi_d irreducible
            raise DivisionByNonUnit("non-invertible cyclotomic element")
        _, s = _pdivmod(s, list(phi))
        return CyclotomicElement(self.d, [s[i] if i < len(s) else ZERO for i in range(deg)])

    def __truediv__(self, other):
        if not isinstance(other, CyclotomicElement):
            v = mpq(other)
            if not v:
                raise DivisionByNonUnit("division by zero")
            return self * (1 / v)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return CyclotomicElement.constant(self.d, other) * self.inverse()

    def __eq__(self, other):
        if not isinstance(other, CyclotomicElement):
            try:
                other = CyclotomicElement.constant(self.d, other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.d == other.d and self.c == other.c

    def __hash__(self):
        return hash((self.d, self.c))

    def constant_value(self):
        if any(self.c[1:]):
            return None
        return self.c[0]

    def __str__(self):
        return _laurent_str({i: v for i, v in enumerate(self.c) if v})

    __repr__ = __str__


# ---------------------------------------------------------------------------
# Scalar = K + K*eps, eps^2 = -1/2
# ---------------------------------------------------------------------------

class Scalar:
    """``even + eps_part * eps`` with ``eps**2 = -1/2``."""

    __slots__ = ("even", "eps")

    def __init__(self, even, eps=None):
        self.even = even
        self.eps = eps if eps is not None and not eps.is_zero() else None

    @property
    def eps_part(self):
        return self.eps if self.eps is not None else self.even * 0

    def is_zero(self):
        return self.even.is_zero() and self.eps is None

    def _lift(self, other):
        if isinstance(other, Scalar):
            return other
        return Scalar(self.even * 0 + other)

    def __add__(self, other):
        other = self._lift(other)
        if self.eps is None:
            eps = other.eps
        elif other.eps is None:
            eps = self.eps
        else:
            eps = self.eps + other.eps
        return Scalar(self.even + other.even, eps)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.even, None if self.eps is None else -self.eps)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            return Scalar(self.even * other, None if self.eps is None else self.eps * other)
        a, b, c, d = self.even, self.eps, other.even, other.eps
        if b is None and d is None:
            return Scalar(a * c)
        if b is None:
            return Scalar(a * c, a * d)
        if d is None:
            return Scalar(a * c, b * c)
        return Scalar(a * c - b * d * HALF, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Scalar):
            if other.eps is not None:
                raise DivisionByNonUnit("division is only defined by eps-free scalars")
            other = other.even
        if other == 0:
            raise DivisionByNonUnit("division by zero")
        return Scalar(self.even / other, None if self.eps is None else self.eps / other)

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = self._lift(other)
            except (TypeError, ValueError):
                return NotImplemented
        if self.even != other.even:
            return False
        if self.eps is None or other.eps is None:
            return self.eps is None and other.eps is None
        return self.eps == other.eps

    def __hash__(self):
        return hash((self.even, self.eps))

    def __str__(self):
        if self.eps is None:
            return str(self.even)
        return f"{self.even} + ({self.eps})*eps"

    __repr__ = __str__

    def to_json(self):
        return {"even": str(self.even), "eps": "0" if self.eps is None else str(self.eps)}


# ---------------------------------------------------------------------------
# q-modes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QMode:
    """Which value q takes: a formal symbol, or a primitive d-th root of unity."""

    kind: str = "generic"
    order: int | None = None

    def __post_init__(self):
        if self.kind not in ("generic", "root"):
            raise QModeError(f"unknown q-mode kind {self.kind!r}")
        if self.kind == "root" and (self.order is None or self.order < 1):
            raise QModeError("root-of-unity mode needs an order d >= 1")
        if self.kind == "generic" and self.order is not None:
            raise QModeError("generic mode takes no order")

    @classmethod
    def generic(cls):
        return cls("generic")

    @classmethod
    def root(cls, d: int):
        return cls("root", d)

    @classmethod
    def parse(cls, text: str) -> "QMode":
        text = text.strip().lower()
        if text == "generic":
            return cls.generic()
        m = re.fullmatch(r"root:(\d+)", text)
        if not m:
            raise QModeError(f"cannot parse q-mode {text!r}; use 'generic' or 'root:d'")
        return cls.root(int(m.group(1)))

    def __str__(self):
        return "generic" if self.kind == "generic" else f"root:{self.order}"

    # K-level constructors ------------------------------------------------
    def k_const(self, c):
        if self.kind == "generic":
            return RationalFunction.constant(c)
        return CyclotomicElement.constant(self.order, c)

    def k_q_pow(self, k: int):
        if self.kind == "generic":
            return RationalFunction.monomial(k)
        return CyclotomicElement.q_power(self.order, k)

    def k_from_laurent(self, terms: dict):
        """Evaluate a Laurent polynomial ``{exp: coeff}`` in q."""
        if self.kind == "generic":
            return RationalFunction({k: mpq(v) for k, v in terms.items() if v})
        d = self.order
        deg, powers, _, _ = _cyclo_tables(d)
        out = [ZERO] * deg
        for k, v in terms.items():
            if v:
                for i, r in enumerate(powers[k % d]):
                    if r:
                        out[i] += r * v
        return CyclotomicElement(d, out)

    def parse_k(self, text: str):
        text = text.strip()
        m = re.fullmatch(r"\((.*)\)/\((.*)\)", text)
        if m:
            return self.k_from_laurent(parse_laurent(m.group(1))) / self.k_from_laurent(
                parse_laurent(m.group(2)))
        return self.k_from_laurent(parse_laurent(text))

    # Scalar-level --------------------------------------------------------
    def scalar(self, c=0, eps=0) -> Scalar:
        return Scalar(self.k_const(c), self.k_const(eps) if eps else None)

    def zero(self) -> Scalar:
        return self.scalar(0)

    def one(self) -> Scalar:
        return self.scalar(1)

    def eps(self) -> Scalar:
        return self.scalar(0, 1)

    def q_pow(self, k: int) -> Scalar:
        return Scalar(self.k_q_pow(k))

    def lambda_contains(self, n: int) -> bool:
        """True iff q^n = 1."""
        if self.kind == "generic":
            return n == 0
        return n % self.order == 0

    def q_ratio(self, m: int, n: int) -> Scalar:
        """``(q^(mn) - 1)/(q^n - 1)``, read as ``m`` when q^n = 1."""
        if self.lambda_contains(n):
            return self.scalar(m)
        return Scalar(self.k_from_laurent(ratio_laurent(m, n)))

    def scalar_from_json(self, obj) -> Scalar:
        return Scalar(self.parse_k(obj["even"]), self.parse_k(obj.get("eps", "0")))


def ratio_laurent(m: int, n: int) -> dict:
    """Laurent polynomial equal to (q^(mn)-1)/(q^n-1) for q^n != 1."""
    if m >= 0:
        terms = [(n * t, ONE) for t in range(m)]
    else:
        terms = [(n * t, -ONE) for t in range(m, 0)]
    out = {}
    for e, c in terms:
        out[e] = out.get(e, ZERO) + c
    return {k: v for k, v in out.items() if v}


def q_pow(k: int, mode: QMode) -> Scalar:
    return mode.q_pow(k)


def lambda_contains(n: int, mode: QMode) -> bool:
    return mode.lambda_contains(n)


def q_ratio(m: int, n: int, mode: QMode) -> Scalar:
    return mode.q_ratio(m, n)
