"""Exact arithmetic in cyclotomic fields Q(zeta_m).

An element is stored in the power basis 1, z, ..., z^(phi(m)-1) of Q(zeta_m)
as integer numerators over one positive common denominator.  Elements coming
from different fields are lifted to the field of the lcm of the conductors
before combining, so mixed arithmetic is always exact.
"""
from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd

import mpmath


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@lru_cache(maxsize=None)
def totient(m: int) -> int:
    result, n, p = m, m, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


@lru_cache(maxsize=None)
def mobius(m: int) -> int:
    n, p, sign = m, 2, 1
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            sign = -sign
        p += 1
    if n > 1:
        sign = -sign
    return sign


def _polydiv_exact(num: list, den: list) -> list:
    # integer polynomial division, coefficients lowest degree first, den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple:
    """Coefficients of Phi_m, lowest degree first."""
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _polydiv_exact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple:
    """Row k holds the power-basis coordinates of zeta_m^k, 0 <= k < m."""
    phi = totient(m)
    poly = cyclotomic_poly(m)
    rows = []
    cur = [1] + [0] * (phi - 1)
    for _ in range(m):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * a for c, a in zip(cur, poly[:phi])]
    return tuple(rows)


def _norm_conductor(m: int) -> int:
    return m // 2 if m % 4 == 2 else m


@lru_cache(maxsize=None)
def _lift_table(m: int, big: int) -> tuple:
    """Coordinates in Q(zeta_big) of the power basis of Q(zeta_m)."""
    table = _power_table(big)
    step = big // m
    return tuple(table[(i * step) % big] for i in range(totient(m)))


def _from_exponents(m: int, acc) -> list:
    # acc[k] multiplies zeta_m^k for k in range(len(acc)); reduce to the power basis
    table = _power_table(m)
    phi = totient(m)
    out = [0] * phi
    for k, a in enumerate(acc):
        if a:
            row = table[k % m]
            if k % m < phi:
                out[k % m] += a
            else:
                for j, r in enumerate(row):
                    if r:
                        out[j] += a * r
    return out


class CycloScalar:
    """Exact element of the cyclotomic field Q(zeta_m)."""

    __slots__ = ("m", "num", "den")

    def __init__(self, m: int = 1, coeffs=(0,), den: int = 1):
        # coeffs multiply zeta_m^0, zeta_m^1, ... (any length, reduced mod Phi_m)
        if m < 1:
            raise ValueError("conductor must be positive")
        fr = [Fraction(c) for c in coeffs]
        d = 1
        for c in fr:
            d = _lcm(d, c.denominator)
        ints = [int(c * d) for c in fr]
        d *= den
        if m % 4 == 2:
            half = m // 2
            acc = [0] * half
            step = (half + 1) // 2
            for e, c in enumerate(ints):
                if c:
                    acc[(e * step) % half] += -c if e % 2 else c
            ints, m = acc, half
        self._set(m, _from_exponents(m, ints), d)

    def _set(self, m, num, den):
        if den < 0:
            num, den = [-c for c in num], -den
        g = den
        for c in num:
            if c:
                g = gcd(g, c)
                if g == 1:
                    break
        if g != 1:
            num = [c // g for c in num]
            den //= g
        if m > 1 and not any(num[1:]):
            m, num = 1, num[:1]
        self.m = m
        self.num = tuple(num)
        self.den = den

    @classmethod
    def _raw(cls, m, num, den):
        obj = cls.__new__(cls)
        obj._set(m, list(num), den)
        return obj

    # constructors -------------------------------------------------------
    @classmethod
    def root_of_unity(cls, m: int, k: int = 1) -> "CycloScalar":
        acc = [0] * m
        acc[k % m] = 1
        return cls(m, acc)

    @classmethod
    def rational(cls, q) -> "CycloScalar":
        q = Fraction(q)
        return cls._raw(1, [q.numerator], q.denominator)

    # inspection ---------------------------------------------------------
    @property
    def conductor(self) -> int:
        return self.m

    @property
    def coefficients(self) -> tuple:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_rational(self) -> bool:
        return self.m == 1

    def to_fraction(self) -> Fraction:
        if self.m != 1:
            raise ValueError("not a rational number")
        return Fraction(self.num[0], self.den)

    def lift(self, big: int) -> tuple:
        """Integer numerators in Q(zeta_big); the denominator is unchanged."""
        if big == self.m:
            return self.num
        if big % self.m:
            raise ValueError("conductor does not divide target")
        out = [0] * totient(big)
        for c, row in zip(self.num, _lift_table(self.m, big)):
            if c:
                for j, r in enumerate(row):
                    if r:
                        out[j] += c * r
        return tuple(out)

    def __bool__(self):
        return any(self.num)

    def __hash__(self):
        if self.m == 1:
            return hash(Fraction(self.num[0], self.den))
        # the trace divided by the degree does not depend on the ambient field
        tr = Fraction(0)
        for k, c in enumerate(self.num):
            if c:
                g = gcd(k, self.m)
                q = self.m // g
                tr += Fraction(c * mobius(q), totient(q))
        return hash(tr / self.den)

    def __eq__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if self.m == other.m:
            return self.den == other.den and self.num == other.num
        if self.m == 1 or other.m == 1:
            return False
        big = _norm_conductor(_lcm(self.m, other.m))
        return self.den == other.den and self.lift(big) == other.lift(big)

    # arithmetic ---------------------------------------------------------
    def _pair(self, other):
        if self.m == other.m:
            return self.m, self.num, other.num
        big = _norm_conductor(_lcm(self.m, other.m))
        return big, self.lift(big), other.lift(big)

    def __add__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        m, a, b = self._pair(other)
        da, db = self.den, other.den
        return CycloScalar._raw(m, [x * db + y * da for x, y in zip(a, b)], da * db)

    __radd__ = __add__

    def __neg__(self):
        return CycloScalar._raw(self.m, [-c for c in self.num], self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        den = self.den * other.den
        if self.m == 1:
            return CycloScalar._raw(other.m, [self.num[0] * c for c in other.num], den)
        if other.m == 1:
            return CycloScalar._raw(self.m, [other.num[0] * c for c in self.num], den)
        m, a, b = self._pair(other)
        acc = [0] * (2 * len(a))
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        acc[i + j] += x * y
        return CycloScalar._raw(m, _from_exponents(m, acc), den)

    __rmul__ = __mul__

    def inverse(self) -> "CycloScalar":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        if self.m == 1:
            return CycloScalar._raw(1, [self.den], self.num[0])
        # solve x * y = 1 with the multiplication matrix of x
        m, phi = self.m, len(self.num)
        cols = []
        for j in range(phi):
            acc = [0] * (phi + j)
            for i, c in enumerate(self.num):
                acc[i + j] = c
            cols.append(_from_exponents(m, acc))
        mat = [[Fraction(cols[j][i]) for j in range(phi)] + [Fraction(int(i == 0))]
               for i in range(phi)]
        for col in range(phi):
            piv = next(r for r in range(col, phi) if mat[r][col])
            mat[col], mat[piv] = mat[piv], mat[col]
            p = mat[col][col]
            mat[col] = [v / p for v in mat[col]]
            for r in range(phi):
                if r != col and mat[r][col]:
                    f = mat[r][col]
                    mat[r] = [v - f * w for v, w in zip(mat[r], mat[col])]
        sol = [mat[i][phi] * self.den for i in range(phi)]
        return CycloScalar(m, sol)

    def __truediv__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = CycloScalar._raw(1, [1], 1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "CycloScalar":
        m = self.m
        if m == 1:
            return self
        acc = [0] * m
        for k, c in enumerate(self.num):
            acc[(-k) % m] += c
        return CycloScalar._raw(m, _from_exponents(m, acc), self.den)

    # embeddings ---------------------------------------------------------
    def __complex__(self):
        w = cmath.exp(2j * cmath.pi / self.m)
        return sum(c * w ** k for k, c in enumerate(self.num)) / self.den

    def to_mpc(self):
        """High precision embedding zeta_m -> exp(2 pi i / m) at the current mpmath precision."""
        w = mpmath.expjpi(mpmath.mpf(2) / self.m)
        total = mpmath.mpc(0)
        for k, c in enumerate(self.num):
            if c:
                total += c * w ** k
        return total / self.den

    def __repr__(self):
        return f"CycloScalar({format_scalar(self)!r}, m={self.m})"

    def __str__(self):
        return format_scalar(self)


def _coerce_or_none(x):
    if isinstance(x, CycloScalar):
        return x
    if isinstance(x, int):
        return CycloScalar._raw(1, [x], 1)
    if isinstance(x, Fraction):
        return CycloScalar._raw(1, [x.numerator], x.denominator)
    return None


def coerce(x) -> CycloScalar:
    y = _coerce_or_none(x)
    if y is None:
        raise TypeError(f"cannot interpret {x!r} as an exact scalar")
    return y


def simplify(x):
    """Return an int or Fraction when x is rational, otherwise x itself."""
    if isinstance(x, CycloScalar):
        if x.m != 1:
            return x
        return x.num[0] if x.den == 1 else Fraction(x.num[0], x.den)
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def conj(x):
    if isinstance(x, CycloScalar):
        return simplify(x.conjugate())
    return x


def inv(x):
    if isinstance(x, CycloScalar):
        return simplify(x.inverse())
    if isinstance(x, int):
        return Fraction(1, x)
    return 1 / x


def conductor_of(x) -> int:
    return x.m if isinstance(x, CycloScalar) else 1


def zeta(m: int, k: int = 1):
    return simplify(CycloScalar.root_of_unity(m, k))


I = zeta(4)  # the imaginary unit


def to_complex(x) -> complex:
    return complex(x) if isinstance(x, CycloScalar) else complex(float(x))


def to_mpc(x):
    if isinstance(x, CycloScalar):
        return x.to_mpc()
    x = Fraction(x)
    return mpmath.mpc(mpmath.mpf(x.numerator) / x.denominator)


def format_scalar(x, var: str = "z", conductor: int | None = None) -> str:
    """Canonical text form: an integer polynomial in `var`, over a positive denominator.

    With `conductor` given the value is written in that field's power basis,
    otherwise in its own.
    """
    x = coerce(x)
    m = conductor or x.m
    num = x.lift(m) if m != x.m else x.num
    terms = []
    for k, c in enumerate(num):
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        if not terms:
            terms.append(("-" if c < 0 else "") + body)
        else:
            terms.append(("- " if c < 0 else "+ ") + body)
    poly = " ".join(terms) if terms else "0"
    if x.den == 1:
        return poly
    if len(terms) == 1 and not any(num[1:]):
        return f"{poly}/{x.den}"
    return f"({poly})/{x.den}"
