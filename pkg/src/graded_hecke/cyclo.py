"""Exact arithmetic in cyclotomic fields Q(zeta_m).

A `CycNum` stores rational coordinates on the power basis
{zeta_m^k : 0 <= k < phi(m)}, always reduced modulo the m-th cyclotomic
polynomial.  The representation is canonical within a fixed conductor, so
equality and hashing are coordinate-wise.  Elements whose non-constant
coordinates vanish are demoted to conductor 1, which keeps plain rationals
canonical across conductors.

Arithmetic between different conductors coerces both operands into
Q(zeta_lcm).  A conductor cap guards against runaway lcm growth.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm

#: Largest conductor arithmetic is allowed to coerce into.
CONDUCTOR_CAP = 10_000


class ConductorCapError(ValueError):
    """Raised when coercion would exceed CONDUCTOR_CAP."""


def euler_phi(m: int) -> int:
    if m < 1:
        raise ValueError("conductor must be a positive integer")
    result = m
    p, n = 2, m
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def _divisors(m: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d != m // d:
                large.append(m // d)
        d += 1
    return small + large[::-1]


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # Exact division of integer polynomials, divisor monic.
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m (low degree first), monic of degree phi(m)."""
    if m < 1:
        raise ValueError("conductor must be a positive integer")
    if m == 1:
        return (-1, 1)
    poly = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in _divisors(m):
        if d < m:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_rows(m: int) -> tuple[tuple[int, ...], ...]:
    # x^k mod Phi_m for phi(m) <= k <= 2*phi(m)-2, as integer rows.
    phi = euler_phi(m)
    poly = cyclotomic_polynomial(m)
    rows = []
    cur = [-c for c in poly[:phi]]  # x^phi
    rows.append(tuple(cur))
    for _ in range(phi - 2):
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(phi):
                cur[i] += top * rows[0][i]
        rows.append(tuple(cur))
    return tuple(rows)


def _reduce_mod_phi(coeffs: list[Fraction], m: int) -> list[Fraction]:
    # General reduction by long division; used for coercion of high degrees.
    phi = euler_phi(m)
    poly = cyclotomic_polynomial(m)
    coeffs = list(coeffs)
    for k in range(len(coeffs) - 1, phi - 1, -1):
        c = coeffs[k]
        if c:
            coeffs[k] = Fraction(0)
            for i in range(phi):
                coeffs[k - phi + i] -= c * poly[i]
    del coeffs[phi:]
    while len(coeffs) < phi:
        coeffs.append(Fraction(0))
    return coeffs


def _poly_xgcd(a: list[Fraction], b: list[Fraction]):
    # Extended gcd in Q[x]: returns (g, u) with u*a = g mod b, g constant.
    def norm(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    def sub_scaled(p, q, c, shift):
        for i, qc in enumerate(q):
            j = i + shift
            while len(p) <= j:
                p.append(Fraction(0))
            p[j] -= c * qc
        return norm(p)

    r0, r1 = norm(list(a)), norm(list(b))
    u0, u1 = [Fraction(1)], []
    while r1:
        while len(r0) >= len(r1):
            c = r0[-1] / r1[-1]
            shift = len(r0) - len(r1)
            u0 = sub_scaled(u0, u1, c, shift)
            r0 = sub_scaled(r0, r1, c, shift)
            if not r0:
                break
        r0, r1, u0, u1 = r1, r0, u1, u0
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")
    return r0[0], u0


class CycNum:
    """An element of Q(zeta_m) in canonical power-basis form."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs: tuple[Fraction, ...]):
        # Internal constructor: coeffs must already be reduced, length phi(m).
        if conductor <= 2 or not any(coeffs[1:]):
            object.__setattr__(self, "conductor", 1)
            object.__setattr__(self, "coeffs", (coeffs[0] if coeffs else Fraction(0),))
        else:
            object.__setattr__(self, "conductor", conductor)
            object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):
        raise AttributeError("CycNum is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def rational(value, conductor: int = 1) -> "CycNum":
        q = Fraction(value)
        phi = euler_phi(conductor)
        return CycNum(conductor, (q,) + (Fraction(0),) * (phi - 1))

    @staticmethod
    def zero(conductor: int = 1) -> "CycNum":
        return CycNum.rational(0, conductor)

    @staticmethod
    def one(conductor: int = 1) -> "CycNum":
        return CycNum.rational(1, conductor)

    @staticmethod
    def zeta(m: int, power: int = 1) -> "CycNum":
        """zeta_m^power as an element of Q(zeta_m)."""
        if m < 1:
            raise ValueError("conductor must be a positive integer")
        power %= m
        coeffs = [Fraction(0)] * (power + 1)
        coeffs[power] = Fraction(1)
        return CycNum(m, tuple(_reduce_mod_phi(coeffs, m)))

    @staticmethod
    def from_coeffs(m: int, coeffs) -> "CycNum":
        """Element with the given power-basis coordinates (any length)."""
        vec = [Fraction(c) for c in coeffs]
        return CycNum(m, tuple(_reduce_mod_phi(vec, m)))

    # -- coercion -----------------------------------------------------

    def to_conductor(self, target: int) -> "CycNum":
        """Image under Q(zeta_m) -> Q(zeta_target); target must be a multiple of m."""
        if target == self.conductor:
            return self
        if target % self.conductor != 0:
            raise ValueError(f"{target} is not a multiple of conductor {self.conductor}")
        if target > CONDUCTOR_CAP:
            raise ConductorCapError(f"conductor {target} exceeds cap {CONDUCTOR_CAP}")
        step = target // self.conductor
        vec = [Fraction(0)] * ((len(self.coeffs) - 1) * step + 1)
        for k, c in enumerate(self.coeffs):
            vec[k * step] = c
        return CycNum(target, tuple(_reduce_mod_phi(vec, target)))

    def _pair(self, other: "CycNum"):
        if self.conductor == other.conductor:
            return self, other
        m = lcm(self.conductor, other.conductor)
        return self.to_conductor(m), other.to_conductor(m)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = as_cycnum(other)
        a, b = self._pair(other)
        return CycNum(a.conductor, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = as_cycnum(other)
        a, b = self._pair(other)
        return CycNum(a.conductor, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return as_cycnum(other).__sub__(self)

    def __neg__(self):
        return CycNum(self.conductor, tuple(-x for x in self.coeffs))

    def __mul__(self, other):
        other = as_cycnum(other)
        a, b = self._pair(other)
        n = len(a.coeffs)
        if n == 1:
            return CycNum(1, (a.coeffs[0] * b.coeffs[0],))
        conv = [Fraction(0)] * (2 * n - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        conv[i + j] += x * y
        rows = _reduction_rows(a.conductor)
        out = conv[:n]
        for k in range(n, 2 * n - 1):
            c = conv[k]
            if c:
                row = rows[k - n]
                for i in range(n):
                    if row[i]:
                        out[i] += c * row[i]
        return CycNum(a.conductor, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in Q(zeta_m)")
        if self.conductor == 1:
            return CycNum(1, (1 / self.coeffs[0],))
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.conductor)]
        g, u = _poly_xgcd(list(self.coeffs), phi)
        inv = [c / g for c in u]
        return CycNum(self.conductor, tuple(_reduce_mod_phi(inv, self.conductor)))

    def __truediv__(self, other):
        return self * as_cycnum(other).inverse()

    def __rtruediv__(self, other):
        return as_cycnum(other) * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CycNum.one(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- predicates and views ------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return self.conductor == 1

    def as_fraction(self) -> Fraction:
        if self.conductor != 1:
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, (CycNum, int, Fraction)):
            return NotImplemented
        a, b = self._pair(as_cycnum(other))
        return a.coeffs == b.coeffs

    def __hash__(self):
        return hash((self.conductor, self.coeffs))

    def to_strings(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def __repr__(self):
        if self.conductor == 1:
            return str(self.coeffs[0])
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                mono = f"z{self.conductor}" + (f"^{k}" if k > 1 else "")
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ") or "0"


def as_cycnum(value, conductor: int = 1) -> CycNum:
    """Coerce ints, Fractions and strings like '2/3' into CycNum."""
    if isinstance(value, CycNum):
        return value
    if isinstance(value, (int, Fraction, str)):
        return CycNum.rational(Fraction(value), conductor)
    raise TypeError(f"cannot interpret {value!r} as a cyclotomic number")
