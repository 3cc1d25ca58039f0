"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are residues mod the N-th cyclotomic polynomial Phi_N, with rational
coefficients; since Phi_N is the minimal polynomial, representatives are
canonical and equality is coefficientwise.  Mixing conductors embeds both
operands in the lcm conductor via zeta_N = zeta_M^(M/N).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .qz import QZ


def _poly_trim(coeffs: list) -> tuple:
    end = len(coeffs)
    while end > 0 and coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[:end])


def _poly_mul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _poly_trim(out)


def _poly_divmod(num, den):
    """Exact polynomial division over Q (or over Z when it divides)."""
    num = list(num)
    q = [0] * max(0, len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(num) - len(den), -1, -1):
        coeff = Fraction(num[i + len(den) - 1], lead) if lead != 1 else num[i + len(den) - 1]
        if coeff == 0:
            continue
        q[i] = coeff
        for j, d in enumerate(den):
            num[i + j] -= coeff * d
    return _poly_trim(q), _poly_trim(num)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, low degree first.

    Computed by exact division of x^n - 1 by the Phi_d for proper divisors d.
    """
    if n < 1:
        raise ValueError("conductor must be positive")
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    poly = _poly_trim(num)
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, cyclotomic_polynomial(d))
            assert not rem
    assert all(Fraction(c).denominator == 1 for c in poly)
    return tuple(int(c) for c in poly)


def _reduce_mod_phi(coeffs, conductor: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_polynomial(conductor)
    deg = len(phi) - 1
    work = [Fraction(c) for c in coeffs]
    for i in range(len(work) - 1, deg - 1, -1):
        c = work[i]
        if c == 0:
            continue
        for j, p in enumerate(phi):
            work[i - deg + j] -= c * p
    out = work[:deg]
    out += [Fraction(0)] * (deg - len(out))
    return tuple(out)


@dataclass(frozen=True, eq=False)
class CyclotomicRational:
    """An element of Q(zeta_N): coefficients of 1, zeta, ..., zeta^(deg-1)."""

    conductor: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        deg = len(cyclotomic_polynomial(self.conductor)) - 1
        if len(self.coeffs) != deg:
            raise ValueError(f"expected {deg} coefficients for conductor {self.conductor}")

    @staticmethod
    def from_rational(value, conductor: int = 1) -> "CyclotomicRational":
        deg = len(cyclotomic_polynomial(conductor)) - 1
        coeffs = [Fraction(value)] + [Fraction(0)] * (deg - 1)
        return CyclotomicRational(conductor, tuple(coeffs))

    @staticmethod
    def zero(conductor: int = 1) -> "CyclotomicRational":
        return CyclotomicRational.from_rational(0, conductor)

    @staticmethod
    def one(conductor: int = 1) -> "CyclotomicRational":
        return CyclotomicRational.from_rational(1, conductor)

    @staticmethod
    def zeta(conductor: int) -> "CyclotomicRational":
        return CyclotomicRational(conductor, _reduce_mod_phi((0, 1), conductor))

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def with_conductor(self, conductor: int) -> "CyclotomicRational":
        """Embed into Q(zeta_conductor); requires self.conductor | conductor."""
        if conductor == self.conductor:
            return self
        if conductor % self.conductor:
            raise ValueError("can only embed into a multiple of the conductor")
        step = conductor // self.conductor
        expanded = [Fraction(0)] * ((len(self.coeffs) - 1) * step + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            expanded[i * step] = c
        return CyclotomicRational(conductor, _reduce_mod_phi(expanded, conductor))

    def _pair(self, other: "CyclotomicRational"):
        n = math.lcm(self.conductor, other.conductor)
        return self.with_conductor(n), other.with_conductor(n)

    def __add__(self, other: "CyclotomicRational") -> "CyclotomicRational":
        a, b = self._pair(other)
        return CyclotomicRational(a.conductor, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    def __sub__(self, other: "CyclotomicRational") -> "CyclotomicRational":
        a, b = self._pair(other)
        return CyclotomicRational(a.conductor, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __neg__(self) -> "CyclotomicRational":
        return CyclotomicRational(self.conductor, tuple(-x for x in self.coeffs))

    def __mul__(self, other) -> "CyclotomicRational":
        if isinstance(other, (int, Fraction)):
            return CyclotomicRational(self.conductor, tuple(c * other for c in self.coeffs))
        a, b = self._pair(other)
        prod = _poly_mul(a.coeffs, b.coeffs)
        return CyclotomicRational(a.conductor, _reduce_mod_phi(prod, a.conductor))

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CyclotomicRational):
            return NotImplemented
        if self.conductor == other.conductor:
            return self.coeffs == other.coeffs
        a, b = self._pair(other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        # equality crosses conductors, so only conductor-independent data may
        # enter the hash; nothing in this package keys dicts on field elements
        return hash(("CyclotomicRational", self.is_zero))

    def inverse(self) -> "CyclotomicRational":
        """Field inverse; raises ZeroDivisionError on zero."""
        if self.is_zero:
            raise ZeroDivisionError("zero has no inverse in Q(zeta_N)")
        phi = tuple(Fraction(c) for c in cyclotomic_polynomial(self.conductor))
        # extended Euclid: u * self + v * phi = gcd (a nonzero constant)
        r0, r1 = phi, _poly_trim(list(self.coeffs))
        u0, u1 = (), (Fraction(1),)
        while r1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            qu = _poly_mul(q, u1)
            new_u = [x - y for x, y in self._pad(u0, qu)]
            u0, u1 = u1, _poly_trim(new_u)
        assert len(r0) == 1  # Phi_N is irreducible over Q
        scale = Fraction(1) / r0[0]
        inv = tuple(c * scale for c in u0)
        return CyclotomicRational(self.conductor, _reduce_mod_phi(inv, self.conductor))

    @staticmethod
    def _pad(a, b):
        n = max(len(a), len(b))
        a = tuple(a) + (Fraction(0),) * (n - len(a))
        b = tuple(b) + (Fraction(0),) * (n - len(b))
        return zip(a, b)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*z{self.conductor}")
            else:
                parts.append(f"{c}*z{self.conductor}^{i}")
        return " + ".join(parts)


@lru_cache(maxsize=4096)
def root_of_unity(q: QZ) -> CyclotomicRational:
    """The additive value p/q as the multiplicative root zeta_q^p."""
    n = q.denominator
    deg = len(cyclotomic_polynomial(n)) - 1
    mono = [Fraction(0)] * (q.numerator + 1)
    mono[q.numerator] = Fraction(1)
    if q.numerator < deg:
        return CyclotomicRational(n, tuple(mono) + (Fraction(0),) * (deg - len(mono)))
    return CyclotomicRational(n, _reduce_mod_phi(mono, n))
