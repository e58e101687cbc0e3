"""Exact arithmetic in cyclotomic fields Q(mu_m).

Elements are rational-coefficient vectors of length phi(m) on the power basis
1, x, ..., x^{phi(m)-1} modulo the m-th cyclotomic polynomial Phi_m.  Phi_m is
computed exactly by recursive division of x^m - 1, so no factorization oracle
is involved.  Everything is fractions.Fraction; there is no floating point
anywhere in this module.
"""

from __future__ import annotations

import functools
from fractions import Fraction

from .errors import InvalidInputError


def euler_phi(m: int) -> int:
    out = m
    d = 2
    mm = m
    while d * d <= mm:
        if mm % d == 0:
            out -= out // d
            while mm % d == 0:
                mm //= d
        d += 1
    if mm > 1:
        out -= out // mm
    return out


def _intpoly_divexact(num, den):
    """Exact division of integer polynomials (den monic), constant term first."""
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        out[i - dd] = c
        if c:
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    if any(num[:dd]):
        raise AssertionError("division not exact")
    return out


@functools.lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, constant term first.

    >>> cyclotomic_poly(1)
    (-1, 1)
    >>> cyclotomic_poly(6)
    (1, -1, 1)
    """
    if m < 1:
        raise InvalidInputError("m must be >= 1")
    num = [0] * (m + 1)
    num[0], num[m] = -1, 1  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            num = _intpoly_divexact(num, cyclotomic_poly(d))
    return tuple(num)


def _reduce_mod_phi(coeffs, m):
    """Reduce a coefficient list (any length) mod Phi_m; returns length-phi(m) list."""
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    work = list(coeffs)
    if len(work) < deg:
        work += [0] * (deg - len(work))
    for i in range(len(work) - 1, deg - 1, -1):
        c = work[i]
        if c:
            work[i] = 0
            for j in range(deg):
                work[i - deg + j] -= c * phi[j]
    return work[:deg]


class CycElem:
    """An element of Q(mu_m) with exact Fraction coefficients."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m, coeffs):
        phi_deg = len(cyclotomic_poly(m)) - 1
        coeffs = list(coeffs)
        if len(coeffs) > phi_deg:
            coeffs = _reduce_mod_phi(coeffs, m)
        coeffs += [0] * (phi_deg - len(coeffs))
        self.m = m
        self.coeffs = tuple(Fraction(c) for c in coeffs)

    @classmethod
    def zero(cls, m):
        return cls(m, [])

    @classmethod
    def one(cls, m):
        return cls(m, [1])

    @classmethod
    def rational(cls, m, value):
        return cls(m, [Fraction(value)])

    @classmethod
    def zeta_pow(cls, m, k):
        """x^k mod Phi_m (the canonical primitive m-th root to the k)."""
        k %= m
        c = [0] * (k + 1)
        c[k] = 1
        return cls(m, c)

    def __add__(self, other):
        other = self._coerce(other)
        return CycElem(self.m, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        other = self._coerce(other)
        return CycElem(self.m, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return CycElem(self.m, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycElem(self.m, [a * other for a in self.coeffs])
        other = self._coerce(other)
        n1, n2 = len(self.coeffs), len(other.coeffs)
        prod = [Fraction(0)] * (n1 + n2 - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        return CycElem(self.m, prod)

    __radd__ = __add__
    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise InvalidInputError("negative powers not supported")
        result = CycElem.one(self.m)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return CycElem.rational(self.m, other)
        if not isinstance(other, CycElem) or other.m != self.m:
            raise InvalidInputError("mixed conductors")
        return other

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycElem.rational(self.m, other)
        return isinstance(other, CycElem) and self.m == other.m \
            and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.m, self.coeffs))

    def is_rational(self):
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise InvalidInputError(f"not rational: {self}")
        return self.coeffs[0]

    def galois_apply(self, v):
        """The automorphism x -> x^v (v must be a unit mod m)."""
        from math import gcd
        if gcd(v, self.m) != 1:
            raise InvalidInputError(f"{v} is not a unit mod {self.m}")
        out = [Fraction(0)] * self.m
        for i, c in enumerate(self.coeffs):
            if c:
                out[(i * v) % self.m] += c
        return CycElem(self.m, out)

    def __repr__(self):
        return f"CycElem(m={self.m}, {list(self.coeffs)})"


def exponent_sum(m, counts) -> CycElem:
    """sum_k counts[k] * x^k in Q(mu_m), for an integer vector indexed by Z/m.

    This is the workhorse for Fourier sums: bucket integer weights by
    root-of-unity exponent, then reduce once.
    """
    if len(counts) != m:
        raise InvalidInputError("counts must have length m")
    return CycElem(m, list(counts))


def reduction_matrix(m):
    """Integer matrix R with x^c mod Phi_m = sum_j R[c][j] x^j, c in [0, m)."""
    deg = len(cyclotomic_poly(m)) - 1
    rows = []
    for c in range(m):
        vec = [0] * (c + 1)
        vec[c] = 1
        red = _reduce_mod_phi(vec, m)
        rows.append([int(x) for x in red])
    assert all(len(r) == deg for r in rows)
    return rows
