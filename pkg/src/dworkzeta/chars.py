"""Character classes of the scaling group and their combinatorial invariants.

A-hat = {(a_1,...,a_n) in (Z/n)^n : sum a_i = 0} / diagonal.  Each class has a
unique representative with a_1 = 0 (the diagonal shift is fixed by the first
coordinate), which is the stored canonical form; there are exactly n^{n-2}
classes.  Orbits under the joint action of S_n (permutation) and (Z/n)^*
(multiplication) are represented by the sorted-then-shift-minimized vector,
which is stable and gives O(1) orbit equality.

For each orbit the full invariant bundle is computed: multiplicity m_a, the
shift period n'_a and its cofactor d_a, the difference-subgroup index f_a and
character order n_a, e_a = n'_a/f_a, the permutation count gamma_a, the
multiplier subgroup im_k <= (Z/n_a)^*, the endomorphism-field descriptor, and
the degree/exponent of the predicted zeta factor.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from itertools import combinations_with_replacement

from .cyclotomic import euler_phi
from .errors import InvalidInputError

N_RANGE = (3, 9)


def units(n: int) -> list[int]:
    if n == 1:
        return [0]  # the trivial group written additively mod 1
    return [k for k in range(1, n) if math.gcd(k, n) == 1]


def _validate_n(n):
    if not (N_RANGE[0] <= n <= N_RANGE[1]):
        raise InvalidInputError(f"n={n} outside supported range {N_RANGE}")


@dataclass(frozen=True)
class CharClass:
    """An element of A-hat in canonical form (first coordinate 0)."""

    n: int
    rep: tuple[int, ...]

    @classmethod
    def from_vector(cls, n, vec):
        vec = [v % n for v in vec]
        if len(vec) != n:
            raise InvalidInputError("vector length must equal n")
        if sum(vec) % n != 0:
            raise InvalidInputError("coordinates must sum to 0 mod n")
        shift = vec[0]
        return cls(n, tuple((v - shift) % n for v in vec))

    def multiset_key(self):
        """Canonical S_n x shift orbit representative: min_j sorted(a + j)."""
        n = self.n
        return min(tuple(sorted((v + j) % n for v in self.rep))
                   for j in range(n))

    def orbit_key(self):
        """Canonical representative under S_n, diagonal shifts and (Z/n)^*."""
        n = self.n
        return min(tuple(sorted((k * v + j) % n for v in self.rep))
                   for k in units(n) for j in range(n))

    def __str__(self):
        return "[" + ",".join(str(v) for v in self.rep) + "]"


def iter_classes(n):
    """All n^{n-2} canonical classes, lexicographic in the free coordinates."""
    _validate_n(n)

    def rec(prefix, total, remaining):
        if remaining == 0:
            yield CharClass(n, prefix + ((-total) % n,))
            return
        for v in range(n):
            yield from rec(prefix + (v,), total + v, remaining - 1)

    yield from rec((0,), 0, n - 2)


def enumerate_classes(n) -> list[CharClass]:
    return list(iter_classes(n))


@dataclass(frozen=True)
class OrbitInvariants:
    """The invariant bundle attached to a character class (orbit data)."""

    n: int
    m: int            # multiplicity = n - #distinct coordinates
    nprime: int       # least period of the multiset under diagonal shift
    d: int            # n / nprime
    f: int            # index of the difference subgroup
    n_a: int          # character order = n / f
    e: int            # nprime / f
    gamma: int        # number of distinct permutations of the vector
    mprime: int       # m / d
    im_k: tuple[int, ...]   # realizable multipliers, as residues mod n_a
    deg_q: int        # mprime * phi(n_a) / |im_k|
    exponent: int     # gamma / d
    d_a_label: str
    size_s_prime: int
    size_s_bar: int
    size_s_a: int
    excluded: bool

    def identities_hold(self) -> bool:
        ok = (self.n == self.nprime * self.d
              and self.n == self.e * self.f * self.d
              and self.n == self.n_a * self.f
              and self.nprime == self.e * self.f
              and self.n_a == self.e * self.d
              and self.m == self.d * self.mprime
              and self.gamma == self.d * self.exponent
              and self.deg_q * len(self.im_k) == self.mprime * euler_phi(self.n_a)
              and self.size_s_bar == self.size_s_prime * self.d
              and self.size_s_a == self.size_s_bar * len(self.im_k))
        return ok


def _multiplicities(rep):
    counts = {}
    for v in rep:
        counts[v] = counts.get(v, 0) + 1
    return counts


@functools.lru_cache(maxsize=None)
def invariants(a: CharClass) -> OrbitInvariants:
    n = a.n
    rep = a.rep
    sorted_rep = tuple(sorted(rep))
    counts = _multiplicities(rep)

    m = n - len(counts)
    nprime = next(j for j in range(1, n + 1)
                  if tuple(sorted((v + j) % n for v in rep)) == sorted_rep)
    d = n // nprime
    f = math.gcd(n, *rep) if any(rep) else n
    n_a = n // f
    if nprime % f:
        raise AssertionError("n' not divisible by f")
    e = nprime // f
    gamma = math.factorial(n)
    for c in counts.values():
        gamma //= math.factorial(c)

    im = set()
    for k in units(n):
        ka = tuple(sorted((k * v) % n for v in rep))
        if any(tuple(sorted((x + j) % n for x in ka)) == sorted_rep
               for j in range(n)):
            im.add(k % n_a if n_a > 1 else 0)
    im_k = tuple(sorted(im))

    if m % d:
        raise AssertionError("m not divisible by d")
    mprime = m // d
    num = mprime * euler_phi(n_a)
    if num % len(im_k):
        raise AssertionError("deg Q not integral")
    deg_q = num // len(im_k)
    if gamma % d:
        raise AssertionError("gamma not divisible by d")

    s_prime = 1
    for c in counts.values():
        s_prime *= math.factorial(c)

    return OrbitInvariants(
        n=n, m=m, nprime=nprime, d=d, f=f, n_a=n_a, e=e, gamma=gamma,
        mprime=mprime, im_k=im_k, deg_q=deg_q, exponent=gamma // d,
        d_a_label=field_label(n_a, im_k),
        size_s_prime=s_prime, size_s_bar=s_prime * d,
        size_s_a=s_prime * d * len(im_k),
        excluded=(m == 0))


def field_label(n_a: int, im_k) -> str:
    """Human label of the endomorphism field cut out by im_k inside Q(mu_{n_a})."""
    full = set(units(n_a))
    im = {(k % n_a) if n_a > 1 else 0 for k in im_k}
    if not im <= full or (1 % n_a if n_a > 1 else 0) not in im:
        raise InvalidInputError(f"im_k={sorted(im)} is not a subset of units mod {n_a}")
    for x in im:
        for y in im:
            if (x * y) % n_a not in im and n_a > 1:
                raise InvalidInputError(f"im_k={sorted(im)} is not a subgroup mod {n_a}")
    if im == full:
        return "Q"
    if im == {1}:
        return f"Q(mu_{n_a})"
    if n_a % 2 == 1 and _is_prime(n_a):
        squares = {(k * k) % n_a for k in full}
        if im == squares:
            disc = n_a if n_a % 4 == 1 else -n_a
            return f"Q(sqrt({disc}))"
    if im == {1, n_a - 1}:
        return f"Q(mu_{n_a})+"
    return f"({n_a}; " + ",".join(str(k) for k in sorted(im)) + ")"


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Orbit:
    rep: CharClass
    size: int
    inv: OrbitInvariants


def full_orbits(n) -> list[Orbit]:
    """Orbits of A-hat under S_n x (Z/n)^*, via multiset enumeration.

    Sizes are exact without touching all n^{n-2} classes: a shift-class of
    multisets carries gamma/d classes of A-hat, and an orbit contains
    (#multisets in orbit)/n' shift-classes, so size = #multisets * gamma / n.
    """
    _validate_n(n)
    ms_all = [ms for ms in combinations_with_replacement(range(n), n)
              if sum(ms) % n == 0]
    us = units(n)
    groups = {}
    for ms in ms_all:
        key = min(tuple(sorted((k * v + j) % n for v in ms))
                  for k in us for j in range(n))
        groups.setdefault(key, []).append(ms)

    orbits = []
    for key in sorted(groups):
        rep = CharClass.from_vector(n, key)
        inv = invariants(rep)
        num = len(groups[key]) * inv.gamma
        if num % n:
            raise AssertionError("orbit size not integral")
        orbits.append(Orbit(rep=rep, size=num // n, inv=inv))
    total = sum(o.size for o in orbits)
    if total != n ** (n - 2):
        raise AssertionError(f"orbit sizes sum to {total} != {n ** (n - 2)}")
    return orbits


def dim_h_prim(n: int) -> int:
    """((n-1)^n + (-1)^n (n-1)) / n, the middle primitive Betti number."""
    num = (n - 1) ** n + (-1) ** n * (n - 1)
    if num % n:
        raise AssertionError("dimension formula not integral")
    return num // n


def omega_label(d: int) -> str:
    if d == 1:
        return "1"
    if d == 2:
        return "+-1"
    return f"mu_{d}"


def predict_report(n) -> dict:
    """The predicted factorization table: one row per orbit, plus bookkeeping.

    Excluded orbits (multiplicity zero) are kept in the rows with a flag so
    the dimension bookkeeping stays visible; they contribute no factor.
    """
    rows = []
    total = 0
    for orbit in full_orbits(n):
        inv = orbit.inv
        contribution = inv.d * inv.deg_q * inv.exponent
        if not inv.excluded:
            total += contribution
        rows.append({
            "class": list(orbit.rep.rep),
            "m_a": inv.m,
            "deg_Q": inv.deg_q,
            "exponent": inv.exponent,
            "D_a": inv.d_a_label,
            "omega": omega_label(inv.d),
            "d_a": inv.d,
            "orbit_size": orbit.size,
            "dimension": contribution,
            "excluded": inv.excluded,
        })
    return {"n": n, "rows": rows, "total_dimension": total,
            "dim_H_prim": dim_h_prim(n)}
