"""Exact representation theory of the automorphism group A x| S_n.

Everything here is exact: traces are integers computed in closed form,
characters and projector weights are Fractions, and all root-of-unity
arithmetic happens in Q(mu_m) via cyclotomic.CycElem.  No floating point.

Conventions.  A is stored as exponent vectors t (length n over Z/n, first
coordinate 0, sum 0 mod n) with respect to the canonical primitive n-th root
of unity; permutations are 0-based tuples sigma with composition
(s*t)(i) = s(t(i)) and the left action (sigma.t)_i = t_{sigma^{-1}(i)}.
The pair (u, v) attached to sigma in the stabilizer of a class a solves
a_{sigma(i)} = v*a_i + u*f_a for all i.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .chars import CharClass, dim_h_prim, enumerate_classes, invariants, units
from .cyclotomic import CycElem, cyclotomic_poly, euler_phi, exponent_sum
from .errors import CostCapError, InvalidInputError

# ---------------------------------------------------------------------------
# permutations

def perm_mul(s, t):
    return tuple(s[t[i]] for i in range(len(s)))


def perm_inv(s):
    out = [0] * len(s)
    for i, v in enumerate(s):
        out[v] = i
    return tuple(out)


def perm_sign(s):
    seen = [False] * len(s)
    sign = 1
    for i in range(len(s)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = s[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def perm_cycles(s):
    seen = [False] * len(s)
    out = []
    for i in range(len(s)):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = s[j]
        out.append(tuple(cyc))
    return out


def act_perm(sigma, t):
    """The left action (sigma . t)_i = t_{sigma^{-1}(i)}."""
    inv = perm_inv(sigma)
    return tuple(t[inv[i]] for i in range(len(t)))


@dataclass(frozen=True)
class GroupElement:
    """An element of A x| S_n: twist exponents mod the diagonal, and sigma."""

    n: int
    zeta: tuple[int, ...]
    sigma: tuple[int, ...]

    @classmethod
    def make(cls, n, zeta, sigma=None):
        if sigma is None:
            sigma = tuple(range(n))
        zeta = [z % n for z in zeta]
        if len(zeta) != n or len(sigma) != n:
            raise InvalidInputError("component length must equal n")
        if sum(zeta) % n != 0:
            raise InvalidInputError("twist exponents must sum to 0 mod n")
        shift = zeta[0]
        return cls(n, tuple((z - shift) % n for z in zeta), tuple(sigma))

    @classmethod
    def identity(cls, n):
        return cls(n, (0,) * n, tuple(range(n)))

    def __mul__(self, other):
        n = self.n
        moved = act_perm(self.sigma, other.zeta)
        return GroupElement.make(
            n, [self.zeta[i] + moved[i] for i in range(n)],
            perm_mul(self.sigma, other.sigma))

    def inverse(self):
        inv = perm_inv(self.sigma)
        moved = act_perm(inv, self.zeta)
        return GroupElement.make(self.n, [-m for m in moved], inv)

    def conjugate_by_perm(self, s):
        """s^{-1} g s for s in S_n."""
        s_inv = perm_inv(s)
        zeta = act_perm(s_inv, self.zeta)
        return GroupElement.make(self.n, zeta,
                                 perm_mul(s_inv, perm_mul(self.sigma, s)))


# ---------------------------------------------------------------------------
# closed-form traces on primitive middle cohomology

def hirzebruch_chi(k: int, d: int) -> int:
    """Euler characteristic of a smooth degree-d hypersurface in P^{k-1}."""
    if k < 1 or d < 1:
        raise InvalidInputError("need k >= 1 and d >= 1")
    num = (1 - d) ** k + (d - 1)
    if num % d:
        raise AssertionError("Hirzebruch divisibility failed")
    return (k - 1) + num // d


def trace_closed_form(n: int, g: GroupElement) -> int:
    """Trace of g on primitive middle cohomology, by the closed formulas.

    Covers sigma of uniform cycle type (n' cycles of length d, any twist)
    and the pure transposition with trivial twist; anything else has no
    closed form here and raises.
    """
    if g.n != n:
        raise InvalidInputError("group element size mismatch")
    cycles = perm_cycles(g.sigma)
    lengths = {len(c) for c in cycles}
    if len(lengths) == 1:
        d = lengths.pop()
        nprime = len(cycles)
        mus = [sum(g.zeta[i] for i in cyc) % n for cyc in cycles]
        counts = [0] * n
        for m in mus:
            counts[m] += 1
        total = sum((1 - n) ** counts[e] for e in range(0, n, d))
        if total % nprime:
            raise AssertionError("trace not divisible by n'")
        return (-1) ** n * total // nprime
    type_sorted = sorted(len(c) for c in cycles)
    if type_sorted == [1] * (n - 2) + [2] and all(z == 0 for z in g.zeta):
        delta = 1 if n % 2 == 0 else 0
        num = (1 - n) ** (n - 1) + (n - 1)
        if num % n:
            raise AssertionError("transposition trace not integral")
        return (-1) ** n * (num // n - delta)
    raise InvalidInputError("no closed form for mixed cycle type "
                            f"{type_sorted} with this twist")


# ---------------------------------------------------------------------------
# the abelian part: enumeration and Fourier decomposition

@functools.lru_cache(maxsize=None)
def a_matrix(n: int) -> np.ndarray:
    """All n^{n-2} twist vectors (first coordinate 0) as an int matrix."""
    rows = [c.rep for c in enumerate_classes(n)]
    return np.array(rows, dtype=np.int16)


def a_traces(n: int) -> np.ndarray:
    """trace_closed_form on every element of A, vectorized."""
    E = a_matrix(n)
    N = E.shape[0]
    powers = np.array([(1 - n) ** k for k in range(n + 1)], dtype=np.int64)
    total = np.zeros(N, dtype=np.int64)
    for v in range(n):
        total += powers[(E == v).sum(axis=1)]
    if np.any(total % n):
        raise AssertionError("trace not divisible by n")
    return ((-1) ** n) * total // n


def fourier_multiplicities(n: int, classes=None) -> dict[CharClass, int]:
    """Multiplicity of each character in primitive middle cohomology, via the
    exact Fourier sum m_a = (1/|A|) sum_g trace(g) conj(a(g)).

    `classes` restricts the computation (used for n=7, where only orbit
    representatives are checked exhaustively).
    """
    if n > 7:
        raise InvalidInputError("fourier_multiplicities supports n <= 7")
    E = a_matrix(n)
    traces = a_traces(n)
    N = E.shape[0]
    if classes is None:
        classes = enumerate_classes(n)
    reps = np.array([c.rep for c in classes], dtype=np.int64)
    from .cyclotomic import reduction_matrix
    red = np.array(reduction_matrix(n), dtype=np.int64)  # n x phi(n)
    out = {}
    chunk = 2048
    for lo in range(0, len(classes), chunk):
        block = reps[lo:lo + chunk]
        # exponent of conj(a(g)) is -<a, t> mod n
        expo = (-(block @ E.T)) % n
        S = np.zeros((block.shape[0], n), dtype=np.int64)
        for c in range(n):
            S[:, c] = ((expo == c) * traces).sum(axis=1)
        reduced = S @ red
        if np.any(reduced[:, 1:]):
            raise AssertionError("Fourier sum is not rational")
        vals = reduced[:, 0]
        if np.any(vals % N):
            raise AssertionError("Fourier sum is not an integer multiple of |A|")
        for i, cls in enumerate(classes[lo:lo + chunk]):
            out[cls] = int(vals[i] // N)
    return out


def lemma_sum_check(n: int, nprime: int, r: int, mus, cost_cap=10 ** 7):
    """Brute force vs closed form for the twisted exponential-sum lemma.

    lhs: sum of mu_1^{c_1}...mu_r^{c_r} over nonzero c_i with sum c_i in
    n'Z/nZ, evaluated exactly in Q(mu_n) (must come out a rational integer).
    rhs: ((-1)^r / n') * sum over zeta in mu_{n'} of (1-n)^{k(zeta)}.
    """
    if n % nprime:
        raise InvalidInputError("n' must divide n")
    if r < 1:
        raise InvalidInputError("r must be >= 1")
    if (n - 1) ** r > cost_cap:
        raise CostCapError("(n-1)^r", (n - 1) ** r, cost_cap)
    mus = [m % n for m in mus]
    if len(mus) != r:
        raise InvalidInputError("need r twist exponents")
    d = n // nprime
    counts = [0] * n
    for cs in itertools.product(range(1, n), repeat=r):
        if sum(cs) % nprime == 0:
            counts[sum(m * c for m, c in zip(mus, cs)) % n] += 1
    lhs_elem = exponent_sum(n, counts)
    lhs = lhs_elem.rational_value()
    if lhs.denominator != 1:
        raise AssertionError("lemma lhs not an integer")

    k = [0] * n
    for m in mus:
        k[m] += 1
    total = sum((1 - n) ** k[e] for e in range(0, n, d))
    if total % nprime:
        raise AssertionError("lemma rhs not integral")
    rhs = (-1) ** r * total // nprime
    return int(lhs), rhs


# ---------------------------------------------------------------------------
# stabilizer structure of a character class

def _level_sets(rep, n):
    out = {}
    for i, v in enumerate(rep):
        out.setdefault(v, []).append(i)
    return out


@dataclass(frozen=True)
class StabStructure:
    a: CharClass
    sprime_generators: tuple[tuple[int, ...], ...]
    sigma_a: tuple[int, ...]
    phi_image: tuple[tuple[int, int], ...]      # (u, v) pairs
    sigma_table: dict
    size_s_a: int


def u_v_of(a: CharClass, sigma) -> tuple[int, int]:
    """The unique (u mod n_a, v in (Z/n_a)^*) with a_{sigma(i)} = v a_i + u f_a."""
    inv = invariants(a)
    n, rep, f, n_a = a.n, a.rep, inv.f, inv.n_a
    for v in units(n_a) if n_a > 1 else [1]:
        for u in range(n_a):
            if all(rep[sigma[i]] == (v * rep[i] + u * f) % n for i in range(n)):
                return (u % n_a, v % n_a if n_a > 1 else 1)
    raise InvalidInputError("sigma does not stabilize the class mod multipliers")


def in_s_a(a: CharClass, sigma) -> bool:
    try:
        u_v_of(a, sigma)
        return True
    except InvalidInputError:
        return False


@functools.lru_cache(maxsize=None)
def s_a_members(a: CharClass) -> tuple[tuple[int, ...], ...]:
    """All of S_a by direct enumeration of S_n (n <= 7)."""
    if a.n > 7:
        raise CostCapError("n! enumeration", math.factorial(a.n), math.factorial(7))
    return tuple(s for s in itertools.permutations(range(a.n)) if in_s_a(a, s))


def stabilizer_structure(a: CharClass) -> StabStructure:
    inv = invariants(a)
    n, rep = a.n, a.rep
    levels = _level_sets(rep, n)

    gens = []
    for positions in levels.values():
        for i, j in zip(positions, positions[1:]):
            gens.append((i, j))

    # sigma_a: i_l(b) -> i_l(b + n'), ascending numbering per level set
    sigma = [None] * n
    for b, positions in levels.items():
        targets = levels[(b + inv.nprime) % n]
        if len(targets) != len(positions):
            raise AssertionError("level sets not translation-matched")
        for src, dst in zip(positions, targets):
            sigma[src] = dst
    sigma_a = tuple(sigma)
    cyc = perm_cycles(sigma_a)
    if sorted(len(c) for c in cyc) != [inv.d] * inv.nprime:
        raise AssertionError("sigma_a does not have n' cycles of length d")
    if any(rep[sigma_a[i]] != (rep[i] + inv.nprime) % n for i in range(n)):
        raise AssertionError("sigma_a does not shift the class by n'")

    # image of phi and the splitting table sigma_{u,v}
    image = []
    table = {}
    sorted_rep = tuple(sorted(rep))
    for v in (units(inv.n_a) if inv.n_a > 1 else [1]):
        for u in range(inv.n_a):
            moved = tuple(sorted((v * x + u * inv.f) % n for x in rep))
            if moved != sorted_rep:
                continue
            image.append((u, v))
            tau = [None] * n
            for b, positions in levels.items():
                tgt = levels[(v * b + u * inv.f) % n]
                for src, dst in zip(positions, tgt):
                    tau[src] = dst
            table[(u, v)] = tuple(tau)
    if len(image) != inv.d * len(inv.im_k):
        raise AssertionError("phi image size mismatch")
    # homomorphism law (u,v)(u',v') = (u + v u', v v')
    n_a = inv.n_a
    for (u, v) in image:
        for (u2, v2) in image:
            prod = ((u + v * u2) % n_a, (v * v2) % n_a if n_a > 1 else 1)
            if perm_mul(table[(u, v)], table[(u2, v2)]) != table[prod]:
                raise AssertionError("splitting table violates the semidirect law")

    size_s_a = len(s_a_members(a)) if a.n <= 7 else inv.size_s_a
    if size_s_a != inv.size_s_a:
        raise AssertionError("fixator enumeration disagrees with |S'_a| d |im k|")

    return StabStructure(a=a, sprime_generators=tuple(
        tuple(g) for g in gens), sigma_a=sigma_a,
        phi_image=tuple(sorted(image)), sigma_table=table, size_s_a=size_s_a)


# ---------------------------------------------------------------------------
# the rational representations M_{a,omega} and their induced characters

def mu_matrix(a: CharClass, omega_exp: int, g: GroupElement):
    """Matrix (rows of Fractions) of mu_{a,omega}(g) on the power basis of K_a.

    mu(zeta, sigma) = chi_a(zeta) * eps(sigma) * omega^{u_sigma} * theta_{v_sigma}
    with omega = x^{omega_exp} in K_a = Q(mu_{n_a}).
    """
    inv = invariants(a)
    n, n_a, f = a.n, inv.n_a, inv.f
    u, v = u_v_of(a, g.sigma)
    pairing = sum(ai * ti for ai, ti in zip(a.rep, g.zeta))
    if pairing % f:
        raise AssertionError("character pairing not divisible by f")
    s = ((pairing // f) + omega_exp * u) % n_a if n_a > 1 else 0
    eps = perm_sign(g.sigma)
    dim = euler_phi(n_a)
    cols = []
    for j in range(dim):
        col = CycElem.zeta_pow(n_a, (s + j * v) % n_a) * eps
        cols.append(col.coeffs)
    # rows[i][j]
    return [[cols[j][i] for j in range(dim)] for i in range(dim)]


def mat_mul(A, B):
    m, k, n2 = len(A), len(B), len(B[0])
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(n2)]
            for i in range(m)]


def mat_trace(A) -> Fraction:
    return sum(A[i][i] for i in range(len(A)))


@functools.lru_cache(maxsize=None)
def coset_reps(a: CharClass) -> tuple[tuple[int, ...], ...]:
    """Representatives of S_n / S_a (left cosets s S_a)."""
    members = set(s_a_members(a))
    reps = []
    covered = set()
    for s in itertools.permutations(range(a.n)):
        if s in covered:
            continue
        reps.append(s)
        for h in members:
            covered.add(perm_mul(s, h))
    return tuple(reps)


def xi_character(a: CharClass, omega_exp: int, g: GroupElement) -> int:
    """Induced character of W_{a,omega} = Ind(M_{a,omega}) at g, exact."""
    members = set(s_a_members(a))
    total = Fraction(0)
    for s in coset_reps(a):
        conj = g.conjugate_by_perm(s)
        if conj.sigma in members:
            total += mat_trace(mu_matrix(a, omega_exp, conj))
    if total.denominator != 1:
        raise AssertionError("induced character is not a rational integer")
    return int(total)


# ---------------------------------------------------------------------------
# symmetry classes and projector weights

def a_sym_key(n, t):
    """Conjugation + diagonal-shift invariant of an element of A."""
    return min(tuple(sorted((x + c) % n for x in t)) for c in range(n))


@functools.lru_cache(maxsize=None)
def a_class_index(n):
    """key -> (size, representative twist vector) over all of A.

    A is abelian, so conjugation acts through S_n only and the multiset-
    mod-shift key is a complete invariant.
    """
    out = {}
    for row in a_matrix(n):
        t = tuple(int(x) for x in row)
        key = a_sym_key(n, t)
        if key in out:
            out[key][0] += 1
        else:
            out[key] = [1, t]
    return {k: (v[0], v[1]) for k, v in out.items()}


def _g_generators(n):
    """A generating set of G: the A-basis vectors e_0 - e_i, a transposition
    and the n-cycle."""
    gens = []
    for i in range(1, n):
        vec = [0] * n
        vec[0], vec[i] = 1, n - 1
        gens.append(GroupElement.make(n, vec))
    tau = list(range(n))
    tau[0], tau[1] = 1, 0
    gens.append(GroupElement.make(n, [0] * n, tuple(tau)))
    gens.append(GroupElement.make(n, [0] * n,
                                  tuple(list(range(1, n)) + [0])))
    return gens


@functools.lru_cache(maxsize=None)
def _g_conjugacy(n):
    """Exact conjugacy classes of G by BFS over generator conjugations.

    The (cycle length, cycle twist-sum) multiset is NOT a complete invariant
    here: the zero-sum constraint on A leaves a residual within-cycle
    obstruction, so classes are computed, not guessed.
    """
    order = n ** (n - 2) * math.factorial(n)
    if order > 200_000:
        raise CostCapError("|G|", order, 200_000)
    gens = _g_generators(n)
    ginvs = [g.inverse() for g in gens]
    lookup = {}
    classes = {}
    for row in a_matrix(n):
        t = tuple(int(x) for x in row)
        for sigma in itertools.permutations(range(n)):
            start = GroupElement.make(n, t, sigma)
            sk = (start.zeta, start.sigma)
            if sk in lookup:
                continue
            orbit = {sk: start}
            frontier = [start]
            while frontier:
                nxt = []
                for x in frontier:
                    for gg, gi in zip(gens, ginvs):
                        y = gg * x * gi
                        yk = (y.zeta, y.sigma)
                        if yk not in orbit:
                            orbit[yk] = y
                            nxt.append(y)
                frontier = nxt
            key = min(orbit)
            rep = orbit[key]
            classes[key] = (len(orbit), rep)
            for yk in orbit:
                lookup[yk] = key
    return classes, lookup


def g_class_index(n):
    """key -> (size, representative GroupElement) over the conjugacy classes."""
    return _g_conjugacy(n)[0]


def g_class_key(n, g: GroupElement):
    return _g_conjugacy(n)[1][(g.zeta, g.sigma)]


@dataclass(frozen=True)
class ClassFunction:
    """Rational weights constant on symmetry classes, over A or all of G."""

    domain: str            # 'A' or 'G'
    n: int
    values: dict           # sym key -> Fraction
    label: str = ""

    def value_at(self, g: GroupElement) -> Fraction:
        if self.domain == "A":
            key = a_sym_key(self.n, g.zeta)
        else:
            key = g_class_key(self.n, g)
        return self.values.get(key, Fraction(0))


def orbit_members(n, orbit_rep: CharClass):
    key = orbit_rep.orbit_key()
    return [c for c in enumerate_classes(n) if c.orbit_key() == key]


def projector_weights(n, target, omega_exp=None) -> ClassFunction:
    """Isotypic projector weights.

    With `target` a CharClass and omega_exp None: the A-supported weights of
    the orbit projector, c(t) = (1/|A|) sum over the full orbit of conj
    character values (always rational).

    With omega_exp given: the full-G weights (lambda/|G|) xi_a(g^{-1}) of the
    finer (a, omega) projector, lambda = gamma_a/d_a.  Requires d_a > 1 or
    omega = 1.
    """
    if omega_exp is None:
        members = orbit_members(n, target)
        N = n ** (n - 2)
        values = {}
        for key, (size, t) in a_class_index(n).items():
            counts = [0] * n
            for cls in members:
                counts[(-sum(ai * ti for ai, ti in zip(cls.rep, t))) % n] += 1
            val = exponent_sum(n, counts).rational_value() / N
            values[key] = val
        return ClassFunction(domain="A", n=n, values=values,
                             label=f"orbit{list(target.rep)}")

    inv = invariants(target)
    if inv.d == 1 and omega_exp % inv.n_a != 0:
        raise InvalidInputError("d_a = 1 admits only the trivial omega")
    lam = Fraction(inv.exponent)  # dim_{D_a} W = gamma/d
    order = n ** (n - 2) * math.factorial(n)
    values = {}
    for key, (size, g) in g_class_index(n).items():
        values[key] = lam * xi_character(target, omega_exp, g.inverse()) / order
    return ClassFunction(domain="G", n=n, values=values,
                         label=f"omega{omega_exp}@{list(target.rep)}")


# ---------------------------------------------------------------------------
# structural verifications (regular representation, vanishing traces)

def fourier_trace_on_class(a: CharClass, sigma) -> Fraction:
    """(1/|A|) sum_{t in A} trace((t, sigma)) conj(a(t)): the trace of sigma
    on the a-isotypic component.  sigma must have uniform cycle type."""
    n = a.n
    N = n ** (n - 2)
    counts = [0] * n
    acc = [0] * n
    for row in a_matrix(n):
        t = tuple(int(x) for x in row)
        tr = trace_closed_form(n, GroupElement.make(n, t, sigma))
        acc[(-sum(ai * ti for ai, ti in zip(a.rep, t))) % n] += tr
    val = exponent_sum(n, acc).rational_value()
    return val / N


def verify_regular_structure(a: CharClass) -> dict:
    """Two structural identities for d_a > 1: the omega(eta) sums give d_a
    exactly on S'_a and 0 off it, and the Fourier trace of sigma_a^i on the
    a-component vanishes off S'_a (equals (-1)^{n-n'} m_a on it)."""
    inv = invariants(a)
    if inv.d <= 1:
        return {"applicable": False, "ok": True}
    st = stabilizer_structure(a)
    n_a, e, d = inv.n_a, inv.e, inv.d
    results = {"applicable": True, "omega_sums": {}, "traces": {}, "ok": True}
    power = tuple(range(a.n))
    for i in range(1, d + 1):
        power = perm_mul(st.sigma_a, power)
        u, v = u_v_of(a, power)
        if v != 1 % n_a or u % e:
            raise AssertionError("powers of sigma_a must have v=1, u in eZ")
        total = CycElem.zero(n_a)
        for l in range(d):
            total = total + CycElem.zeta_pow(n_a, (l * u) % n_a)
        in_sprime = (i % d == 0)
        expect = d if in_sprime else 0
        ok1 = total == CycElem.rational(n_a, expect)
        results["omega_sums"][i] = (int(expect), ok1)

        tr = fourier_trace_on_class(a, power)
        nprime_i = len(perm_cycles(power))
        expect_tr = Fraction((-1) ** (a.n - nprime_i) * inv.m) if in_sprime \
            else Fraction(0)
        ok2 = tr == expect_tr
        results["traces"][i] = (str(expect_tr), ok2)
        results["ok"] = results["ok"] and ok1 and ok2
    return results


def transposition_fixed_multiplicity_sum(n: int) -> tuple[int, int]:
    """(sum of m_a over classes fixed by a transposition, closed form)."""
    tau = tuple([1, 0] + list(range(2, n)))
    total = 0
    for c in enumerate_classes(n):
        if CharClass.from_vector(n, act_perm(tau, c.rep)) == c:
            total += invariants(c).m
    delta = 1 if n % 2 == 0 else 0
    num = (1 - n) ** (n - 1) + (n - 1)
    closed = (-1) ** (n - 1) * (num // n - delta)
    return total, closed
