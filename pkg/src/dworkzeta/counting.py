"""Point counts of Dwork hypersurfaces and Frobenius-twisted fixed points.

The fixed-point condition for Frob^r composed with g = (zeta, sigma) is
x_j^Q = zeta_j * x_{sigma(j)} on the affine cone (Q = q^r); the projective
count is (#affine - 1)/(Q - 1).  Coordinates along a sigma-cycle of length d
collapse to one seed whose n-th power lives in F_{Q^d}, leaving a twisted
Dwork-type equation

    sum_O Tr_{F_{Q^d}/F_Q}( zhat_O u_O^n )  =  C * prod_O Norm(u_O)

with all constants in F_Q, which is counted by last-variable elimination
through a precomputed root-count table.  The constants zhat_O = h^{m_O}
(m_O the twist sum along the cycle) and the scalar C = n*psi*(prod nu_O)*
(prod rho_O) come out of pure dlog bookkeeping; rho needs a virtual big
field, handled as integer arithmetic on dlogs only (no tables).

An independent brute-force oracle (polynomial-basis arithmetic, no dlog
tables, direct propagation of the fixed-point relations) guards the whole
reduction; `fixed_count_general(..., check_oracle=True)` hard-fails on any
mismatch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .chars import dim_h_prim
from .errors import (CheckFailureError, CostCapError, InvalidInputError,
                     get_cost_cap)
from .ffield import FieldTable, build_field, is_prime
from .reptheory import (ClassFunction, GroupElement, a_class_index,
                        g_class_index, perm_cycles)

_ROOT_TABLE_MAX_Q = 4096
_count_cache: dict = {}


def clear_cache():
    _count_cache.clear()


@dataclass(frozen=True)
class DworkInstance:
    """Parameters (n, q, psi) of a smooth Dwork hypersurface over F_q."""

    n: int
    q: int
    psi: int

    def __post_init__(self):
        n, q, psi = self.n, self.q, self.psi
        if n < 3:
            raise InvalidInputError("n must be >= 3")
        if not is_prime(q):
            raise InvalidInputError(f"q={q} must be prime")
        if q % n != 1:
            raise InvalidInputError(f"q={q} must be 1 mod n={n}")
        if q == 2 or n % q == 0:
            raise InvalidInputError("characteristic must be odd and prime to n")
        if psi % q == 0:
            raise InvalidInputError("psi must be nonzero")
        if pow(psi, n, q) == 1:
            raise InvalidInputError(f"psi^n = 1: the hypersurface is singular")

    def field(self, r) -> FieldTable:
        return build_field(self.q, r)


# ---------------------------------------------------------------------------
# root-count table and last-variable elimination

class RootCountTable:
    """R[b][s] = #{x in F : x^n - b x + s = 0}, built once per (field, n)."""

    def __init__(self, F: FieldTable, npow: int):
        if F.q > _ROOT_TABLE_MAX_Q:
            raise CostCapError("root table field size", F.q, _ROOT_TABLE_MAX_Q)
        Q = F.q
        E = np.arange(Q, dtype=np.int64)
        xn = F.vec_pow(E, npow)
        neg_xn = _vec_neg(F, xn)
        table = np.zeros((Q, Q), dtype=np.int32)
        for b_enc in range(Q):
            s = F.vec_add(F.vec_scale(E, b_enc), neg_xn)  # s = b*x - x^n
            table[b_enc] = np.bincount(s, minlength=Q)
        self.field = F
        self.npow = npow
        self.table = table
        self.flat = table.reshape(-1)


def _vec_neg(F, A):
    p = F.p
    if F.r == 1:
        return (-A) % p
    out = np.zeros_like(A)
    for pw in [p ** i for i in range(F.r)]:
        out += ((-(A // pw)) % p) * pw
    return out


_root_tables: dict = {}


def root_table(F, npow) -> RootCountTable:
    key = (F.p, F.r, npow)
    if key not in _root_tables:
        _root_tables[key] = RootCountTable(F, npow)
    return _root_tables[key]


def _state_init(F, add_enc=0):
    """Delta distribution at (sum = add, product = 1) on the Q x Q state space."""
    T = np.zeros((F.q, F.q), dtype=np.int64)
    T[add_enc, 1] = 1
    return T


def _fold_variable(F, T, npow, beta_enc):
    """Fold one plain variable y: state (s, p) -> (s + beta y^npow, p y)."""
    Q = F.q
    E = np.arange(Q, dtype=np.int64)
    adds = F.vec_scale(F.vec_pow(E, npow), beta_enc)
    out = np.zeros_like(T)
    out[:, 0] = T.sum(axis=1)        # y = 0: adds beta*0 = 0, kills the product
    for y in range(1, Q):
        s_map = F.vec_add(E, int(adds[y]))
        p_map = F.vec_scale(E, y)
        out[np.ix_(s_map, p_map)] += T
    return out


def _fold_state(F, T, dist):
    """Fold a (sum contribution, product contribution) distribution into T."""
    Q = F.q
    E = np.arange(Q, dtype=np.int64)
    out = np.zeros_like(T)
    for a_enc, b_enc in np.transpose(np.nonzero(dist)):
        cnt = int(dist[a_enc, b_enc])
        s_map = F.vec_add(E, int(a_enc))
        if b_enc == 0:
            out[s_map, 0] += cnt * T.sum(axis=1)
        else:
            p_map = F.vec_scale(E, int(b_enc))
            out[np.ix_(s_map, p_map)] += cnt * T
    return out


def _contract_last(F, T, npow, beta_enc, scale_enc):
    """Close the count with the final variable through the root-count table:
    sum_{s,p} T[s,p] * #{y : beta y^npow + s = scale p y}."""
    Q = F.q
    rt = root_table(F, npow).table
    E = np.arange(Q, dtype=np.int64)
    inv = F.enc_inv(beta_enc)
    s_idx = F.vec_scale(E, inv)
    b_idx = F.vec_scale(F.vec_scale(E, scale_enc), inv)
    M = rt[b_idx][:, s_idx]          # M[p, s] = #roots for state (s, p)
    return int((T.T * M).sum())


def _contract_none(F, T, scale_enc):
    """No variable left: count states with s = scale * p exactly."""
    Q = F.q
    E = np.arange(Q, dtype=np.int64)
    s_req = F.vec_scale(E, scale_enc)      # over p
    return int(T[s_req, E].sum())


def count_affine(F, npow, betas, scale_enc, add_enc=0, cost_cap=None):
    """#{y in F^k : sum_i betas[i] y_i^npow + add = scale * prod_i y_i}.

    State-space convolution over (partial sum, partial product) with the last
    variable eliminated through the root-count table; cost O(k Q^3).
    """
    k = len(betas)
    Q = F.q
    if k == 0:
        return 1 if add_enc == scale_enc else 0
    if any(b == 0 for b in betas):
        raise InvalidInputError("beta coefficients must be nonzero")
    cap = get_cost_cap(cost_cap)
    if k * Q ** 3 > cap:
        raise CostCapError("state fold cost k*Q^3", k * Q ** 3, cap)
    T = _state_init(F, add_enc)
    for b in betas[:-1]:
        T = _fold_variable(F, T, npow, b)
    return _contract_last(F, T, npow, betas[-1], scale_enc)


# ---------------------------------------------------------------------------
# twisted counts for A-elements

def _normalize_twists(n, t, unit):
    """Rewrite twist exponents relative to the alternate generator g^unit."""
    if unit == 1:
        return [x % n for x in t]
    uinv = pow(unit, -1, n)
    return [(x * uinv) % n for x in t]


def fixed_count_A(inst: DworkInstance, t, r: int, generator_unit: int = 1,
                  cost_cap=None) -> int:
    """#Fix(Frob^r o g) for g in A given by twist exponents t (sum 0 mod n).

    Reduction: with h a generator of F_{q^r}^*, beta_i = h^{t_i} and
    c = n psi h^{(sum t_i)/n}, the count is #{y != 0 : sum beta_i y_i^n
    = c prod y_i} / (q^r - 1).
    """
    n = inst.n
    t = list(t)
    if len(t) != n or sum(t) % n:
        raise InvalidInputError("twist vector must have length n and sum 0 mod n")
    F = inst.field(r)
    Q = F.q
    if math.gcd(generator_unit, Q - 1) != 1:
        raise InvalidInputError("generator_unit must be a unit mod Q-1")
    tt = _normalize_twists(n, t, generator_unit)
    key = ("A", inst, r, generator_unit, tuple(tt))
    if key in _count_cache:
        return _count_cache[key]

    u = generator_unit
    betas = [int(F.exp[(u * x) % (Q - 1)]) for x in tt]
    npsi = (inst.n * inst.psi) % inst.q
    c_enc = F.enc_mul(npsi % F.p, int(F.exp[(u * (sum(tt) // n)) % (Q - 1)]))
    affine = count_affine(F, n, betas, c_enc, 0, cost_cap=cost_cap)
    if (affine - 1) % (Q - 1):
        raise AssertionError("projective quotient is not exact")
    fix = (affine - 1) // (Q - 1)
    _assert_weil(inst, r, fix)
    _count_cache[key] = fix
    return fix


def count_points(inst: DworkInstance, r: int, cost_cap=None) -> int:
    """Exact number of projective points of the hypersurface over F_{q^r}."""
    return fixed_count_A(inst, [0] * inst.n, r, cost_cap=cost_cap)


def t_trace(inst: DworkInstance, fix: int, r: int) -> int:
    """(-1)^n (Fix - sum_{j<=n-2} q^{rj}): trace on primitive cohomology."""
    hyper = sum(inst.q ** (r * j) for j in range(inst.n - 1))
    return (-1) ** inst.n * (fix - hyper)


def _assert_weil(inst, r, fix):
    tr = t_trace(inst, fix, r)
    dim = dim_h_prim(inst.n)
    if tr * tr > dim * dim * inst.q ** (r * (inst.n - 2)):
        raise CheckFailureError(
            f"Weil bound violated: |{tr}| > {dim} q^{{{r}({inst.n}-2)/2}}")


# ---------------------------------------------------------------------------
# general twisted counts (arbitrary permutation part)

def _to_subfield_vec(F_big, F_small, A):
    """Convert encodings of subfield elements of F_big to F_small encodings."""
    Mp = (F_big.q - 1) // (F_small.q - 1)
    out = np.zeros_like(A)
    nz = A != 0
    dl = F_big.log[A[nz]]
    if np.any(dl % Mp):
        raise AssertionError("element not in subfield")
    out[nz] = F_small.exp[(dl // Mp) % (F_small.q - 1)]
    return out


def _cycle_distribution(inst, r, d, m_O, cost_cap=None):
    """Joint counts of (Tr(zhat u^n), Norm(u)) over u in F_{Q^d}, as a dense
    Q x Q int64 table of F_Q-encodings."""
    n = inst.n
    F = inst.field(r)
    FD = inst.field(r * d)
    Q, QD = F.q, FD.q
    cap = get_cost_cap(cost_cap)
    if QD > cap or QD > (1 << 26):
        raise CostCapError("cycle field size", QD, min(cap, 1 << 26))
    qm1 = QD - 1
    j = np.arange(qm1, dtype=np.int64)
    dlog_z = (m_O + n * j) % qm1        # zhat = h_d^{m_O}, z = zhat * u^n
    tr = np.zeros(qm1, dtype=np.int64)
    for k in range(d):
        tr = FD.vec_add(tr, FD.exp[(dlog_z * (Q ** k)) % qm1])
    A_small = _to_subfield_vec(FD, F, tr)
    B_small = F.exp[j % (Q - 1)]        # Norm(u) has F_Q-dlog = j mod Q-1
    table = np.zeros(Q * Q, dtype=np.int64)
    np.add.at(table, A_small * Q + B_small, 1)
    table[0] += 1                       # u = 0 contributes (0, 0)
    return table.reshape(Q, Q)


def fixed_count_general(inst: DworkInstance, g: GroupElement, r: int,
                        check_oracle: bool = False, cost_cap=None) -> int:
    """#Fix(Frob^r o g) for any g in G, by per-cycle reduction.

    With check_oracle=True the independent brute-force count is run too and
    any disagreement raises CheckFailureError.
    """
    n = inst.n
    if g.n != n:
        raise InvalidInputError("group element size mismatch")
    cycles = perm_cycles(g.sigma)
    if all(len(c) == 1 for c in cycles):
        result = fixed_count_A(inst, g.zeta, r, cost_cap=cost_cap)
        if check_oracle:
            _check_against_oracle(inst, g, r, result)
        return result

    key = ("G", inst, r, g.zeta, g.sigma)
    if key in _count_cache:
        result = _count_cache[key]
        if check_oracle:
            _check_against_oracle(inst, g, r, result)
        return result

    F = inst.field(r)
    Q = F.q
    fixed_ts = []
    big = []  # (d, m_O)
    nu_exp = 0
    for cyc in cycles:
        d = len(cyc)
        m_O = sum(g.zeta[i] for i in cyc) % n
        if d == 1:
            fixed_ts.append(m_O)
        else:
            big.append((d, m_O))
            # nu_O = prod_{l<d-1} zeta_{sigma^l}^{-(d-1-l)}
            j = cyc[0]
            for l in range(d):
                nu_exp -= (d - 1 - l) * g.zeta[j]
                j = g.sigma[j]
    nu_exp %= n

    # rho bookkeeping in the virtual field F_{Q^B}, B = n * lcm(cycle lengths)
    L = math.lcm(*[d for d, _ in big]) if big else 1
    B = n * L
    Lam = Q ** B - 1
    rho_sum = 0
    for d, m_O in big + [(1, m) for m in fixed_ts]:
        Md = Lam // (Q ** d - 1)
        if (Md * m_O) % n:
            raise AssertionError("virtual dlog of the seed is not integral")
        x0 = Md * m_O // n
        rho_sum = (rho_sum + x0 * ((Q ** d - 1) // (Q - 1))) % Lam
    M1 = Lam // (Q - 1)
    if rho_sum % M1:
        raise AssertionError("rho product does not descend to F_Q")
    rho_enc = int(F.exp[(rho_sum // M1) % (Q - 1)])

    npsi = (n * inst.psi) % inst.q
    nu_enc = int(F.exp[((Q - 1) // n * nu_exp) % (Q - 1)])
    C = F.enc_mul(F.enc_mul(npsi % F.p, nu_enc), rho_enc)

    T = _state_init(F)
    for d, m_O in big:
        tab = _cycle_distribution(inst, r, d, m_O, cost_cap=cost_cap)
        T = _fold_state(F, T, tab)
    betas = [int(F.exp[m]) for m in fixed_ts]
    for b in betas[:-1]:
        T = _fold_variable(F, T, n, b)
    if betas:
        affine = _contract_last(F, T, n, betas[-1], C)
    else:
        affine = _contract_none(F, T, C)

    if (affine - 1) % (Q - 1):
        raise AssertionError("projective quotient is not exact")
    fix = (affine - 1) // (Q - 1)
    _assert_weil(inst, r, fix)
    _count_cache[key] = fix
    if check_oracle:
        _check_against_oracle(inst, g, r, fix)
    return fix


def _check_against_oracle(inst, g, r, claimed):
    got = oracle_fixed_count(inst, g, r)
    if got != claimed:
        raise CheckFailureError(
            f"reduction/oracle mismatch for g={g}, r={r}: {claimed} vs {got}")


# ---------------------------------------------------------------------------
# independent brute-force oracle (polynomial-basis arithmetic, no dlog tables)

class _PolyFq:
    """Minimal F_{q^deg} on the polynomial basis; used only by the oracle."""

    def __init__(self, q, deg):
        self.q = q
        self.deg = deg
        self.mod = self._find_irreducible()

    def _find_irreducible(self):
        import itertools
        q, deg = self.q, self.deg
        if deg == 1:
            return (0, 1)
        # lex order by (c_0,...,c_{deg-1}); c_0 = 0 is reducible, skip the block
        for c0 in range(1, q):
            for rest in itertools.product(range(q), repeat=deg - 1):
                f = (c0,) + rest + (1,)
                if self._irreducible(f):
                    return f
        raise AssertionError("no irreducible found")

    def _irreducible(self, f):
        q = self.q
        deg = len(f) - 1
        x = (0, 1)
        if self._sub(self._powmod(x, q ** deg, f), x) != ():
            return False
        for ell in _distinct_primes(deg):
            diff = self._sub(self._powmod(x, q ** (deg // ell), f), x)
            if len(self._gcd(diff, f)) - 1 != 0:
                return False
        return True

    # tuple-based helpers (constant term first, trimmed)
    def _trim(self, a):
        a = list(a)
        while a and a[-1] == 0:
            a.pop()
        return tuple(a)

    def _sub(self, a, b):
        m = max(len(a), len(b))
        return self._trim([((a[i] if i < len(a) else 0) -
                            (b[i] if i < len(b) else 0)) % self.q
                           for i in range(m)])

    def add(self, a, b):
        m = max(len(a), len(b))
        return self._trim([((a[i] if i < len(a) else 0) +
                            (b[i] if i < len(b) else 0)) % self.q
                           for i in range(m)])

    def mul(self, a, b, mod=None):
        if not a or not b:
            return ()
        q = self.q
        res = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    res[i + j] = (res[i + j] + ai * bj) % q
        return self._rem(res, mod or self.mod)

    def _rem(self, a, mod):
        q = self.q
        a = list(a)
        dm = len(mod) - 1
        for i in range(len(a) - 1, dm - 1, -1):
            c = a[i]
            if c:
                a[i] = 0
                for j in range(dm):
                    a[i - dm + j] = (a[i - dm + j] - c * mod[j]) % q
        return self._trim(a[:dm] if len(a) > dm else a)

    def _powmod(self, a, e, mod):
        result = (1,)
        base = self._rem(a, mod)
        while e:
            if e & 1:
                result = self.mul(result, base, mod)
            base = self.mul(base, base, mod)
            e >>= 1
        return result

    def pow(self, a, e):
        if e == 0:
            return (1,)
        if not a:
            return ()
        return self._powmod(a, e, self.mod)

    def _gcd(self, a, b):
        q = self.q
        a, b = self._trim(a), self._trim(b)
        while b:
            inv = pow(b[-1], q - 2, q) if q > 2 else b[-1]
            bb = tuple((c * inv) % q for c in b)
            a = self._rem(list(a), tuple(list(bb)))
            a, b = b, self._trim(a)
        return a

    def const(self, c):
        c %= self.q
        return (c,) if c else ()

    def generator(self):
        """Least-encoded primitive element; factorization via sympy."""
        from sympy import factorint
        order = self.q ** self.deg - 1
        primes = list(factorint(order))
        for idx in range(1, self.q ** self.deg):
            coeffs = []
            t = idx
            for _ in range(self.deg):
                coeffs.append(t % self.q)
                t //= self.q
            cand = self._trim(coeffs)
            if all(self.pow(cand, order // ell) != (1,) for ell in primes):
                return cand
        raise AssertionError("no generator found")


def _distinct_primes(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def oracle_fixed_count(inst: DworkInstance, g: GroupElement, r: int,
                       cost_cap=None) -> int:
    """Independent #Fix(Frob^r o g): direct enumeration, one seed per cycle.

    Seeds live on the coset s^{Q^d - 1} = mu_O inside F_{q^{r d m}} (m the
    order of mu_O); coordinates are propagated by the fixed-point relation
    and the defining equation is evaluated literally in a polynomial-basis
    field.  No dlog tables or root-count elimination are involved.
    """
    n, q = inst.n, inst.q
    F1 = build_field(q, 1)
    Q = q ** r
    cycles = perm_cycles(g.sigma)
    cap = get_cost_cap(cost_cap)
    combos = 1
    for cyc in cycles:
        combos *= Q ** len(cyc)
    if combos > min(cap, 10 ** 7):
        raise CostCapError("oracle combos Q^n", combos, min(cap, 10 ** 7))

    # the twist values as elements of F_q (integers), from the canonical root
    omega_q = pow(F1.g, (q - 1) // n, q)
    zeta_vals = [pow(omega_q, x, q) for x in g.zeta]

    deg = r
    for cyc in cycles:
        m_O = sum(g.zeta[i] for i in cyc) % n
        m_ord = n // math.gcd(n, m_O)
        deg = math.lcm(deg, r * len(cyc) * m_ord)
    K = _PolyFq(q, deg)
    gen = K.generator()
    order = q ** deg - 1

    # n-th roots of unity in K are constants; index them by value so that
    # mu_O is located without assuming anything about gen's normalization
    root_dlog = {}
    w_n = K.pow(gen, order // n)
    cur = (1,)
    for jj in range(n):
        root_dlog[cur] = jj
        cur = K.mul(cur, w_n)

    per_cycle = []
    for cyc in cycles:
        d = len(cyc)
        mu_val = 1
        for i in cyc:
            mu_val = (mu_val * zeta_vals[i]) % q
        target = (order // n) * root_dlog[K.const(mu_val)]  # dlog of mu_O in K
        step_mod = Q ** d - 1                # divides order by construction
        # seeds: gen^x with x * (Q^d - 1) = target (mod order); a full coset
        if target % step_mod:
            raise AssertionError("seed congruence unsolvable")
        x0 = target // step_mod
        stride = order // step_mod

        base = K.pow(gen, x0)
        w = K.pow(gen, stride)
        prefs = []  # prefactor (prod_{l<k} zeta)^-1 as constants
        acc = 1
        jj = cyc[0]
        for l in range(d):
            prefs.append(K.const(pow(acc, q - 2, q)))
            acc = (acc * zeta_vals[jj]) % q
            jj = g.sigma[jj]

        data = []
        frob_mults = [K.pow(w, Q ** k) for k in range(d)]
        coords_pow = [K.pow(base, Q ** k) for k in range(d)]
        check_budget = 40
        for k_idx in range(step_mod):
            coords = [K.mul(prefs[l], coords_pow[l]) for l in range(d)]
            if check_budget > 0:
                # literal propagation check: x_{sigma(j)} = zeta_j^{-1} x_j^Q
                jj = cyc[0]
                for l in range(d):
                    nxt = coords[(l + 1) % d]
                    zinv = K.const(pow(zeta_vals[jj], q - 2, q))
                    if K.mul(zinv, K.pow(coords[l], Q)) != nxt:
                        raise CheckFailureError("oracle propagation check failed")
                    jj = g.sigma[jj]
                check_budget -= 1
            ssum = ()
            sprod = (1,)
            for c in coords:
                ssum = K.add(ssum, K.pow(c, n))
                sprod = K.mul(sprod, c)
            data.append((ssum, sprod))
            for l in range(d):
                coords_pow[l] = K.mul(coords_pow[l], frob_mults[l])
        data.append(((), ()))  # the all-zero cycle
        per_cycle.append(data)

    npsi_const = K.const((n * inst.psi) % q)
    total = 0

    def rec(idx, ssum, sprod):
        nonlocal total
        if idx == len(per_cycle):
            rhs = K.mul(npsi_const, sprod)
            if ssum == rhs:
                total += 1
            return
        for (cs, cp) in per_cycle[idx]:
            rec(idx + 1, K.add(ssum, cs), K.mul(sprod, cp) if cp else ())

    rec(0, (), (1,))
    if (total - 1) % (Q - 1):
        raise AssertionError("oracle projective quotient not exact")
    return (total - 1) // (Q - 1)


# ---------------------------------------------------------------------------
# weighted traces

def weighted_trace(inst: DworkInstance, weights: ClassFunction, r: int,
                   cost_cap=None) -> Fraction:
    """sum_g weights(g) * T_r(g), grouped by symmetry classes."""
    n = inst.n
    total = Fraction(0)
    if weights.domain == "A":
        index = a_class_index(n)
        for key, (size, t) in index.items():
            w = weights.values.get(key, Fraction(0))
            if w == 0:
                continue
            fix = fixed_count_A(inst, list(t), r, cost_cap=cost_cap)
            total += w * size * t_trace(inst, fix, r)
    else:
        index = g_class_index(n)
        for key, (size, rep) in index.items():
            w = weights.values.get(key, Fraction(0))
            if w == 0:
                continue
            fix = fixed_count_general(inst, rep, r, cost_cap=cost_cap)
            total += w * size * t_trace(inst, fix, r)
    return total
