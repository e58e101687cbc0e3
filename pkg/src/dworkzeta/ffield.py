"""Small finite fields F_{p^r} backed by full discrete-log tables.

Every hot loop in the point-counting kernels is multiplicative, so elements
are stored as discrete-log indices with respect to a canonical generator and
multiplication is index addition mod q-1.  Addition goes through the base-p
digit encoding (an element c_0 + c_1 x + ... + c_{r-1} x^{r-1} is encoded as
the integer sum c_i p^i).

Canonical choices, fixed so that all outputs are bit-for-bit reproducible:

  * modulus = the lexicographically least monic irreducible of degree r over
    F_p, ordered by the coefficient tuple (c_0, ..., c_{r-1});
  * generator = the least-encoded primitive element whose norms down to every
    proper subfield F_{p^k} (k | r) agree with that subfield's own canonical
    generator.  The norm condition makes the dlog-scaling map

        g_small^t  |->  g_big^{t * (Q_big-1)/(Q_small-1)}

    an honest field embedding, so `embed` is pure index arithmetic.

Fields are immutable after construction and shared through a cache.
"""

from __future__ import annotations

import functools
from math import gcd

import numpy as np

from .errors import FIELD_SIZE_CAP, InvalidInputError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n by trial division (n stays below ~2^60 here)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# dense polynomial arithmetic over F_p (coefficient lists, constant term first)

def _poly_trim(a):
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return a[:n]


def _poly_mulmod(a, b, mod, p):
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    return _poly_rem(res, mod, p)


def _poly_rem(a, mod, p):
    # mod is monic
    a = list(a)
    dm = len(mod) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            a[i] = 0
            for j in range(dm):
                a[i - dm + j] = (a[i - dm + j] - c * mod[j]) % p
    return _poly_trim(a[:dm] if len(a) > dm else a)


def _poly_powmod(a, e, mod, p):
    result = [1]
    base = _poly_rem(a, mod, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        # make b monic, then reduce a mod b
        inv = pow(b[-1], p - 2, p) if p > 2 else b[-1]
        b = [(c * inv) % p for c in b]
        a = _poly_rem_general(a, b, p)
        a, b = b, a
    return a


def _poly_rem_general(a, b, p):
    a = list(a)
    db = len(b) - 1
    while len(_poly_trim(a)) - 1 >= db:
        a = _poly_trim(a)
        c = a[-1]
        shift = len(a) - 1 - db
        for j in range(len(b)):
            a[shift + j] = (a[shift + j] - c * b[j]) % p
        a = _poly_trim(a)
        if not a:
            break
    return _poly_trim(a)


def _poly_sub(a, b, p):
    m = max(len(a), len(b))
    return _poly_trim([((a[i] if i < len(a) else 0) -
                        (b[i] if i < len(b) else 0)) % p for i in range(m)])


def _is_irreducible(f, p):
    """f monic of degree r >= 1; standard x^{p^k} criterion."""
    r = len(f) - 1
    if r == 1:
        return True
    x = [0, 1]
    xq = _poly_powmod(x, p ** r, f, p)
    if _poly_sub(xq, x, p) != []:
        return False
    for ell in prime_factors(r):
        xk = _poly_powmod(x, p ** (r // ell), f, p)
        diff = _poly_sub(xk, x, p)
        if len(_poly_gcd(diff, f, p)) - 1 != 0:
            return False
    return True


def _least_irreducible(p, r):
    """Lexicographically least monic irreducible of degree r, by (c_0,...,c_{r-1})."""
    if r == 1:
        return (0, 1)
    import itertools
    # lex order with c_0 most significant; c_0 = 0 means x | f, skip the block
    for c0 in range(1, p):
        for rest in itertools.product(range(p), repeat=r - 1):
            f = [c0] + list(rest) + [1]
            if _is_irreducible(f, p):
                return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # unreachable


def _encode(coeffs, p):
    e = 0
    for c in reversed(coeffs):
        e = e * p + c
    return e


def _decode(e, p, r):
    out = []
    for _ in range(r):
        out.append(e % p)
        e //= p
    return out


class FieldTable:
    """An immutable F_{p^r} with exp/log tables over the canonical generator.

    Elements are referred to either by dlog index (in [0, q-1), with -1 for
    zero in scalar code) or by encoding (integer in [0, q)).  `exp` maps index
    to encoding, `log` maps encoding to index (log[0] = -1).
    """

    __slots__ = ("p", "r", "q", "modulus", "g", "exp", "log", "_pow_p")

    def __init__(self, p, r, modulus, g_encoding, exp, log):
        self.p = p
        self.r = r
        self.q = p ** r
        self.modulus = modulus
        self.g = g_encoding
        self.exp = exp
        self.log = log
        self._pow_p = tuple(p ** i for i in range(r + 1))

    # -- scalar helpers on encodings ------------------------------------

    def enc_add(self, a, b):
        p = self.p
        if self.r == 1:
            return (a + b) % p
        out = 0
        for pw in self._pow_p[:-1]:
            out += (((a // pw) + (b // pw)) % p) * pw
        return out

    def enc_neg(self, a):
        p = self.p
        if self.r == 1:
            return (-a) % p
        out = 0
        for pw in self._pow_p[:-1]:
            out += ((-(a // pw)) % p) * pw
        return out

    def enc_mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(int(self.log[a]) + int(self.log[b])) % (self.q - 1)])

    def enc_pow(self, a, e):
        if a == 0:
            if e == 0:
                return 1
            return 0
        return int(self.exp[(int(self.log[a]) * e) % (self.q - 1)])

    def enc_inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self.exp[(-int(self.log[a])) % (self.q - 1)])

    def from_int(self, c):
        """The prime-subfield element c mod p (constants encode as themselves)."""
        return FqElem(self, self.log_of(c % self.p))

    def log_of(self, encoding):
        if encoding == 0:
            return ZERO_LOG
        return int(self.log[encoding])

    def zero(self):
        return FqElem(self, ZERO_LOG)

    def one(self):
        return FqElem(self, 0)

    def gen(self):
        return FqElem(self, 1 if self.q > 2 else 0)

    def element(self, encoding):
        return FqElem(self, self.log_of(encoding))

    # -- vector helpers (numpy int64 arrays of encodings) ----------------

    def vec_add(self, A, B):
        p = self.p
        if self.r == 1:
            return (A + B) % p
        out = np.zeros_like(A)
        for pw in self._pow_p[:-1]:
            out += (((A // pw) + (B // pw)) % p) * pw
        return out

    def vec_mul(self, A, B):
        out = np.zeros_like(A)
        nz = (A != 0) & (B != 0)
        la = self.log[A[nz]]
        lb = self.log[B[nz]]
        out[nz] = self.exp[(la + lb) % (self.q - 1)]
        return out

    def vec_pow(self, A, e):
        out = np.zeros_like(A)
        nz = A != 0
        out[nz] = self.exp[(self.log[A[nz]] * e) % (self.q - 1)]
        return out

    def vec_scale(self, A, b_encoding):
        if b_encoding == 0:
            return np.zeros_like(A)
        lb = int(self.log[b_encoding])
        out = np.zeros_like(A)
        nz = A != 0
        out[nz] = self.exp[(self.log[A[nz]] + lb) % (self.q - 1)]
        return out

    def __repr__(self):
        return f"FieldTable(p={self.p}, r={self.r})"


ZERO_LOG = -1


class FqElem:
    """A field element: the owning table plus a dlog index (-1 for zero)."""

    __slots__ = ("field", "dlog")

    def __init__(self, field, dlog):
        self.field = field
        self.dlog = dlog

    @property
    def encoding(self):
        if self.dlog == ZERO_LOG:
            return 0
        return int(self.field.exp[self.dlog])

    def is_zero(self):
        return self.dlog == ZERO_LOG

    def __mul__(self, other):
        assert self.field is other.field
        if self.dlog == ZERO_LOG or other.dlog == ZERO_LOG:
            return FqElem(self.field, ZERO_LOG)
        return FqElem(self.field, (self.dlog + other.dlog) % (self.field.q - 1))

    def __truediv__(self, other):
        assert self.field is other.field
        if other.dlog == ZERO_LOG:
            raise ZeroDivisionError
        if self.dlog == ZERO_LOG:
            return self
        return FqElem(self.field, (self.dlog - other.dlog) % (self.field.q - 1))

    def __pow__(self, e):
        if self.dlog == ZERO_LOG:
            if e == 0:
                return FqElem(self.field, 0)
            return self
        return FqElem(self.field, (self.dlog * e) % (self.field.q - 1))

    def __add__(self, other):
        assert self.field is other.field
        enc = self.field.enc_add(self.encoding, other.encoding)
        return self.field.element(enc)

    def __sub__(self, other):
        assert self.field is other.field
        enc = self.field.enc_add(self.encoding, self.field.enc_neg(other.encoding))
        return self.field.element(enc)

    def __neg__(self):
        return self.field.element(self.field.enc_neg(self.encoding))

    def __eq__(self, other):
        return (isinstance(other, FqElem) and self.field is other.field
                and self.dlog == other.dlog)

    def __hash__(self):
        return hash((id(self.field), self.dlog))

    def __repr__(self):
        return f"FqElem(enc={self.encoding}, q={self.field.q})"

    def order(self):
        if self.dlog == ZERO_LOG:
            raise InvalidInputError("zero has no multiplicative order")
        qm1 = self.field.q - 1
        return qm1 // gcd(qm1, self.dlog)


def _poly_add(a, b, p):
    m = max(len(a), len(b))
    return _poly_trim([((a[i] if i < len(a) else 0) +
                        (b[i] if i < len(b) else 0)) % p for i in range(m)])


def _minpoly_in_field(y_poly, k, p, modulus):
    """Minimal polynomial over F_p of y, assumed to lie in the degree-k subfield.

    y is a coefficient list over F_p reduced mod `modulus`; the result is the
    monic degree-k tuple of ints prod_j (X - y^{p^j}).  A non-constant
    X-coefficient means y was not in that subfield.
    """
    mod = list(modulus)
    poly = [[1]]  # X-coefficients (constant first); each entry a poly over F_p
    conj = _poly_trim(list(y_poly))
    for _ in range(k):
        neg = [(-c) % p for c in conj]
        new = [[] for _ in range(len(poly) + 1)]
        for i, coef in enumerate(poly):
            new[i + 1] = _poly_add(new[i + 1], coef, p)
            if coef and neg:
                new[i] = _poly_add(new[i], _poly_mulmod(coef, neg, mod, p), p)
        poly = new
        conj = _poly_powmod(conj, p, mod, p)
    out = []
    for coef in poly:
        if len(coef) > 1:
            raise InvalidInputError("element does not lie in the requested subfield")
        out.append(coef[0] if coef else 0)
    return tuple(out)


def _find_generator(p, r, modulus, sub_minpolys):
    """Least-encoded primitive element compatible with subfield generators.

    sub_minpolys maps each proper divisor k of r to the minimal polynomial of
    the canonical generator of F_{p^k}; the candidate's norm to that subfield
    must be a root of it.
    """
    q = p ** r
    if q == 2:
        return 1
    qm1 = q - 1
    factors = prime_factors(qm1)
    mod = list(modulus)
    for enc in range(2, q):
        cand = _poly_trim(_decode(enc, p, r))
        ok = True
        for ell in factors:
            power = _poly_powmod(cand, qm1 // ell, mod, p)
            if power == [1]:
                ok = False
                break
        if not ok:
            continue
        # norm compatibility with every proper subfield
        compatible = True
        for k, target in sub_minpolys.items():
            M = qm1 // (p ** k - 1)
            y = _poly_powmod(cand, M, mod, p)
            if _minpoly_in_field(y, k, p, modulus) != target:
                compatible = False
                break
        if compatible:
            return enc
    raise AssertionError("no compatible primitive element found")  # unreachable


@functools.lru_cache(maxsize=None)
def build_field(p: int, r: int) -> FieldTable:
    """Construct (and cache) the canonical F_{p^r}; deterministic in (p, r)."""
    if not is_prime(p):
        raise InvalidInputError(f"p={p} is not prime")
    if r < 1:
        raise InvalidInputError(f"extension degree r={r} must be >= 1")
    q = p ** r
    if q > FIELD_SIZE_CAP:
        raise InvalidInputError(f"field size {p}^{r} exceeds cap 2^26")

    modulus = _least_irreducible(p, r)
    sub_minpolys = {}
    for k in range(1, r):
        if r % k == 0:
            sub = build_field(p, k)
            sub_minpolys[k] = _minpoly_in_field(
                _poly_trim(_decode(sub.g, p, k)), k, p, sub.modulus)
    g_enc = _find_generator(p, r, modulus, sub_minpolys)

    exp = np.zeros(max(q - 1, 1), dtype=np.int64)
    log = np.full(q, -1, dtype=np.int64)
    mod = list(modulus)
    cur = [1]
    gpoly = _poly_trim(_decode(g_enc, p, r))
    for i in range(q - 1):
        enc = _encode(cur + [0] * (r - len(cur)), p)
        exp[i] = enc
        log[enc] = i
        cur = _poly_mulmod(cur, gpoly, mod, p)
    if q > 2 and _encode(cur + [0] * (r - len(cur)), p) != 1:
        raise AssertionError("generator order mismatch")
    return FieldTable(p, r, modulus, g_enc, exp, log)


def nth_roots(F: FieldTable, n: int) -> list[FqElem]:
    """All n-th roots of unity, ordered by dlog index (so the first is 1)."""
    if n < 1 or (F.q - 1) % n != 0:
        raise InvalidInputError(f"n={n} does not divide q-1={F.q - 1}")
    step = (F.q - 1) // n
    return [FqElem(F, k * step) for k in range(n)]


def embed(x: FqElem, target: FieldTable) -> FqElem:
    """Field embedding F_{p^r} -> F_{p^{rs}} by dlog scaling.

    Valid because generators are chosen norm-compatibly; tested to preserve
    both operations.
    """
    src = x.field
    if src.p != target.p or target.r % src.r != 0:
        raise InvalidInputError(
            f"cannot embed F_{src.p}^{src.r} into F_{target.p}^{target.r}")
    if x.dlog == ZERO_LOG:
        return FqElem(target, ZERO_LOG)
    M = (target.q - 1) // (src.q - 1)
    return FqElem(target, (x.dlog * M) % (target.q - 1))


def coset_root(F: FieldTable, n: int, zeta: FqElem) -> FqElem:
    """Least-dlog solution beta of beta^{(Q-1)/n} = zeta, for zeta in mu_n."""
    if (F.q - 1) % n != 0:
        raise InvalidInputError(f"n={n} does not divide Q-1={F.q - 1}")
    if zeta.field is not F:
        raise InvalidInputError("zeta must live in F")
    e = (F.q - 1) // n
    if zeta.dlog == ZERO_LOG or zeta.dlog % e != 0:
        raise InvalidInputError("zeta is not an n-th root of unity")
    return FqElem(F, (zeta.dlog // e) % n)
