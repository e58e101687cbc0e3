"""Assembly and certification of zeta-function factors from power sums.

Raw isotypic power sums come out of weighted point counts; divided by the
predicted exponent gamma/d they are power sums of an integer polynomial with
constant term 1 (this integrality is itself a theorem and is asserted, never
assumed).  Newton's identities reconstruct the polynomial; self-dual orbit
factors can be completed from half the power sums through the functional
equation; every factor is certified (integrality, degree, functional
equation, Weil modulus) before it is reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .chars import CharClass, Orbit, dim_h_prim, full_orbits, invariants
from .counting import DworkInstance, count_points, t_trace, weighted_trace
from .cyclotomic import euler_phi
from .errors import (CheckFailureError, CompletionError, CostCapError,
                     InvalidInputError)
from .reptheory import projector_weights

WEIL_REL_TOL = Fraction(1, 10 ** 9)


# ---------------------------------------------------------------------------
# integer polynomials with constant term 1 (tuples, constant first)

def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def poly_degree(a):
    d = len(a) - 1
    while d > 0 and a[d] == 0:
        d -= 1
    return d


def poly_str(a):
    parts = []
    for i, c in enumerate(a):
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            mag = "" if abs(c) == 1 else str(abs(c))
            term = f"{mag}t" if i == 1 else f"{mag}t^{i}"
            parts.append(("+ " if c > 0 else "- ") + term if parts
                         else ("" if c > 0 else "-") + term)
    return " ".join(parts) if parts else "0"


def newton_poly(sums, D):
    """Degree-D polynomial with constant term 1 whose reciprocal-root power
    sums are sums[1..D]; raises if any coefficient is not an integer."""
    missing = [r for r in range(1, D + 1) if r not in sums]
    if missing:
        raise InvalidInputError(f"missing power sums {missing}")
    coeffs = [Fraction(1)]
    for k in range(1, D + 1):
        acc = Fraction(sums[k])
        for i in range(1, k):
            acc += coeffs[i] * Fraction(sums[k - i])
        ck = -acc / k
        coeffs.append(ck)
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise CheckFailureError(
                f"Newton recursion produced non-integer coefficient {c}")
        out.append(int(c))
    return tuple(out)


def power_sums_of(poly, R):
    """Power sums p_1..p_R of the reciprocal roots of an integer polynomial."""
    D = poly_degree(poly)
    c = list(poly) + [0] * max(0, R + 1 - len(poly))
    p = {}
    for k in range(1, R + 1):
        acc = -k * Fraction(c[k]) if k <= D else Fraction(0)
        for i in range(1, min(k, D) + 1):
            if i < k:
                acc -= c[i] * p[k - i]
        p[k] = acc
    return {k: int(v) if v.denominator == 1 else v for k, v in p.items()}


def weil_modulus_pass(poly, q, w):
    """All reciprocal roots have modulus q^{w/2} within 1e-9 relative.

    The polynomial is made square-free exactly first (repeated roots defeat
    the numeric root finder); roots are then located at 60 digits.
    """
    import mpmath as mp
    import sympy
    D = poly_degree(poly)
    if D == 0:
        return True
    tvar = sympy.symbols("t")
    parts = sympy.sqf_list(sympy.Poly(list(reversed(poly[:D + 1])), tvar))[1]
    with mp.workdps(60):
        target = mp.sqrt(mp.mpf(q) ** w)
        for part, _mult in parts:
            coeffs = [mp.mpf(int(c)) for c in part.all_coeffs()]
            if len(coeffs) <= 1:
                continue
            try:
                roots = mp.polyroots(coeffs, maxsteps=500, extraprec=200)
            except mp.libmp.libhyper.NoConvergence:
                return False
            for t_root in roots:
                if t_root == 0:
                    return False
                alpha = 1 / t_root
                rel = abs(abs(alpha) - target) / target
                if rel > mp.mpf(1e-9):
                    return False
    return True


def functional_equation_exact(poly, q, w, eps) -> bool:
    """Exact coefficient identity c_{D-k} = eps q^{w(D-2k)/2} c_k."""
    D = poly_degree(poly)
    for k in range(D + 1):
        num = w * (D - 2 * k)
        if num % 2:
            if poly[k] != 0 or poly[D - k] != 0:
                return False
            continue
        lhs = Fraction(poly[D - k])
        rhs = eps * Fraction(q) ** (num // 2) * poly[k]
        if lhs != rhs:
            return False
    return True


def dual_poly(poly, q, w):
    """The polynomial whose reciprocal roots are q^w / alpha: coefficients
    q^{wk} c_{D-k} / c_D (exact; raises if not integral)."""
    D = poly_degree(poly)
    cD = poly[D]
    out = []
    for k in range(D + 1):
        val = Fraction(q ** (w * k) * poly[D - k], cD)
        if val.denominator != 1:
            raise CheckFailureError("dual polynomial is not integral")
        out.append(int(val))
    return tuple(out)


def functional_completion(sums, D, w, q):
    """Complete a self-dual factor from power sums for r <= ceil(D/2).

    For each sign eps, impose t^D q^{Dw/2} P(1/(q^w t)) = eps P(t), fill the
    upper coefficients, and keep candidates that are integral, reproduce all
    provided sums, and pass the Weil modulus check.  Exactly one candidate
    must survive; otherwise CompletionError says which extra r would help.
    """
    R = max(sums) if sums else 0
    half = (D + 1) // 2
    if R < min(half, D):
        raise CompletionError(f"need power sums up to r={half}", need_r=R + 1)

    known = {0: Fraction(1)}
    for k in range(1, min(R, D) + 1):
        acc = Fraction(sums[k])
        for i in range(1, k):
            acc += known[i] * Fraction(sums[k - i])
        known[k] = -acc / k

    candidates = []
    for eps in (1, -1):
        coeffs = [Fraction(0)] * (D + 1)
        for k, v in known.items():
            if k <= D:
                coeffs[k] = v
        ok = True
        # c_{D-k} = eps q^{w(D-2k)/2} c_k, with k <= D/2 determining the rest
        for k in range(0, D // 2 + 1):
            num = w * (D - 2 * k)
            if num % 2:
                # irrational scaling forces both paired coefficients to vanish
                if coeffs[k] != 0:
                    ok = False
                    break
                coeffs[D - k] = Fraction(0)
                continue
            if k not in known:
                ok = False
                break
            mirrored = eps * Fraction(q) ** (num // 2) * coeffs[k]
            if D - k in known and known[D - k] != mirrored:
                ok = False
                break
            if D - k == k and coeffs[k] != mirrored:
                ok = False
                break
            coeffs[D - k] = mirrored
        if not ok:
            continue
        if any(c.denominator != 1 for c in coeffs):
            continue
        poly = tuple(int(c) for c in coeffs)
        back = power_sums_of(poly, R)
        if any(back[r] != sums[r] for r in sums):
            continue
        if not weil_modulus_pass(poly, q, w):
            continue
        candidates.append((poly, eps))

    unique = {}
    for poly, eps in candidates:
        unique.setdefault(poly, eps)
    if len(unique) == 1:
        poly, eps = next(iter(unique.items()))
        return poly, eps
    if len(unique) == 0:
        raise CompletionError(
            f"no self-dual candidate matches the power sums {dict(sums)}",
            need_r=R + 1)
    raise CompletionError(
        f"{len(unique)} candidates survive; fetch one more power sum",
        need_r=R + 1)


# ---------------------------------------------------------------------------
# factor reports

@dataclass
class FactorReport:
    orbit_class: tuple
    degree: int
    exponent: int
    poly: tuple
    certificates: dict = field(default_factory=dict)
    omega_exp: int | None = None   # None = orbit-level factor

    def as_dict(self):
        return {
            "class": list(self.orbit_class),
            "degree": self.degree,
            "exponent": self.exponent,
            "poly": list(self.poly),
            "poly_str": poly_str(self.poly),
            "omega_exp": self.omega_exp,
            "certificates": dict(self.certificates),
        }


def orbit_factor(inst: DworkInstance, orbit: Orbit, cost_cap=None,
                 rmax_extra: int = 2) -> FactorReport:
    """Extract prod_eta Q_{a,omega(eta)} for one orbit, certified.

    Power sums are the orbit-projector weighted traces divided by gamma/d;
    the polynomial is completed through the functional equation (the orbit is
    stable under -1, so self-duality is provable at this level).
    """
    inv = orbit.inv
    if inv.excluded:
        raise InvalidInputError("excluded orbit carries no factor")
    n = inst.n
    D = inv.d * inv.deg_q
    w = n - 2
    weights = projector_weights(n, orbit.rep)
    exponent = inv.exponent

    sums = {}
    R = (D + 1) // 2
    while True:
        for r in range(1, R + 1):
            if r not in sums:
                raw = weighted_trace(inst, weights, r, cost_cap=cost_cap)
                s = raw / exponent
                if s.denominator != 1:
                    raise CheckFailureError(
                        f"normalized power sum not integral: {raw}/{exponent}")
                sums[r] = int(s)
        try:
            poly, eps = functional_completion(sums, D, w, inst.q)
            break
        except CompletionError as exc:
            if exc.need_r is None or exc.need_r > D + rmax_extra:
                raise
            R = exc.need_r

    cert = {
        "integrality": True,
        "degree_match": poly_degree(poly) == D,
        "functional_equation_sign": eps,
        "weil_pass": weil_modulus_pass(poly, inst.q, w),
    }
    if not cert["degree_match"]:
        raise CheckFailureError(f"degree {poly_degree(poly)} != predicted {D}")
    return FactorReport(orbit_class=orbit.rep.rep, degree=D,
                        exponent=exponent, poly=poly, certificates=cert)


def omega_split(inst: DworkInstance, a: CharClass, orbit_poly=None,
                cost_cap=None) -> list[FactorReport]:
    """Split the orbit factor of a (d_a > 1) into its per-omega pieces.

    Uses the finer (a, omega) projectors over all of G; the result is the
    canonical multiset (sorted by coefficient tuple) of d_a factors of degree
    deg_Q whose product must reproduce the orbit factor exactly.
    """
    inv = invariants(a)
    if inv.d <= 1:
        raise InvalidInputError("omega split needs d_a > 1")
    n = inst.n
    reports = []
    for l in range(inv.d):
        weights = projector_weights(n, a, omega_exp=l)
        sums = {}
        for r in range(1, inv.deg_q + 1):
            raw = weighted_trace(inst, weights, r, cost_cap=cost_cap)
            s = raw / inv.exponent
            if s.denominator != 1:
                raise CheckFailureError("per-omega power sum not integral")
            sums[r] = int(s)
        poly = newton_poly(sums, inv.deg_q)
        cert = {
            "integrality": True,
            "degree_match": True,
            "weil_pass": weil_modulus_pass(poly, inst.q, n - 2),
        }
        reports.append(FactorReport(orbit_class=a.rep, degree=inv.deg_q,
                                    exponent=inv.exponent, poly=poly,
                                    certificates=cert, omega_exp=l))
    prod = (1,)
    for rep in reports:
        prod = poly_mul(prod, rep.poly)
    if orbit_poly is not None:
        padded = tuple(orbit_poly) + (0,) * (len(prod) - len(orbit_poly))
        if prod != padded[:len(prod)]:
            raise CheckFailureError(
                f"omega factors do not multiply back: {prod} vs {orbit_poly}")
    reports.sort(key=lambda rep: rep.poly)
    return reports


# ---------------------------------------------------------------------------
# factorization over quadratic D_a

def quadratic_split_check(poly, m, mprime):
    """Try to split an integer factor as P * conj(P) over Q(sqrt(m)).

    Returns the pair of conjugate degree-mprime polynomials as coefficient
    lists of (rational, coefficient-of-sqrt(m)) pairs, or None when no split
    exists (a reported result, not an exception).  Found splits are verified
    exactly: conjugacy, product identity, and coefficients in (1/2)Z[sqrt(m)]
    with matching parity when m = 1 mod 4.
    """
    if mprime > 3:
        raise InvalidInputError("degree-level check only beyond mprime = 3")
    D = poly_degree(poly)
    if D != 2 * mprime:
        raise InvalidInputError(f"degree {D} != 2*{mprime}")
    import itertools

    import sympy
    t = sympy.symbols("t")
    root = sympy.sqrt(m)
    expr = sum(c * t ** i for i, c in enumerate(poly))
    _, factors = sympy.factor_list(expr, t, extension=root)
    pieces = []
    for f, mult in factors:
        pieces.extend([sympy.expand(f.as_expr())] * mult)

    seen = set()
    for size in range(1, len(pieces)):
        for combo in itertools.combinations(range(len(pieces)), size):
            prod = sympy.expand(sympy.prod([pieces[i] for i in combo]))
            if sympy.degree(prod, t) != mprime:
                continue
            const = sympy.expand(prod.subs(t, 0))
            if const == 0:
                continue
            cand = sympy.expand(sympy.radsimp(prod / const))
            key = sympy.srepr(cand)
            if key in seen:
                continue
            seen.add(key)
            conj = sympy.expand(cand.subs(root, -root))
            if sympy.expand(sympy.radsimp(cand * conj - expr)) != 0:
                continue
            coeffs = _coeff_pairs(cand, t, m)
            if coeffs is None:
                continue
            conj_coeffs = [(u, -v) for (u, v) in coeffs]
            return coeffs, conj_coeffs
    return None


def _coeff_pairs(expr, t, m):
    """Coefficients of expr as (u, v) with value u + v sqrt(m); None if they
    leave (1/2)Z[sqrt(m)] (or break the parity rule when m = 1 mod 4)."""
    import sympy
    root = sympy.sqrt(m)
    poly = sympy.Poly(sympy.expand(expr), t)
    out = []
    for c in reversed(poly.all_coeffs()):
        c = sympy.expand(c)
        cbar = sympy.expand(c.subs(root, -root))
        u = sympy.expand((c + cbar) / 2)
        v = sympy.expand(sympy.radsimp((c - cbar) / (2 * root)))
        if not (u.is_Rational and v.is_Rational):
            return None
        u = Fraction(int(u.p), int(u.q))
        v = Fraction(int(v.p), int(v.q))
        if u.denominator > 2 or v.denominator > 2:
            return None
        if m % 4 == 1:
            if (2 * u) % 2 != (2 * v) % 2:
                return None
        elif u.denominator != 1 or v.denominator != 1:
            return None
        out.append((u, v))
    return out


# ---------------------------------------------------------------------------
# the full report

def zeta_report(inst: DworkInstance, mode="extract", orbit_filter=None,
                cost_cap=None, consistency_rs=(1, 2), jobs=1) -> dict:
    """Predictions plus (in extract/check modes) certified factors and the
    global power-sum consistency check against direct point counts."""
    from .chars import predict_report
    n = inst.n
    report = {
        "instance": {"n": n, "q": inst.q, "psi": inst.psi},
        "predictions": predict_report(n),
        "factors": [],
        "omega_factors": [],
        "certificates": [],
        "consistency": None,
        "mode": mode,
    }
    if mode == "predict":
        return report
    if n > 5:
        raise CostCapError("extraction dimension n", n, 5)

    orbits = [o for o in full_orbits(n) if not o.inv.excluded]
    if orbit_filter is not None:
        target = CharClass.from_vector(n, orbit_filter).orbit_key()
        orbits = [o for o in orbits if o.rep.orbit_key() == target]
        if not orbits:
            raise InvalidInputError(f"no orbit matches {orbit_filter}")

    def extract(orbit):
        rep = orbit_factor(inst, orbit, cost_cap=cost_cap)
        omegas = []
        if orbit.inv.d > 1:
            omegas = omega_split(inst, orbit.rep, orbit_poly=rep.poly,
                                 cost_cap=cost_cap)
        return rep, omegas

    from .util import parallel_map
    results = parallel_map(extract, orbits, jobs=jobs)
    certificates = []
    for rep, omegas in results:
        report["factors"].append(rep.as_dict())
        report["omega_factors"].extend(o.as_dict() for o in omegas)
        certificates.append({"class": list(rep.orbit_class),
                             "omega_exp": None, **rep.certificates})
        certificates.extend({"class": list(o.orbit_class),
                             "omega_exp": o.omega_exp, **o.certificates}
                            for o in omegas)
    report["certificates"] = certificates

    # global consistency: sum over orbits of exponent * (factor power sums)
    # must match the direct primitive power sums for every tested r
    checks = {}
    for r in consistency_rs:
        direct = t_trace(inst, count_points(inst, r, cost_cap=cost_cap), r)
        assembled = 0
        for (o, (rep, _)) in zip(orbits, results):
            assembled += rep.exponent * power_sums_of(rep.poly, r)[r]
        checks[r] = {"direct": direct, "assembled": int(assembled),
                     "equal": direct == assembled}
        if orbit_filter is None and not checks[r]["equal"]:
            raise CheckFailureError(
                f"global consistency failed at r={r}: {checks[r]}")
    report["consistency"] = checks
    return report
