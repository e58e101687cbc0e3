"""The acceptance suite: every exit criterion as a runnable named check.

Each criterion is a function returning a human-readable detail string and
raising CheckFailureError (or AssertionError) on failure.  The CLI `check`
command and the pytest acceptance module both run this registry, so the two
views cannot drift apart.
"""

from __future__ import annotations

import random
import time

from .chars import (CharClass, dim_h_prim, enumerate_classes, full_orbits,
                    invariants, predict_report, units)
from .counting import (DworkInstance, count_points, fixed_count_general,
                       t_trace)
from .cyclotomic import euler_phi
from .errors import CheckFailureError
from .reptheory import (GroupElement, fourier_multiplicities, g_class_index,
                        lemma_sum_check, perm_cycles, s_a_members,
                        transposition_fixed_multiplicity_sum,
                        verify_regular_structure, xi_character)
from .zeta import (dual_poly, functional_equation_exact, omega_split,
                   orbit_factor, power_sums_of, quadratic_split_check,
                   weil_modulus_pass)

# Published reference tables: class label -> (deg Q, gamma/d, D_a).
# Labels are the customary representatives; they are canonicalized through
# orbit_key before comparison.
PUBLISHED_TABLES = {
    3: {(0, 0, 0): (2, 1, "Q")},
    4: {(0, 0, 0, 0): (3, 1, "Q"),
        (0, 0, 2, 2): (1, 3, "Q"),
        (0, 0, 1, 3): (1, 12, "Q")},
    5: {(0, 0, 0, 0, 0): (4, 1, "Q"),
        (0, 0, 0, 1, 4): (4, 20, "Q(sqrt(5))"),
        (0, 0, 1, 1, 3): (4, 30, "Q(sqrt(5))")},
    7: {(0, 0, 0, 0, 0, 0, 0): (6, 1, "Q"),
        (0, 0, 0, 0, 0, 1, 6): (12, 42, "Q(mu_7)+"),
        (0, 0, 0, 0, 1, 1, 5): (24, 105, "Q(mu_7)"),
        (0, 0, 0, 1, 1, 1, 4): (12, 140, "Q(mu_7)+"),
        (0, 0, 0, 1, 1, 6, 6): (12, 210, "Q(mu_7)+"),
        (0, 0, 0, 0, 1, 2, 4): (6, 210, "Q(sqrt(-7))"),
        (0, 0, 0, 1, 1, 2, 3): (18, 420, "Q(mu_7)"),
        (0, 0, 1, 1, 3, 3, 6): (6, 630, "Q(sqrt(-7))"),
        (0, 0, 0, 1, 2, 5, 6): (6, 840, "Q(mu_7)+"),
        (0, 0, 1, 1, 3, 4, 5): (6, 1260, "Q(mu_7)+"),
        (0, 0, 1, 1, 2, 4, 6): (6, 1260, "Q(mu_7)+")},
}

PUBLISHED_TOTALS = {3: 2, 4: 21, 5: 204, 7: 39990}


def _require(cond, message):
    if not cond:
        raise CheckFailureError(message)


def criterion_1_prediction_tables():
    """predict output for n=3,4,5,7 matches the published tables row-for-row."""
    start = time.time()
    for n, table in PUBLISHED_TABLES.items():
        expect = {}
        for label, data in table.items():
            key = CharClass.from_vector(n, list(label)).orbit_key()
            _require(key not in expect, f"n={n}: duplicate orbit in table")
            expect[key] = data
        got = {}
        for row in predict_report(n)["rows"]:
            if row["excluded"]:
                continue
            got[tuple(row["class"])] = (row["deg_Q"], row["exponent"],
                                        row["D_a"])
        _require(set(got) == set(expect),
                 f"n={n}: orbit sets differ: {sorted(got)} vs {sorted(expect)}")
        for key in expect:
            _require(got[key] == expect[key],
                     f"n={n} orbit {key}: {got[key]} != published {expect[key]}")
    elapsed = time.time() - start
    _require(elapsed < 10, f"runtime {elapsed:.1f}s exceeds 10s")
    return f"4 tables, {sum(len(t) for t in PUBLISHED_TABLES.values())} rows " \
           f"({elapsed:.2f}s)"


def criterion_2_dimension_bookkeeping():
    """sum of d * deg_Q * exponent equals ((n-1)^n + (-1)^n (n-1))/n, n=3..8."""
    start = time.time()
    seen = {}
    for n in range(3, 9):
        total = sum(o.inv.d * o.inv.deg_q * o.inv.exponent
                    for o in full_orbits(n) if not o.inv.excluded)
        _require(total == dim_h_prim(n),
                 f"n={n}: {total} != {dim_h_prim(n)}")
        seen[n] = total
    for n, expect in PUBLISHED_TOTALS.items():
        _require(seen[n] == expect, f"n={n}: {seen[n]} != published {expect}")
    elapsed = time.time() - start
    _require(elapsed < 60, f"runtime {elapsed:.1f}s exceeds 60s")
    return f"totals {seen} ({elapsed:.1f}s)"


def criterion_3_identity_suite():
    """Every orbit for n <= 8 satisfies the full invariant identity list."""
    start = time.time()
    count = 0
    for n in range(3, 9):
        for o in full_orbits(n):
            inv = o.inv
            _require(inv.identities_hold(), f"identities fail on {o.rep}")
            forced = {k % inv.n_a if inv.n_a > 1 else 0
                      for k in units(inv.n_a)
                      if inv.n_a == 1 or k % inv.e == 1 % inv.e}
            _require(forced <= set(inv.im_k),
                     f"{o.rep}: im_k misses units = 1 mod e")
            # xi-degree bookkeeping at the index level
            _require(inv.deg_q * len(inv.im_k) ==
                     inv.mprime * euler_phi(inv.n_a),
                     f"{o.rep}: degree formula")
            count += 1
    elapsed = time.time() - start
    _require(elapsed < 60, f"runtime {elapsed:.1f}s exceeds 60s")
    return f"{count} orbits across n=3..8 ({elapsed:.1f}s)"


def criterion_4_multiplicity_theorem():
    """Fourier decomposition over A reproduces m_a = n - #distinct(a_i):
    exhaustively for n=3..6, on orbit representatives for n=7."""
    start = time.time()
    checked = 0
    for n in range(3, 7):
        for cls, m in fourier_multiplicities(n).items():
            _require(m == n - len(set(cls.rep)),
                     f"n={n} {cls.rep}: fourier {m}")
            checked += 1
    reps = [o.rep for o in full_orbits(7)]
    for cls, m in fourier_multiplicities(7, classes=reps).items():
        _require(m == 7 - len(set(cls.rep)), f"n=7 {cls.rep}: fourier {m}")
        checked += 1
    elapsed = time.time() - start
    _require(elapsed < 600, f"runtime {elapsed:.1f}s exceeds 600s")
    return f"{checked} classes ({elapsed:.1f}s)"


def criterion_5_lemma_sums():
    """Brute force equals closed form for the exponential-sum lemmas over
    all (n <= 6, n' | n, r <= 4) with 50 seeded random mu-tuples each."""
    start = time.time()
    rng = random.Random(20240811)
    combos = 0
    for n in range(3, 7):
        for nprime in range(1, n + 1):
            if n % nprime:
                continue
            for r in range(1, 5):
                for _ in range(50):
                    mus = [rng.randrange(n) for _ in range(r)]
                    lhs, rhs = lemma_sum_check(n, nprime, r, mus)
                    _require(lhs == rhs,
                             f"lemma fails: n={n} n'={nprime} r={r} mus={mus}")
                    combos += 1
    elapsed = time.time() - start
    _require(elapsed < 300, f"runtime {elapsed:.1f}s exceeds 300s")
    return f"{combos} tuples ({elapsed:.1f}s)"


def criterion_6_character_structure():
    """Transposition-sum identity, trace dichotomy off S'_a, and the
    regular-representation identity, for all orbits n <= 6."""
    start = time.time()
    for n in range(3, 7):
        got, closed = transposition_fixed_multiplicity_sum(n)
        _require(got == closed, f"n={n}: transposition sum {got} != {closed}")
    checked = 0
    for n in range(3, 7):
        for o in full_orbits(n):
            if o.inv.d > 1:
                res = verify_regular_structure(o.rep)
                _require(res["ok"], f"regular structure fails on {o.rep}: {res}")
                checked += 1
    elapsed = time.time() - start
    return f"transposition sums n=3..6, {checked} d>1 orbits ({elapsed:.1f}s)"


def criterion_7_xi_degrees():
    """xi_a(1) = (gamma_a/d_a) [D_a : Q] for every orbit, n <= 7."""
    start = time.time()
    checked = 0
    for n in range(3, 8):
        for o in full_orbits(n):
            inv = o.inv
            deg = xi_character(o.rep, 0, GroupElement.identity(n))
            expect = inv.exponent * (euler_phi(inv.n_a) // len(inv.im_k))
            _require(deg == expect, f"{o.rep}: xi(1) = {deg} != {expect}")
            # cross-check [S_n : S_a] by direct fixator enumeration
            import math
            _require(len(s_a_members(o.rep)) * deg ==
                     math.factorial(n) * euler_phi(inv.n_a),
                     f"{o.rep}: index bookkeeping")
            checked += 1
    elapsed = time.time() - start
    return f"{checked} orbits n=3..7 ({elapsed:.1f}s)"


def criterion_8_end_to_end_n3():
    """For (q,psi) in {(7,3),(13,2)} the extracted degree-2 factor equals the
    numerator from N_1 via the functional equation and is consistent with
    directly counted N_2."""
    start = time.time()
    details = []
    for (q, psi) in [(7, 3), (13, 2)]:
        inst = DworkInstance(3, q, psi)
        orbit = next(o for o in full_orbits(3) if not o.inv.excluded)
        rep = orbit_factor(inst, orbit)
        N1 = count_points(inst, 1)
        a = q + 1 - N1
        _require(rep.poly == (1, -a, q),
                 f"(q={q}): {rep.poly} != (1, {-a}, {q})")
        N2 = count_points(inst, 2)
        _require(power_sums_of(rep.poly, 2)[2] == q * q + 1 - N2,
                 f"(q={q}): N_2 inconsistent")
        details.append(f"q={q}: {rep.poly}")
    elapsed = time.time() - start
    _require(elapsed < 10, f"runtime {elapsed:.1f}s exceeds 10s")
    return "; ".join(details) + f" ({elapsed:.1f}s)"


def criterion_9_published_n4():
    """(q,psi) = (13,2): orbit [0,0,2,2] gives (1 - 169 t^2)^3 and the
    omega-split multiset {1 - 13t, 1 + 13t}."""
    start = time.time()
    inst = DworkInstance(4, 13, 2)
    orbit = next(o for o in full_orbits(4) if o.rep.rep == (0, 0, 2, 2))
    rep = orbit_factor(inst, orbit)
    _require(rep.poly == (1, 0, -169) and rep.exponent == 3,
             f"orbit factor {rep.poly}^{rep.exponent}")
    splits = omega_split(inst, orbit.rep, orbit_poly=rep.poly)
    polys = sorted(s.poly for s in splits)
    _require(polys == [(1, -13), (1, 13)], f"omega multiset {polys}")
    elapsed = time.time() - start
    return f"(1-169t^2)^3 with {{1-13t, 1+13t}} ({elapsed:.1f}s)"


def criterion_10_global_consistency_n4():
    """Product of the three extracted n=4 orbit factors (with exponents) has
    power sums equal to the direct primitive power sums for r = 1, 2."""
    start = time.time()
    inst = DworkInstance(4, 13, 2)
    orbits = [o for o in full_orbits(4) if not o.inv.excluded]
    reports = [orbit_factor(inst, o) for o in orbits]
    for r in (1, 2):
        direct = t_trace(inst, count_points(inst, r), r)
        assembled = sum(rep.exponent * power_sums_of(rep.poly, r)[r]
                        for rep in reports)
        _require(direct == assembled,
                 f"r={r}: direct {direct} != assembled {assembled}")
    elapsed = time.time() - start
    _require(elapsed < 300, f"runtime {elapsed:.1f}s exceeds 300s")
    polys = {tuple(r.orbit_class): r.poly for r in reports}
    return f"{polys} ({elapsed:.1f}s)"


def criterion_11_n5_extraction():
    """(q,psi) = (11,2): both degree-4 factors extract, pass certificates and
    split over Q(sqrt(5)) into conjugate quadratics (exact check)."""
    start = time.time()
    inst = DworkInstance(5, 11, 2)
    found = []
    for o in full_orbits(5):
        if o.rep.rep not in [(0, 0, 0, 1, 4), (0, 0, 1, 1, 3)]:
            continue
        rep = orbit_factor(inst, o)
        _require(all(rep.certificates.values()), f"certificates: {rep}")
        _require(rep.degree == 4, "degree mismatch")
        split = quadratic_split_check(rep.poly, 5, 2)
        _require(split is not None, f"no Q(sqrt 5) split for {rep.poly}")
        p, pbar = split
        # exact product identity over Q(sqrt 5)
        prod_u = [0] * 5
        prod_v = [0] * 5
        for i, (ui, vi) in enumerate(p):
            for j, (uj, vj) in enumerate(pbar):
                prod_u[i + j] += ui * uj + 5 * vi * vj
                prod_v[i + j] += ui * vj + vi * uj
        _require(all(v == 0 for v in prod_v), "sqrt components do not cancel")
        _require(tuple(prod_u) == rep.poly, "split product mismatch")
        found.append((o.rep.rep, rep.poly))
    _require(len(found) == 2, "expected two degree-4 orbits")
    elapsed = time.time() - start
    _require(elapsed < 1800, f"runtime {elapsed:.1f}s exceeds 1800s")
    return f"{found} ({elapsed:.1f}s)"


def criterion_12_oracle_equivalence():
    """fixed_count_general equals the brute-force oracle on the full grid:
    n=3 (q=7, every conjugacy class, r=1,2) and n=4 (q=13, every conjugacy
    class across cycle types 1^4, 2.1^2, 2^2, 4; r=1)."""
    start = time.time()
    checks = 0
    inst3 = DworkInstance(3, 7, 3)
    for key, (size, rep) in sorted(g_class_index(3).items()):
        for r in (1, 2):
            fixed_count_general(inst3, rep, r, check_oracle=True)
            checks += 1
    inst4 = DworkInstance(4, 13, 2)
    for key, (size, rep) in sorted(g_class_index(4).items()):
        fixed_count_general(inst4, rep, 1, check_oracle=True)
        checks += 1
    elapsed = time.time() - start
    _require(elapsed < 900, f"runtime {elapsed:.1f}s exceeds 900s")
    return f"{checks} oracle comparisons ({elapsed:.1f}s)"


def criterion_13_certificates():
    """Every extracted factor passes the 1e-9 Weil modulus check and an exact
    functional-equation identity (dual lands in the factor multiset)."""
    start = time.time()
    cases = [(DworkInstance(3, 7, 3), 3), (DworkInstance(4, 13, 2), 4),
             (DworkInstance(5, 11, 2), 5)]
    total = 0
    for inst, n in cases:
        w = n - 2
        polys = []
        for o in full_orbits(n):
            if o.inv.excluded:
                continue
            rep = orbit_factor(inst, o)
            _require(weil_modulus_pass(rep.poly, inst.q, w),
                     f"Weil fails: {rep.poly}")
            eps = rep.certificates["functional_equation_sign"]
            _require(functional_equation_exact(rep.poly, inst.q, w, eps),
                     f"exact FE fails: {rep.poly}")
            total += 1
            if o.inv.d > 1:
                polys = [s.poly for s in
                         omega_split(inst, o.rep, orbit_poly=rep.poly)]
                for p in polys:
                    _require(weil_modulus_pass(p, inst.q, w),
                             f"Weil fails on omega piece {p}")
                    _require(dual_poly(p, inst.q, w) in polys,
                             f"dual of {p} missing from multiset")
                    total += 1
    elapsed = time.time() - start
    return f"{total} factors certified ({elapsed:.1f}s)"


CRITERIA = [
    ("criterion-01-prediction-tables", criterion_1_prediction_tables),
    ("criterion-02-dimension-bookkeeping", criterion_2_dimension_bookkeeping),
    ("criterion-03-identity-suite", criterion_3_identity_suite),
    ("criterion-04-multiplicity-theorem", criterion_4_multiplicity_theorem),
    ("criterion-05-lemma-sums", criterion_5_lemma_sums),
    ("criterion-06-character-structure", criterion_6_character_structure),
    ("criterion-07-xi-degrees", criterion_7_xi_degrees),
    ("criterion-08-end-to-end-n3", criterion_8_end_to_end_n3),
    ("criterion-09-published-n4", criterion_9_published_n4),
    ("criterion-10-global-consistency-n4", criterion_10_global_consistency_n4),
    ("criterion-11-n5-extraction", criterion_11_n5_extraction),
    ("criterion-12-oracle-equivalence", criterion_12_oracle_equivalence),
    ("criterion-13-certificates", criterion_13_certificates),
]


def run_suite(names=None, out=print):
    """Run the acceptance criteria; one pass/fail line each; returns failures."""
    failures = []
    for name, fn in CRITERIA:
        if names and name not in names:
            continue
        try:
            detail = fn()
            out(f"PASS {name}: {detail}")
        except Exception as exc:  # noqa: BLE001 - report and continue
            failures.append((name, exc))
            out(f"FAIL {name}: {exc}")
    return failures


# ---------------------------------------------------------------------------
# verify-rep: representation-theory checks with failure witnesses

def rep_checks(n: int) -> list[dict]:
    """Named exact checks of the representation layer for one n (<= 6),
    as JSON-ready dicts with pass/fail and witnesses on failure."""
    from .reptheory import mat_mul, mu_matrix
    results = []

    def record(name, fn):
        try:
            witness = fn()
            results.append({"name": name, "ok": True, "witness": witness})
        except Exception as exc:  # noqa: BLE001 - verification driver
            results.append({"name": name, "ok": False, "witness": str(exc)})

    def chk_multiplicities():
        bad = [(cls.rep, m) for cls, m in fourier_multiplicities(n).items()
               if m != n - len(set(cls.rep))]
        if bad:
            raise CheckFailureError(f"mismatches: {bad[:3]}")
        return f"{n ** (n - 2)} classes"

    def chk_transposition_sum():
        got, closed = transposition_fixed_multiplicity_sum(n)
        if got != closed:
            raise CheckFailureError(f"{got} != {closed}")
        return {"sum": got}

    def chk_regular_structure():
        seen = 0
        for o in full_orbits(n):
            if o.inv.d > 1:
                res = verify_regular_structure(o.rep)
                if not res["ok"]:
                    raise CheckFailureError(f"{o.rep.rep}: {res}")
                seen += 1
        return f"{seen} orbits with d > 1"

    def chk_xi_degrees():
        for o in full_orbits(n):
            inv = o.inv
            deg = xi_character(o.rep, 0, GroupElement.identity(n))
            expect = inv.exponent * (euler_phi(inv.n_a) // len(inv.im_k))
            if deg != expect:
                raise CheckFailureError(f"{o.rep.rep}: xi(1)={deg}!={expect}")
        return f"{len(full_orbits(n))} orbits"

    def chk_mu_multiplicative():
        rng = random.Random(n)
        trials = 0
        for o in full_orbits(n):
            if o.inv.excluded:
                continue
            members = s_a_members(o.rep)
            for omega_l in range(o.inv.d):
                w = (omega_l * o.inv.e) % o.inv.n_a if o.inv.n_a > 1 else 0
                for _ in range(25):
                    t1 = _random_twist(rng, n)
                    t2 = _random_twist(rng, n)
                    g1 = GroupElement.make(n, t1, rng.choice(members))
                    g2 = GroupElement.make(n, t2, rng.choice(members))
                    lhs = mat_mul(mu_matrix(o.rep, w, g1),
                                  mu_matrix(o.rep, w, g2))
                    if lhs != mu_matrix(o.rep, w, g1 * g2):
                        raise CheckFailureError(f"mu not multiplicative at "
                                                f"{o.rep.rep}, {g1}, {g2}")
                    trials += 1
        return f"{trials} random pairs"

    record("fourier-multiplicities", chk_multiplicities)
    record("transposition-sum", chk_transposition_sum)
    record("regular-structure", chk_regular_structure)
    record("xi-degrees", chk_xi_degrees)
    record("mu-multiplicativity", chk_mu_multiplicative)
    return results


def _random_twist(rng, n):
    t = [rng.randrange(n) for _ in range(n)]
    t[0] = 0
    t[-1] = (t[-1] - sum(t)) % n
    return t
