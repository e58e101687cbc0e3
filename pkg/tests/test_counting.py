import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from dworkzeta.chars import CharClass, dim_h_prim
from dworkzeta.counting import (DworkInstance, count_affine, count_points,
                                fixed_count_A, fixed_count_general,
                                oracle_fixed_count, root_table, t_trace,
                                weighted_trace)
from dworkzeta.errors import CostCapError, InvalidInputError
from dworkzeta.ffield import build_field
from dworkzeta.reptheory import (GroupElement, g_class_index,
                                 projector_weights)


def test_instance_validation():
    DworkInstance(3, 7, 3)
    with pytest.raises(InvalidInputError):
        DworkInstance(3, 10, 2)       # q not prime
    with pytest.raises(InvalidInputError):
        DworkInstance(3, 11, 2)       # q != 1 mod n
    with pytest.raises(InvalidInputError):
        DworkInstance(3, 7, 0)        # psi = 0
    with pytest.raises(InvalidInputError):
        DworkInstance(3, 7, 1)        # psi^n = 1 -> singular
    with pytest.raises(InvalidInputError):
        DworkInstance(4, 13, 5)       # 5^4 = 625 = 1 mod 13 -> singular
    with pytest.raises(InvalidInputError):
        DworkInstance(2, 7, 3)        # n too small


def test_root_table_row_sums():
    for (p, r, n) in [(7, 1, 3), (13, 1, 4), (7, 2, 3), (11, 1, 5)]:
        F = build_field(p, r)
        rt = root_table(F, n)
        assert np.all(rt.table.sum(axis=1) == F.q)


def test_count_affine_brute_force():
    F = build_field(7, 1)
    rng = random.Random(3)
    for _ in range(25):
        k = rng.randint(1, 3)
        betas = [rng.randrange(1, 7) for _ in range(k)]
        scale = rng.randrange(7)
        add = rng.randrange(7)
        brute = 0
        for ys in itertools.product(range(7), repeat=k):
            s = sum(b * pow(y, 3, 7) for b, y in zip(betas, ys)) % 7
            prod = 1
            for y in ys:
                prod = (prod * y) % 7
            if (s + add) % 7 == (scale * prod) % 7:
                brute += 1
        assert count_affine(F, 3, betas, scale, add) == brute


def test_count_affine_extension_field_brute_force():
    F = build_field(7, 2)
    rng = random.Random(4)
    elems = list(range(F.q))
    for _ in range(4):
        betas = [rng.randrange(1, F.q) for _ in range(2)]
        scale = rng.randrange(F.q)
        add = rng.randrange(F.q)
        brute = 0
        for y1 in elems:
            for y2 in elems:
                s = F.enc_add(F.enc_mul(betas[0], F.enc_pow(y1, 3)),
                              F.enc_mul(betas[1], F.enc_pow(y2, 3)))
                s = F.enc_add(s, add)
                rhs = F.enc_mul(scale, F.enc_mul(y1, y2))
                if s == rhs:
                    brute += 1
        assert count_affine(F, 3, betas, scale, add) == brute


def test_count_points_n3_hasse_and_n2_relation():
    for (q, psi) in [(7, 3), (13, 2)]:
        inst = DworkInstance(3, q, psi)
        N1 = count_points(inst, 1)
        a = q + 1 - N1
        assert a * a <= 4 * q                      # Hasse
        N2 = count_points(inst, 2)
        assert N2 == q * q + 1 - (a * a - 2 * q)   # elliptic-curve relation


def test_count_points_brute_force_oracle_p2():
    # double-enumeration oracle over P^2(F_7)
    inst = DworkInstance(3, 7, 3)
    q, psi = 7, 3
    affine = sum(
        1
        for x in range(q) for y in range(q) for z in range(q)
        if (x, y, z) != (0, 0, 0)
        and (pow(x, 3, q) + pow(y, 3, q) + pow(z, 3, q)
             - 3 * psi * x * y * z) % q == 0)
    assert affine % (q - 1) == 0
    assert count_points(inst, 1) == affine // (q - 1)


def test_identity_twist_equals_count_points():
    for inst in [DworkInstance(3, 7, 3), DworkInstance(4, 13, 2),
                 DworkInstance(5, 11, 2)]:
        for r in (1, 2):
            assert fixed_count_A(inst, [0] * inst.n, r) == count_points(inst, r)


def test_fixed_count_A_matches_oracle_random_twists():
    inst = DworkInstance(3, 7, 3)
    rng = random.Random(11)
    seen = set()
    for _ in range(30):
        t = [0, rng.randrange(3), 0]
        t[2] = (-t[1]) % 3
        t[1] = rng.randrange(3)
        t[2] = (-(t[0] + t[1])) % 3
        g = GroupElement.make(3, t)
        if g.zeta in seen:
            continue
        seen.add(g.zeta)
        assert fixed_count_A(inst, list(g.zeta), 1) == \
            oracle_fixed_count(inst, g, 1)


def test_fixed_count_A_representative_and_generator_independence():
    inst = DworkInstance(4, 13, 2)
    t = [0, 1, 2, 1]
    base = fixed_count_A(inst, t, 1)
    # diagonal shift gives the same automorphism
    for c in range(1, 4):
        assert fixed_count_A(inst, [(x + c) % 4 for x in t], 1) == base
    # alternate primitive elements h = g^u
    for u in (5, 7, 11):
        assert fixed_count_A(inst, t, 1, generator_unit=u) == base


@pytest.mark.parametrize("sigma", [(0, 1, 2), (1, 0, 2), (1, 2, 0)])
def test_general_vs_oracle_n3(sigma):
    inst = DworkInstance(3, 7, 3)
    rng = random.Random(sum(sigma))
    for _ in range(3):
        t = [0, rng.randrange(3), 0]
        t[2] = (-(t[0] + t[1])) % 3
        g = GroupElement.make(3, t, sigma)
        fixed_count_general(inst, g, 1, check_oracle=True)


@pytest.mark.parametrize("sigma", [(1, 0, 2, 3), (1, 0, 3, 2), (1, 2, 3, 0)])
def test_general_vs_oracle_n4(sigma):
    inst = DworkInstance(4, 13, 2)
    rng = random.Random(len(set(sigma)))
    for _ in range(2):
        t = [rng.randrange(4) for _ in range(4)]
        t[0] = 0
        t[-1] = (t[-1] - sum(t)) % 4
        g = GroupElement.make(4, t, sigma)
        fixed_count_general(inst, g, 1, check_oracle=True)


def test_general_reduces_to_A_for_identity_sigma():
    inst = DworkInstance(4, 13, 2)
    g = GroupElement.make(4, [0, 2, 1, 1])
    assert fixed_count_general(inst, g, 1) == fixed_count_A(inst, [0, 2, 1, 1], 1)


def test_weighted_trace_identity_indicator():
    inst = DworkInstance(3, 7, 3)
    from dworkzeta.reptheory import ClassFunction, a_sym_key
    key = a_sym_key(3, (0, 0, 0))
    w = ClassFunction(domain="A", n=3, values={key: Fraction(1)})
    for r in (1, 2):
        expect = t_trace(inst, count_points(inst, r), r)
        assert weighted_trace(inst, w, r) == expect


def test_weighted_trace_trivial_orbit_projector_n3():
    # the trivial-orbit projector captures the full degree-2 numerator
    inst = DworkInstance(3, 7, 3)
    w = projector_weights(3, CharClass.from_vector(3, [0, 0, 0]))
    q = 7
    N1 = count_points(inst, 1)
    a = q + 1 - N1
    p1 = weighted_trace(inst, w, 1)
    assert p1 == a
    p2 = weighted_trace(inst, w, 2)
    assert p2 == a * a - 2 * q


def test_weil_bound_all_small_twists():
    inst = DworkInstance(3, 7, 3)
    dim = dim_h_prim(3)
    for t1 in range(3):
        for t2 in range(3):
            t = (0, t1, (-(t1 + t2)) % 3)
            t = (0, t1, t2) if (t1 + t2) % 3 == 0 else t
            if sum(t) % 3:
                continue
            fix = fixed_count_A(inst, list(t), 1)
            tr = t_trace(inst, fix, 1)
            assert tr * tr <= dim * dim * 7


def test_cost_cap_raises():
    from dworkzeta.counting import clear_cache
    clear_cache()
    inst = DworkInstance(3, 7, 3)
    with pytest.raises(CostCapError):
        fixed_count_A(inst, [0, 0, 0], 1, cost_cap=10)
    g = GroupElement.make(3, [0, 1, 2], (1, 2, 0))
    with pytest.raises(CostCapError):
        oracle_fixed_count(inst, g, 1, cost_cap=10)


def test_fixed_count_sums_divisible_by_A_order():
    # sum over A of Fix is |A| times an integer combination (isotypic
    # integrality at the coarsest level): the trivial projector weighted
    # trace must be a rational integer
    inst = DworkInstance(4, 13, 2)
    w = projector_weights(4, CharClass.from_vector(4, [0, 0, 0, 0]))
    val = weighted_trace(inst, w, 1)
    assert val.denominator == 1
