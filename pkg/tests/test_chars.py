import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dworkzeta.chars import (CharClass, dim_h_prim, enumerate_classes,
                             field_label, full_orbits, invariants,
                             predict_report, units)
from dworkzeta.cyclotomic import euler_phi
from dworkzeta.errors import InvalidInputError


def test_class_counts():
    assert len(enumerate_classes(3)) == 3
    assert len(enumerate_classes(4)) == 16
    assert len(enumerate_classes(5)) == 125
    for n in (3, 4, 5):
        reps = {c.rep for c in enumerate_classes(n)}
        assert len(reps) == n ** (n - 2)  # no duplicates


def test_class_range_check():
    with pytest.raises(InvalidInputError):
        enumerate_classes(2)
    with pytest.raises(InvalidInputError):
        enumerate_classes(10)


@given(st.integers(3, 6), st.data())
@settings(max_examples=200, deadline=None)
def test_canonical_form_properties(n, data):
    vec = data.draw(st.lists(st.integers(0, n - 1), min_size=n - 1, max_size=n - 1))
    vec = vec + [(-sum(vec)) % n]
    c = CharClass.from_vector(n, vec)
    assert c.rep[0] == 0 and sum(c.rep) % n == 0
    # idempotent
    assert CharClass.from_vector(n, c.rep) == c
    # shift invariance of the class, permutation/mult invariance of orbit key
    j = data.draw(st.integers(0, n - 1))
    assert CharClass.from_vector(n, [(v + j) % n for v in vec]) == c
    k = data.draw(st.sampled_from(units(n)))
    perm = data.draw(st.permutations(list(range(n))))
    moved = [(k * vec[p]) % n for p in perm]
    assert CharClass.from_vector(n, moved).orbit_key() == c.orbit_key()


def test_full_orbits_n4():
    orbits = full_orbits(4)
    table = {o.rep.rep: o.size for o in orbits}
    assert table == {(0, 0, 0, 0): 1, (0, 0, 2, 2): 3, (0, 0, 1, 3): 12}


def test_full_orbits_n5():
    orbits = full_orbits(5)
    table = {o.rep.rep: (o.size, o.inv.excluded) for o in orbits}
    assert table == {
        (0, 0, 0, 0, 0): (1, False),
        (0, 0, 0, 1, 4): (40, False),
        (0, 0, 1, 1, 3): (60, False),
        (0, 1, 2, 3, 4): (24, True),
    }


def test_full_orbits_n3():
    orbits = full_orbits(3)
    assert [(o.rep.rep, o.inv.excluded) for o in orbits] == \
        [((0, 0, 0), False), ((0, 1, 2), True)]


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_orbits_partition_via_brute_force(n):
    # independent oracle: expand every class to its orbit key and count
    buckets = {}
    for c in enumerate_classes(n):
        buckets.setdefault(c.orbit_key(), 0)
        buckets[c.orbit_key()] += 1
    fast = {o.rep.rep: o.size for o in full_orbits(n)}
    assert buckets == fast
    assert sum(fast.values()) == n ** (n - 2)


def test_invariants_0022():
    inv = invariants(CharClass.from_vector(4, [0, 0, 2, 2]))
    assert (inv.m, inv.nprime, inv.d, inv.f, inv.n_a, inv.e) == (2, 2, 2, 2, 2, 1)
    assert (inv.gamma, inv.mprime, inv.im_k, inv.deg_q, inv.exponent) == \
        (6, 1, (1,), 1, 3)
    assert inv.d_a_label == "Q"


def test_invariants_00014():
    inv = invariants(CharClass.from_vector(5, [0, 0, 0, 1, 4]))
    assert (inv.m, inv.d, inv.f, inv.n_a, inv.e) == (2, 1, 1, 5, 5)
    assert (inv.gamma, inv.mprime, inv.im_k, inv.deg_q, inv.exponent) == \
        (20, 2, (1, 4), 4, 20)
    assert inv.d_a_label == "Q(sqrt(5))"


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_invariants_zero_class(n):
    inv = invariants(CharClass.from_vector(n, [0] * n))
    assert (inv.m, inv.nprime, inv.d, inv.f, inv.n_a, inv.e, inv.gamma) == \
        (n - 1, n, 1, n, 1, 1, 1)
    assert (inv.deg_q, inv.exponent, inv.d_a_label) == (n - 1, 1, "Q")


def test_im_k_negative_membership():
    # no sigma realizes the multiplier 2 on [0,0,1,1,3] (n=5)
    inv = invariants(CharClass.from_vector(5, [0, 0, 1, 1, 3]))
    assert 2 not in inv.im_k
    assert inv.im_k == (1, 4)


def test_field_label_examples():
    assert field_label(7, (1, 2, 4)) == "Q(sqrt(-7))"
    assert field_label(7, (1, 6)) == "Q(mu_7)+"
    assert field_label(1, (1,)) == "Q"
    assert field_label(5, (1, 4)) == "Q(sqrt(5))"
    assert field_label(5, (1,)) == "Q(mu_5)"
    assert field_label(2, (1,)) == "Q"
    with pytest.raises(InvalidInputError):
        field_label(7, (1, 2))  # not a subgroup
    with pytest.raises(InvalidInputError):
        field_label(7, (2, 4))  # missing identity


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
def test_identity_suite_per_orbit(n):
    total = 0
    for o in full_orbits(n):
        inv = o.inv
        assert inv.identities_hold()
        # im_k contains the units congruent to 1 mod e_a and is a subgroup
        forced = {k % inv.n_a if inv.n_a > 1 else 0
                  for k in units(inv.n_a) if inv.n_a == 1 or k % inv.e == 1 % inv.e}
        assert forced <= set(inv.im_k)
        for x in inv.im_k:
            for y in inv.im_k:
                if inv.n_a > 1:
                    assert (x * y) % inv.n_a in inv.im_k
        if not inv.excluded:
            total += inv.d * inv.deg_q * inv.exponent
    assert total == dim_h_prim(n)


def test_dimension_values():
    assert [dim_h_prim(n) for n in (3, 4, 5, 7)] == [2, 21, 204, 39990]


@pytest.mark.parametrize("n", [3, 5])
def test_excluded_orbit_is_standard_progression(n):
    # m_a = 0 exactly on the orbit of [0,1,...,n-1] (only for odd n)
    for c in enumerate_classes(n):
        inv = invariants(c)
        assert (inv.m == 0) == (tuple(sorted(c.rep)) == tuple(range(n)))


def test_no_excluded_orbit_even_n():
    for o in full_orbits(4):
        assert not o.inv.excluded
    for o in full_orbits(6):
        assert not o.inv.excluded


def test_predict_report_shape():
    rep = predict_report(4)
    assert rep["total_dimension"] == 21
    rows = {tuple(r["class"]): r for r in rep["rows"]}
    assert rows[(0, 0, 2, 2)]["omega"] == "+-1"
    assert rows[(0, 0, 2, 2)]["exponent"] == 3
    assert all(set(r) >= {"class", "m_a", "deg_Q", "exponent", "D_a", "omega"}
               for r in rep["rows"])


def test_gamma_is_permutation_count():
    # gamma = n!/prod(mult!) equals a direct count of distinct permutations
    from itertools import permutations
    c = CharClass.from_vector(5, [0, 0, 1, 1, 3])
    count = len(set(permutations(c.rep)))
    assert invariants(c).gamma == count == 30
