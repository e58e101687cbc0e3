import random

import numpy as np
import pytest

from dworkzeta.errors import InvalidInputError
from dworkzeta.ffield import (FieldTable, build_field, coset_root, embed,
                              is_prime, nth_roots, prime_factors)


def test_build_field_f7_generator_is_least_primitive_root():
    F = build_field(7, 1)
    assert F.g == 3  # orders of 2..6 mod 7: 2->3, 3->6, 4->3, 5->6, 6->2
    assert F.modulus == (0, 1)


def test_build_field_f7_degree2_modulus():
    # sieve monic degree-2 polys in lex order by (c0, c1): x^2 + 1 is the
    # least irreducible since -1 is a non-square mod 7
    F = build_field(7, 2)
    assert F.modulus == (1, 0, 1)
    assert F.q == 49


def test_build_field_accepts_p2():
    F = build_field(2, 1)
    assert F.q == 2
    assert F.one().encoding == 1


def test_build_field_rejects_bad_input():
    with pytest.raises(InvalidInputError):
        build_field(10, 1)
    with pytest.raises(InvalidInputError):
        build_field(7, 0)
    with pytest.raises(InvalidInputError):
        build_field(2, 27)  # 2^27 over the 2^26 cap


def test_build_field_deterministic():
    a = build_field(13, 2)
    b = build_field(13, 2)
    assert a is b  # cached
    build_field.cache_clear()
    c = build_field(13, 2)
    assert c.modulus == a.modulus and c.g == a.g
    assert np.array_equal(c.exp, a.exp)


def test_exp_log_roundtrip_all_nonzero():
    for (p, r) in [(7, 1), (7, 2), (13, 1), (11, 2), (3, 3)]:
        F = build_field(p, r)
        encs = F.exp[np.arange(F.q - 1)]
        assert np.array_equal(F.log[encs], np.arange(F.q - 1))
        assert len(set(encs.tolist())) == F.q - 1
        assert F.exp[0] == 1


def test_nth_roots_examples():
    F7 = build_field(7, 1)
    assert [x.encoding for x in nth_roots(F7, 3)] == [1, 2, 4]
    assert [x.encoding for x in nth_roots(F7, 1)] == [1]
    F13 = build_field(13, 1)
    roots4 = nth_roots(F13, 4)
    assert {x.encoding for x in roots4} == {1, 5, 12, 8}
    assert roots4[0].encoding == 1
    assert sorted(x.dlog for x in roots4) == [x.dlog for x in roots4]
    assert all((x ** 4).encoding == 1 for x in roots4)
    with pytest.raises(InvalidInputError):
        nth_roots(F7, 4)


def test_field_axioms_randomized():
    # >= 10^4 random triples per field, vectorized
    rng = np.random.default_rng(20240811)
    for (p, r) in [(7, 2), (13, 1), (5, 3)]:
        F = build_field(p, r)
        n = 10_001
        A = rng.integers(0, F.q, n)
        B = rng.integers(0, F.q, n)
        C = rng.integers(0, F.q, n)
        assert np.array_equal(F.vec_add(A, B), F.vec_add(B, A))
        assert np.array_equal(F.vec_mul(A, B), F.vec_mul(B, A))
        assert np.array_equal(F.vec_add(F.vec_add(A, B), C),
                              F.vec_add(A, F.vec_add(B, C)))
        assert np.array_equal(F.vec_mul(F.vec_mul(A, B), C),
                              F.vec_mul(A, F.vec_mul(B, C)))
        # distributivity
        assert np.array_equal(F.vec_mul(A, F.vec_add(B, C)),
                              F.vec_add(F.vec_mul(A, B), F.vec_mul(A, C)))
        # inverses
        nz = A[A != 0][:200]
        for a in nz.tolist():
            inv = F.enc_inv(a)
            assert F.enc_mul(a, inv) == 1


def test_fqelem_scalar_arithmetic():
    F = build_field(13, 1)
    a, b = F.element(7), F.element(9)
    assert (a + b).encoding == 3
    assert (a - b).encoding == 11
    assert (a * b).encoding == (7 * 9) % 13
    assert (a / b * b) == a
    assert (-a + a).is_zero()
    assert (a ** 12).encoding == 1


def test_embed_trivial_and_order():
    F7 = build_field(7, 1)
    F49 = build_field(7, 2)
    assert embed(F7.zero(), F49).is_zero()
    assert embed(F7.one(), F49) == F49.one()
    img = embed(F7.element(3), F49)
    assert (img ** 6) == F49.one()
    assert img.order() == 6  # order of 3 mod 7 preserved


@pytest.mark.parametrize("src,dst", [((7, 1), (7, 2)), ((7, 1), (7, 3)),
                                     ((13, 1), (13, 2)), ((13, 2), (13, 4)),
                                     ((11, 1), (11, 4))])
def test_embed_is_injective_field_hom(src, dst):
    FS = build_field(*src)
    FD = build_field(*dst)
    rng = random.Random(1234)
    seen = set()
    for _ in range(1000):
        a = FS.element(rng.randrange(FS.q))
        b = FS.element(rng.randrange(FS.q))
        ia, ib = embed(a, FD), embed(b, FD)
        assert embed(a * b, FD) == ia * ib
        assert embed(a + b, FD) == ia + ib
        seen.add((a.encoding, ia.encoding))
    # injectivity on everything touched
    imgs = {}
    for (src_enc, img_enc) in seen:
        assert imgs.setdefault(src_enc, img_enc) == img_enc
    assert len({v for v in imgs.values()}) == len(imgs)


def test_embed_transitive():
    F1 = build_field(13, 1)
    F2 = build_field(13, 2)
    F4 = build_field(13, 4)
    for enc in range(13):
        x = F1.element(enc)
        assert embed(embed(x, F2), F4) == embed(x, F4)


def test_embed_rejects_incompatible():
    with pytest.raises(InvalidInputError):
        embed(build_field(7, 2).one(), build_field(7, 3))
    with pytest.raises(InvalidInputError):
        embed(build_field(7, 1).one(), build_field(13, 2))


def test_coset_root_examples():
    F7 = build_field(7, 1)
    assert coset_root(F7, 3, F7.one()).encoding == 1
    beta = coset_root(F7, 3, F7.element(2))
    assert beta.encoding == 3 and (beta ** 2).encoding == 2
    F49 = build_field(7, 2)
    z = embed(F7.element(2), F49)
    b = coset_root(F49, 3, z)
    assert (b ** 16) == z  # (49-1)/3 = 16
    # least dlog among all 3 solutions
    sols = [s for s in range(48) if (16 * s) % 48 == z.dlog]
    assert b.dlog == min(sols)
    with pytest.raises(InvalidInputError):
        coset_root(F7, 3, F7.element(3))  # 3 is not a cube root of 1 mod 7


def test_coset_root_exhaustive_small():
    F = build_field(13, 1)
    for zeta in nth_roots(F, 4):
        beta = coset_root(F, 4, zeta)
        assert (beta ** 3) == zeta  # (13-1)/4 = 3
        count = sum(1 for s in range(12) if (3 * s) % 12 == zeta.dlog)
        assert count == 3  # the (Q-1)/n-power map is (Q-1)/n to 1


def test_prime_helpers():
    assert is_prime(2) and is_prime(13) and not is_prime(1) and not is_prime(91)
    assert prime_factors(48) == [2, 3]
    assert prime_factors(1) == []
