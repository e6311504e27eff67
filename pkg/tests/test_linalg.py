import numpy as np
import pytest

import jacarith as ja
from jacarith import linalg


def _rand(field, m, n, rng):
    return linalg.random_matrix(field, m, n, rng)


def test_mat_mul_against_triple_loop():
    field = ja.make_prime_field(7)
    rng = ja.RandomStream("mm")
    for _ in range(20):
        a = _rand(field, 5, 5, rng)
        b = _rand(field, 5, 5, rng)
        got = ja.mat_mul(field, a, b)
        want = np.zeros((5, 5), dtype=np.int64)
        for i in range(5):
            for j in range(5):
                acc = 0
                for k in range(5):
                    acc = (acc + int(a[i, k]) * int(b[k, j])) % 7
                want[i, j] = acc
        assert np.array_equal(got, want)


def test_mat_mul_identity_zero(f1009):
    rng = ja.RandomStream("idz")
    b = _rand(f1009, 4, 6, rng)
    assert np.array_equal(ja.mat_mul(f1009, linalg.identity(f1009, 4), b), b)
    assert not np.count_nonzero(ja.mat_mul(f1009, b, linalg.zeros(f1009, 6, 3)))


def test_mat_mul_dimension_mismatch(f1009):
    with pytest.raises(ja.DimensionMismatch):
        ja.mat_mul(f1009, linalg.zeros(f1009, 2, 3), linalg.zeros(f1009, 4, 2))


def test_column_echelon_idempotent(f1009):
    rng = ja.RandomStream("ech")
    s = ja.column_echelon(f1009, _rand(f1009, 8, 4, rng))
    again = ja.column_echelon(f1009, s.basis)
    assert again == s


def test_duplicated_column_drops_rank(f1009):
    rng = ja.RandomStream("dup")
    a = _rand(f1009, 6, 4, rng)
    doubled = np.hstack([a, a[:, :1]])
    assert ja.column_echelon(f1009, doubled).dim <= 4


def test_echelon_invariant_under_column_operations(f1009):
    rng = ja.RandomStream("gl")
    a = _rand(f1009, 7, 4, rng)
    canon = ja.column_echelon(f1009, a)
    for i in range(100):
        g = linalg.random_invertible(f1009, 4, rng.split(i))
        assert ja.column_echelon(f1009, ja.mat_mul(f1009, a, g)) == canon


def test_kernel_identity_and_zero(f1009):
    assert ja.kernel_basis(f1009, linalg.identity(f1009, 5)).dim == 0
    k = ja.kernel_basis(f1009, linalg.zeros(f1009, 3, 6))
    assert k.dim == 6
    assert np.array_equal(k.basis, linalg.identity(f1009, 6))


def test_kernel_random():
    field = ja.make_prime_field(101)
    rng = ja.RandomStream("ker")
    for i in range(20):
        a = _rand(field, 8, 12, rng.split(i))
        k = ja.kernel_basis(field, a)
        assert not np.count_nonzero(a.dot(k.basis) % field.p)
        assert k.dim == 12 - linalg.matrix_rank(field, a)
        # canonical form: re-echelonizing is a no-op
        assert ja.column_echelon(field, k.basis) == k


def test_subspace_sum_intersect_grassmann(f1009):
    rng = ja.RandomStream("grassmann")
    for i in range(200):
        r = rng.split(i)
        u = ja.column_echelon(f1009, _rand(f1009, 10, r.randint(1, 5), r))
        w = ja.column_echelon(f1009, _rand(f1009, 10, r.randint(1, 5), r))
        s = ja.subspace_sum(u, w)
        t = ja.subspace_intersect(u, w)
        assert s.dim + t.dim == u.dim + w.dim
        assert ja.subspace_contains(s, u) and ja.subspace_contains(s, w)
        assert ja.subspace_contains(u, t) and ja.subspace_contains(w, t)


def test_subspace_trivial_identities(f1009):
    rng = ja.RandomStream("triv")
    u = ja.column_echelon(f1009, _rand(f1009, 9, 4, rng))
    assert ja.subspace_sum(u, u) == u
    assert ja.subspace_intersect(u, u) == u
    assert ja.subspace_equal(u, u)


def test_left_kernel_rows(f1009):
    rng = ja.RandomStream("lk")
    a = _rand(f1009, 9, 4, rng)
    k = linalg.left_kernel_rows(f1009, a)
    assert k.shape == (9 - linalg.matrix_rank(f1009, a), 9)
    assert not np.count_nonzero(k.dot(a) % f1009.p)


def test_large_modulus_object_path():
    field = ja.make_prime_field(2**61 - 1)
    assert linalg.dtype_for(field) is object
    rng = ja.RandomStream("big")
    a = _rand(field, 4, 4, rng)
    b = _rand(field, 4, 4, rng)
    got = ja.mat_mul(field, a, b)
    for i in range(4):
        for j in range(4):
            acc = sum(int(a[i, k]) * int(b[k, j]) for k in range(4)) % field.p
            assert int(got[i, j]) == acc
    canon = ja.column_echelon(field, a)
    g = linalg.random_invertible(field, 4, rng)
    assert ja.column_echelon(field, ja.mat_mul(field, a, g)) == canon
    k = ja.kernel_basis(field, _rand(field, 2, 5, rng))
    assert k.dim >= 3
