"""Exact dense linear algebra over F_p.

Matrices are numpy arrays of canonical residues; all algorithms are plain
Gaussian elimination, no floating point anywhere.  For moduli up to 2^20 the
arrays are int64 (products plus column-length sums stay far below 2^63); for
larger moduli we fall back to object arrays of Python ints, which are exact
at any size.

Subspaces of F_p^N are always stored canonically: the basis matrix is in
reduced column echelon form (pivot rows strictly increasing, pivots 1, pivot
rows zero elsewhere), so subspace equality is a bit-exact array comparison.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import PrimeField

_INT64_MODULUS_LIMIT = 1 << 20


class DimensionMismatch(ValueError):
    """Operands have incompatible shapes or ambient dimensions."""


def dtype_for(field: PrimeField):
    return np.int64 if field.p <= _INT64_MODULUS_LIMIT else object


def as_matrix(field: PrimeField, rows) -> np.ndarray:
    a = np.array(rows, dtype=dtype_for(field))
    if a.ndim != 2:
        raise DimensionMismatch("matrix data must be two-dimensional")
    return a % field.p


def as_vector(field: PrimeField, entries) -> np.ndarray:
    a = np.array(entries, dtype=dtype_for(field))
    if a.ndim != 1:
        raise DimensionMismatch("vector data must be one-dimensional")
    return a % field.p


def zeros(field: PrimeField, m: int, n: int) -> np.ndarray:
    return np.zeros((m, n), dtype=dtype_for(field))


def identity(field: PrimeField, n: int) -> np.ndarray:
    return np.eye(n, dtype=dtype_for(field))


def random_matrix(field: PrimeField, m: int, n: int, rng) -> np.ndarray:
    a = np.empty((m, n), dtype=dtype_for(field))
    for i in range(m):
        for j in range(n):
            a[i, j] = rng.randrange(field.p)
    return a


def random_invertible(field: PrimeField, n: int, rng) -> np.ndarray:
    while True:
        a = random_matrix(field, n, n, rng)
        if matrix_rank(field, a) == n:
            return a


def mat_mul(field: PrimeField, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return a.dot(b) % field.p


def mat_vec(field: PrimeField, a: np.ndarray, v: np.ndarray) -> np.ndarray:
    if a.shape[1] != v.shape[0]:
        raise DimensionMismatch(f"cannot apply {a.shape} to vector of length {v.shape[0]}")
    return a.dot(v) % field.p


def rref(field: PrimeField, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    p = field.p
    r = np.array(a, dtype=dtype_for(field)) % p
    m, n = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        i = row + int(nz[0])
        if i != row:
            r[[row, i]] = r[[i, row]]
        lead = int(r[row, col])
        if lead != 1:
            r[row, col:] = r[row, col:] * pow(lead, -1, p) % p
        others = r[:, col].copy()
        others[row] = 0
        if np.count_nonzero(others):
            r[:, col:] = (r[:, col:] - np.outer(others, r[row, col:])) % p
        pivots.append(col)
        row += 1
    return r, pivots


def matrix_rank(field: PrimeField, a: np.ndarray) -> int:
    """Rank by forward elimination only (cheaper than full rref)."""
    p = field.p
    r = np.array(a, dtype=dtype_for(field)) % p
    m, n = r.shape
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        i = row + int(nz[0])
        if i != row:
            r[[row, i]] = r[[i, row]]
        inv_lead = pow(int(r[row, col]), -1, p)
        below = r[row + 1:, col]
        if np.count_nonzero(below):
            factors = below * inv_lead % p
            r[row + 1:, col:] = (r[row + 1:, col:] - np.outer(factors, r[row, col:])) % p
        row += 1
    return row


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of F_p^N with a canonical reduced-column-echelon basis."""

    field: PrimeField
    ambient: int
    basis: np.ndarray  # ambient x dim, canonical; dim may be 0

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace)
                and self.ambient == other.ambient
                and self.basis.shape == other.basis.shape
                and bool(np.array_equal(self.basis, other.basis)))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def zero_subspace(field: PrimeField, ambient: int) -> Subspace:
    return Subspace(field, ambient, zeros(field, ambient, 0))


def full_subspace(field: PrimeField, ambient: int) -> Subspace:
    return Subspace(field, ambient, identity(field, ambient))


def column_echelon(field: PrimeField, a: np.ndarray) -> Subspace:
    """Canonical basis of the column space of a."""
    r, pivots = rref(field, a.T)
    basis = r[: len(pivots)].T.copy()
    return Subspace(field, a.shape[0], basis)


def _kernel_raw(field: PrimeField, a: np.ndarray) -> np.ndarray:
    """A (not necessarily canonical) basis matrix of {v : a v = 0}."""
    p = field.p
    r, pivots = rref(field, a)
    n = a.shape[1]
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    k = zeros(field, n, len(free))
    for j, fc in enumerate(free):
        k[fc, j] = 1
        for i, pc in enumerate(pivots):
            k[pc, j] = (-int(r[i, fc])) % p
    return k


def kernel_basis(field: PrimeField, a: np.ndarray) -> Subspace:
    """Canonical basis of {v : a v = 0}; dim = cols - rank."""
    return column_echelon(field, _kernel_raw(field, a))


def left_kernel_rows(field: PrimeField, a: np.ndarray) -> np.ndarray:
    """Rows spanning {w : w a = 0}; shape (rows - rank) x rows."""
    return _kernel_raw(field, a.T).T.copy()


def constraint_rows(field: PrimeField, s: Subspace) -> np.ndarray:
    """A matrix K with ker K = the subspace (K has full row rank)."""
    return left_kernel_rows(field, s.basis)


def subspace_sum(u: Subspace, w: Subspace) -> Subspace:
    _check_compatible(u, w)
    return column_echelon(u.field, np.hstack([u.basis, w.basis]))


def subspace_intersect(u: Subspace, w: Subspace) -> Subspace:
    _check_compatible(u, w)
    ku = constraint_rows(u.field, u)
    kw = constraint_rows(w.field, w)
    return kernel_basis(u.field, np.vstack([ku, kw]))


def subspace_equal(u: Subspace, w: Subspace) -> bool:
    _check_compatible(u, w)
    return u == w


def subspace_contains(u: Subspace, w: Subspace) -> bool:
    """Whether u contains w."""
    _check_compatible(u, w)
    if w.dim == 0:
        return True
    ku = constraint_rows(u.field, u)
    if ku.shape[0] == 0:
        return True
    return not np.count_nonzero(ku.dot(w.basis) % u.field.p)


def contains_vector(s: Subspace, v: np.ndarray) -> bool:
    if v.shape[0] != s.ambient:
        raise DimensionMismatch("vector does not live in the ambient space")
    ks = constraint_rows(s.field, s)
    if ks.shape[0] == 0:
        return True
    return not np.count_nonzero(ks.dot(v) % s.field.p)


def _check_compatible(u: Subspace, w: Subspace) -> None:
    if u.ambient != w.ambient or u.field.p != w.field.p:
        raise DimensionMismatch("subspaces live in different ambient spaces")
