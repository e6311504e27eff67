"""Curve representations and the primitive section-space operations.

A curve carries spaces V and V' of "linear" and "quadratic" functions with a
multiplication map V x V -> V'.  Two encodings are supported:

* ``RepA`` stores the multiplication table as delta matrices M_i of size
  delta' x delta, so multiplication by a section s with coordinates c is the
  matrix combination M_s = sum_i c_i M_i.
* ``RepB0`` stores value vectors of a V-basis at N = 2*Delta + 1 rational
  points, so multiplication is componentwise and M_s is diagonal.

Everything downstream (divisor representations, group operations) is built
from four primitives on these encodings: single products, simple
multiplication s*W, sums of products, and division.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .field import PrimeField
from . import linalg
from .linalg import DimensionMismatch, Subspace


class ZeroSection(ValueError):
    """A nonzero section was required."""


class AllZeroSections(ValueError):
    """A section list with at least one nonzero element was required."""


class RepA:
    """Multiplication-table form: tables[i] = M_i, size delta' x delta."""

    kind = "a"

    def __init__(self, field: PrimeField, g: int, Delta: int, tables: np.ndarray,
                 bridge_info=None):
        self.field = field
        self.g = g
        self.Delta = Delta
        self.delta = Delta + 1 - g
        self.delta_prime = 2 * Delta + 1 - g
        if tables.shape != (self.delta, self.delta_prime, self.delta):
            raise DimensionMismatch(
                f"tables must have shape ({self.delta}, {self.delta_prime}, {self.delta}),"
                f" got {tables.shape}")
        self.tables = tables % field.p
        self.n = self.delta            # ambient dimension of V
        self.n_prime = self.delta_prime  # ambient dimension of V'
        self.bridge_info = bridge_info
        self._full_v = None

    def full_v(self) -> Subspace:
        if self._full_v is None:
            self._full_v = linalg.full_subspace(self.field, self.n)
        return self._full_v


class RepB0:
    """Point-value form: a_v columns are value vectors of a V-basis."""

    kind = "b0"

    def __init__(self, field: PrimeField, g: int, Delta: int, a_v: np.ndarray,
                 points=None, k_v: np.ndarray | None = None, bridge_info=None):
        self.field = field
        self.g = g
        self.Delta = Delta
        self.delta = Delta + 1 - g
        self.delta_prime = 2 * Delta + 1 - g
        self.n = 2 * Delta + 1         # number of evaluation points
        self.n_prime = self.n
        if a_v.shape != (self.n, self.delta):
            raise DimensionMismatch(
                f"a_v must have shape ({self.n}, {self.delta}), got {a_v.shape}")
        self.a_v = a_v % field.p
        self.points = list(points) if points is not None else None
        self.k_v = (k_v % field.p if k_v is not None
                    else linalg.left_kernel_rows(field, self.a_v))
        self.bridge_info = bridge_info
        self._full_v = None

    def full_v(self) -> Subspace:
        if self._full_v is None:
            self._full_v = linalg.column_echelon(self.field, self.a_v)
        return self._full_v


def mult_matrix(rep, s: np.ndarray) -> np.ndarray:
    """Matrix of multiplication-by-s from V-coordinates to V'-coordinates."""
    if s.shape[0] != rep.n:
        raise DimensionMismatch(f"section has length {s.shape[0]}, expected {rep.n}")
    if rep.kind == "a":
        return np.tensordot(s, rep.tables, axes=(0, 0)) % rep.field.p
    out = linalg.zeros(rep.field, rep.n, rep.n)
    np.fill_diagonal(out, s)
    return out


def _apply_mul(rep, s: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Raw basis of s * (column span of b); avoids a dense M_s for RepB0."""
    if rep.kind == "a":
        return mult_matrix(rep, s).dot(b) % rep.field.p
    return s[:, None] * b % rep.field.p


def product(rep, s: np.ndarray, u: np.ndarray) -> np.ndarray:
    """One product s*u as a V'-coordinate vector."""
    if s.shape[0] != rep.n or u.shape[0] != rep.n:
        raise DimensionMismatch("sections must have length N")
    if rep.kind == "a":
        return mult_matrix(rep, s).dot(u) % rep.field.p
    return s * u % rep.field.p


def simple_mul(rep, s: np.ndarray, w: Subspace) -> Subspace:
    """Canonical basis of s*W; multiplication by nonzero s preserves dim."""
    if not np.count_nonzero(s):
        raise ZeroSection("simple multiplication needs a nonzero section")
    out = linalg.column_echelon(rep.field, _apply_mul(rep, s, w.basis))
    assert out.dim == w.dim
    return out


def _nonzero_sections(sections) -> list[np.ndarray]:
    live = [s for s in sections if np.count_nonzero(s)]
    if not live:
        raise AllZeroSections("need at least one nonzero section")
    return live


def _product_blocks(rep, sections, basis: np.ndarray) -> np.ndarray:
    return np.hstack([_apply_mul(rep, s, basis) for s in _nonzero_sections(sections)])


def sum_of_products(rep, sections, w: Subspace) -> Subspace:
    """Canonical basis of s_1*W + ... + s_h*W."""
    return linalg.column_echelon(rep.field, _product_blocks(rep, sections, w.basis))


def sum_of_products_dim(rep, sections, w: Subspace) -> int:
    """dim(s_1*W + ... + s_h*W) without building the canonical basis."""
    return linalg.matrix_rank(rep.field, _product_blocks(rep, sections, w.basis))


def _division_stack(rep, kw: np.ndarray, sections) -> np.ndarray:
    """The stacked constraint matrix whose kernel is W' / {s_i}."""
    live = _nonzero_sections(sections)
    if rep.kind == "a":
        blocks = [kw.dot(mult_matrix(rep, s)) % rep.field.p for s in live]
    else:
        blocks = [rep.k_v] + [kw * s[None, :] % rep.field.p for s in live]
    return np.vstack(blocks)


def divide(rep, wp: Subspace, sections) -> Subspace:
    """Canonical basis of {u in V : u * s_i in W' for all i}."""
    if wp.ambient != rep.n_prime:
        raise DimensionMismatch("W' must live in V'")
    return divide_raw(rep, wp.basis, sections)


def divide_raw(rep, wp_basis: np.ndarray, sections) -> Subspace:
    """Division against any (not necessarily canonical) spanning basis of W'."""
    kw = linalg.left_kernel_rows(rep.field, wp_basis)
    return linalg.kernel_basis(rep.field, _division_stack(rep, kw, sections))


def divide_is_nonzero(rep, wp_basis: np.ndarray, sections) -> bool:
    """Whether the division result has positive dimension (rank test only)."""
    kw = linalg.left_kernel_rows(rep.field, wp_basis)
    stack = _division_stack(rep, kw, sections)
    return linalg.matrix_rank(rep.field, stack) < rep.n


@dataclass
class ValidationReport:
    checks: list = dc_field(default_factory=list)  # (name, passed, detail)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append((name, bool(passed), detail))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c[1]]


def validate_rep(rep) -> ValidationReport:
    """Consistency checks on a representation.

    Covers dimension identities, table symmetry, and surjectivity of the
    multiplication map.  Ideal-saturation/smoothness certification is out of
    scope; a passing report means the data is consistent, not that it
    provably comes from a smooth curve.
    """
    report = ValidationReport()
    report.add("dim V = Delta + 1 - g", rep.delta == rep.Delta + 1 - rep.g,
               f"delta={rep.delta}")
    report.add("dim V' = 2*Delta + 1 - g", rep.delta_prime == 2 * rep.Delta + 1 - rep.g,
               f"delta_prime={rep.delta_prime}")
    if rep.kind == "a":
        sym = bool(np.array_equal(rep.tables, rep.tables.transpose(2, 1, 0)))
        report.add("table symmetry c_ijk = c_jik", sym)
        # surjectivity: the joint left kernel of all M_i must vanish; track
        # it incrementally (it usually dies after a handful of tables)
        p = rep.field.p
        order = [0, rep.delta - 1] + list(range(1, rep.delta - 1))
        kern = None
        for i in order:
            if kern is None:
                kern = linalg.left_kernel_rows(rep.field, rep.tables[i])
            else:
                inside = linalg.left_kernel_rows(rep.field, kern.dot(rep.tables[i]) % p)
                kern = inside.dot(kern) % p
            if kern.shape[0] == 0:
                break
        report.add("multiplication map surjective", kern.shape[0] == 0,
                   f"joint left kernel has dimension {kern.shape[0]}")
    else:
        report.add("N = 2*Delta + 1", rep.n == 2 * rep.Delta + 1, f"N={rep.n}")
        report.add("rank A_V = delta",
                   linalg.matrix_rank(rep.field, rep.a_v) == rep.delta)
        report.add("K_V annihilates A_V",
                   not np.count_nonzero(rep.k_v.dot(rep.a_v) % rep.field.p))
        report.add("K_V has full row rank",
                   linalg.matrix_rank(rep.field, rep.k_v) == rep.n - rep.delta)
    return report
