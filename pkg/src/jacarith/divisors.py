"""Divisor representations and the Las Vegas conversion algorithms.

An effective divisor D is held either in full form (the subspace W_D of V of
sections vanishing on D, with degree = codim) or in brief form (an ideal
generating set: a few sections whose common zero divisor is exactly D).
Random candidates for brief form succeed with probability >= 1/2 at the
advertised size h, and success is verifiable by a dimension count, so every
conversion loop terminates with verified output.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from . import curverep, linalg
from .linalg import Subspace

_LOOP_CAP = 200  # failure probability per attempt is <= 1/2; this is unreachable


class EmptySpace(ValueError):
    """A nonzero space of sections was required."""


class PreconditionDegree(ValueError):
    """Divisor degree outside the range required by the algorithm."""


class PreconditionCodim(ValueError):
    """Subspace codimension outside the range required by the membership test."""


class LasVegasExhausted(RuntimeError):
    """A retry loop exceeded its iteration cap (astronomically unlikely)."""


@dataclass(frozen=True)
class DivisorFull:
    """Full representation: W_D plus its degree (= codim of W_D in V)."""

    space: Subspace
    degree: int


@dataclass(frozen=True)
class DivisorBrief:
    """Brief representation: an ideal generating set for D."""

    sections: tuple


@dataclass(frozen=True)
class IgsV:
    """A verified ideal generating set for the zero divisor (all of V)."""

    sections: tuple


@dataclass
class CubicData:
    """Level-three data: the map V x V' -> V'' as delta tables of size
    delta'' x delta', used only to verify generating sets for V itself."""

    delta_pp: int
    star_tables: np.ndarray  # (delta, delta'', delta')


@dataclass
class RetryStats:
    """Las Vegas retry bookkeeping, surfaced in CLI reports."""

    calls: int = 0
    attempts: int = 0
    per_call: list = dc_field(default_factory=list)

    def record(self, attempts: int) -> None:
        self.calls += 1
        self.attempts += attempts
        self.per_call.append(attempts)

    @property
    def mean_attempts(self) -> float:
        return self.attempts / self.calls if self.calls else 0.0


def divisor_from_space(rep, space: Subspace) -> DivisorFull:
    return DivisorFull(space, rep.delta - space.dim)


def _ceil_log(base: int, target: int) -> int:
    """Smallest m >= 0 with base**m >= target (exact integer arithmetic)."""
    m, value = 0, 1
    while value < target:
        value *= base
        m += 1
    return m


def igs_size_h(Delta: int, deg_d: int, sigma_size: int) -> int:
    """Candidate size h = 1 + ceil(log(2*(Delta - deg_d)) / log |Sigma|)."""
    if sigma_size < 2:
        raise ValueError("sigma_size must be at least 2")
    if deg_d >= Delta:
        raise ValueError("deg_d must be smaller than Delta")
    return 1 + _ceil_log(sigma_size, 2 * (Delta - deg_d))


def igs_size_h_fq(g: int, dbar: int, q: int, eta) -> int:
    """Candidate size for uniform draws from a full section space over F_q:
    max(1 + ceil((2g-1)/(dbar-1)), 1 + ceil(log(6g/eta)/log q)).

    Informational: valid only when sampling the whole space, not a subspace,
    so the conversion routines here do not rely on it.
    """
    if g < 1 or dbar < 2:
        raise ValueError("need g >= 1 and dbar >= 2")
    eta = Fraction(eta)
    if not 0 < eta < 1:
        raise ValueError("eta must lie in (0, 1)")
    first = 1 + -((-(2 * g - 1)) // (dbar - 1))
    m, value = 0, Fraction(1)
    while value * eta < 6 * g:
        value *= q
        m += 1
    return max(first, 1 + m)


def sigma_random_element(field, space: Subspace, rng) -> np.ndarray:
    """Sigma-random combination of the canonical basis of the space."""
    coeffs = np.array([rng.randrange(field.sigma_size) for _ in range(space.dim)],
                      dtype=linalg.dtype_for(field))
    return space.basis.dot(coeffs) % field.p


def igs_candidate(rep, space: Subspace, h: int, rng) -> list[np.ndarray]:
    """First canonical basis column plus h-1 Sigma-random elements."""
    if space.dim == 0:
        raise EmptySpace("cannot draw sections from the zero space")
    first = space.basis[:, 0].copy()
    return [first] + [sigma_random_element(rep.field, space, rng) for _ in range(h - 1)]


def random_igs_candidate(rep, d: DivisorFull, rng) -> DivisorBrief:
    """Unverified brief-representation candidate for D (verify with is_igs)."""
    h = igs_size_h(rep.Delta, d.degree, rep.field.sigma_size)
    return DivisorBrief(tuple(igs_candidate(rep, d.space, h, rng)))


def is_igs(rep, brief: DivisorBrief, expected_codim: int) -> bool:
    """Whether the sections generate exactly a divisor of the expected degree.

    The sum of products s_1*V + ... + s_h*V always lands inside W'_D, so for
    2g-1 <= deg D the test reduces to comparing codimensions in V'.
    """
    dim = curverep.sum_of_products_dim(rep, brief.sections, rep.full_v())
    return rep.delta_prime - dim == expected_codim


def deflate(rep, d: DivisorFull, rng, stats: RetryStats | None = None) -> DivisorBrief:
    """Las Vegas full-to-brief conversion; output is always verified."""
    if not 2 * rep.g - 1 <= d.degree <= rep.Delta - 2 * rep.g:
        raise PreconditionDegree(
            f"deflation needs 2g-1 <= deg D <= Delta-2g, got deg D = {d.degree}")
    for attempt in range(1, _LOOP_CAP + 1):
        brief = random_igs_candidate(rep, d, rng)
        if is_igs(rep, brief, d.degree):
            if stats is not None:
                stats.record(attempt)
            return brief
    raise LasVegasExhausted("deflation failed repeatedly; data is likely inconsistent")


def star_mult_matrix(cubic: CubicData, field, s: np.ndarray) -> np.ndarray:
    """Matrix of s * . from V'-coordinates to V''-coordinates."""
    return np.tensordot(s, cubic.star_tables, axes=(0, 0)) % field.p


def igs_for_v(rep, cubic: CubicData, rng, stats: RetryStats | None = None) -> IgsV:
    """Verified generating set for the zero divisor (Las Vegas).

    Verification needs the cubic level: the candidates generate V exactly
    when their star-products with V' fill all of V''.
    """
    if rep.kind != "a":
        raise ValueError("igs_for_v runs on the multiplication-table form")
    h = igs_size_h(rep.Delta, 0, rep.field.sigma_size)
    full = rep.full_v()
    for attempt in range(1, _LOOP_CAP + 1):
        sections = igs_candidate(rep, full, h, rng)
        stacked = np.hstack([star_mult_matrix(cubic, rep.field, s) for s in sections])
        if linalg.matrix_rank(rep.field, stacked) == cubic.delta_pp:
            if stats is not None:
                stats.record(attempt)
            return IgsV(tuple(sections))
    raise LasVegasExhausted("could not find a generating set for V")


def verify_igs_v(rep, cubic: CubicData, sections) -> bool:
    stacked = np.hstack([star_mult_matrix(cubic, rep.field, s) for s in sections])
    return linalg.matrix_rank(rep.field, stacked) == cubic.delta_pp


def inflate(rep, brief: DivisorBrief, defl_v: IgsV) -> DivisorFull:
    """Deterministic brief-to-full conversion (needs deg D >= 2g-1)."""
    wprime = curverep.sum_of_products(rep, brief.sections, rep.full_v())
    space = curverep.divide(rep, wprime, defl_v.sections)
    return divisor_from_space(rep, space)


def flip(rep, d: DivisorFull, rng, s: np.ndarray | None = None,
         defl: DivisorBrief | None = None, stats: RetryStats | None = None) -> DivisorFull:
    """Complementary divisor: for s in W_D with (s) = D + E, compute W_E.

    The result satisfies deg E = Delta - deg D; the flip is computed as the
    division of s*V by a brief representation of D.
    """
    if not 2 * rep.g - 1 <= d.degree <= rep.Delta - 2 * rep.g:
        raise PreconditionDegree(
            f"flip needs 2g-1 <= deg D <= Delta-2g, got deg D = {d.degree}")
    if s is None:
        if d.space.dim == 0:
            raise EmptySpace("cannot flip the zero space")
        s = d.space.basis[:, 0].copy()
    if not np.count_nonzero(s):
        raise curverep.ZeroSection("flip needs a nonzero section of W_D")
    if defl is None:
        defl = deflate(rep, d, rng, stats)
    s_v = curverep._apply_mul(rep, s, rep.full_v().basis)
    out = divisor_from_space(rep, curverep.divide_raw(rep, s_v, defl.sections))
    assert out.degree == rep.Delta - d.degree, "flip degree law violated"
    return out


def membership_test(rep, w: Subspace, defl_v: IgsV, rng,
                    stats: RetryStats | None = None) -> bool:
    """Whether W equals W_D for D its own common-zero divisor (Las Vegas).

    Draws candidate generating sets from W; a deficient sum-of-products
    codimension certifies W != W_D, an excessive one triggers a redraw, and
    on an exact match the division by the generating set of V reconstructs
    W_D for a bit-exact comparison.
    """
    c = rep.delta - w.dim
    if not 2 * rep.g <= c <= rep.Delta - 2 * rep.g:
        raise PreconditionCodim(
            f"membership test needs 2g <= codim <= Delta-2g, got codim = {c}")
    h = igs_size_h(rep.Delta, 0, rep.field.sigma_size)
    for attempt in range(1, _LOOP_CAP + 1):
        sections = igs_candidate(rep, w, h, rng)
        u_prime = curverep.sum_of_products(rep, sections, rep.full_v())
        c_prime = rep.delta_prime - u_prime.dim
        if c_prime > c:
            continue
        if stats is not None:
            stats.record(attempt)
        if c_prime < c:
            return False
        u = curverep.divide(rep, u_prime, defl_v.sections)
        return u == w
    raise LasVegasExhausted("membership test failed to draw a generating set")
