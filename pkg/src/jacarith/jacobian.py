"""Divisor-class group operations in the large model.

A class x is represented by the section space W_D of an effective divisor D
of degree d ("small", class of D - D_0) or 2d ("large", class of D - 2*D_0),
where D_0 is a fixed degree-d divisor and the curve's line bundle has degree
Delta = 3d.  The primitive group operation is the addflip (x, y) -> -(x+y),
from which negation and addition are derived; equality of classes is a
single division with a nonzero-ness check.

Las Vegas steps that the interface does not thread a stream through
(class-equality deflations, lazy precomputations) draw from streams keyed by
the operand data, so every run is replayable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import curverep, divisors, linalg
from .divisors import CubicData, DivisorBrief, DivisorFull, IgsV, RetryStats
from .field import RandomStream, stream_from_bytes
from .linalg import Subspace

SMALL = "small"
LARGE = "large"


class TagMismatch(ValueError):
    """Operands carry different size tags."""


class InconsistentPrecomp(ValueError):
    """Generator-supplied large-model data fails its consistency checks."""


@dataclass(frozen=True)
class JacobianPoint:
    tag: str
    divisor: DivisorFull

    @property
    def space(self) -> Subspace:
        return self.divisor.space


@dataclass
class LargeModelPrecomp:
    """Generator-supplied inputs for building a large model."""

    d: int
    w_d0: Subspace
    w_2d0: Subspace
    s0: np.ndarray
    cubic: CubicData | None = None
    defl_v_sections: tuple | None = None  # pre-verified generating set for V


class LargeModel:
    """Immutable precomputation bundle for group operations on one curve."""

    def __init__(self, rep, d: int, w_d0: DivisorFull, w_2d0: DivisorFull,
                 s0: np.ndarray, defl_d0: DivisorBrief, defl_2d0: DivisorBrief,
                 defl_v: IgsV | None, cubic: CubicData | None, salt: str,
                 stats: RetryStats):
        self.rep = rep
        self.g = rep.g
        self.d = d
        self.Delta = rep.Delta
        self.W_D0 = w_d0
        self.W_2D0 = w_2d0
        self.s0 = s0
        self.defl_D0 = defl_d0
        self.defl_2D0 = defl_2d0
        self._defl_v = defl_v
        self._cubic = cubic
        self._salt = salt
        self.stats = stats

    @property
    def defl_v(self) -> IgsV:
        """Generating set for V, needed by membership tests and inflation."""
        if self._defl_v is None:
            if self._cubic is None:
                raise InconsistentPrecomp(
                    "no cubic data available to produce a generating set for V")
            rng = stream_from_bytes(self._salt.encode(), b"defl-v")
            self._defl_v = divisors.igs_for_v(self.rep, self._cubic, rng, self.stats)
        return self._defl_v


def make_large_model(rep, precomp: LargeModelPrecomp, rng: RandomStream,
                     compute_defl_v: bool = True) -> LargeModel:
    """Check the generator data and run the one-time precomputations."""
    d = precomp.d
    if d < 2:
        raise InconsistentPrecomp(f"base degree d must be at least 2, got {d}")
    if rep.Delta != 3 * d:
        raise InconsistentPrecomp(f"Delta must equal 3*d, got {rep.Delta} vs d={d}")
    if 3 * d < 2 * rep.g + 2:
        raise InconsistentPrecomp("Delta = 3d must be at least 2g+2")
    w_d0 = divisors.divisor_from_space(rep, precomp.w_d0)
    w_2d0 = divisors.divisor_from_space(rep, precomp.w_2d0)
    if w_d0.degree != d or w_2d0.degree != 2 * d:
        raise InconsistentPrecomp(
            f"stored spaces have degrees {w_d0.degree}, {w_2d0.degree}; expected {d}, {2 * d}")
    s0 = precomp.s0 % rep.field.p
    if not np.count_nonzero(s0):
        raise InconsistentPrecomp("s0 must be nonzero")
    if not (linalg.contains_vector(w_d0.space, s0)
            and linalg.contains_vector(w_2d0.space, s0)):
        raise InconsistentPrecomp("s0 must lie in both stored spaces")

    stats = RetryStats()
    defl_d0 = divisors.deflate(rep, w_d0, rng.split("defl-d0"), stats)
    defl_2d0 = divisors.deflate(rep, w_2d0, rng.split("defl-2d0"), stats)
    defl_v = None
    if precomp.defl_v_sections is not None:
        defl_v = IgsV(tuple(precomp.defl_v_sections))
    elif compute_defl_v and precomp.cubic is not None:
        defl_v = divisors.igs_for_v(rep, precomp.cubic, rng.split("defl-v"), stats)
    return LargeModel(rep, d, w_d0, w_2d0, s0, defl_d0, defl_2d0,
                      defl_v, precomp.cubic, rng.seed, stats)


def zero_point(model: LargeModel, tag: str) -> JacobianPoint:
    """The identity class: W_{D_0} (small) or W_{2 D_0} (large)."""
    _check_tag(tag)
    return JacobianPoint(tag, model.W_D0 if tag == SMALL else model.W_2D0)


def _check_tag(tag: str) -> None:
    if tag not in (SMALL, LARGE):
        raise TagMismatch(f"unknown size tag {tag!r}")


def _space_bytes(space: Subspace) -> bytes:
    b = space.basis
    if b.dtype == object:
        return repr(b.tolist()).encode()
    return b.shape[0].to_bytes(4, "big") + b.shape[1].to_bytes(4, "big") + b.tobytes()


def _content_stream(model: LargeModel, label: str, *spaces: Subspace) -> RandomStream:
    return stream_from_bytes(model._salt.encode(), label.encode(),
                             *(_space_bytes(s) for s in spaces))


def _defl_of(model: LargeModel, d: DivisorFull,
             rng: RandomStream | None = None) -> DivisorBrief:
    """Brief representation of a divisor, reusing the stored ones for D_0, 2*D_0."""
    if d.space == model.W_D0.space:
        return model.defl_D0
    if d.space == model.W_2D0.space:
        return model.defl_2D0
    if rng is None:
        rng = _content_stream(model, "defl", d.space)
    return divisors.deflate(model.rep, d, rng, model.stats)


def equal_class(model: LargeModel, x: JacobianPoint, y: JacobianPoint) -> bool:
    """Whether x and y are the same divisor class.

    Divides s * W_E by a brief representation of D (s the first canonical
    section of W_D); the quotient space is nonzero exactly when the classes
    agree.  The intermediate divisor has degree Delta, beyond the usual
    comfort range, but the division is still exact.
    """
    if x.tag != y.tag:
        raise TagMismatch(f"cannot compare {x.tag} with {y.tag}")
    if x.space == y.space:
        return True
    rep = model.rep
    s = x.space.basis[:, 0].copy()
    defl_x = _defl_of(model, x.divisor)
    s_we = curverep._apply_mul(rep, s, y.space.basis)
    return curverep.divide_is_nonzero(rep, s_we, defl_x.sections)


def addflip_small(model: LargeModel, x: JacobianPoint, y: JacobianPoint,
                  rng: RandomStream) -> JacobianPoint:
    """addflip on small representatives: flip, divide, flip again."""
    _require(model, x, SMALL)
    _require(model, y, SMALL)
    rep = model.rep
    if y.space == model.W_D0.space and x.space != model.W_D0.space:
        x, y = y, x  # the result class is symmetric; favor the stored shortcut
    if x.space == model.W_D0.space:
        # x is the stored identity: s0 flips D_0 to 2*D_0, whose brief
        # representation is precomputed, so the first flip is free.
        s = model.s0
        defl_dt = model.defl_2D0
    else:
        s = x.space.basis[:, 0].copy()
        defl_d = divisors.deflate(rep, x.divisor, rng, model.stats)
        d_tilde = divisors.flip(rep, x.divisor, rng, s=s, defl=defl_d)
        defl_dt = divisors.deflate(rep, d_tilde, rng, model.stats)
    s_we = curverep._apply_mul(rep, s, y.space.basis)
    w_de = divisors.divisor_from_space(
        rep, curverep.divide_raw(rep, s_we, defl_dt.sections))
    assert w_de.degree == 2 * model.d, "sum divisor must be large"
    out = divisors.flip(rep, w_de, rng, stats=model.stats)
    return JacobianPoint(SMALL, out)


def addflip_large(model: LargeModel, x: JacobianPoint, y: JacobianPoint,
                  rng: RandomStream) -> JacobianPoint:
    """addflip on large representatives: one flip and one divide."""
    _require(model, x, LARGE)
    _require(model, y, LARGE)
    rep = model.rep
    d_tilde = divisors.flip(rep, x.divisor, rng,
                            defl=_defl_of(model, x.divisor, rng))
    s = y.space.basis[:, 0].copy()
    defl_e = _defl_of(model, y.divisor, rng)
    raw = curverep._apply_mul(rep, s, d_tilde.space.basis)
    out = divisors.divisor_from_space(
        rep, curverep.divide_raw(rep, raw, defl_e.sections))
    assert out.degree == 2 * model.d, "addflip of large divisors must stay large"
    return JacobianPoint(LARGE, out)


def addflip(model: LargeModel, x: JacobianPoint, y: JacobianPoint,
            rng: RandomStream) -> JacobianPoint:
    if x.tag != y.tag:
        raise TagMismatch(f"cannot addflip {x.tag} with {y.tag}")
    if x.tag == SMALL:
        return addflip_small(model, x, y, rng)
    return addflip_large(model, x, y, rng)


def negate(model: LargeModel, x: JacobianPoint, rng: RandomStream) -> JacobianPoint:
    return addflip(model, x, zero_point(model, x.tag), rng)


def add(model: LargeModel, x: JacobianPoint, y: JacobianPoint,
        rng: RandomStream) -> JacobianPoint:
    return negate(model, addflip(model, x, y, rng), rng)


def scalar_mul(model: LargeModel, n: int, x: JacobianPoint,
               rng: RandomStream) -> JacobianPoint:
    """n-fold sum by double-and-add over add/negate."""
    if n == 0:
        return zero_point(model, x.tag)
    if n < 0:
        return negate(model, scalar_mul(model, -n, x, rng), rng)
    acc = None
    base = x
    while n:
        if n & 1:
            acc = base if acc is None else add(model, acc, base, rng)
        n >>= 1
        if n:
            base = add(model, base, base, rng)
    return acc


def _require(model: LargeModel, x: JacobianPoint, tag: str) -> None:
    if x.tag != tag:
        raise TagMismatch(f"expected a {tag} point, got {x.tag}")
    expected = model.d if tag == SMALL else 2 * model.d
    if x.divisor.degree != expected:
        raise TagMismatch(
            f"{tag} point must have degree {expected}, got {x.divisor.degree}")
