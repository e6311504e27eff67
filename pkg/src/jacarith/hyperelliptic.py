"""Hyperelliptic instance generator with ground-truth data.

Curves are in the odd-degree model y^2 + h(x) y = f(x) with f monic of
degree 2g+1 (h = 0 in odd characteristic, h = 1 over F_2), so there is a
single point at infinity and every space of sections with poles only at
infinity has a monomial basis: x^i has pole order 2i there and x^j y has
pole order 2j + 2g + 1, all distinct.  That makes the multiplication tables,
the cubic-level tables, and the stored spaces for the large model exact and
cheap: products of basis monomials reduce by the single relation
y^2 = f - h y.

The generated bundle exposes the curve only through table/value data; the
function-field layer stays in this module (and in the Mumford oracle).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import linalg, poly
from .curverep import RepA, RepB0, validate_rep
from .divisors import CubicData
from .field import PrimeField, RandomStream, make_prime_field, sqrt_mod
from .jacobian import LargeModel, LargeModelPrecomp, make_large_model
from .linalg import Subspace

BUNDLE_FORMAT = "curve-bundle"
BUNDLE_VERSION = 1

_SMOOTHNESS_RETRIES = 200


class SingularCurve(ValueError):
    """No smooth curve found (bad f, or random retries exhausted)."""


class BadCharacteristic(ValueError):
    """The requested curve model is not available in this characteristic."""


class InsufficientRationalPoints(ValueError):
    """Fewer affine rational points than evaluation slots."""


class MalformedFile(ValueError):
    """A curve-bundle file failed to parse or failed its shape checks."""


class VersionMismatch(ValueError):
    """A curve-bundle file carries an unsupported format version."""


@dataclass(frozen=True)
class HyperellipticCurve:
    """y^2 + h(x) y = f(x), f monic of degree 2g+1, one point at infinity."""

    g: int
    p: int
    f: tuple
    h: tuple


@dataclass(frozen=True)
class BridgeInfo:
    """Metadata linking a representation back to the generating curve."""

    curve: HyperellipticCurve
    monomials: tuple  # V-basis as (xdeg, ydeg, pole_order), sorted by pole
    a_v: np.ndarray | None = None  # evaluation matrix for point-value form


def make_curve(g: int, p: int, f, h=None) -> HyperellipticCurve:
    f = poly.trim(c % p for c in f)
    if poly.deg(f) != 2 * g + 1 or f[-1] != 1:
        raise SingularCurve(f"f must be monic of degree {2 * g + 1}")
    if h is None:
        h = (1,) if p == 2 else ()
    else:
        h = poly.trim(c % p for c in h)
    if p == 2:
        if not h:
            raise BadCharacteristic("y^2 = f(x) is singular over F_2; need h != 0")
        if h != (1,):
            raise BadCharacteristic("only the h = 1 model is supported over F_2")
    else:
        if h:
            raise BadCharacteristic("odd-characteristic model is y^2 = f(x)")
        if not poly.is_squarefree(f, p):
            raise SingularCurve("f has a repeated root; the curve is singular")
    return HyperellipticCurve(g, p, f, h)


def pole_order(curve: HyperellipticCurve, xdeg: int, ydeg: int) -> int:
    return 2 * xdeg + ydeg * (2 * curve.g + 1)


def basis_monomials(curve: HyperellipticCurve, bound: int) -> list:
    """Monomials x^a y^e (e <= 1) of pole order <= bound, sorted by pole order."""
    out = [(a, 0, 2 * a) for a in range(bound // 2 + 1)]
    step = 2 * curve.g + 1
    out += [(a, 1, 2 * a + step) for a in range((bound - step) // 2 + 1) if step <= bound]
    out.sort(key=lambda m: m[2])
    return out


def _monomial_product(curve: HyperellipticCurve, m1, m2) -> list:
    """Product of two basis monomials as [(xdeg, ydeg, coeff)], reduced by
    y^2 -> f - h*y."""
    a = m1[0] + m2[0]
    e = m1[1] + m2[1]
    if e <= 1:
        return [(a, e, 1)]
    p = curve.p
    terms = [(a + i, 0, c) for i, c in enumerate(curve.f) if c]
    terms += [(a + j, 1, (-c) % p) for j, c in enumerate(curve.h) if c]
    return terms


def _build_tables(curve: HyperellipticCurve, field: PrimeField,
                  left: list, right: list, out: list) -> np.ndarray:
    """Tables[i][k][j] = coefficient of out[k] in left[i] * right[j]."""
    index = {(a, e): k for k, (a, e, _) in enumerate(out)}
    symmetric = left is right
    cache: dict = {}
    ii, kk, jj, vv = [], [], [], []
    for i, mi in enumerate(left):
        for j, mj in enumerate(right):
            if symmetric and j < i:
                continue
            key = (mi[0] + mj[0], mi[1] + mj[1])
            terms = cache.get(key)
            if terms is None:
                terms = [(index[(a, e)], c)
                         for a, e, c in _monomial_product(curve, mi, mj)]
                cache[key] = terms
            for k, c in terms:
                ii.append(i)
                kk.append(k)
                jj.append(j)
                vv.append(c)
                if symmetric and j > i:
                    ii.append(j)
                    kk.append(k)
                    jj.append(i)
                    vv.append(c)
    tables = linalg.zeros(field, len(left) * len(out), len(right)).reshape(
        len(left), len(out), len(right))
    tables[ii, kk, jj] = np.array(vv, dtype=linalg.dtype_for(field))
    return tables


class CurveBundle:
    """A generated curve instance: representations plus ground-truth data."""

    def __init__(self, curve: HyperellipticCurve, field: PrimeField, Delta: int,
                 d: int | None, rep_a: RepA, v_monomials: list, rep_b0: RepB0 | None = None):
        self.curve = curve
        self.field = field
        self.Delta = Delta
        self.d = d
        self.rep_a = rep_a
        self.v_monomials = v_monomials
        self.rep_b0 = rep_b0
        self._cubic: CubicData | None = None

    @property
    def g(self) -> int:
        return self.curve.g

    @property
    def p(self) -> int:
        return self.curve.p

    def cubic(self) -> CubicData:
        """Level-three tables, built on demand (large for big genus)."""
        if self._cubic is None:
            vp = basis_monomials(self.curve, 2 * self.Delta)
            vpp = basis_monomials(self.curve, 3 * self.Delta)
            delta_pp = 3 * self.Delta + 1 - self.g
            if len(vpp) != delta_pp:
                raise SingularCurve("cubic-level dimension mismatch")
            star = _build_tables(self.curve, self.field, self.v_monomials, vp, vpp)
            self._cubic = CubicData(delta_pp, star)
        return self._cubic

    def _monomial_space(self, rep, pole_bound: int) -> Subspace:
        cols = [j for j, (_, _, pole) in enumerate(self.v_monomials) if pole <= pole_bound]
        if rep.kind == "a":
            basis = linalg.zeros(self.field, rep.n, len(cols))
            for k, j in enumerate(cols):
                basis[j, k] = 1
            return Subspace(self.field, rep.n, basis)
        return linalg.column_echelon(self.field, rep.a_v[:, cols])

    def precomp(self, tag: str = "a", rng: RandomStream | None = None,
                with_cubic: bool = True) -> tuple:
        """(rep, LargeModelPrecomp) for the requested representation."""
        if self.d is None:
            raise ValueError("this bundle has no large-model degree d")
        if tag == "a":
            rep = self.rep_a
            cubic = self.cubic() if with_cubic else None
            pre = LargeModelPrecomp(
                d=self.d,
                w_d0=self._monomial_space(rep, self.Delta - self.d),
                w_2d0=self._monomial_space(rep, self.Delta - 2 * self.d),
                s0=rep.full_v().basis[:, 0].copy(),
                cubic=cubic)
            return rep, pre
        if tag == "b0":
            if self.rep_b0 is None:
                raise ValueError("bundle has no point-value representation; run gen_rep_b0")
            rep = self.rep_b0
            sections = None
            if with_cubic:
                from . import divisors
                igs_rng = rng.split("igs-v") if rng else RandomStream("igs-v")
                igs = divisors.igs_for_v(self.rep_a, self.cubic(), igs_rng)
                sections = tuple(self.to_b0_vector(s) for s in igs.sections)
            pre = LargeModelPrecomp(
                d=self.d,
                w_d0=self._monomial_space(rep, self.Delta - self.d),
                w_2d0=self._monomial_space(rep, self.Delta - 2 * self.d),
                s0=rep.a_v[:, 0].copy(),
                defl_v_sections=sections)
            return rep, pre
        raise ValueError(f"unknown representation tag {tag!r}")

    def large_model(self, rng: RandomStream, tag: str = "a",
                    compute_defl_v: bool = True) -> LargeModel:
        rep, pre = self.precomp(tag, rng, with_cubic=compute_defl_v)
        return make_large_model(rep, pre, rng, compute_defl_v=compute_defl_v)

    def to_b0_vector(self, s: np.ndarray) -> np.ndarray:
        """Map a section from table coordinates to its point-value vector."""
        if self.rep_b0 is None:
            raise ValueError("bundle has no point-value representation")
        return self.rep_b0.a_v.dot(s) % self.field.p

    def to_b0_space(self, space: Subspace) -> Subspace:
        if self.rep_b0 is None:
            raise ValueError("bundle has no point-value representation")
        return linalg.column_echelon(
            self.field, self.rep_b0.a_v.dot(space.basis) % self.field.p)


def _random_f(g: int, p: int, rng: RandomStream) -> tuple:
    for _ in range(_SMOOTHNESS_RETRIES):
        f = poly.random_monic(2 * g + 1, p, rng)
        if p == 2 or poly.is_squarefree(f, p):
            return f
    raise SingularCurve("no squarefree f found; modulus too small for this genus")


def build_rep_a(curve: HyperellipticCurve, field: PrimeField, Delta: int) -> tuple:
    """(RepA, V-monomials) for the line bundle of degree Delta at infinity."""
    v = basis_monomials(curve, Delta)
    vp = basis_monomials(curve, 2 * Delta)
    g = curve.g
    if len(v) != Delta + 1 - g or len(vp) != 2 * Delta + 1 - g:
        raise SingularCurve("monomial basis has unexpected dimension")
    tables = _build_tables(curve, field, v, v, vp)
    rep = RepA(field, g, Delta, tables,
               bridge_info=BridgeInfo(curve, tuple(v)))
    return rep, v


def gen_hyperelliptic(g: int, p: int, f=None, rng: RandomStream | None = None,
                      d: int | None = None) -> CurveBundle:
    """Generate a genus-g curve bundle over F_p with large-model data.

    Default d = max(2g, 2) and Delta = 3d.  With f omitted, a random
    smooth curve is drawn from the stream.
    """
    if g < 1:
        raise ValueError("genus must be at least 1")
    field = make_prime_field(p)
    if rng is None:
        rng = RandomStream(0)
    if d is None:
        d = max(2 * g, 2)
    Delta = 3 * d
    curve = make_curve(g, p, f if f is not None else _random_f(g, p, rng))
    rep, v = build_rep_a(curve, field, Delta)
    report = validate_rep(rep)
    if not report.passed:
        raise SingularCurve(f"generated tables failed validation: {report.failures()}")
    return CurveBundle(curve, field, Delta, d, rep, v)


def gen_paper_fixture(p: int = 1009) -> CurveBundle:
    """The reference elliptic curve y^2 = x^3 + 1 with a degree-4 bundle.

    Basis {1, x, y, x^2} for V and {1, x, y, x^2, xy, x^3, x^2 y, x^4} for
    V'; used as a golden fixture for the multiplication table.  No
    large-model data (4 is not of the form 3d).
    """
    if p in (2, 3):
        raise BadCharacteristic("fixture needs characteristic away from 2 and 3")
    field = make_prime_field(p)
    curve = make_curve(1, p, (1, 0, 0, 1))
    rep, v = build_rep_a(curve, field, 4)
    return CurveBundle(curve, field, 4, None, rep, v)


def _affine_points(curve: HyperellipticCurve, rng: RandomStream, count: int) -> list:
    """Distinct affine rational points, order seeded by the stream."""
    p = curve.p
    points = []
    if p == 2:
        xs = [0, 1]
        rng.shuffle(xs)
        for x in xs:
            fx = poly.evaluate(curve.f, x, p)
            for y in (0, 1):
                if (y * y + poly.evaluate(curve.h, x, p) * y - fx) % p == 0:
                    points.append((x, y))
    else:
        xs = list(range(p)) if p <= 1 << 16 else None
        if xs is not None:
            rng.shuffle(xs)
        else:
            seen = set()
            xs = []
            while len(xs) < 4 * count:
                x = rng.randrange(p)
                if x not in seen:
                    seen.add(x)
                    xs.append(x)
        for x in xs:
            fx = poly.evaluate(curve.f, x, p)
            if fx == 0:
                points.append((x, 0))
            else:
                y = sqrt_mod(fx, p)
                if y is not None:
                    points.append((x, y))
                    points.append((x, p - y))
            if len(points) >= count:
                break
    if len(points) < count:
        raise InsufficientRationalPoints(
            f"need {count} affine points, found {len(points)} over F_{p}")
    return points[:count]


def _value_matrix(curve: HyperellipticCurve, field: PrimeField,
                  monomials, points) -> np.ndarray:
    a = linalg.zeros(field, len(points), len(monomials))
    p = field.p
    for n, (x, y) in enumerate(points):
        for j, (xd, yd, _) in enumerate(monomials):
            a[n, j] = pow(x, xd, p) * (y if yd else 1) % p
    return a


def gen_rep_b0(bundle: CurveBundle, rng: RandomStream) -> CurveBundle:
    """Attach a point-value representation at N = 2*Delta + 1 affine points.

    Cross-checks that evaluation intertwines the two multiplication rules
    before returning.
    """
    n = 2 * bundle.Delta + 1
    points = _affine_points(bundle.curve, rng, n)
    a_v = _value_matrix(bundle.curve, bundle.field, bundle.v_monomials, points)
    rep = RepB0(bundle.field, bundle.g, bundle.Delta, a_v, points,
                bridge_info=BridgeInfo(bundle.curve, tuple(bundle.v_monomials), a_v))
    report = validate_rep(rep)
    if not report.passed:
        raise InsufficientRationalPoints(
            f"point-value data failed validation: {report.failures()}")
    # evaluation must turn table products into componentwise products
    vp = basis_monomials(bundle.curve, 2 * bundle.Delta)
    a_vp = _value_matrix(bundle.curve, bundle.field, vp, points)
    from . import curverep
    for _ in range(8):
        i = rng.randrange(bundle.rep_a.delta)
        j = rng.randrange(bundle.rep_a.delta)
        ti = bundle.rep_a.full_v().basis[:, i]
        tj = bundle.rep_a.full_v().basis[:, j]
        lhs = a_vp.dot(curverep.product(bundle.rep_a, ti, tj)) % bundle.field.p
        rhs = a_v[:, i] * a_v[:, j] % bundle.field.p
        if np.count_nonzero(lhs - rhs):
            raise InsufficientRationalPoints("evaluation failed the product cross-check")
    bundle.rep_b0 = rep
    return bundle


# ---------------------------------------------------------------------------
# Bundle files: JSON with explicit tables so the file alone defines the rep.
# ---------------------------------------------------------------------------


def save_bundle(bundle: CurveBundle, path: str, rep: str = "a") -> None:
    if rep == "b0" and bundle.rep_b0 is None:
        raise ValueError("bundle has no point-value representation to save")
    doc = {
        "format": BUNDLE_FORMAT,
        "version": BUNDLE_VERSION,
        "p": bundle.p,
        "g": bundle.g,
        "Delta": bundle.Delta,
        "d": bundle.d,
        "rep": rep,
        "curve": {"f": list(bundle.curve.f), "h": list(bundle.curve.h)},
        "tables": {
            "shape": list(bundle.rep_a.tables.shape),
            "entries": [int(c) for c in bundle.rep_a.tables.reshape(-1)],
        },
        "rep_b0": None,
    }
    if bundle.rep_b0 is not None:
        doc["rep_b0"] = {
            "points": [[int(x), int(y)] for x, y in bundle.rep_b0.points],
            "a_v": {
                "shape": list(bundle.rep_b0.a_v.shape),
                "entries": [int(c) for c in bundle.rep_b0.a_v.reshape(-1)],
            },
        }
    with open(path, "w") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def _load_array(field: PrimeField, spec, expected_shape) -> np.ndarray:
    shape = tuple(spec["shape"])
    entries = spec["entries"]
    if shape != tuple(expected_shape) or len(entries) != int(np.prod(shape)):
        raise MalformedFile(f"array has shape {shape}, expected {tuple(expected_shape)}")
    flat = np.array(entries, dtype=linalg.dtype_for(field)) % field.p
    return flat.reshape(shape)


def load_bundle(path: str) -> CurveBundle:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedFile(f"cannot parse bundle file: {exc}") from exc
    try:
        if doc.get("format") != BUNDLE_FORMAT:
            raise MalformedFile("not a curve-bundle file")
        if doc.get("version") != BUNDLE_VERSION:
            raise VersionMismatch(f"unsupported bundle version {doc.get('version')}")
        p, g, Delta, d = doc["p"], doc["g"], doc["Delta"], doc["d"]
        field = make_prime_field(p)
        curve = make_curve(g, p, doc["curve"]["f"], doc["curve"]["h"] or None)
        delta = Delta + 1 - g
        delta_prime = 2 * Delta + 1 - g
        tables = _load_array(field, doc["tables"], (delta, delta_prime, delta))
        v = basis_monomials(curve, Delta)
        rep = RepA(field, g, Delta, tables, bridge_info=BridgeInfo(curve, tuple(v)))
        bundle = CurveBundle(curve, field, Delta, d, rep, v)
        if doc.get("rep_b0"):
            b0 = doc["rep_b0"]
            n = 2 * Delta + 1
            a_v = _load_array(field, b0["a_v"], (n, delta))
            points = [(int(x), int(y)) for x, y in b0["points"]]
            if len(points) != n:
                raise MalformedFile(f"expected {n} evaluation points, got {len(points)}")
            bundle.rep_b0 = RepB0(field, g, Delta, a_v, points,
                                  bridge_info=BridgeInfo(curve, tuple(v), a_v))
        return bundle
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, (MalformedFile, VersionMismatch)):
            raise
        raise MalformedFile(f"bundle file is missing or corrupts fields: {exc}") from exc
