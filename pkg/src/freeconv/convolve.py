"""Additive and multiplicative free convolutions, their classical analogues,
and the logarithm/exponential morphisms connecting them.

Additive convolution adds free cumulant sequences; the Hadamard convolution
multiplies them componentwise.  Multiplicative convolution works in moment
coordinates through the S-transform, and the log map carries it back to
addition: the image measure's cumulant generating series is S'/S.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import infdiv
from .measures import (CLASSICAL, FREE, KERNEL_RHO, KERNEL_SIGMA, CumulantSeq,
                       Dirac, FreePoisson, LevyPair, LK, Semicircle,
                       family_to_levy_pair, sigma_to_rho)
from .partitions import MomentSeq
from .series import COMPLEX, EXACT, REAL, SeriesError, TruncatedSeries

UHP_REGION = "upper-halfplane"
INTERVAL_REGION = "interval-[-1,0]"
DEFAULT_INTERVAL_RADIUS = Fraction(1, 10)


class TransformError(ValueError):
    """A transform precondition failed (vanishing first moment, bad branch)."""


class GermCheckError(ValueError):
    """Analyticity-region membership could not be established."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


def _pairwise(mu, nu, kind):
    mu.require(kind)
    nu.require(kind)
    if mu.order != nu.order:
        raise ValueError("order mismatch: %d vs %d" % (mu.order, nu.order))
    return mu.values, nu.values


def boxplus(mu, nu):
    """Free additive convolution: cumulants add."""
    a, b = _pairwise(mu, nu, FREE)
    return CumulantSeq(FREE, tuple(x + y for x, y in zip(a, b)))


def boxdot(mu, nu):
    """Hadamard convolution: cumulants multiply componentwise."""
    a, b = _pairwise(mu, nu, FREE)
    return CumulantSeq(FREE, tuple(x * y for x, y in zip(a, b)))


def classical_convolve(mu, nu):
    """Classical additive convolution: classical cumulants add."""
    a, b = _pairwise(mu, nu, CLASSICAL)
    return CumulantSeq(CLASSICAL, tuple(x + y for x, y in zip(a, b)))


def star(mu, nu):
    """Componentwise product of classical cumulant sequences."""
    a, b = _pairwise(mu, nu, CLASSICAL)
    return CumulantSeq(CLASSICAL, tuple(x * y for x, y in zip(a, b)))


@dataclass(frozen=True)
class STransform:
    """The multiplicative transform S(z) = s_0 + s_1 z + ... with s_0 != 0."""

    series: TruncatedSeries

    def __post_init__(self):
        if self.series.coeffs[0] == 0:
            raise TransformError("the S-transform needs s_0 != 0")

    @property
    def order(self):
        return self.series.order

    @property
    def backend(self):
        return self.series.backend

    def __mul__(self, other):
        return STransform(self.series * other.series)

    def to_json_dict(self):
        return self.series.to_json_dict()


def s_transform(m):
    """S-transform of a moment sequence with nonvanishing first moment.

    Built as S(z) = chi(z)(1+z)/z where chi is the compositional inverse of
    psi(z) = sum m_n z^n.  N input moments pin the transform to order N-1.
    """
    vals = m.values
    if len(vals) < 2:
        raise TransformError("the S-transform needs at least two moments")
    if vals[0] == 0:
        raise TransformError("the S-transform needs a nonvanishing first moment")
    backend = EXACT if all(isinstance(v, Fraction) for v in vals) else REAL
    psi = TruncatedSeries([0] + list(vals), backend)
    chi = psi.comp_inverse().coeffs
    out = [chi[1]]
    for n in range(1, len(vals)):
        out.append(chi[n + 1] + chi[n])
    return STransform(TruncatedSeries(out, backend))


def moments_from_s(s):
    """Moments of the measure with the given S-transform (inverse of
    s_transform): S of order N-1 determines m_1..m_N."""
    ser = s.series
    n_out = ser.order + 1
    chi = [ser.coeffs[0] * 0, ser.coeffs[0]]
    for k in range(1, n_out):
        chi.append(ser.coeffs[k] - chi[k])
    psi = TruncatedSeries(chi, ser.backend).comp_inverse()
    return MomentSeq(psi.coeffs[1:])


def boxtimes(mu, nu):
    """Free multiplicative convolution in moment coordinates: the output has
    S-transform S_mu * S_nu."""
    if mu.order != nu.order:
        raise ValueError("order mismatch: %d vs %d" % (mu.order, nu.order))
    return moments_from_s(s_transform(mu) * s_transform(nu))


def log_map(m):
    """Morphism from multiplicative to additive convolution.

    The image measure's cumulant generating series is (ln S)' = S'/S, read
    off coefficientwise, so log_map(mu boxtimes nu) has the cumulants of
    log_map(mu) boxplus log_map(nu).  Real-backed input needs s_0 > 0; N
    moments determine N-1 output cumulants.
    """
    s = s_transform(m)
    ser = s.series
    if ser.backend in (EXACT, REAL) and ser.coeffs[0] <= 0:
        raise TransformError(
            "log branch undefined: s_0 <= 0 on a real backend")
    ghost = ser.derivative() * ser.reciprocal()
    return CumulantSeq(FREE, ghost.coeffs[:ser.order])


def exp_map_rplus(mu):
    """Exponential morphism onto multiplicative convolution on (0, oo).

    Image S-transform is exp(-R(z)) where R is the cumulant generating
    series.  Needs the generating series to be analytic around [-1, 0]:
    the input must be certifiable and its rational form must keep its poles
    away from the interval.  Output is on the real-float backend.
    """
    mu.require(FREE)
    try:
        pair = infdiv.cumulants_to_levy_pair(mu)
    except infdiv.InfdivError as err:
        raise GermCheckError(
            "membership in the exponential domain not established: %s" % err) from err
    report = germ_check(pair, region=INTERVAL_REGION)
    if not report.passed:
        raise GermCheckError("pole too close to [-1, 0]", report)
    r = TruncatedSeries([float(v) for v in mu.values], REAL)
    return STransform((-r).exp())


def exp_map_circle(mu):
    """Exponential morphism onto the circle: image S-transform is
    exp(-i R(i(z + 1/2))), a genuinely complex series."""
    mu.require(FREE)
    if mu.order < 2:
        raise ValueError("circle map needs order >= 2")
    m = mu.order - 1
    g = TruncatedSeries([0.5j, 1j], COMPLEX, order=m)
    acc = TruncatedSeries.constant(complex(mu.values[m]), m, COMPLEX)
    for k in range(m - 1, -1, -1):
        acc = acc * g + TruncatedSeries.constant(complex(mu.values[k]), m, COMPLEX)
    return STransform((acc * (-1j)).exp())


@dataclass(frozen=True)
class GridSpec:
    """Sampling grid in the upper half plane: n_re x n_im rational points in
    {|Re z| <= re_bound, 0 < Im z <= im_bound}."""

    n_re: int = 10
    n_im: int = 10
    re_bound: int = 4
    im_bound: int = 4

    def points(self):
        out = []
        for i in range(self.n_re):
            re = Fraction(-self.re_bound) + Fraction(2 * self.re_bound * i,
                                                     self.n_re - 1)
            for j in range(self.n_im):
                im = Fraction(self.im_bound * (j + 1), self.n_im)
                out.append((re, im))
        return out


@dataclass(frozen=True)
class GermReport:
    region: str
    passed: bool
    min_im: Fraction
    conj_residual: Fraction
    poles: tuple
    margin: object = None
    detail: str = ""

    def to_json_dict(self):
        return {
            "pass": self.passed,
            "region": self.region,
            "min_im": float(self.min_im),
            "conj_residual": float(self.conj_residual),
            "poles": [float(p) for p in self.poles],
            "margin": None if self.margin is None else float(self.margin),
        }


def _cdiv(a, b):
    # exact complex division on (Fraction, Fraction) pairs
    d = b[0] * b[0] + b[1] * b[1]
    return ((a[0] * b[0] + a[1] * b[1]) / d, (a[1] * b[0] - a[0] * b[1]) / d)


def _eval_rational_r(gamma, atoms, z):
    re, im = z
    total = (Fraction(gamma), Fraction(0))
    for x, w in atoms:
        x = Fraction(x)
        w = Fraction(w)
        num = (w * re, w * im)
        den = (1 - x * re, -x * im)
        t = _cdiv(num, den)
        total = (total[0] + t[0], total[1] + t[1])
    return total


def _interval_distance(p):
    if p < -1:
        return -1 - p
    if p > 0:
        return p
    return Fraction(0)


def germ_check(obj, region=UHP_REGION, grid=None, interval_radius=DEFAULT_INTERVAL_RADIUS):
    """Sampled analyticity/positivity check of the rational generating series.

    Families and finite pairs carry the exact rational form
    R(z) = gamma + sum w_i z / (1 - x_i z); the check evaluates it on a
    rational grid in the upper half plane (reporting min Im R and the
    conjugate-symmetry residual) and compares the exact pole locations 1/x_i
    against the region.  Report-only: it never raises for a failed check.
    """
    if region not in (UHP_REGION, INTERVAL_REGION):
        raise ValueError("unknown region %r" % (region,))
    pair = _as_rho_pair(obj)
    grid = grid or GridSpec()
    min_im = None
    residual = Fraction(0)
    for z in grid.points():
        re_v, im_v = _eval_rational_r(pair.gamma, pair.atoms, z)
        re_c, im_c = _eval_rational_r(pair.gamma, pair.atoms, (z[0], -z[1]))
        residual = max(residual, abs(re_c - re_v), abs(im_c + im_v))
        if min_im is None or im_v < min_im:
            min_im = im_v
    poles = tuple(1 / Fraction(x) for x, _ in pair.atoms if x != 0)
    if region == UHP_REGION:
        passed = min_im >= 0 and residual == 0
        return GermReport(region, passed, min_im, residual, poles, margin=min_im)
    distances = [_interval_distance(p) for p in poles]
    margin = min(distances) - interval_radius if distances else None
    passed = min_im >= 0 and residual == 0 and (margin is None or margin > 0)
    detail = "" if passed else "pole within %s of [-1,0]" % (interval_radius,)
    return GermReport(region, passed, min_im, residual, poles, margin=margin,
                      detail=detail)


def _as_rho_pair(obj):
    if isinstance(obj, LevyPair):
        return obj if obj.kernel == KERNEL_RHO else sigma_to_rho(obj)
    if isinstance(obj, (Dirac, Semicircle, FreePoisson, LK)):
        return family_to_levy_pair(obj)
    if isinstance(obj, CumulantSeq):
        return infdiv.cumulants_to_levy_pair(obj)
    raise TypeError("no rational generating series for %r" % (obj,))
