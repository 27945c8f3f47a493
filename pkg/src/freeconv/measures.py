"""Measure representations: closed-form families, cumulant sequences, and
drift/jump pairs, with conversions between them.

A cumulant sequence is tagged "free" or "classical" and the tag is enforced on
every operation: the two coordinate systems never mix silently.  All values
are immutable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .partitions import MomentSeq, moments_from_free_cumulants
from .series import EXACT, TruncatedSeries, parse_rational, scalar_to_json

FREE = "free"
CLASSICAL = "classical"
KINDS = (FREE, CLASSICAL)

KERNEL_RHO = "rho"
KERNEL_SIGMA = "sigma"


class KindError(TypeError):
    """An operation received the wrong cumulant coordinate system."""


def _scalar(v):
    if isinstance(v, (int, str)):
        return Fraction(v)
    if isinstance(v, (Fraction, float)):
        return v
    raise TypeError("unsupported scalar %r" % (v,))


@dataclass(frozen=True)
class CumulantSeq:
    """Truncated cumulant sequence kappa_1..kappa_N with a coordinate tag."""

    kind: str
    values: tuple

    def __post_init__(self):
        if self.kind not in KINDS:
            raise KindError("unknown cumulant kind %r" % (self.kind,))
        vals = tuple(_scalar(v) for v in self.values)
        if not vals:
            raise ValueError("a cumulant sequence needs at least kappa_1")
        object.__setattr__(self, "values", vals)

    @property
    def order(self):
        return len(self.values)

    def kappa(self, n):
        return self.values[n - 1]

    def require(self, kind):
        if self.kind != kind:
            raise KindError("expected %s cumulants, got %s" % (kind, self.kind))
        return self

    def retag(self, kind):
        return CumulantSeq(kind, self.values)

    def truncated(self, order):
        return CumulantSeq(self.kind, self.values[:order])

    def r_series(self, backend=EXACT):
        """The generating series with coefficient kappa_{n+1} at z^n."""
        if backend == EXACT:
            return TruncatedSeries(self.values, EXACT)
        return TruncatedSeries(self.values, EXACT).to_backend(backend)

    def to_json_dict(self):
        return {"cumulants": {
            "kind": self.kind,
            "values": [scalar_to_json(v) for v in self.values],
        }}


@dataclass(frozen=True)
class LevyPair:
    """Drift gamma plus a finitely-atomic nonnegative measure, in one of two
    integral-kernel conventions ("rho" or "sigma")."""

    gamma: object
    atoms: tuple = ()
    kernel: str = KERNEL_RHO

    def __post_init__(self):
        if self.kernel not in (KERNEL_RHO, KERNEL_SIGMA):
            raise ValueError("unknown kernel %r" % (self.kernel,))
        object.__setattr__(self, "gamma", _scalar(self.gamma))
        atoms = tuple(sorted((_scalar(x), _scalar(w)) for x, w in self.atoms))
        positions = [x for x, _ in atoms]
        if len(set(positions)) != len(positions):
            raise ValueError("atom positions must be distinct")
        if any(w <= 0 for _, w in atoms):
            raise ValueError("atom weights must be strictly positive")
        object.__setattr__(self, "atoms", atoms)

    def moment(self, n):
        """n-th raw moment of the atomic measure (n = 0 gives the total mass)."""
        return sum((w * x ** n for x, w in self.atoms), start=Fraction(0))

    @property
    def mass(self):
        return self.moment(0)

    def to_json_dict(self):
        return {"levy": {
            "gamma": scalar_to_json(self.gamma),
            "atoms": [[scalar_to_json(x), scalar_to_json(w)] for x, w in self.atoms],
            "kernel": self.kernel,
        }}


# Closed-form families.  Semicircle stores the radius itself (the second free
# cumulant is r^2/4), and Semicircle(a, 0) is the point mass at a.

@dataclass(frozen=True)
class Dirac:
    a: object

    def __post_init__(self):
        object.__setattr__(self, "a", _scalar(self.a))


@dataclass(frozen=True)
class Semicircle:
    a: object
    r: object

    def __post_init__(self):
        object.__setattr__(self, "a", _scalar(self.a))
        object.__setattr__(self, "r", _scalar(self.r))
        if self.r < 0:
            raise ValueError("semicircle radius must be nonnegative")


@dataclass(frozen=True)
class FreePoisson:
    rate: object
    jump: object

    def __post_init__(self):
        object.__setattr__(self, "rate", _scalar(self.rate))
        object.__setattr__(self, "jump", _scalar(self.jump))
        if self.rate < 0:
            raise ValueError("rate must be nonnegative")


@dataclass(frozen=True)
class ClassicalNormal:
    mean: object
    var: object

    def __post_init__(self):
        object.__setattr__(self, "mean", _scalar(self.mean))
        object.__setattr__(self, "var", _scalar(self.var))
        if self.var < 0:
            raise ValueError("variance must be nonnegative")


@dataclass(frozen=True)
class ClassicalPoisson:
    rate: object

    def __post_init__(self):
        object.__setattr__(self, "rate", _scalar(self.rate))
        if self.rate < 0:
            raise ValueError("rate must be nonnegative")


@dataclass(frozen=True)
class LK:
    pair: LevyPair


FREE_FAMILIES = (Dirac, Semicircle, FreePoisson, LK)
CLASSICAL_FAMILIES = (Dirac, ClassicalNormal, ClassicalPoisson)


def family_to_free_cumulants(family, order):
    """Free cumulants of a free-side family, by its closed form."""
    if order < 1:
        raise ValueError("order must be >= 1")
    if isinstance(family, Dirac):
        zero = family.a * 0
        vals = [family.a] + [zero] * (order - 1)
    elif isinstance(family, Semicircle):
        zero = family.a * 0 + family.r * 0
        vals = [family.a + zero] + [zero] * (order - 1)
        if order >= 2:
            vals[1] = family.r * family.r / 4 + zero
    elif isinstance(family, FreePoisson):
        vals = [family.rate * family.jump ** n for n in range(1, order + 1)]
    elif isinstance(family, LK):
        pair = family.pair
        if pair.kernel != KERNEL_RHO:
            raise ValueError(
                "free cumulants need the rho kernel; convert with sigma_to_rho")
        zero = pair.gamma * 0
        vals = [pair.gamma]
        for n in range(2, order + 1):
            vals.append(pair.moment(n - 2) + zero)
    else:
        raise KindError("%s is not a free-side family" % type(family).__name__)
    return CumulantSeq(FREE, tuple(vals))


def family_to_classical_cumulants(family, order):
    """Classical cumulants of Dirac, normal, or Poisson laws."""
    if order < 1:
        raise ValueError("order must be >= 1")
    if isinstance(family, Dirac):
        zero = family.a * 0
        vals = [family.a] + [zero] * (order - 1)
    elif isinstance(family, ClassicalNormal):
        zero = family.mean * 0 + family.var * 0
        vals = [family.mean + zero] + [zero] * (order - 1)
        if order >= 2:
            vals[1] = family.var + zero
    elif isinstance(family, ClassicalPoisson):
        vals = [family.rate] * order
    else:
        raise KindError("%s has no classical closed form here" % type(family).__name__)
    return CumulantSeq(CLASSICAL, tuple(vals))


def family_to_levy_pair(family):
    """Canonical (gamma, rho) pair of a free-side family."""
    if isinstance(family, Dirac):
        return LevyPair(family.a, (), KERNEL_RHO)
    if isinstance(family, Semicircle):
        if family.r == 0:
            return LevyPair(family.a, (), KERNEL_RHO)
        return LevyPair(family.a, ((0, family.r * family.r / 4),), KERNEL_RHO)
    if isinstance(family, FreePoisson):
        weight = family.rate * family.jump ** 2
        if weight == 0:
            return LevyPair(family.rate * family.jump, (), KERNEL_RHO)
        return LevyPair(family.rate * family.jump,
                        ((family.jump, weight),), KERNEL_RHO)
    if isinstance(family, LK):
        pair = family.pair
        return pair if pair.kernel == KERNEL_RHO else sigma_to_rho(pair)
    raise KindError("%s is not a free-side family" % type(family).__name__)


def sigma_to_rho(pair):
    """Kernel change sigma -> rho: the drift absorbs m_1(sigma) and each atom
    weight picks up the factor 1 + x^2; atom positions are unchanged."""
    if pair.kernel != KERNEL_SIGMA:
        raise ValueError("sigma_to_rho expects a sigma-kernel pair")
    gamma = pair.gamma + pair.moment(1)
    atoms = tuple((x, w * (1 + x * x)) for x, w in pair.atoms)
    return LevyPair(gamma, atoms, KERNEL_RHO)


def rho_to_sigma(pair):
    """Inverse kernel change rho -> sigma."""
    if pair.kernel != KERNEL_RHO:
        raise ValueError("rho_to_sigma expects a rho-kernel pair")
    atoms = tuple((x, w / (1 + x * x)) for x, w in pair.atoms)
    m1 = sum((w * x for x, w in atoms), start=Fraction(0))
    return LevyPair(pair.gamma - m1, atoms, KERNEL_SIGMA)


def moments(obj, order=None):
    """Raw moments of a free-side family or a free cumulant sequence."""
    if isinstance(obj, CumulantSeq):
        obj.require(FREE)
        if order is None:
            order = obj.order
        if order > obj.order:
            raise ValueError("cumulants only known to order %d" % obj.order)
        return moments_from_free_cumulants(obj.truncated(order))
    if order is None:
        raise ValueError("an explicit order is required for family input")
    return moments_from_free_cumulants(family_to_free_cumulants(obj, order))


def semicircle_moments_by_integral(a, r, order):
    """Semicircle moments straight from the defining integral.

    The central even moments come from the exact reduction
    J_n = J_{n-2} (n-1)/(n+2), J_0 = 1, giving m_n = r^n J_n; odd central
    moments vanish; the binomial shift moves the centre to a.  Entirely
    independent of the partition transforms.
    """
    a = _scalar(a)
    r = _scalar(r)
    central = [Fraction(1)]
    j = Fraction(1)
    for n in range(1, order + 1):
        if n % 2:
            central.append(Fraction(0))
        else:
            j = j * (n - 1) / (n + 2)
            central.append(r ** n * j)
    out = []
    for n in range(1, order + 1):
        out.append(sum(math.comb(n, k) * a ** (n - k) * central[k]
                       for k in range(n + 1)))
    return MomentSeq(tuple(out))


_FAMILY_NAMES = {
    Dirac: "dirac",
    Semicircle: "semicircle",
    FreePoisson: "fpoisson",
    ClassicalNormal: "normal",
    ClassicalPoisson: "cpoisson",
}


def measure_to_json_dict(obj):
    """JSON form of a family, cumulant sequence, or pair."""
    if isinstance(obj, (CumulantSeq, LevyPair)):
        return obj.to_json_dict()
    if isinstance(obj, LK):
        return obj.pair.to_json_dict()
    name = _FAMILY_NAMES.get(type(obj))
    if name is None:
        raise TypeError("cannot serialise %r" % (obj,))
    params = {f: scalar_to_json(getattr(obj, f)) for f in obj.__dataclass_fields__}
    return {"family": name, "params": params}


def _scalar_from_json(v):
    if isinstance(v, str):
        return parse_rational(v)
    if isinstance(v, int):
        return Fraction(v)
    return float(v)


def measure_from_json_dict(data):
    if "cumulants" in data:
        inner = data["cumulants"]
        return CumulantSeq(inner["kind"],
                           tuple(_scalar_from_json(v) for v in inner["values"]))
    if "levy" in data:
        inner = data["levy"]
        atoms = tuple((_scalar_from_json(x), _scalar_from_json(w))
                      for x, w in inner["atoms"])
        return LevyPair(_scalar_from_json(inner["gamma"]), atoms, inner["kernel"])
    if "family" in data:
        classes = {v: k for k, v in _FAMILY_NAMES.items()}
        cls = classes[data["family"]]
        params = {k: _scalar_from_json(v) for k, v in data["params"].items()}
        return cls(**params)
    raise ValueError("unrecognised measure description")
