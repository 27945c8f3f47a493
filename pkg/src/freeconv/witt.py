"""Endomorphisms, group actions, barycentric combinations, and the finite
distribution monad over infinitely divisible measures.

The commutative semiring of certified sequences under addition and the
componentwise product carries: the multiplicative section tau(a) = (a, a^2,
a^3, ...), the double index shift, the componentwise n-th-power map, shift and
scale actions, and a convex-space structure given by linear combination of
cumulant vectors.  check_omega_e_axioms verifies the whole presentation on
random certified inputs, exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import convolve, infdiv
from .measures import (FREE, CumulantSeq, LevyPair, LK,
                       family_to_free_cumulants)
from .partitions import MomentSeq
from .series import scalar_to_json


def _scalar(v):
    if isinstance(v, (int, str)):
        return Fraction(v)
    return v


def teichmueller(a, order):
    """Multiplicative section: cumulants (a, a^2, a^3, ...)."""
    a = _scalar(a)
    return CumulantSeq(FREE, tuple(a ** n for n in range(1, order + 1)))


def decalage(mu):
    """Double index shift on certified sequences; delegates certification."""
    shifted, _ = infdiv.decalage_well_defined(mu)
    return shifted


def frobenius(n, mu):
    """Componentwise n-th power of cumulants (with 0**0 = 1, so n = 0 yields
    the multiplicative unit); equals the n-fold Hadamard power."""
    mu.require(FREE)
    if not isinstance(n, int) or n < 0:
        raise ValueError("frobenius exponent must be a nonnegative integer")
    if n == 0:
        return CumulantSeq(FREE, (Fraction(1),) * mu.order)
    return CumulantSeq(FREE, tuple(v ** n for v in mu.values))


def shift_action(r, mu):
    """Drift shift: adds r to the first cumulant only."""
    mu.require(FREE)
    r = _scalar(r)
    return CumulantSeq(FREE, (mu.values[0] + r,) + mu.values[1:])


def scale_action(c, mu):
    """Scaling action: multiplies every cumulant by c >= 0."""
    mu.require(FREE)
    c = _scalar(c)
    if c < 0:
        raise ValueError("scale factor must be nonnegative")
    return CumulantSeq(FREE, tuple(c * v for v in mu.values))


def plus_alpha_beta(alpha, beta, mu, nu):
    """Conical combination alpha*kappa(mu) + beta*kappa(nu)."""
    alpha = _scalar(alpha)
    beta = _scalar(beta)
    if alpha < 0 or beta < 0:
        raise ValueError("weights must be nonnegative")
    mu.require(FREE)
    nu.require(FREE)
    if mu.order != nu.order:
        raise ValueError("order mismatch")
    return CumulantSeq(FREE, tuple(alpha * a + beta * b
                                   for a, b in zip(mu.values, nu.values)))


def plus_q(q, mu, nu):
    """Barycentric addition +_q with weights (q, 1-q), q in [0, 1]."""
    q = _scalar(q)
    if not 0 <= q <= 1:
        raise ValueError("q must lie in [0, 1]")
    return plus_alpha_beta(q, 1 - q, mu, nu)


def mix_moments(q, mu, nu):
    """Convex mixture in moment coordinates (not cumulant coordinates)."""
    q = _scalar(q)
    if not 0 <= q <= 1:
        raise ValueError("q must lie in [0, 1]")
    if mu.order != nu.order:
        raise ValueError("order mismatch")
    return MomentSeq(tuple(q * a + (1 - q) * b
                           for a, b in zip(mu.values, nu.values)))


# ---------------------------------------------------------------------------
# Finite distribution (Giry) monad with plug-in semiring weights.

@dataclass(frozen=True)
class Semiring:
    name: str
    zero: object
    one: object
    add: object
    mul: object
    contains: object

    def __repr__(self):
        return "Semiring(%r)" % (self.name,)


def _nonneg_rational(x):
    return isinstance(x, (int, Fraction)) and x >= 0


NONNEG_RATIONALS = Semiring(
    "nonneg-rationals", Fraction(0), Fraction(1),
    lambda a, b: a + b, lambda a, b: a * b, _nonneg_rational)

BOOLEANS = Semiring(
    "bool-or-and", False, True,
    lambda a, b: a or b, lambda a, b: a and b,
    lambda x: isinstance(x, bool))


class FormalDistribution:
    """Finitely supported map into a semiring with total weight one.

    Stored reduced: duplicate support points merged, zero weights dropped,
    first-seen order preserved.
    """

    __slots__ = ("semiring", "items")

    def __init__(self, semiring, items):
        merged = {}
        for value, weight in items:
            if not semiring.contains(weight):
                raise ValueError("weight %r not in semiring %s" % (weight, semiring.name))
            if value in merged:
                merged[value] = semiring.add(merged[value], weight)
            else:
                merged[value] = weight
        total = semiring.zero
        for w in merged.values():
            total = semiring.add(total, w)
        if total != semiring.one:
            raise ValueError("weights must sum to the semiring unit")
        self.semiring = semiring
        self.items = tuple((v, w) for v, w in merged.items() if w != semiring.zero)

    def weight(self, value):
        for v, w in self.items:
            if v == value:
                return w
        return self.semiring.zero

    @property
    def support(self):
        return tuple(v for v, _ in self.items)

    def __eq__(self, other):
        if not isinstance(other, FormalDistribution):
            return NotImplemented
        return (self.semiring.name == other.semiring.name
                and dict(self.items) == dict(other.items))

    def __hash__(self):
        return hash((self.semiring.name, frozenset(self.items)))

    def __repr__(self):
        return "FormalDistribution(%s, %r)" % (self.semiring.name, list(self.items))


def giry_unit(value, semiring=NONNEG_RATIONALS):
    return FormalDistribution(semiring, [(value, semiring.one)])


def giry_map(func, dist):
    return FormalDistribution(dist.semiring,
                              [(func(v), w) for v, w in dist.items])


def giry_join(dist):
    """Flatten a distribution over distributions: weights multiply inward."""
    semiring = dist.semiring
    items = []
    for inner, s in dist.items:
        if not isinstance(inner, FormalDistribution):
            raise TypeError("join needs a distribution over distributions")
        if inner.semiring.name != semiring.name:
            raise TypeError("mixed semirings in join")
        for v, w in inner.items:
            items.append((v, semiring.mul(s, w)))
    return FormalDistribution(semiring, items)


def giry_algebra_fold(dist):
    """Structure map of the barycentric algebra: the weighted linear
    combination of cumulant vectors, for rational nonnegative weights."""
    if dist.semiring.name != NONNEG_RATIONALS.name:
        raise ValueError("the algebra fold needs nonnegative rational weights")
    items = dist.items
    if not items:
        raise ValueError("empty distribution")
    order = items[0][0].order
    acc = [Fraction(0)] * order
    for seq, w in items:
        seq.require(FREE)
        if seq.order != order:
            raise ValueError("order mismatch in fold")
        for i, v in enumerate(seq.values):
            acc[i] += w * v
    return CumulantSeq(FREE, tuple(acc))


def fold_as_nested_plus_q(dist):
    """The same fold expressed as a right-nested chain of binary +_q with
    q_k = w_k / (w_k + ... + w_n); used to cross-validate the linear form."""
    items = list(dist.items)
    suffix = [Fraction(0)] * (len(items) + 1)
    for i in range(len(items) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + items[i][1]
    acc = items[-1][0]
    for i in range(len(items) - 2, -1, -1):
        if suffix[i] == 0:
            continue
        acc = plus_q(items[i][1] / suffix[i], items[i][0], acc)
    return acc


# ---------------------------------------------------------------------------
# Randomised axiom harness.

@dataclass
class AxiomResult:
    axiom_id: str
    statement: str
    cases: int = 0
    failures: list = field(default_factory=list)

    def to_json_dict(self):
        return {"axiom_id": self.axiom_id, "statement": self.statement,
                "cases": self.cases, "failures": self.failures}


@dataclass
class AxiomReport:
    order: int
    cases: int
    seed: int
    results: list

    @property
    def passed(self):
        return all(not r.failures for r in self.results)

    def to_json_dict(self):
        return {"order": self.order, "cases": self.cases, "seed": self.seed,
                "passed": self.passed,
                "axioms": [r.to_json_dict() for r in self.results]}


_ATOM_POOL = [Fraction(-3, 4), Fraction(-2, 3), Fraction(-1, 2), Fraction(-1, 3),
              Fraction(-1, 4), Fraction(0), Fraction(1, 4), Fraction(1, 3),
              Fraction(1, 2), Fraction(2, 3), Fraction(3, 4)]


def random_levy_pair(rng, max_atoms=2):
    """Random rational pair with small distinct atoms; always certified."""
    gamma = Fraction(rng.randint(-6, 6), rng.choice([1, 2, 3]))
    count = rng.randint(0, max_atoms)
    xs = rng.sample(_ATOM_POOL, count)
    atoms = tuple((x, Fraction(rng.randint(1, 6), rng.choice([1, 2, 3])))
                  for x in xs)
    return LevyPair(gamma, atoms, "rho")


def random_id_cumulants(rng, order, max_atoms=2):
    return family_to_free_cumulants(LK(random_levy_pair(rng, max_atoms)), order)


def _render(seq):
    return [scalar_to_json(v) for v in seq.values]


def check_omega_e_axioms(order=12, cases=100, seed=0):
    """Exact randomized verification of the operations' presentation:
    semiring laws with both units, the four barycentric axioms, the shift
    endomorphism for both products and +_q, and the power endomorphism for
    the componentwise product.  Deterministic in (order, cases, seed).
    """
    if order < 8:
        raise ValueError("the harness needs order >= 8 for the shift checks")
    # keep the Hadamard product of two draws identifiable after the shift:
    # k-atom inputs give up to k^2 product atoms, which need 2k^2 <= order-3
    max_atoms = 2 if order >= 11 else 1
    rng = random.Random(seed)
    unit_add = CumulantSeq(FREE, (Fraction(0),) * order)
    unit_mul = teichmueller(1, order)

    results = {}

    def axiom(axiom_id, statement):
        results[axiom_id] = AxiomResult(axiom_id, statement)
        return axiom_id

    a_add_assoc = axiom("semiring.add_assoc", "(x+y)+z = x+(y+z)")
    a_add_comm = axiom("semiring.add_comm", "x+y = y+x")
    a_add_unit = axiom("semiring.add_unit", "x+0 = x")
    a_mul_assoc = axiom("semiring.mul_assoc", "(x.y).z = x.(y.z)")
    a_mul_comm = axiom("semiring.mul_comm", "x.y = y.x")
    a_mul_unit = axiom("semiring.mul_unit", "x.1 = x")
    a_distrib = axiom("semiring.distributive", "(x+y).z = x.z+y.z")
    a_cx_comm = axiom("convex.commutation", "+_q(x,y) = +_{1-q}(y,x)")
    a_cx_idem = axiom("convex.idempotence", "+_q(x,x) = x")
    a_cx_zero = axiom("convex.zero_weight", "+_0(x,y) = y")
    a_cx_comp = axiom("convex.composition",
                      "+_p(x,+_q(y,z)) = +_{p+(1-p)q}(+_{p/(p+(1-p)q)}(x,y),z)")
    a_sh_add = axiom("endo.shift_add", "shift(x+y) = shift(x)+shift(y)")
    a_sh_mul = axiom("endo.shift_mul", "shift(x.y) = shift(x).shift(y)")
    a_sh_q = axiom("endo.shift_plus_q", "shift(+_q(x,y)) = +_q(shift(x),shift(y))")
    a_fr_mul = axiom("endo.power_mul", "f_n(x.y) = f_n(x).f_n(y)")

    def record(axiom_id, lhs, rhs, inputs):
        res = results[axiom_id]
        res.cases += 1
        if lhs != rhs:
            res.failures.append({
                "inputs": inputs,
                "lhs": _render(lhs),
                "rhs": _render(rhs),
            })

    for _ in range(cases):
        x = random_id_cumulants(rng, order, max_atoms)
        y = random_id_cumulants(rng, order, max_atoms)
        z = random_id_cumulants(rng, order, max_atoms)
        q = Fraction(rng.randint(0, 8), 8)
        p = Fraction(rng.randint(0, 8), 8)
        n = rng.randint(0, 3)
        inputs = {"x": _render(x), "y": _render(y), "z": _render(z),
                  "q": scalar_to_json(q), "p": scalar_to_json(p), "n": n}

        bp = convolve.boxplus
        bd = convolve.boxdot
        record(a_add_assoc, bp(bp(x, y), z), bp(x, bp(y, z)), inputs)
        record(a_add_comm, bp(x, y), bp(y, x), inputs)
        record(a_add_unit, bp(x, unit_add), x, inputs)
        record(a_mul_assoc, bd(bd(x, y), z), bd(x, bd(y, z)), inputs)
        record(a_mul_comm, bd(x, y), bd(y, x), inputs)
        record(a_mul_unit, bd(x, unit_mul), x, inputs)
        record(a_distrib, bd(bp(x, y), z), bp(bd(x, z), bd(y, z)), inputs)

        record(a_cx_comm, plus_q(q, x, y), plus_q(1 - q, y, x), inputs)
        record(a_cx_idem, plus_q(q, x, x), x, inputs)
        record(a_cx_zero, plus_q(0, x, y), y, inputs)
        s = p + (1 - p) * q
        if s != 0:
            record(a_cx_comp,
                   plus_q(p, x, plus_q(q, y, z)),
                   plus_q(s, plus_q(p / s, x, y), z), inputs)

        record(a_sh_add, decalage(bp(x, y)), bp(decalage(x), decalage(y)), inputs)
        record(a_sh_mul, decalage(bd(x, y)), bd(decalage(x), decalage(y)), inputs)
        record(a_sh_q, decalage(plus_q(q, x, y)),
               plus_q(q, decalage(x), decalage(y)), inputs)
        record(a_fr_mul, frobenius(n, bd(x, y)),
               bd(frobenius(n, x), frobenius(n, y)), inputs)

    return AxiomReport(order, cases, seed, list(results.values()))
