import random
from fractions import Fraction

import pytest

from freeconv import LK, LevyPair, family_to_free_cumulants

ATOM_POOL = [Fraction(-3, 4), Fraction(-2, 3), Fraction(-1, 2), Fraction(-1, 3),
             Fraction(-1, 4), Fraction(0), Fraction(1, 4), Fraction(1, 3),
             Fraction(1, 2), Fraction(2, 3), Fraction(3, 4)]


def random_fraction(rng, lo=-8, hi=8, den=4):
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def random_levy_pair(rng, max_atoms=2):
    gamma = random_fraction(rng, -6, 6, 3)
    xs = rng.sample(ATOM_POOL, rng.randint(0, max_atoms))
    atoms = tuple((x, Fraction(rng.randint(1, 6), rng.choice([1, 2, 3])))
                  for x in xs)
    return LevyPair(gamma, atoms, "rho")


def random_id_cumulants(rng, order, max_atoms=2):
    return family_to_free_cumulants(LK(random_levy_pair(rng, max_atoms)), order)


def rel_err(a, b):
    a, b = float(a), float(b)
    return abs(a - b) / max(1.0, abs(a), abs(b))


def coeffs_close(xs, ys, rtol=1e-9):
    return len(xs) == len(ys) and all(rel_err(a, b) <= rtol for a, b in zip(xs, ys))


@pytest.fixture
def rng():
    return random.Random(20260809)
