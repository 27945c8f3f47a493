"""
The semiring of operations
==========================

Certified sequences form a commutative semiring under additive and Hadamard
convolution.  It carries a multiplicative section tau, an index-shift
endomorphism, componentwise power maps, shift/scale actions, a convex-space
structure, and an algebra structure over the finite distribution monad.  The
randomized harness verifies the whole presentation exactly.
"""

import json
from fractions import Fraction

from freeconv import (NONNEG_RATIONALS, Dirac, FormalDistribution,
                      FreePoisson, Semicircle, boxdot, boxplus,
                      check_omega_e_axioms, decalage, family_to_free_cumulants,
                      fold_as_nested_plus_q, frobenius, giry_algebra_fold,
                      giry_unit, plus_q, scale_action, shift_action,
                      teichmueller)

F = Fraction
ORDER = 12


def cum(fam):
    return family_to_free_cumulants(fam, ORDER)


# tau is a multiplicative section: tau(a) . tau(b) = tau(ab).
print("tau(2).tau(3) == tau(6):",
      boxdot(teichmueller(2, ORDER), teichmueller(3, ORDER)) == teichmueller(6, ORDER))

# The index shift fixes both units and maps the free Poisson family to
# itself with the rate rescaled by the squared jump.
print("shift fixes tau(1)     :", decalage(teichmueller(1, ORDER)) == teichmueller(1, ORDER - 2))
mu = cum(FreePoisson(F(5, 2), F(-1, 3)))
print("shift of fP(5/2,-1/3)  :", decalage(mu).values[:3],
      "= fP(5/18,-1/3)")

# Componentwise powers are iterated Hadamard products.
print("f_2 == mu.mu           :", frobenius(2, mu) == boxdot(mu, mu))

# Scaling acts on families: c . semicircle(a, r) = semicircle(ca, sqrt(c) r).
print("9/4 . semicircle(2,2)  :",
      scale_action(F(9, 4), cum(Semicircle(2, 2))).values[:3],
      "= semicircle(9/2, 3)")
print("shift along the fibre  :",
      shift_action(F(1, 2), cum(Dirac(1))).values[:3])

# Barycentric addition is convex combination of cumulant vectors, and both
# products distribute over it.
nu = cum(Semicircle(0, 2))
q = F(1, 3)
print("distributivity         :",
      boxdot(plus_q(q, mu, nu), cum(Dirac(2)))
      == plus_q(q, boxdot(mu, cum(Dirac(2))), boxdot(nu, cum(Dirac(2)))))

# The n-ary barycentre is an algebra over the finite distribution monad; the
# right-nested binary chain reproduces it.
dist = FormalDistribution(NONNEG_RATIONALS, [
    (cum(Dirac(0)), F(1, 3)), (cum(Dirac(3)), F(1, 3)), (nu, F(1, 3))])
print("fold == nested +_q     :",
      giry_algebra_fold(dist) == fold_as_nested_plus_q(dist))
print("fold cumulants         :", giry_algebra_fold(dist).values[:3])

# The harness re-verifies every law on seeded random certified inputs.
report = check_omega_e_axioms(order=12, cases=40, seed=7)
print("\nharness passed         :", report.passed)
print(json.dumps([r.to_json_dict() for r in report.results[:3]], indent=2)[:400])
