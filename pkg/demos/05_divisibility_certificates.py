"""
Divisibility certificates and canonical pairs
=============================================

A truncated cumulant sequence is certified infinitely divisible when its
shifted Hankel matrix is positive semidefinite (decided by exact elimination)
and a finitely-atomic drift/jump pair reproducing every cumulant has been
recovered by quadrature.  Refutations come with a re-checkable witness
vector.  The same pair coordinates drive the bijection with the classical
theory.
"""

from fractions import Fraction

from freeconv import (ClassicalNormal, ClassicalPoisson, CumulantSeq, Dirac,
                      FreePoisson, LK, LevyPair, MomentSeq, Semicircle,
                      bp_bijection, cumulants_to_levy_pair,
                      family_to_classical_cumulants, family_to_free_cumulants,
                      free_cumulants_from_moments, is_conditionally_pd,
                      pair_to_classical_cumulants, rho_to_sigma,
                      sigma_projection)
from freeconv.infdiv import _hankel, witness_value

F = Fraction

# The semicircle is certified; its jump measure is one atom at the origin.
semi = family_to_free_cumulants(Semicircle(0, 2), 8)
cert = is_conditionally_pd(semi)
print("semicircle  :", cert.verdict, "pair:", cert.pair)

# The symmetric two-point law is refuted; the witness exhibits a negative
# quadratic form against the original Hankel matrix.
bern = free_cumulants_from_moments(MomentSeq((0, 1, 0, 1, 0, 1)))
cert = is_conditionally_pd(bern)
print("two-point   :", cert.verdict, "witness:", cert.witness,
      "form value:", witness_value(_hankel(bern.values), cert.witness))

# Free Poisson: gamma = lambda alpha, one atom at alpha with mass
# lambda alpha^2.
fp = family_to_free_cumulants(FreePoisson(F(3, 2), F(1, 2)), 9)
print("free Poisson:", cumulants_to_levy_pair(fp))

# Quadrature recovers several atoms at once, exactly for rational positions.
pair = LevyPair(F(1, 4), ((F(-1, 2), 1), (F(1, 3), F(2, 3))), "rho")
k = family_to_free_cumulants(LK(pair), 10)
print("recovered   :", cumulants_to_levy_pair(k))
print("original    :", pair)

# The classical-to-free correspondence re-tags cumulant sequences; on
# canonical pairs it is the identity on the second component.
poisson = family_to_classical_cumulants(ClassicalPoisson(2), 8)
print("\nbp(Poisson(2)) cumulants :", bp_bijection(poisson).values[:4])
normal = family_to_classical_cumulants(ClassicalNormal(1, F(9, 16)), 8)
print("bp(Normal(1,9/16))       :", bp_bijection(normal).values[:4],
      "= semicircle centre 1, radius 3/2")

sigma = rho_to_sigma(pair)
classical = pair_to_classical_cumulants(sigma, 11)
print("\nbundle commutes          :",
      sigma_projection(bp_bijection(classical)) == sigma
      == sigma_projection(classical))
