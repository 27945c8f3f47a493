"""
The four convolutions
=====================

Additive free convolution adds free cumulant sequences, the Hadamard
convolution multiplies them componentwise, multiplicative free convolution
multiplies S-transforms, and the classical star operation multiplies
classical cumulants.  The closed-form families turn these into one-line
parameter identities.
"""

from fractions import Fraction

from freeconv import (ClassicalNormal, ClassicalPoisson, Dirac, FreePoisson,
                      Semicircle, boxdot, boxplus, boxtimes,
                      family_to_classical_cumulants, family_to_free_cumulants,
                      moments, star)

F = Fraction
ORDER = 8


def cum(fam):
    return family_to_free_cumulants(fam, ORDER)


# Semicircles: centres add, squared radii add.
out = boxplus(cum(Semicircle(1, 2)), cum(Semicircle(2, 2)))
print("semicircle + semicircle :", out.values[:4], "= centre 3, radius sqrt(8)")

# Under the Hadamard convolution: centres multiply, radii combine as rs/2.
out = boxdot(cum(Semicircle(1, 2)), cum(Semicircle(2, 2)))
print("semicircle . semicircle :", out.values[:4],
      "=", cum(Semicircle(2, 2)).values[:4])

# Point masses are an ideal: delta_a . mu = delta_{kappa_1(mu) a}.
mu = cum(FreePoisson(2, F(1, 2)))
print("delta_3 . fP(2,1/2)     :", boxdot(cum(Dirac(3)), mu).values[:4])

# Free Poisson parameters multiply componentwise.
out = boxdot(cum(FreePoisson(2, F(1, 2))), cum(FreePoisson(3, F(1, 3))))
print("fP(2,1/2) . fP(3,1/3)   :", out.values[:4],
      "=", cum(FreePoisson(6, F(1, 6))).values[:4])

# Multiplicative free convolution works in moment coordinates.
m = moments(FreePoisson(1, 1), ORDER)
sq = boxtimes(m, m)
print("\nfP(1,1) boxtimes itself :", sq.values[:4])
print("  (first two moments 1 and 3)")

# Classical star multiplies classical cumulants; the unit is Poisson(1).
p2 = family_to_classical_cumulants(ClassicalPoisson(2), ORDER)
n1 = family_to_classical_cumulants(ClassicalNormal(2, F(1, 4)), ORDER)
print("\nPoisson(2) * Poisson(3) :",
      star(p2, family_to_classical_cumulants(ClassicalPoisson(3), ORDER)).values[:4])
print("Normal(2,1/4)*Normal(3,4):",
      star(n1, family_to_classical_cumulants(ClassicalNormal(3, 4), ORDER)).values[:4])
