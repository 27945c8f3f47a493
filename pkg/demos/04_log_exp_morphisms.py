"""
Logarithm and exponential morphisms
===================================

The log map linearises multiplicative free convolution: it sends a measure
with S-transform S to the measure whose cumulant generating series is S'/S,
turning boxtimes into boxplus.  Two exponential maps go the other way, onto
multiplicative convolution on the positive half line and on the unit circle.
"""

import math
from fractions import Fraction

from freeconv import (Dirac, FreePoisson, LK, LevyPair, Semicircle, boxplus,
                      boxtimes, exp_map_circle, exp_map_rplus,
                      family_to_free_cumulants, germ_check, log_map, moments)
from freeconv.convolve import INTERVAL_REGION

F = Fraction

# log_map(mu boxtimes nu) == log_map(mu) boxplus log_map(nu), exactly.
mu = moments(FreePoisson(1, F(1, 2)), 9)
nu = moments(FreePoisson(2, F(1, 3)), 9)
lhs = log_map(boxtimes(mu, nu))
rhs = boxplus(log_map(mu), log_map(nu))
print("log morphism law exact:", lhs == rhs)
print("image cumulants       :", lhs.values[:4])

# Point masses land on the additive unit.
print("log of a point mass   :", log_map(moments(Dirac(F(5, 2)), 8)).values)

# The positive-half-line exponential needs the generating series analytic
# around [-1, 0]; the germ check reports exact pole locations and margins.
ok = germ_check(FreePoisson(1, F(1, 2)), region=INTERVAL_REGION)
print("\nfP(1,1/2) germ report :", ok.to_json_dict())
bad = germ_check(FreePoisson(1, -2), region=INTERVAL_REGION)
print("fP(1,-2)  germ report :", bad.to_json_dict())

# A point mass at a maps to the constant e^{-a}; the image measure is the
# point mass at e^{a}.
s = exp_map_rplus(family_to_free_cumulants(Dirac(F(3, 4)), 6))
print("\nexp_rplus(delta_3/4)  : s_0 = %.12f = e^(-3/4)" % s.series.coeffs[0])
print("matches math.exp      :", s.series.coeffs[0] == math.exp(-0.75))

# On the circle, the centred semicircle with generating series bz maps to
# exp(bz + b/2) -- a free analogue of Brownian motion at time b.
sc = exp_map_circle(family_to_free_cumulants(Semicircle(0, 2), 7))
print("\nexp_circle(semicircle):",
      [complex(round(c.real, 6), round(c.imag, 6)) for c in sc.series.coeffs[:4]])
print("e^(1/2) b^n/n!        :",
      [round(math.exp(0.5) / math.factorial(n), 6) for n in range(4)])

# The morphism law survives the affine substitution.
a = family_to_free_cumulants(LK(LevyPair(F(1, 2), ((F(1, 3), 1),), "rho")), 8)
b = family_to_free_cumulants(LK(LevyPair(F(-1, 3), ((0, 2),), "rho")), 8)
prod = exp_map_circle(a) * exp_map_circle(b)
direct = exp_map_circle(boxplus(a, b))
err = max(abs(x - y) for x, y in zip(prod.series.coeffs, direct.series.coeffs))
print("\ncircle product law err: %.2e" % err)
