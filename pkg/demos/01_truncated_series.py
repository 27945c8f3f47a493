"""
Truncated power series arithmetic
=================================

Every transform in freeconv is computed on truncated formal power series.
This script walks through the exact-rational backend: ring operations,
composition, compositional inversion by two independent algorithms, and the
exp/log pair.
"""

from fractions import Fraction

from freeconv import TruncatedSeries, comp_inverse_recursive

# A series is a fixed-order coefficient vector.  The exact backend stores
# Fractions and refuses floats, so nothing silently rounds.
f = TruncatedSeries([1, 1], order=6)
print("(1+z)^2           :", (f * f).coeffs)

g = TruncatedSeries([0, 1, 1], order=6)  # z + z^2
inv = g.comp_inverse()
print("inverse of z+z^2  :", inv.coeffs)
print("  (signed Catalan numbers)")

# The Newton iteration and the term-by-term triangular solve must agree.
print("oracle agrees     :", inv == comp_inverse_recursive(g))
print("g(inv(z)) == z    :", g.compose(inv).coeffs)

# exp and log are inverse to each other at order N.
a = TruncatedSeries([0, 2, 3, Fraction(1, 4)], order=8)
print("log(exp(a)) == a  :", a.exp().log() == a)

# Float and complex backends carry the same operations.
af = a.to_backend("real-float")
print("float exp         :", [round(c, 6) for c in af.exp().coeffs[:5]])

# Series serialise with exact rationals as p/q strings.
print("JSON              :", g.to_json_dict())
