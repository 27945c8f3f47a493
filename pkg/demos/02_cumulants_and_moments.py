"""
Cumulants, moments, and partition combinatorics
===============================================

Free cumulants connect to moments through sums over non-crossing partitions;
classical cumulants use all set partitions.  freeconv ships a fast recursion
for each direction plus literal partition-sum oracles, and the two routes
agree exactly.
"""

from fractions import Fraction

from freeconv import (CumulantSeq, MomentSeq, bell, catalan,
                      free_cumulants_from_moments,
                      moments_from_classical_cumulants,
                      moments_from_free_cumulants,
                      moments_from_free_cumulants_by_partitions,
                      nc_partitions, set_partitions)

print("non-crossing partition counts:",
      [len(nc_partitions(n)) for n in range(1, 8)])
print("Catalan numbers             :", [catalan(n) for n in range(1, 8)])
print("set partition counts        :", [len(set_partitions(n)) for n in range(1, 7)])
print("Bell numbers                :", [bell(n) for n in range(1, 7)])

# The standard semicircle has free cumulants (0, 1, 0, ...); its even moments
# are the Catalan numbers.
semi = CumulantSeq("free", (0, 1, 0, 0, 0, 0, 0, 0))
print("\nsemicircle moments          :", moments_from_free_cumulants(semi).values)
print("via partition enumeration   :",
      moments_from_free_cumulants_by_partitions(semi).values)

# All-ones cumulants count every non-crossing partition.
ones = CumulantSeq("free", (1,) * 6)
print("all-ones cumulant moments   :", moments_from_free_cumulants(ones).values)

# The symmetric two-point law shows a negative fourth free cumulant: it is
# not freely infinitely divisible.
two_point = MomentSeq((0, 1, 0, 1, 0, 1))
print("two-point free cumulants    :",
      free_cumulants_from_moments(two_point).values)

# Classical side: Poisson cumulants are constant, moments are the Touchard
# polynomial values.
poisson = CumulantSeq("classical", (Fraction(2),) * 5)
print("\nclassical Poisson(2) moments:",
      moments_from_classical_cumulants(poisson).values)
