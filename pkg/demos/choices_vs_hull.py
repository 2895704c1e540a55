"""
Weighted families of sets, and the weightings they can reach
============================================================

A weighted family assigns a scalar to each of several finite sets of
symbols.  Rewriting it into a convex set of symbol weightings can be
done two ways: enumerate every way of splitting each set's weight
across its members (brute force), or take the convex hull of the
"all weight on one member" choices.  Over the rationals the hull is
strictly bigger than the choices; over the naturals the brute-force
route reaches points the choices miss, too.
"""

from fractions import Fraction as F

from convexmod import (NAT, QPLUS, choice_set, delta_bruteforce,
                       delta_hull, finsupp, member, set_weighting)

# two overlapping sets, weights 1 and 2
Phi = set_weighting(QPLUS, [(("x", "y"), 1), (("y", "z"), 2)])

print("choice functions (all weight on one member per set):")
for phi in choice_set(Phi):
    print("   ", phi)

# the hull contains strictly more: split each set's weight evenly
mid = finsupp(QPLUS, [("x", F(1, 2)), ("y", F(3, 2)), ("z", 1)])
H = delta_hull(Phi)
print("even split", mid, "in hull:", member(H, mid))
print("even split in choices:", mid in choice_set(Phi))

# over the naturals there is no division, so the hull route is out,
# but brute-force enumeration of integer splits still works and it
# still reaches more than the choices do
Phi_nat = set_weighting(NAT, [(("x", "y"), 5), (("y", "z"), 9),
                              (("a", "b"), 13)])
brute = delta_bruteforce(Phi_nat)
choices = choice_set(Phi_nat)
print("naturals: brute force reaches", len(brute), "weightings,")
print("          choice functions only", len(choices))

split = finsupp(NAT, [("x", 2), ("y", 7), ("z", 5), ("a", 6), ("b", 7)])
print("mixed split", split, "reachable:", split in brute,
      "| a choice:", split in choices)
