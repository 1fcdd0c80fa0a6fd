"""Exact piecewise distributions and the generalized inverse.

A Piecewise distribution is a finite list of atoms (point masses) and
segments (uniform mass spread over an interval), all stored as rationals.
Its CDF, left limits, and quantiles evaluate exactly, so every identity
below is checked with ==, not with a tolerance.
"""

from fractions import Fraction as F

from mixquant import NEG_INF, POS_INF, Piecewise

# an atom of mass 1/2 at x = 1, plus mass 1/2 spread uniformly on [-1, 0]
d = Piecewise(atoms=[(1, F(1, 2))], segments=[(-1, 0, F(1, 2))])

print("CDF walk")
for x in (-2, F(-1, 2), 0, F(1, 2), 1, 2):
    print(f"  F({x}) = {d.cdf(x)},  F({x}-) = {d.cdf_left_limit(x)}")

# the jump at the atom is visible as F(1) - F(1-)
assert d.cdf(1) - d.cdf_left_limit(1) == F(1, 2)
print(f"jump at the atom: F(1) - F(1-) = {d.cdf(1) - d.cdf_left_limit(1)}")

print()
print("quantile walk (inf of the upper level set, so left-continuous)")
for p in (F(1, 4), F(1, 2), F(3, 4), 1):
    print(f"  Q({p}) = {d.quantile(p)}")

# the plateau of F on (0, 1) makes Q jump from 0 to 1 at level 1/2
assert d.quantile(F(1, 2)) == 0
assert d.quantile(F(1, 2) + F(1, 1000)) == 1

# endpoint conventions: level 0 is always -inf, level 1 is the top of the
# support when it is finite
assert d.quantile(0) == NEG_INF
assert d.quantile(1) == 1

print()
print("Galois adjunction: Q(p) <= x holds exactly when p <= F(x)")
checked = 0
for px in range(1, 20):
    p = F(px, 20)
    for xn in range(-12, 13):
        x = F(xn, 6)
        assert (d.quantile(p) <= x) == (p <= d.cdf(x))
        checked += 1
print(f"  verified on {checked} (p, x) pairs")

print()
print("flatness queries (used by the case classifier)")
flat, witness = d.flat_left_of(1)
print(f"  flat just left of 1: {flat}, witness {witness}")
assert flat and d.cdf(witness) == d.cdf_left_limit(1)
flat, _ = d.flat_left_of(F(-1, 2))
print(f"  flat just left of -1/2: {flat}")
assert not flat

print()
print("parametric families share the same interface")
from mixquant import Normal

n = Normal(0, 1)
print(f"  Normal(0,1): Q(0.975) = {n.quantile(F(975, 1000)):.6f}")
print(f"  Q(0) = {n.quantile(0)}, Q(1) = {n.quantile(1)}")
assert n.quantile(0) == NEG_INF and n.quantile(1) == POS_INF
