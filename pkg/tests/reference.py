"""Naive second-path implementations used as oracles by the unit tests.

Everything here recomputes piecewise CDF/quantile facts from the raw atom
and segment lists by direct scanning, sharing no code with the package's
precomputed-piece machinery.  Slow and obvious on purpose.
"""

from fractions import Fraction

NEG_INF = float("-inf")


def ref_cdf(d, x):
    """P(X <= x) summed feature by feature."""
    x = Fraction(x) if not isinstance(x, Fraction) else x
    total = Fraction(0)
    for loc, mass in d.atoms:
        if loc <= x:
            total += mass
    for left, right, rise in d.segments:
        if x >= right:
            total += rise
        elif x > left:
            total += rise * (x - left) / (right - left)
    return total


def ref_cdf_left(d, x):
    """lim_{z -> x-} P(X <= z): the CDF minus any atom sitting at x."""
    x = Fraction(x) if not isinstance(x, Fraction) else x
    value = ref_cdf(d, x)
    for loc, mass in d.atoms:
        if loc == x:
            value -= mass
    return value


def breakpoints(d):
    pts = {loc for loc, _ in d.atoms}
    pts |= {left for left, _, _ in d.segments}
    pts |= {right for _, right, _ in d.segments}
    return sorted(pts)


def ref_quantile(d, p):
    """inf {x : ref_cdf(x) >= p} by scanning breakpoints left to right."""
    p = Fraction(p) if not isinstance(p, Fraction) else p
    if p == 0:
        return NEG_INF
    pts = breakpoints(d)
    for a, b in zip(pts, pts[1:]):
        if ref_cdf(d, a) >= p:
            return a
        left_at_b = ref_cdf_left(d, b)
        if left_at_b >= p:
            base = ref_cdf(d, a)
            slope = (left_at_b - base) / (b - a)
            return a + (p - base) / slope
    return pts[-1]
