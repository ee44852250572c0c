"""
Arithmetic rules against sampled points
=======================================

The checker's expected conclusions for sum-of-bounds and tangent-plane steps,
spot-checked with exact rationals.
"""

import random
from fractions import Fraction

from cpcheck.rules import RelChain, mult_tangent_conclusion, sum_ub_conclusion
from cpcheck.smtlib import parse_script, parse_term

s = parse_script("(declare-const a Int)(declare-const b Int)(declare-const x Real)(declare-const y Real)")

# Summing a < b (Int) with x <= y (Real) lifts the Int side and stays strict
prem = [parse_term("(< a b)", s), parse_term("(<= x y)", s)]
print(sum_ub_conclusion([RelChain.from_term(p) for p in prem]))

# Only equalities: the sum is still a <=, not an equality
eqs = [parse_term("(= x y)", s), parse_term("(= y x)", s)]
print(sum_ub_conclusion([RelChain.from_term(p) for p in eqs]))

# Tangent plane of x*y at (1, 2), both directions
X, Y = parse_term("x", s), parse_term("y", s)
for sigma in (True, False):
    print(mult_tangent_conclusion(X, Y, Fraction(1), Fraction(2), sigma))

# x*y <= 2x + y - 2  holds exactly when x, y sit on opposite sides of (1, 2)
rng = random.Random(0)
agree = 0
for _ in range(1000):
    xv, yv = Fraction(rng.randint(-30, 30), 7), Fraction(rng.randint(-30, 30), 7)
    bound = xv * yv <= 2 * xv + yv - 2
    cases = (xv <= 1 and 2 <= yv) or (1 <= xv and yv <= 2)
    agree += bound == cases
print(f"sigma=true agrees at {agree}/1000 points")
