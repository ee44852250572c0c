"""
Polynomial normal forms
=======================

Two spellings of the same product, one with Int and one with Real variables,
normalise to the same canonical polynomial.
"""

from fractions import Fraction

from cpcheck.poly import Add, Cast, Const, DivConst, IntVar, Mul, RealVar, certify_poly_eq, denote, to_poly

x, y, z = IntVar(0), IntVar(1), RealVar(0)

# 1 * (x + y) * z / 4
lhs = DivConst(Mul(Mul(Const(1), Cast(Add(x, y))), z), 4)
# 1 / (2 * 2) * (z * y + x * z)
rhs = Mul(DivConst(Const(1), 4), Add(Mul(z, Cast(y)), Mul(Cast(x), z)))

# Int variable i sits at index 2i, Real variable i at 2i + 1
print("lhs:", to_poly(lhs))
print("rhs:", to_poly(rhs))
print("certified equal:", certify_poly_eq(lhs, rhs).equal)

# Same value at a sample point
ints, reals = [3, -5], [Fraction(7, 3)]
print("denote:", denote(lhs, ints, reals), denote(rhs, ints, reals))

# When they differ, the difference polynomial says by how much
cert = certify_poly_eq(lhs, Mul(Cast(x), z))
print("difference:", cert.difference)
