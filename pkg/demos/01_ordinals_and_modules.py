# Ordinals and modules over Z/m
# =============================
#
# Positions along transfinite branches are ordinals below w^w, kept in
# Cantor normal form.  Coefficients live in Z/m, and finitely generated
# Z/m-modules are direct sums of cyclic pieces Z/d.  This script walks
# through both.

import numpy as np

from treequiver import linalg as la
from treequiver.linalg import FgModule, right_inverse, smith_decompose, solve_linear
from treequiver.ordinal import OMEGA, ord_sup, parse

# %% Ordinal addition is not commutative: a finite prefix is swallowed.
a = parse("w*2+3")
print("a         =", a.pretty())
print("1 + w     =", (1 + OMEGA).pretty())
print("w + 1     =", (OMEGA + 1).pretty())
print("a + w^2   =", (a + parse("w^2")).pretty())
print("sup(n)    =", ord_sup([1, 5, 17]).pretty(), "(finite sets have a max)")
print("w+3 limit?", parse("w+3").is_limit(), " w*2 limit?", parse("w*2").is_limit())

# %% Left subtraction undoes addition on the left: (a + b) - a == b.
b = parse("w+1")
print("(a+b) left_subtract a =", (a + b).left_subtract(a).pretty())

# %% Smith normal form over the integers: U A V = D with d1 | d2 | ...
A = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
U, D, V = smith_decompose(A)
print("Smith diagonal:", [D[i][i] for i in range(3)])
assert (np.array(U, dtype=object) @ np.array(A, dtype=object) @ np.array(V, dtype=object) == np.array(D, dtype=object)).all()

# %% Solving over Z/4, which is not a field.
A4 = np.array([[2, 0], [0, 1]])
print("solve 2x=2, y=3 mod 4:", solve_linear(A4, [2, 3], 4))
print("solve 2x=1 mod 4     :", solve_linear(np.array([[2]]), [1], 4))

# %% Injective modules: over Z/4 the module Z/4 is injective and Z/2 is not.
for M in (FgModule((4,)), FgModule((2,)), FgModule((2, 4))):
    print(f"{M} injective over Z/4: {la.is_injective_module(M, 4)}")
print("indecomposable injectives over Z/12:", la.indecomposable_injective_modules(12))

# %% A split epimorphism has a right inverse; here k^2 -> k over F_3.
f = np.array([[1, 2]])
g = right_inverse(f, 3)
print("right inverse of [1 2] over F_3:", g.ravel(), " f g =", la.matmul(f, g, 3).ravel())
