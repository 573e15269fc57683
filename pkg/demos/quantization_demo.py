"""Moyal star products and the deformation equation on a truncated polynomial algebra.

Run with:  python demos/quantization_demo.py
"""
from ncgkit.algebra import truncated_polynomial
from ncgkit.cochains import multiplication_cochain
from ncgkit.star import (PoissonStruct, PolyElement, bivector_cochain, check_associativity, deformation_step,
                         euler_derivations, moyal_product)

pi = PoissonStruct.standard(1)
x, y = (PolyElement.variable(pi.names, i) for i in range(2))
print("x * y =", moyal_product(pi, x, y, 2).to_text())
print("y * x =", moyal_product(pi, y, x, 2).to_text())

f = PolyElement.from_text("x^2 y + 3", pi.names)
g = PolyElement.from_text("y^3 - x", pi.names)
print("f * g through h^3:", moyal_product(pi, f, g, 3).to_text())
print("first failure of associativity (f, g, x y):", check_associativity(pi, f, g, x * y, 6))
print("same with B_2 doubled:", check_associativity(pi, f, g, x * y, 6, scale={2: 2}))

# Solve delta B_n = sum B_i o B_(n-i) level by level on Q[x,y]/(x^2, y^2).
A = truncated_polynomial([2, 2])
B = [multiplication_cochain(A), bivector_cochain(A, *euler_derivations(A, [2, 2]))]
for n in range(2, 5):
    step = deformation_step(B, n)
    print(f"level {n}: obstruction is a cocycle: {step.is_cocycle}, solved: {step.solution is not None}")
    if step.solution is None:
        break
    B.append(step.solution)
