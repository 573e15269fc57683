"""A short tour: cyclic cohomology of small algebras, periodicity, and a Chern pairing.

Run with:  python demos/cyclic_cohomology_tour.py
"""
import random

from ncgkit.algebra import group_algebra, matrix_algebra, rational_torus, truncated_polynomial
from ncgkit.chern import KIdempotent, cyclic_cocycle_basis, pair_even, random_idempotent
from ncgkit.cyclic import cohomology_dim, periodic_dim
from ncgkit.groups import cyclic_group

algebras = {
    "M_2": matrix_algebra(2),
    "C[Z_3]": group_algebra(cyclic_group(3)),
    "torus(1,2)": rational_torus(1, 2),
    "Q[x]/x^2": truncated_polynomial([2]),
}

print("HC^n for n = 0..3, Connes complex vs (b,B) bicomplex")
for name, A in algebras.items():
    connes = [cohomology_dim("connes_cyclic", A, n) for n in range(4)]
    bB = [cohomology_dim("cyclic_bicomplex", A, n) for n in range(4)]
    print(f"  {name:12s} {connes}  {bB}")

# Periodic cyclic cohomology stabilizes: the dual numbers have big HC but HP = Q.
hp = periodic_dim(algebras["Q[x]/x^2"], "even", cutoff=4)
print("HP^even(Q[x]/x^2) =", hp["dim"], " S-ranks:", hp["s_ranks"])

# Pair every cyclic 0- and 2-cocycle of M_2 with a rank-one projection and a random one.
A = algebras["M_2"]
e = KIdempotent(A, [[[1, 0, 0, 0]]])
f = random_idempotent(A, 2, random.Random(5))
for phi in cyclic_cocycle_basis(A, 0) + cyclic_cocycle_basis(A, 2):
    print(f"  degree {phi.degree} cocycle: <phi, e> = {pair_even(phi, e)}, <phi, f> = {pair_even(phi, f)}")
