"""Indices three ways: Toeplitz operators, a Fredholm module, and the noncommutative residue.

Run with:  python demos/index_theory_demo.py
"""
from ncgkit.chern import KIdempotent, fredholm_index, toy_fredholm_module
from ncgkit.errors import CertificationError
from ncgkit.psido import FormalPsiDO, radul_cocycle, residue_trace
from ncgkit.toeplitz import index_routes, winding_number

for text in ["z^3", "z^-2", "2 + z", "z^-1 + 1/4 z^2"]:
    print(f"T[{text}]: routes {index_routes(text)}")
try:
    winding_number("1 + z")
except CertificationError as exc:
    print("1 + z:", exc)

FM = toy_fredholm_module()
print("toy module, e = (1, 0): index", fredholm_index(FM, KIdempotent(FM.algebra, [[[1, 0]]])))

w = (-6, 4)
print("Res d^-1 =", residue_trace(FormalPsiDO.d(-1, w)))
zd = FormalPsiDO(w, {1: {1: 1}})
zinv = FormalPsiDO(w, {0: {-1: 1}})
print("Radul c(z d, z^-1) =", radul_cocycle(zd, zinv, w))
