"""Basis-indexed algebras with infinitely many basis elements.

Only products of basis elements are needed; elements are finite sparse dicts
``{basis key: coefficient}``.  These algebras support pointwise cochain
evaluation and the chain/cochain operators, never cohomology dimensions.
"""
from __future__ import annotations

from .cyclo import conj, simplify


class LazyAlgebra:
    lazy = True

    def mul_basis(self, a, b) -> dict:
        raise NotImplementedError

    def unit(self) -> dict:
        raise NotImplementedError

    def star_basis(self, a) -> dict:
        raise NotImplementedError

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for k, c in self.mul_basis(a, b).items():
                    out[k] = out.get(k, 0) + ca * cb * c
        return {k: simplify(v) for k, v in out.items() if v != 0}

    def star(self, x: dict) -> dict:
        out: dict = {}
        for a, ca in x.items():
            for k, c in self.star_basis(a).items():
                out[k] = out.get(k, 0) + conj(ca) * c
        return {k: simplify(v) for k, v in out.items() if v != 0}


class GroupAlgebraZ(LazyAlgebra):
    """The group algebra of Z, i.e. Laurent polynomials in z; basis key n is z^n."""

    def mul_basis(self, a, b):
        return {a + b: 1}

    def unit(self):
        return {0: 1}

    def star_basis(self, a):
        return {-a: 1}

    def group_mul(self, a, b):
        return a + b

    def group_inv(self, a):
        return -a

    identity = 0

    def __repr__(self):
        return "GroupAlgebraZ()"


_LAURENT = GroupAlgebraZ()


def laurent_algebra() -> GroupAlgebraZ:
    return _LAURENT


def monomial(n: int, c=1) -> dict:
    return {n: c}
