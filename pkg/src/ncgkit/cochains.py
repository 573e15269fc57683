"""Hochschild cochains and chains of an algebra and the operators acting on them.

Scalar cochains phi in C^n(A) are (n+1)-linear functionals, stored as dense
object tensors of shape d^(n+1) with phi[i0, ..., in] = phi(e_i0, ..., e_in).
Adjoint cochains f in C^n(A, A) take values in A and have shape d^n x d.
Chains in A^(n+1) are kept either dense (finite algebras) or as sparse dicts
keyed by basis index tuples (lazy algebras).

All operators are written as tensor contractions against the structure
constants c[i, j, k]; with object dtype numpy does the arithmetic exactly.
"""
from __future__ import annotations

import itertools
from enum import Enum

import numpy as np

from .cyclo import simplify, zeta
from .errors import PreconditionError

_simplify_all = np.vectorize(simplify, otypes=[object])


class OperatorKind(str, Enum):
    b = "b"
    b_prime = "b_prime"
    lam = "lambda"
    N = "N"
    s = "s"
    B = "B"

    @classmethod
    def parse(cls, kind) -> "OperatorKind":
        if isinstance(kind, cls):
            return kind
        for k in cls:
            if k.value == kind or k.name == kind:
                return k
        raise ValueError(f"unknown operator {kind!r}")


def _is_lazy(alg) -> bool:
    return getattr(alg, "lazy", False)


def _clean(arr):
    arr = np.asarray(arr, dtype=object)
    if arr.ndim == 0:
        return simplify(arr.item())
    return _simplify_all(arr) if arr.size else arr


def _zero_tensor(d: int, ndim: int):
    return np.zeros((d,) * ndim, dtype=object)


# -----------------------------------------------------------------------------
# containers

class Cochain:
    """An n-cochain in scalar mode (values in the field) or adjoint mode (values in A)."""

    __slots__ = ("algebra", "degree", "mode", "data", "evaluator")

    def __init__(self, algebra, degree: int, data=None, mode: str = "scalar", evaluator=None):
        if mode not in ("scalar", "adjoint"):
            raise ValueError("mode must be 'scalar' or 'adjoint'")
        if degree < 0:
            raise PreconditionError("cochain degree must be >= 0")
        self.algebra = algebra
        self.degree = int(degree)
        self.mode = mode
        self.evaluator = None
        self.data = None
        if _is_lazy(algebra):
            if evaluator is None:
                raise PreconditionError("cochains on lazy algebras need an evaluator")
            self.evaluator = evaluator
            return
        d = algebra.dim
        nd = degree + 1
        if data is None:
            data = _zero_tensor(d, nd)
        data = np.asarray(data, dtype=object)
        if data.shape != (d,) * nd:
            want = "d^(n+1)" if mode == "scalar" else "d^n x d"
            raise PreconditionError(f"cochain tensor must have shape {want} = {(d,) * nd}, got {data.shape}")
        self.data = data

    @property
    def lazy(self) -> bool:
        return self.evaluator is not None

    @property
    def arity(self) -> int:
        return self.degree + 1 if self.mode == "scalar" else self.degree

    def value_at(self, keys):
        """Value on a tuple of basis indices (basis keys for lazy algebras)."""
        keys = tuple(keys)
        if self.lazy:
            return self.evaluator(keys)
        v = self.data[keys]
        if self.mode == "adjoint":
            return np.array(v, dtype=object)
        return v

    def __call__(self, *args):
        """Evaluate on algebra elements (coefficient vectors, AlgElements or dicts)."""
        if len(args) != self.arity:
            raise PreconditionError(f"expected {self.arity} arguments")
        if self.lazy:
            out = {} if self.mode == "adjoint" else 0
            items = [list(a.items()) for a in args]
            for combo in itertools.product(*items):
                coeff = 1
                for _, c in combo:
                    coeff = coeff * c
                v = self.evaluator(tuple(k for k, _ in combo))
                if self.mode == "adjoint":
                    for k, c in v.items():
                        out[k] = out.get(k, 0) + coeff * c
                else:
                    out = out + coeff * v
            if self.mode == "adjoint":
                return {k: simplify(c) for k, c in out.items() if c != 0}
            return simplify(out)
        t = self.data
        for a in args:
            a = getattr(a, "coeffs", a)
            t = np.tensordot(np.asarray(a, dtype=object), t, axes=([0], [0]))
        return _clean(t)

    def is_zero(self) -> bool:
        if self.lazy:
            raise PreconditionError("cannot decide vanishing of a lazy cochain")
        return not np.any(self.data != 0)

    def _like(self, data):
        return Cochain(self.algebra, self.degree, _clean(data), self.mode)

    def _check(self, other):
        if not isinstance(other, Cochain) or other.algebra is not self.algebra:
            raise PreconditionError("cochains over different algebras")
        if other.degree != self.degree or other.mode != self.mode:
            raise PreconditionError("cochains of different degree or mode")

    def __add__(self, other):
        self._check(other)
        if self.lazy:
            return _lazy_lincomb(self, [(1, self), (1, other)])
        return self._like(self.data + other.data)

    def __sub__(self, other):
        self._check(other)
        if self.lazy:
            return _lazy_lincomb(self, [(1, self), (-1, other)])
        return self._like(self.data - other.data)

    def __neg__(self):
        return self.scaled(-1)

    def scaled(self, c):
        if self.lazy:
            return _lazy_lincomb(self, [(c, self)])
        return self._like(self.data * c)

    __rmul__ = scaled

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        if self.lazy or other.lazy:
            return self is other
        return (self.algebra is other.algebra and self.degree == other.degree
                and self.mode == other.mode and not np.any(self.data != other.data))

    __hash__ = None

    def __repr__(self):
        return f"Cochain(degree={self.degree}, mode={self.mode!r}{', lazy' if self.lazy else ''})"


def _lazy_lincomb(template: Cochain, terms, degree=None):
    terms = list(terms)
    adjoint = template.mode == "adjoint"

    def ev(keys):
        if adjoint:
            out: dict = {}
            for c, phi in terms:
                for k, v in phi.evaluator(keys).items():
                    out[k] = out.get(k, 0) + c * v
            return {k: simplify(v) for k, v in out.items() if v != 0}
        return simplify(sum(c * phi.evaluator(keys) for c, phi in terms))

    deg = template.degree if degree is None else degree
    return Cochain(template.algebra, deg, mode=template.mode, evaluator=ev)


class Chain:
    """An element of A^(n+1), dense or sparse."""

    __slots__ = ("algebra", "degree", "_dense", "_terms")

    def __init__(self, algebra, degree: int, data=None, terms=None):
        if degree < 0:
            raise PreconditionError("chain degree must be >= 0")
        self.algebra = algebra
        self.degree = int(degree)
        self._dense = None
        self._terms = None
        if data is not None:
            if _is_lazy(algebra):
                raise PreconditionError("chains over lazy algebras are sparse")
            data = np.asarray(data, dtype=object)
            if data.shape != (algebra.dim,) * (degree + 1):
                raise PreconditionError("chain tensor has the wrong shape")
            self._dense = data
        else:
            terms = {tuple(k): simplify(v) for k, v in (terms or {}).items()}
            terms = {k: v for k, v in terms.items() if v != 0}
            for k in terms:
                if len(k) != degree + 1:
                    raise PreconditionError("chain term has the wrong length")
                if not _is_lazy(algebra) and not all(0 <= i < algebra.dim for i in k):
                    raise PreconditionError("chain term references an invalid basis index")
            self._terms = terms

    @property
    def lazy(self) -> bool:
        return _is_lazy(self.algebra)

    @property
    def terms(self) -> dict:
        if self._terms is None:
            nz = np.nonzero(self._dense != 0)
            self._terms = {tuple(int(i) for i in idx): self._dense[idx] for idx in zip(*nz)}
        return self._terms

    def to_dense(self):
        if self._dense is None:
            if self.lazy:
                raise PreconditionError("lazy chains have no dense form")
            t = _zero_tensor(self.algebra.dim, self.degree + 1)
            for k, v in self._terms.items():
                t[k] = v
            self._dense = t
        return self._dense

    def is_zero(self) -> bool:
        if self._dense is not None:
            return not np.any(self._dense != 0)
        return not self._terms

    def _combine(self, other, sign):
        if not isinstance(other, Chain) or other.algebra is not self.algebra or other.degree != self.degree:
            raise PreconditionError("chains of different algebra or degree")
        if self.lazy:
            out = dict(self.terms)
            for k, v in other.terms.items():
                out[k] = out.get(k, 0) + sign * v
            return Chain(self.algebra, self.degree, terms=out)
        return Chain(self.algebra, self.degree, _clean(self.to_dense() + sign * other.to_dense()))

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scaled(self, c):
        if self.lazy:
            return Chain(self.algebra, self.degree, terms={k: c * v for k, v in self.terms.items()})
        return Chain(self.algebra, self.degree, _clean(self.to_dense() * c))

    __rmul__ = scaled

    def __neg__(self):
        return self.scaled(-1)

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        return (self.algebra is other.algebra and self.degree == other.degree
                and (self - other).is_zero())

    __hash__ = None

    def __repr__(self):
        return f"Chain(degree={self.degree}, terms={len(self.terms)})"


def pair(phi: Cochain, x: Chain):
    """The canonical pairing <phi, x> of a scalar n-cochain with an n-chain."""
    if phi.mode != "scalar" or phi.degree != x.degree:
        raise PreconditionError("pairing needs a scalar cochain and a chain of the same degree")
    if phi.lazy or x.lazy:
        return simplify(sum(v * phi.value_at(k) for k, v in x.terms.items()))
    return simplify(np.sum(phi.data * x.to_dense()))


# -----------------------------------------------------------------------------
# dense scalar cochain operators (finite algebras)

def _sign(n):
    return -1 if n % 2 else 1


def _b_terms(c, phi, last: bool):
    n = phi.ndim - 1
    out = None
    for i in range(n + 1):
        t = np.moveaxis(np.tensordot(c, phi, axes=([2], [i])), [0, 1], [i, i + 1])
        out = t if i == 0 else (out + t if i % 2 == 0 else out - t)
    if last:
        t = np.moveaxis(np.tensordot(c, phi, axes=([2], [0])), 0, -1)
        out = out + _sign(n + 1) * t
    return out


def cochain_b(alg, phi):
    return _clean(_b_terms(alg.struct, phi, True))


def cochain_b_prime(alg, phi):
    return _clean(_b_terms(alg.struct, phi, False))


def cochain_lambda(alg, phi):
    n = phi.ndim - 1
    return np.moveaxis(phi, 0, -1) * _sign(n)


def cochain_N(alg, phi):
    n = phi.ndim - 1
    out, cur = phi, phi
    for _ in range(n):
        cur = cochain_lambda(alg, cur)
        out = out + cur
    return _clean(out)


def cochain_s(alg, phi):
    n = phi.ndim - 1
    if n == 0:
        raise PreconditionError("s lowers the degree; it is undefined on 0-cochains")
    return _clean(np.tensordot(phi, alg.unit, axes=([n], [0])) * _sign(n))


def cochain_B(alg, phi):
    return cochain_N(alg, cochain_s(alg, _clean(phi - cochain_lambda(alg, phi))))


def cochain_B0(alg, phi):
    """B_0 phi (a_0..a_{n-1}) = phi(1, a_0, ..) - (-1)^n phi(a_0, .., 1)."""
    n = phi.ndim - 1
    if n == 0:
        raise PreconditionError("B_0 is undefined on 0-cochains")
    first = np.tensordot(alg.unit, phi, axes=([0], [0]))
    last = np.tensordot(phi, alg.unit, axes=([n], [0]))
    return _clean(first - _sign(n) * last)


# dense chain operators

def chain_b_dense(alg, x, last=True):
    n = x.ndim - 1
    if n == 0:
        raise PreconditionError("b lowers the degree; it is undefined on 0-chains")
    c = alg.struct
    out = None
    for i in range(n):
        t = np.moveaxis(np.tensordot(x, c, axes=([i, i + 1], [0, 1])), -1, i)
        out = t if i == 0 else (out + t if i % 2 == 0 else out - t)
    if last:
        t = np.moveaxis(np.tensordot(x, c, axes=([n, 0], [0, 1])), -1, 0)
        out = out + _sign(n) * t
    return _clean(out)


def chain_lambda_dense(alg, x):
    n = x.ndim - 1
    return np.moveaxis(x, -1, 0) * _sign(n)


def chain_N_dense(alg, x):
    n = x.ndim - 1
    out, cur = x, x
    for _ in range(n):
        cur = chain_lambda_dense(alg, cur)
        out = out + cur
    return _clean(out)


def chain_s_dense(alg, x):
    n = x.ndim - 1
    return np.multiply.outer(x, alg.unit) * _sign(n)


def chain_B_dense(alg, x):
    y = chain_s_dense(alg, chain_N_dense(alg, x))
    return _clean(y - chain_lambda_dense(alg, y))


# sparse chain operators, valid for finite and lazy algebras alike

def _mul_basis(alg, i, j) -> dict:
    if _is_lazy(alg):
        return alg.mul_basis(i, j)
    return dict(alg.table[i][j])


def _unit_terms(alg) -> dict:
    if _is_lazy(alg):
        return alg.unit()
    return {i: u for i, u in enumerate(alg.unit) if u != 0}


def _acc(out, key, v):
    out[key] = out.get(key, 0) + v


def chain_b_sparse(alg, terms: dict, n: int, last=True) -> dict:
    if n == 0:
        raise PreconditionError("b lowers the degree; it is undefined on 0-chains")
    out: dict = {}
    for key, v in terms.items():
        for i in range(n):
            sg = _sign(i)
            for k, c in _mul_basis(alg, key[i], key[i + 1]).items():
                _acc(out, key[:i] + (k,) + key[i + 2:], sg * c * v)
        if last:
            for k, c in _mul_basis(alg, key[n], key[0]).items():
                _acc(out, (k,) + key[1:n], _sign(n) * c * v)
    return out


def chain_lambda_sparse(terms: dict, n: int) -> dict:
    sg = _sign(n)
    return {(k[-1],) + k[:-1]: sg * v for k, v in terms.items()}


def chain_N_sparse(terms: dict, n: int) -> dict:
    out = dict(terms)
    cur = terms
    for _ in range(n):
        cur = chain_lambda_sparse(cur, n)
        for k, v in cur.items():
            _acc(out, k, v)
    return out


def chain_s_sparse(alg, terms: dict, n: int) -> dict:
    out: dict = {}
    for k, v in terms.items():
        for u, c in _unit_terms(alg).items():
            _acc(out, k + (u,), _sign(n) * c * v)
    return out


def chain_B_sparse(alg, terms: dict, n: int) -> dict:
    y = chain_s_sparse(alg, chain_N_sparse(terms, n), n)
    out = dict(y)
    for k, v in chain_lambda_sparse(y, n + 1).items():
        _acc(out, k, -v)
    return out


# lazy cochain operators: closures over the evaluator

def _lazy_b(phi: Cochain, last=True) -> Cochain:
    alg, n, ev = phi.algebra, phi.degree, phi.evaluator

    def out(keys):
        total = 0
        for i in range(n + 1):
            for k, c in alg.mul_basis(keys[i], keys[i + 1]).items():
                total += _sign(i) * c * ev(keys[:i] + (k,) + keys[i + 2:])
        if last:
            for k, c in alg.mul_basis(keys[n + 1], keys[0]).items():
                total += _sign(n + 1) * c * ev((k,) + keys[1:n + 1])
        return simplify(total)

    return Cochain(alg, n + 1, evaluator=out)


def _lazy_lambda(phi: Cochain) -> Cochain:
    n, ev = phi.degree, phi.evaluator
    return Cochain(phi.algebra, n, evaluator=lambda keys: _sign(n) * ev(keys[1:] + keys[:1]))


def _lazy_N(phi: Cochain) -> Cochain:
    n, ev = phi.degree, phi.evaluator

    def out(keys):
        total, sg = 0, 1
        for j in range(n + 1):
            rot = keys[j:] + keys[:j]
            total += sg * ev(rot)
            sg *= _sign(n)
        return simplify(total)

    return Cochain(phi.algebra, n, evaluator=out)


def _lazy_s(phi: Cochain) -> Cochain:
    alg, n, ev = phi.algebra, phi.degree, phi.evaluator
    if n == 0:
        raise PreconditionError("s lowers the degree; it is undefined on 0-cochains")
    unit = alg.unit()
    return Cochain(alg, n - 1, evaluator=lambda keys: simplify(
        _sign(n) * sum(c * ev(keys + (u,)) for u, c in unit.items())))


# -----------------------------------------------------------------------------
# adjoint (deformation complex) operators

def hochschild_delta(f: Cochain) -> Cochain:
    """Hochschild coboundary on C^n(A, A)."""
    if f.mode != "adjoint" or f.lazy:
        raise PreconditionError("hochschild_delta needs a finite adjoint cochain")
    alg, n, phi = f.algebra, f.degree, f.data
    c = alg.struct
    out = np.moveaxis(np.tensordot(c, phi, axes=([1], [n])), 1, -1)
    for i in range(1, n + 1):
        t = np.moveaxis(np.tensordot(c, phi, axes=([2], [i - 1])), [0, 1], [i - 1, i])
        out = out + _sign(i) * t
    out = out + _sign(n + 1) * np.tensordot(phi, c, axes=([n], [0]))
    return Cochain(alg, n + 1, _clean(out), "adjoint")


def _circle_terms(f: Cochain, g: Cochain, sign):
    p, q = f.degree, g.degree
    out = None
    for i in range(1, p + 1):
        t = np.tensordot(g.data, f.data, axes=([q], [i - 1]))
        if q:
            t = np.moveaxis(t, list(range(q)), list(range(i - 1, i - 1 + q)))
        t = t * sign(p, q, i)
        out = t if out is None else out + t
    return out


def _standard_sign(p, q, i):
    return _sign((q - 1) * (i - 1))


def circle_product(f: Cochain, g: Cochain, sign=None) -> Cochain:
    """Insertion product (f o g)(a_1..a_{p+q-1}) = sum_i +- f(.., g(a_i..a_{i+q-1}), ..).

    The sign of the i-th insertion is (-1)^((q-1)(i-1)); for 2-cochains this is
    f(g(a, b), c) - f(a, g(b, c)).  ``sign`` overrides it with a callable
    (p, q, i) -> +-1.
    """
    _check_adjoint(f, g)
    if f.degree < 1:
        raise PreconditionError("cannot insert into a 0-cochain")
    t = _circle_terms(f, g, sign or _standard_sign)
    return Cochain(f.algebra, f.degree + g.degree - 1, _clean(t), "adjoint")


def gerstenhaber_bracket(f: Cochain, g: Cochain) -> Cochain:
    """[f, g] = f o g - (-1)^((p-1)(q-1)) g o f."""
    _check_adjoint(f, g)
    p, q = f.degree, g.degree
    if p < 1 or q < 1:
        raise PreconditionError("the bracket needs cochains of degree >= 1")
    fg = circle_product(f, g)
    gf = circle_product(g, f)
    return Cochain(f.algebra, p + q - 1, _clean(fg.data - _sign((p - 1) * (q - 1)) * gf.data), "adjoint")


def cup_product(f: Cochain, g: Cochain) -> Cochain:
    """(f u g)(a_1..a_{p+q}) = f(a_1..a_p) g(a_{p+1}..a_{p+q})."""
    _check_adjoint(f, g)
    p = f.degree
    t = np.tensordot(f.data, f.algebra.struct, axes=([p], [0]))
    t = np.moveaxis(np.tensordot(t, g.data, axes=([p], [g.degree])), p, -1)
    return Cochain(f.algebra, p + g.degree, _clean(t), "adjoint")


def _check_adjoint(f, g):
    if not (isinstance(f, Cochain) and isinstance(g, Cochain)):
        raise PreconditionError("expected cochains")
    if f.mode != "adjoint" or g.mode != "adjoint":
        raise PreconditionError("products are defined on adjoint-mode cochains")
    if f.algebra is not g.algebra:
        raise PreconditionError("cochains over different algebras")
    if f.lazy or g.lazy:
        raise PreconditionError("products of lazy cochains are not supported")


def multiplication_cochain(alg) -> Cochain:
    return Cochain(alg, 2, alg.struct.copy(), "adjoint")


def unit_cochain(alg) -> Cochain:
    return Cochain(alg, 0, alg.unit.copy(), "adjoint")


# -----------------------------------------------------------------------------
# dispatch

def apply_operator(kind, x):
    """Apply b, b', lambda, N, s or B to a cochain, chain or cyclic-module element."""
    kind = OperatorKind.parse(kind)
    from .cyclic import ModuleElement
    if isinstance(x, ModuleElement):
        return x.module.apply(kind, x)
    if isinstance(x, Chain):
        return _apply_chain(kind, x)
    if not isinstance(x, Cochain):
        raise TypeError("apply_operator expects a Cochain, Chain or ModuleElement")
    if x.mode == "adjoint":
        if kind is OperatorKind.b:
            return hochschild_delta(x)
        raise PreconditionError(f"{kind.value} is not defined on the deformation complex")
    alg, n = x.algebra, x.degree
    if kind in (OperatorKind.s, OperatorKind.B) and n == 0:
        raise PreconditionError(f"{kind.value} lowers the degree; it is undefined on 0-cochains")
    if x.lazy:
        if kind is OperatorKind.b:
            return _lazy_b(x)
        if kind is OperatorKind.b_prime:
            return _lazy_b(x, last=False)
        if kind is OperatorKind.lam:
            return _lazy_lambda(x)
        if kind is OperatorKind.N:
            return _lazy_N(x)
        if kind is OperatorKind.s:
            return _lazy_s(x)
        y = x - _lazy_lambda(x)
        return _lazy_N(_lazy_s(y))
    if kind is OperatorKind.b:
        return Cochain(alg, n + 1, cochain_b(alg, x.data))
    if kind is OperatorKind.b_prime:
        return Cochain(alg, n + 1, cochain_b_prime(alg, x.data))
    if kind is OperatorKind.lam:
        return Cochain(alg, n, cochain_lambda(alg, x.data))
    if kind is OperatorKind.N:
        return Cochain(alg, n, cochain_N(alg, x.data))
    if kind is OperatorKind.s:
        return Cochain(alg, n - 1, cochain_s(alg, x.data))
    return Cochain(alg, n - 1, cochain_B(alg, x.data))


def _apply_chain(kind, x: Chain) -> Chain:
    alg, n = x.algebra, x.degree
    if kind in (OperatorKind.b, OperatorKind.b_prime) and n == 0:
        raise PreconditionError(f"{kind.value} lowers the degree; it is undefined on 0-chains")
    if x.lazy:
        t = x.terms
        if kind is OperatorKind.b:
            return Chain(alg, n - 1, terms=chain_b_sparse(alg, t, n))
        if kind is OperatorKind.b_prime:
            return Chain(alg, n - 1, terms=chain_b_sparse(alg, t, n, last=False))
        if kind is OperatorKind.lam:
            return Chain(alg, n, terms=chain_lambda_sparse(t, n))
        if kind is OperatorKind.N:
            return Chain(alg, n, terms=chain_N_sparse(t, n))
        if kind is OperatorKind.s:
            return Chain(alg, n + 1, terms=chain_s_sparse(alg, t, n))
        return Chain(alg, n + 1, terms=chain_B_sparse(alg, t, n))
    d = x.to_dense()
    if kind is OperatorKind.b:
        return Chain(alg, n - 1, chain_b_dense(alg, d))
    if kind is OperatorKind.b_prime:
        return Chain(alg, n - 1, chain_b_dense(alg, d, last=False))
    if kind is OperatorKind.lam:
        return Chain(alg, n, chain_lambda_dense(alg, d))
    if kind is OperatorKind.N:
        return Chain(alg, n, chain_N_dense(alg, d))
    if kind is OperatorKind.s:
        return Chain(alg, n + 1, _clean(chain_s_dense(alg, d)))
    return Chain(alg, n + 1, chain_B_dense(alg, d))


# -----------------------------------------------------------------------------
# normalization and random data

def unit_adapted_basis(alg):
    """A change of basis P (columns in old coordinates) with first column the unit, and P^-1."""
    key = "unit_adapted_basis"
    if key in alg._cache:
        return alg._cache[key]
    from .linalg import SparseMatrix, solve
    d = alg.dim
    cols = [list(alg.unit)]
    j0 = next(i for i, u in enumerate(alg.unit) if u != 0)
    cols += [[1 if k == i else 0 for k in range(d)] for i in range(d) if i != j0]
    P = np.array(cols, dtype=object).T
    Pm = SparseMatrix.from_dense(P)
    Pinv = np.zeros((d, d), dtype=object)
    for i in range(d):
        sol = solve(Pm, {i: 1})
        for k, v in sol.items():
            Pinv[k, i] = v
    alg._cache[key] = (P, Pinv)
    return P, Pinv


def _transform_axes(t, M):
    for ax in range(t.ndim):
        t = np.moveaxis(np.tensordot(M, t, axes=([1], [ax])), 0, ax)
    return t


def normalize_chain(x: Chain) -> Chain:
    """Canonical representative of x modulo degenerate chains (a 1 in a slot >= 1)."""
    alg = x.algebra
    if x.lazy:
        unit = alg.unit()
        if len(unit) != 1 or list(unit.values()) != [1]:
            raise PreconditionError("normalization needs a basis containing the unit")
        u = next(iter(unit))
        return Chain(alg, x.degree, terms={k: v for k, v in x.terms.items() if u not in k[1:]})
    P, Pinv = unit_adapted_basis(alg)
    y = _transform_axes(x.to_dense(), Pinv)
    for ax in range(1, y.ndim):
        idx = [slice(None)] * y.ndim
        idx[ax] = 0
        y[tuple(idx)] = 0
    return Chain(alg, x.degree, _clean(_transform_axes(y, P)))


def normalize_cochain(phi: Cochain) -> Cochain:
    """Projection onto normalized cochains (vanishing when a slot >= 1 holds the unit)."""
    if phi.lazy or phi.mode != "scalar":
        raise PreconditionError("normalize_cochain needs a finite scalar cochain")
    P, Pinv = unit_adapted_basis(phi.algebra)
    y = _transform_axes(phi.data, P.T)
    for ax in range(1, y.ndim):
        idx = [slice(None)] * y.ndim
        idx[ax] = 0
        y[tuple(idx)] = 0
    return Cochain(phi.algebra, phi.degree, _clean(_transform_axes(y, Pinv.T)))


def is_normalized(phi: Cochain) -> bool:
    alg = phi.algebra
    n = phi.degree
    for ax in range(1, n + 1):
        if np.any(np.tensordot(phi.data, alg.unit, axes=([ax], [0])) != 0):
            return False
    return True


def _random_scalar(rng, span, conductor, exact_cyclo):
    v = rng.randint(-span, span)
    if exact_cyclo and conductor > 1 and rng.random() < 0.3:
        v = v + rng.randint(-span, span) * zeta(conductor)
    return v


def random_cochain(alg, degree: int, rng, mode: str = "scalar", span: int = 2,
                   density: float = 1.0, cyclotomic: bool = False) -> Cochain:
    d = alg.dim
    shape = (d,) * (degree + 1)
    data = np.zeros(shape, dtype=object)
    for idx in itertools.product(range(d), repeat=degree + 1):
        if rng.random() < density:
            data[idx] = _random_scalar(rng, span, alg.conductor, cyclotomic)
    return Cochain(alg, degree, _clean(data), mode)


def random_chain(alg, degree: int, rng, span: int = 2, density: float = 1.0,
                 cyclotomic: bool = False) -> Chain:
    c = random_cochain(alg, degree, rng, "scalar", span, density, cyclotomic)
    return Chain(alg, degree, c.data)


def cyclic_projection(phi: Cochain) -> Cochain:
    """N phi / (n+1): a cyclic cochain, equal to phi when phi is already cyclic."""
    from fractions import Fraction
    n = phi.degree
    return Cochain(phi.algebra, n, _clean(cochain_N(phi.algebra, phi.data) * Fraction(1, n + 1)))


def is_cyclic(phi: Cochain) -> bool:
    return not np.any(phi.data != cochain_lambda(phi.algebra, phi.data))
