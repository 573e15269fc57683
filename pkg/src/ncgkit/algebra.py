"""Finite-dimensional unital *-algebras given by structure constants.

A basis e_0..e_{d-1} is fixed and products are e_i e_j = sum_k c[i, j, k] e_k.
Elements are coefficient vectors (numpy object arrays) and scalars live in a
cyclotomic field, see :mod:`ncgkit.cyclo`.
"""
from __future__ import annotations

import random
from fractions import Fraction
from math import gcd, isqrt

import mpmath
import numpy as np

from .cyclo import CycloScalar, conductor_of, conj, inv, simplify, zeta
from .errors import NotPositiveError, PreconditionError, SplittingError, ValidationError
from .groups import FiniteGroup, group_from_name
from .linalg import SparseMatrix, nullspace, rank, rref, solve

POSITIVITY_MARGIN = mpmath.mpf("1e-20")


def _vec(values, d=None):
    v = np.array([simplify(x) for x in values], dtype=object)
    if d is not None and v.shape != (d,):
        raise ValueError(f"expected a vector of length {d}")
    return v


def _zeros(*shape):
    return np.zeros(shape, dtype=object)


class FinAlgebra:
    """Finite-dimensional associative unital algebra over Q(zeta_m).

    Instances are treated as immutable; derived data is cached in ``_cache``.
    """

    def __init__(self, structure, unit, involution=None, labels=None, conductor=None,
                 validate=True):
        c = np.array(structure, dtype=object)
        d = c.shape[0]
        if c.shape != (d, d, d) or d == 0:
            raise ValidationError("structure constants must have shape (d, d, d)")
        self.dim = d
        self.struct = np.vectorize(simplify, otypes=[object])(c)
        self.unit = _vec(unit, d)
        self.involution = None
        if involution is not None:
            j = np.array(involution, dtype=object)
            if j.shape != (d, d):
                raise ValidationError("involution must be a d x d matrix")
            self.involution = np.vectorize(simplify, otypes=[object])(j)
        self.labels = tuple(labels) if labels else tuple(f"e{i}" for i in range(d))
        if len(self.labels) != d:
            raise ValidationError("wrong number of basis labels")
        m = 1
        for x in list(self.struct.flat) + list(self.unit) + (
                list(self.involution.flat) if self.involution is not None else []):
            k = conductor_of(x)
            m = m * k // gcd(m, k)
        if conductor is not None:
            if conductor % m:
                raise ValidationError("declared conductor does not contain the structure constants")
            m = conductor
        self.conductor = m
        table = [[() for _ in range(d)] for _ in range(d)]
        for i, j, k in zip(*np.nonzero(self.struct != 0)):
            table[i][j] = table[i][j] + ((int(k), self.struct[i, j, k]),)
        self.table = tuple(tuple(r) for r in table)
        self._cache: dict = {}
        if validate:
            self.validate()

    # -- basic arithmetic ------------------------------------------------------
    def mul(self, x, y):
        out = [0] * self.dim
        for i, a in enumerate(x):
            if a == 0:
                continue
            row = self.table[i]
            for j, b in enumerate(y):
                if b == 0:
                    continue
                ab = a * b
                for k, c in row[j]:
                    out[k] = out[k] + ab * c
        return _vec(out)

    def basis_product(self, i: int, j: int) -> tuple:
        return self.table[i][j]

    def basis_vector(self, i: int):
        v = _zeros(self.dim)
        v[i] = 1
        return v

    def star_vec(self, x):
        if self.involution is None:
            raise PreconditionError("algebra has no involution")
        out = _zeros(self.dim)
        for i, a in enumerate(x):
            if a != 0:
                out = out + conj(a) * self.involution[:, i]
        return _vec(out)

    def left_mult(self, x):
        """Matrix of y -> x y in the basis."""
        return np.einsum("i,ijk->kj", np.asarray(x, dtype=object), self.struct)

    def right_mult(self, x):
        return np.einsum("j,ijk->ki", np.asarray(x, dtype=object), self.struct)

    def element(self, coeffs) -> "AlgElement":
        return AlgElement(self, coeffs)

    def one(self) -> "AlgElement":
        return AlgElement(self, self.unit)

    def zero(self) -> "AlgElement":
        return AlgElement(self, [0] * self.dim)

    def basis(self, i) -> "AlgElement":
        if isinstance(i, str):
            i = self.labels.index(i)
        return AlgElement(self, self.basis_vector(i))

    def is_commutative(self) -> bool:
        return bool(np.all(self.struct == self.struct.transpose(1, 0, 2)))

    def unit_index(self):
        """Index of the unit if it is a basis vector, else None."""
        nz = [i for i, u in enumerate(self.unit) if u != 0]
        if len(nz) == 1 and self.unit[nz[0]] == 1:
            return nz[0]
        return None

    # -- validation ------------------------------------------------------------
    def validate(self) -> None:
        d, t = self.dim, self.table
        for i in range(d):
            for j in range(d):
                left: dict = {}
                for k, c in t[i][j]:
                    for l in range(d):
                        for m, c2 in t[k][l]:
                            key = (l, m)
                            left[key] = left.get(key, 0) + c * c2
                right: dict = {}
                for l in range(d):
                    for k, c in t[j][l]:
                        for m, c2 in t[i][k]:
                            key = (l, m)
                            right[key] = right.get(key, 0) + c * c2
                keys = set(left) | set(right)
                if any(left.get(q, 0) != right.get(q, 0) for q in keys):
                    raise ValidationError(f"structure constants are not associative at ({i}, {j}, *)")
        eye = np.eye(d, dtype=int)
        lu = np.einsum("i,ijk->jk", self.unit, self.struct)
        ru = np.einsum("i,jik->jk", self.unit, self.struct)
        if not (np.all(lu == eye) and np.all(ru == eye)):
            raise ValidationError("unit is not a two-sided identity")
        if self.involution is not None:
            for i in range(d):
                ei = self.basis_vector(i)
                if np.any(self.star_vec(self.star_vec(ei)) != ei):
                    raise ValidationError("involution does not square to the identity")
                for j in range(d):
                    ej = self.basis_vector(j)
                    lhs = self.star_vec(self.mul(ei, ej))
                    rhs = self.mul(self.star_vec(ej), self.star_vec(ei))
                    if np.any(lhs != rhs):
                        raise ValidationError("involution is not an anti-homomorphism")

    def __repr__(self):
        return f"FinAlgebra(dim={self.dim}, conductor={self.conductor})"


class AlgElement:
    """An element of a FinAlgebra."""

    __slots__ = ("parent", "coeffs")

    def __init__(self, parent: FinAlgebra, coeffs):
        self.parent = parent
        self.coeffs = _vec(coeffs, parent.dim)

    def _wrap(self, other):
        if isinstance(other, AlgElement):
            if other.parent is not self.parent:
                raise ValueError("elements of different algebras")
            return other.coeffs
        return None

    def __add__(self, other):
        o = self._wrap(other)
        if o is None:
            o = other * self.parent.unit
        return AlgElement(self.parent, self.coeffs + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._wrap(other)
        if o is None:
            o = other * self.parent.unit
        return AlgElement(self.parent, self.coeffs - o)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return AlgElement(self.parent, -self.coeffs)

    def __mul__(self, other):
        o = self._wrap(other)
        if o is None:
            return AlgElement(self.parent, self.coeffs * other)
        return AlgElement(self.parent, self.parent.mul(self.coeffs, o))

    def __rmul__(self, other):
        return AlgElement(self.parent, self.coeffs * other)

    def __pow__(self, k: int):
        out = self.parent.one()
        for _ in range(k):
            out = out * self
        return out

    def star(self):
        return AlgElement(self.parent, self.parent.star_vec(self.coeffs))

    def __eq__(self, other):
        o = self._wrap(other)
        if o is None:
            o = other * self.parent.unit
        return bool(np.all(self.coeffs == o))

    __hash__ = None

    def is_zero(self) -> bool:
        return not np.any(self.coeffs != 0)

    def __repr__(self):
        terms = [f"({c})*{lab}" for c, lab in zip(self.coeffs, self.parent.labels) if c != 0]
        return " + ".join(terms) if terms else "0"


class LinearFunctional:
    """A linear functional given by its values on the basis."""

    __slots__ = ("parent", "values")

    def __init__(self, parent: FinAlgebra, values):
        self.parent = parent
        self.values = _vec(values, parent.dim)

    def __call__(self, x):
        if isinstance(x, AlgElement):
            x = x.coeffs
        return simplify(sum((a * b for a, b in zip(self.values, x) if a != 0 and b != 0), 0))

    def scaled(self, c) -> "LinearFunctional":
        return LinearFunctional(self.parent, self.values * c)

    def is_trace(self) -> bool:
        A = self.parent
        comm = A.struct - A.struct.transpose(1, 0, 2)
        return not np.any(np.einsum("ijk,k->ij", comm, self.values) != 0)

    def __repr__(self):
        return f"LinearFunctional({list(self.values)})"


class Representation:
    """Matrices pi(e_i) on a finite-dimensional carrier space."""

    def __init__(self, parent: FinAlgebra, matrices, cyclic_vector=None, gram=None):
        self.parent = parent
        self.matrices = [np.array(m, dtype=object) for m in matrices]
        self.carrier_dim = self.matrices[0].shape[0] if self.matrices else 0
        self.cyclic_vector = None if cyclic_vector is None else _vec(cyclic_vector)
        self.gram = None if gram is None else np.array(gram, dtype=object)

    def of(self, x):
        if isinstance(x, AlgElement):
            x = x.coeffs
        out = _zeros(self.carrier_dim, self.carrier_dim)
        for c, m in zip(x, self.matrices):
            if c != 0:
                out = out + c * m
        return out

    def inner(self, u, v):
        """<u, v>, linear in u and conjugate-linear in v, from the carrier Gram matrix."""
        g = self.gram if self.gram is not None else np.eye(self.carrier_dim, dtype=object)
        return simplify(sum(conj(v[i]) * g[i, j] * u[j]
                            for i in range(self.carrier_dim) for j in range(self.carrier_dim)
                            if g[i, j] != 0 and u[j] != 0 and v[i] != 0) or 0)

    def vector_state(self, x):
        v = self.cyclic_vector
        return self.inner(self.of(x).dot(v), v)

    def check_homomorphism(self) -> bool:
        A = self.parent
        eye = np.eye(self.carrier_dim, dtype=object)
        if np.any(self.of(A.unit) != eye):
            return False
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = self.matrices[i].dot(self.matrices[j])
                if np.any(lhs != self.of(A.mul(A.basis_vector(i), A.basis_vector(j)))):
                    return False
        return True


# -- constructors ------------------------------------------------------------

def structure_constants(struct, unit, involution=None, labels=None, conductor=None) -> FinAlgebra:
    return FinAlgebra(struct, unit, involution, labels, conductor)


def matrix_algebra(n: int) -> FinAlgebra:
    d = n * n
    c = _zeros(d, d, d)
    for i in range(n):
        for j in range(n):
            for l in range(n):
                c[i * n + j, j * n + l, i * n + l] = 1
    unit = [1 if i == j else 0 for i in range(n) for j in range(n)]
    inv = _zeros(d, d)
    for i in range(n):
        for j in range(n):
            inv[j * n + i, i * n + j] = 1
    labels = [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    return FinAlgebra(c, unit, inv, labels)


def group_algebra(group, conductor=None) -> FinAlgebra:
    """Group algebra; the scalar field defaults to Q(zeta_exponent), which splits it."""
    if isinstance(group, str):
        group = group_from_name(group)
    elif not isinstance(group, FiniteGroup):
        group = FiniteGroup(group)
    n = len(group)
    c = _zeros(n, n, n)
    inv = _zeros(n, n)
    for a in range(n):
        inv[group.inv(a), a] = 1
        for b in range(n):
            c[a, b, group.mul(a, b)] = 1
    unit = [int(g == group.identity) for g in range(n)]
    A = FinAlgebra(c, unit, inv, group.labels, conductor or group.exponent())
    A._cache["group"] = group
    return A


def rational_torus(p: int, q: int) -> FinAlgebra:
    """Finite quotient of the noncommutative torus at theta = p/q: unitaries u, v
    with u^q = v^q = 1 and uv = zeta_q^p vu.  Basis u^a v^b, index a*q + b."""
    if q <= 0:
        raise ValidationError("q must be positive")
    if gcd(p, q) != 1:
        raise ValidationError("p/q must be in lowest terms")
    lam = CycloScalar.root_of_unity(q, p)
    d = q * q
    c = _zeros(d, d, d)
    # u^a v^b u^c v^d = lam^(-b c) u^(a+c) v^(b+d)
    for a in range(q):
        for b in range(q):
            for a2 in range(q):
                for b2 in range(q):
                    c[a * q + b, a2 * q + b2, ((a + a2) % q) * q + (b + b2) % q] = simplify(lam ** (-(b * a2) % q))
    labels = []
    for a in range(q):
        for b in range(q):
            parts = ([] if a == 0 else ["u" if a == 1 else f"u^{a}"]) + ([] if b == 0 else ["v" if b == 1 else f"v^{b}"])
            labels.append(" ".join(parts) or "1")
    unit = [int(i == 0) for i in range(d)]
    A = FinAlgebra(c, unit, None, labels, conductor=q if q > 2 else None, validate=False)
    # (u^a v^b)* = v^-b u^-a
    inv = _zeros(d, d)
    for a in range(q):
        for b in range(q):
            vb = A.basis_vector(((-b) % q))
            ua = A.basis_vector(((-a) % q) * q)
            inv[:, a * q + b] = A.mul(vb, ua)
    A = FinAlgebra(c, unit, inv, labels, conductor=A.conductor)
    A._cache["torus"] = (p, q)
    return A


def direct_sum(A: FinAlgebra, B: FinAlgebra) -> FinAlgebra:
    da, db = A.dim, B.dim
    d = da + db
    c = _zeros(d, d, d)
    c[:da, :da, :da] = A.struct
    c[da:, da:, da:] = B.struct
    unit = list(A.unit) + list(B.unit)
    inv = None
    if A.involution is not None and B.involution is not None:
        inv = _zeros(d, d)
        inv[:da, :da] = A.involution
        inv[da:, da:] = B.involution
    labels = [f"({l},0)" for l in A.labels] + [f"(0,{l})" for l in B.labels]
    m = A.conductor * B.conductor // gcd(A.conductor, B.conductor)
    return FinAlgebra(c, unit, inv, labels, m)


def tensor(A: FinAlgebra, B: FinAlgebra) -> FinAlgebra:
    da, db = A.dim, B.dim
    c = np.einsum("ijk,abc->iajbkc", A.struct, B.struct).reshape(da * db, da * db, da * db)
    unit = np.einsum("i,a->ia", A.unit, B.unit).reshape(-1)
    inv = None
    if A.involution is not None and B.involution is not None:
        inv = np.einsum("ij,ab->iajb", A.involution, B.involution).reshape(da * db, da * db)
    labels = [f"{a}(x){b}" for a in A.labels for b in B.labels]
    m = A.conductor * B.conductor // gcd(A.conductor, B.conductor)
    return FinAlgebra(c, unit, inv, labels, m)


def truncated_polynomial(exponents, names=None) -> FinAlgebra:
    """Q[x_1..x_r]/(x_1^{n_1}, ..., x_r^{n_r}) with the monomial basis; trivial involution."""
    exponents = list(exponents)
    names = names or (["x", "y", "z", "w"][:len(exponents)] if len(exponents) <= 4
                      else [f"x{i}" for i in range(len(exponents))])
    monos = [()]
    for n in exponents:
        monos = [m + (k,) for m in monos for k in range(n)]
    index = {m: i for i, m in enumerate(monos)}
    d = len(monos)
    c = _zeros(d, d, d)
    for a, ma in enumerate(monos):
        for b, mb in enumerate(monos):
            s = tuple(x + y for x, y in zip(ma, mb))
            if s in index:
                c[a, b, index[s]] = 1
    labels = []
    for m in monos:
        parts = [v if k == 1 else f"{v}^{k}" for v, k in zip(names, m) if k]
        labels.append(" ".join(parts) or "1")
    inv = np.eye(d, dtype=object)
    A = FinAlgebra(c, [int(i == 0) for i in range(d)], inv, labels)
    A._cache["monomials"] = (tuple(names), tuple(monos))
    return A


def build_algebra(desc, *args, **kwargs) -> FinAlgebra:
    """Build an algebra from a kind name and arguments, or from a dict {"kind": ..., ...}."""
    if isinstance(desc, dict):
        kw = dict(desc)
        kind = kw.pop("kind")
        return build_algebra(kind, **kw)
    kind = desc
    if kind == "structure_constants":
        return structure_constants(*args, **kwargs)
    if kind == "matrix":
        return matrix_algebra(*args, **kwargs)
    if kind == "group_algebra":
        return group_algebra(*args, **kwargs)
    if kind == "rational_torus":
        return rational_torus(*args, **kwargs)
    if kind == "direct_sum":
        return direct_sum(*args, **kwargs)
    if kind == "tensor":
        return tensor(*args, **kwargs)
    if kind == "truncated_polynomial":
        return truncated_polynomial(*args, **kwargs)
    raise ValueError(f"unknown algebra kind {kind!r}")


# -- traces ----------------------------------------------------------------

def trace_space(alg: FinAlgebra) -> list:
    """Basis of the traces phi(ab) = phi(ba), by exact nullspace."""
    d = alg.dim
    comm = alg.struct - alg.struct.transpose(1, 0, 2)
    eqs = SparseMatrix.from_dense(comm.reshape(d * d, d))
    return [LinearFunctional(alg, [v.get(k, 0) for k in range(d)]) for v in nullspace(eqs)]


# -- Krylov helpers ----------------------------------------------------------

def _min_poly(alg: FinAlgebra, x, unit=None):
    """Monic minimal polynomial of x (coefficients lowest degree first)."""
    unit = alg.unit if unit is None else unit
    powers = [unit]
    while True:
        nxt = alg.mul(powers[-1], x)
        m = SparseMatrix.from_dense(np.array(powers, dtype=object).T)
        sol = solve(m, nxt)
        if sol is not None:
            return [simplify(-sol.get(k, 0)) for k in range(len(powers))] + [1]
        powers.append(nxt)


def _factor_over_field(coeffs, m: int):
    """Factor a polynomial (lowest degree first) over Q(zeta_m).  Returns a list of
    (factor coefficients lowest first, multiplicity) with monic factors."""
    import sympy as sp

    t = sp.Symbol("t")
    if m == 1:
        dom = sp.QQ
        z = None
    else:
        z = sp.exp(2 * sp.pi * sp.I / m)
        dom = sp.QQ.algebraic_field(z)

    def to_sym(c):
        c = CycloScalar.rational(c) if not isinstance(c, CycloScalar) else c
        base = c.m
        expr = 0
        for k, a in enumerate(c.num):
            if a:
                expr += sp.Rational(a, c.den) * sp.exp(2 * sp.pi * sp.I * k / base)
        return dom.from_sympy(sp.nsimplify(expr) if base == 1 else expr)

    poly = sp.Poly([to_sym(c) for c in reversed(coeffs)], t, domain=dom)
    lead, factors = poly.factor_list()
    out = []
    for f, e in factors:
        f = f.monic()
        cs = []
        for c in reversed(f.rep.to_list()):
            if m == 1:
                cs.append(simplify(Fraction(int(c.numerator), int(c.denominator))))
            else:
                lst = c.to_list()[::-1] if hasattr(c, "to_list") else [c]
                cs.append(simplify(CycloScalar(m, [Fraction(int(a.numerator), int(a.denominator)) for a in lst])))
        out.append((cs, e))
    return out


def _poly_in(alg: FinAlgebra, coeffs, x, unit):
    out = _zeros(alg.dim)
    p = unit
    for c in coeffs:
        out = out + c * p
        p = alg.mul(p, x)
    return _vec(out)


def _center_basis(alg: FinAlgebra) -> list:
    d = alg.dim
    comm = alg.struct - alg.struct.transpose(1, 0, 2)
    # sum_i x_i (c[i,j,k] - c[j,i,k]) = 0 for all j, k
    eqs = SparseMatrix.from_dense(comm.transpose(1, 2, 0).reshape(d * d, d))
    return [_vec([v.get(k, 0) for k in range(d)]) for v in nullspace(eqs)]


def central_idempotents(alg: FinAlgebra) -> list:
    """Primitive central idempotents of a split semisimple algebra (cached)."""
    if "central_idempotents" in alg._cache:
        return alg._cache["central_idempotents"]
    d = alg.dim
    tr_l = [sum(alg.struct[k, l, l] for l in range(d)) for k in range(d)]
    tform = np.einsum("ijk,k->ij", alg.struct, np.array(tr_l, dtype=object))
    r = rank(SparseMatrix.from_dense(tform))
    if r < d:
        raise SplittingError(f"algebra is not semisimple: radical of dimension {d - r}")
    center = _center_basis(alg)
    rz = len(center)
    rng = random.Random(0)
    idem = None
    for attempt in range(40):
        span = 2 + attempt
        z = _vec(sum((rng.randint(-span, span) * b for b in center), _zeros(d)))
        mp = _min_poly(alg, z)
        if len(mp) - 1 < rz:
            continue
        factors = _factor_over_field(mp, alg.conductor)
        if any(len(f) > 2 for f, _ in factors):
            raise SplittingError(f"center of dimension {rz} does not split over Q(zeta_{alg.conductor})")
        roots = [simplify(-f[0]) for f, _ in factors]
        idem = []
        for j, lam in enumerate(roots):
            e = alg.unit
            for k, mu in enumerate(roots):
                if k != j:
                    e = alg.mul(e, z - mu * alg.unit) * inv(lam - mu)
            idem.append(_vec(e))
        break
    if idem is None:
        raise SplittingError(f"could not separate the center of dimension {rz}")
    alg._cache["central_idempotents"] = idem
    return idem


def wedderburn_blocks(alg: FinAlgebra) -> list:
    """Sizes n_i of the matrix blocks in A = M_{n_1} + ... + M_{n_r}."""
    if "blocks" in alg._cache:
        return alg._cache["blocks"]
    idem = central_idempotents(alg)
    sizes = []
    for e in idem:
        k = rank(SparseMatrix.from_dense(alg.left_mult(e)))
        n = isqrt(k)
        # a simple block with center K has dimension n^2; a division algebra
        # of square dimension over K is not detected here
        if n * n != k:
            raise SplittingError(f"block of dimension {k} is not a matrix algebra "
                                 f"(center dimension {len(idem)})")
        sizes.append(n)
    alg._cache["block_sizes_by_idempotent"] = sizes
    alg._cache["blocks"] = sorted(sizes)
    return alg._cache["blocks"]


# -- matrices over an algebra ---------------------------------------------

def as_matrix(alg: FinAlgebra, m) -> np.ndarray:
    """Normalize a k x k matrix over A to an object array of shape (k, k, d)."""
    if hasattr(m, "matrix"):
        m = m.matrix
    arr = np.array(m, dtype=object)
    if arr.ndim == 2:
        # entries are AlgElements
        k = arr.shape[0]
        out = _zeros(k, k, alg.dim)
        for i in range(k):
            for j in range(k):
                x = arr[i, j]
                out[i, j] = x.coeffs if isinstance(x, AlgElement) else _vec(x)
        return out
    if arr.ndim != 3 or arr.shape[0] != arr.shape[1] or arr.shape[2] != alg.dim:
        raise ValueError("matrix over the algebra must have shape (k, k, d)")
    return arr


def mat_mul(alg: FinAlgebra, X, Y) -> np.ndarray:
    k = X.shape[0]
    out = _zeros(k, Y.shape[1], alg.dim)
    for i in range(k):
        for j in range(Y.shape[1]):
            acc = _zeros(alg.dim)
            for l in range(X.shape[1]):
                if np.any(X[i, l] != 0) and np.any(Y[l, j] != 0):
                    acc = acc + alg.mul(X[i, l], Y[l, j])
            out[i, j] = _vec(acc)
    return out


def mat_identity(alg: FinAlgebra, k: int) -> np.ndarray:
    out = _zeros(k, k, alg.dim)
    for i in range(k):
        for j in range(k):
            out[i, j] = alg.unit.copy() if i == j else _zeros(alg.dim)
    return out


def mat_zero(alg: FinAlgebra, k: int) -> np.ndarray:
    out = _zeros(k, k, alg.dim)
    for i in range(k):
        for j in range(k):
            out[i, j] = _zeros(alg.dim)
    return out


def mat_equal(X, Y) -> bool:
    return X.shape == Y.shape and all(np.all(X[i, j] == Y[i, j])
                                      for i in range(X.shape[0]) for j in range(X.shape[1]))


def mat_direct_sum(alg: FinAlgebra, X, Y) -> np.ndarray:
    a, b = X.shape[0], Y.shape[0]
    out = mat_zero(alg, a + b)
    for i in range(a):
        for j in range(a):
            out[i, j] = X[i, j]
    for i in range(b):
        for j in range(b):
            out[a + i, a + j] = Y[i, j]
    return out


def is_idempotent(alg: FinAlgebra, e) -> bool:
    e = as_matrix(alg, e)
    return mat_equal(mat_mul(alg, e, e), e)


def block_ranks(alg: FinAlgebra, e) -> list:
    """Ranks of the images of the idempotent e in each Wedderburn block,
    ordered like the algebra's central idempotents."""
    e = as_matrix(alg, e)
    wedderburn_blocks(alg)
    sizes = alg._cache["block_sizes_by_idempotent"]
    k, d = e.shape[0], alg.dim
    out = []
    for c, n in zip(central_idempotents(alg), sizes):
        # x -> e (c x) on A^k
        lc = alg.left_mult(c)
        mat = _zeros(k * d, k * d)
        for a in range(k):
            for b in range(k):
                mat[a * d:(a + 1) * d, b * d:(b + 1) * d] = alg.left_mult(e[a, b]).dot(lc)
        r = rank(SparseMatrix.from_dense(mat))
        out.append(r // n)
    return out


def stably_equivalent(alg: FinAlgebra, e, f) -> bool:
    """Decide stable equivalence of idempotent matrices over a split semisimple algebra."""
    if not is_idempotent(alg, e) or not is_idempotent(alg, f):
        raise PreconditionError("input is not idempotent")
    return block_ranks(alg, e) == block_ranks(alg, f)


# -- GNS -------------------------------------------------------------------

def _reduce_mod(vec, rows, pcols):
    v = list(vec)
    for row, pc in zip(rows, pcols):
        a = v[pc]
        if a != 0:
            for k, x in row.items():
                v[k] = simplify(v[k] - a * x)
    return v


def hermitian_form(alg: FinAlgebra, state: LinearFunctional) -> np.ndarray:
    """H[j, i] = state(e_j^* e_i), so that <a, b> = y^H H x for a = x, b = y."""
    d = alg.dim
    H = _zeros(d, d)
    stars = [alg.star_vec(alg.basis_vector(j)) for j in range(d)]
    for j in range(d):
        for i in range(d):
            H[j, i] = state(alg.mul(stars[j], alg.basis_vector(i)))
    return H


def certify_positive_definite(H) -> list:
    """Eigenvalues of a Hermitian matrix at 128-bit precision; raises unless all exceed the margin."""
    n = H.shape[0]
    if n == 0:
        return []
    with mpmath.workprec(128):
        M = mpmath.matrix(n, n)
        for i in range(n):
            for j in range(n):
                x = H[i, j]
                M[i, j] = x.to_mpc() if isinstance(x, CycloScalar) else mpmath.mpf(Fraction(x).numerator) / Fraction(x).denominator
        ev = mpmath.eighe(M, eigvals_only=True)
        vals = [mpmath.re(v) for v in ev]
        for v in vals:
            if v < -POSITIVITY_MARGIN:
                raise NotPositiveError(f"state is not positive (eigenvalue {mpmath.nstr(v, 8)})")
            if v <= POSITIVITY_MARGIN:
                raise NotPositiveError("positivity could not be certified: eigenvalue within margin")
        return vals


def gns(alg: FinAlgebra, state: LinearFunctional) -> Representation:
    if alg.involution is None:
        raise PreconditionError("GNS requires an involution")
    if state(alg.unit) != 1:
        raise NotPositiveError("state is not normalized")
    d = alg.dim
    H = hermitian_form(alg, state)
    if any(H[i, j] != conj(H[j, i]) for i in range(d) for j in range(d)):
        raise NotPositiveError("state is not hermitian, hence not positive")
    # null space N = {a : H a = 0}
    null = nullspace(SparseMatrix.from_dense(H))
    rows, pcols = rref(SparseMatrix(len(null), d, [dict(v) for v in null]))
    keep = [i for i in range(d) if i not in set(pcols)]
    HQ = H[np.ix_(keep, keep)]
    certify_positive_definite(HQ)

    def coords(vec):
        v = _reduce_mod(vec, rows, pcols)
        return _vec([v[i] for i in keep])

    mats = []
    for k in range(d):
        m = _zeros(len(keep), len(keep))
        for col, i in enumerate(keep):
            m[:, col] = coords(alg.mul(alg.basis_vector(k), alg.basis_vector(i)))
        mats.append(m)
    # in carrier coordinates <u, v> = v^H HQ u
    return Representation(alg, mats, coords(alg.unit), HQ)


def normalized_trace_state(alg: FinAlgebra) -> LinearFunctional:
    traces = trace_space(alg)
    if len(traces) != 1:
        raise PreconditionError("algebra does not have a unique trace up to scale")
    t = traces[0]
    return t.scaled(inv(t(alg.unit)))


def random_element(alg: FinAlgebra, rng, span: int = 3, density: float = 1.0):
    return _vec([rng.randint(-span, span) if rng.random() < density else 0 for _ in range(alg.dim)])


__all__ = [
    "FinAlgebra", "AlgElement", "LinearFunctional", "Representation",
    "build_algebra", "structure_constants", "matrix_algebra", "group_algebra", "rational_torus",
    "direct_sum", "tensor", "truncated_polynomial", "trace_space", "gns", "wedderburn_blocks",
    "central_idempotents", "stably_equivalent", "block_ranks", "zeta", "normalized_trace_state",
    "random_element", "mat_mul", "mat_identity", "mat_zero", "mat_equal", "mat_direct_sum", "as_matrix",
    "is_idempotent",
]
