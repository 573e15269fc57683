"""Cyclic modules given by matrices, and the cohomology engine built on them.

A presentation stores, for each degree n up to its cutoff, the dimension of
the n-th space and the matrices of the structure maps.  In the homological
(``cyclic``) orientation these are faces d_i: X_n -> X_{n-1}, degeneracies
s_i: X_n -> X_{n+1} and the cyclic operator t_n.  A ``cocyclic`` presentation
holds the cochain-side maps delta_i: C^{n-1} -> C^n, sigma_i: C^{n+1} -> C^n
and tau_n; the engine works with the transposes, which form a cyclic module
with the same (co)homology dimensions.

Every cohomology dimension is ker/im of exact sparse matrices.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cochains import Cochain, OperatorKind, _is_lazy
from .cyclo import simplify
from .errors import PreconditionError, TruncationError, ValidationError
from .linalg import SparseMatrix, block_matrix, nullspace, rank

DEFAULT_CUTOFF = 4


def _sign(n):
    return -1 if n % 2 else 1


def _power(m: SparseMatrix, k: int) -> SparseMatrix:
    out = SparseMatrix.identity(m.nrows)
    for _ in range(k):
        out = m @ out
    return out


def _lincomb(mats, coeffs, shape) -> SparseMatrix:
    out = SparseMatrix.zeros(*shape)
    for c, m in zip(coeffs, mats):
        out = out + m.scale(c)
    return out


class CyclicModulePresentation:
    """Finite truncation of a cyclic or cocyclic module."""

    def __init__(self, dims, faces, degeneracies, cyclic, orientation: str = "cyclic", name: str = ""):
        if orientation not in ("cyclic", "cocyclic"):
            raise ValueError("orientation must be 'cyclic' or 'cocyclic'")
        self.orientation = orientation
        self.dims = [int(x) for x in dims]
        self.cutoff = len(self.dims) - 1
        self.faces = [list(f) for f in faces]
        self.degeneracies = [list(s) for s in degeneracies]
        self.cyclic = list(cyclic)
        self.name = name
        self._check_shapes()
        self._cache: dict = {}

    def _check_shapes(self):
        K, D = self.cutoff, self.dims
        if len(self.faces) != K + 1 or len(self.cyclic) != K + 1 or len(self.degeneracies) < K:
            raise ValidationError("operator lists must cover every degree up to the cutoff")
        for n in range(K + 1):
            if self.cyclic[n].shape != (D[n], D[n]):
                raise ValidationError(f"cyclic operator in degree {n} has the wrong shape")
            want = 0 if n == 0 else n + 1
            if len(self.faces[n]) != want:
                raise ValidationError(f"degree {n} needs {want} face maps")
            for f in self.faces[n]:
                shape = (D[n - 1], D[n]) if self.orientation == "cyclic" else (D[n], D[n - 1])
                if f.shape != shape:
                    raise ValidationError(f"face map in degree {n} has shape {f.shape}, expected {shape}")
        for n in range(K):
            if len(self.degeneracies[n]) != n + 1:
                raise ValidationError(f"degree {n} needs {n + 1} degeneracy maps")
            for s in self.degeneracies[n]:
                shape = (D[n + 1], D[n]) if self.orientation == "cyclic" else (D[n], D[n + 1])
                if s.shape != shape:
                    raise ValidationError(f"degeneracy in degree {n} has the wrong shape")

    # homological view -----------------------------------------------------
    def homological(self) -> "CyclicModulePresentation":
        if self.orientation == "cyclic":
            return self
        if "homological" not in self._cache:
            self._cache["homological"] = CyclicModulePresentation(
                self.dims,
                [[f.T for f in fs] for fs in self.faces],
                [[s.T for s in ss] for ss in self.degeneracies],
                [t.T for t in self.cyclic],
                "cyclic", self.name)
        return self._cache["homological"]

    def d(self, n, i):
        return self.homological().faces[n][i]

    def s(self, n, i):
        return self.homological().degeneracies[n][i]

    def t(self, n):
        return self.homological().cyclic[n]

    # operators, homological side --------------------------------------------
    def _memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def b(self, n) -> SparseMatrix:
        """Hochschild boundary X_n -> X_{n-1}."""
        D = self.dims
        return self._memo(("b", n), lambda: _lincomb(
            [self.d(n, i) for i in range(n + 1)], [_sign(i) for i in range(n + 1)], (D[n - 1], D[n])))

    def b_prime(self, n) -> SparseMatrix:
        D = self.dims
        return self._memo(("b'", n), lambda: _lincomb(
            [self.d(n, i) for i in range(n)], [_sign(i) for i in range(n)], (D[n - 1], D[n])))

    def lam(self, n) -> SparseMatrix:
        return self._memo(("lam", n), lambda: self.t(n).scale(_sign(n)))

    def N(self, n) -> SparseMatrix:
        def build():
            lam = self.lam(n)
            out, cur = SparseMatrix.identity(self.dims[n]), SparseMatrix.identity(self.dims[n])
            for _ in range(n):
                cur = lam @ cur
                out = out + cur
            return out
        return self._memo(("N", n), build)

    def extra(self, n) -> SparseMatrix:
        """s = (-1)^n s_n: X_n -> X_{n+1}, a contraction of b'."""
        return self._memo(("s", n), lambda: self.s(n, n).scale(_sign(n)))

    def B(self, n) -> SparseMatrix:
        """Connes' boundary (1 - lambda) s N: X_n -> X_{n+1}."""
        def build():
            one = SparseMatrix.identity(self.dims[n + 1])
            return (one - self.lam(n + 1)) @ self.extra(n) @ self.N(n)
        return self._memo(("B", n), build)

    def element(self, degree: int, vec) -> "ModuleElement":
        return ModuleElement(self, degree, vec)

    def apply(self, kind, x: "ModuleElement") -> "ModuleElement":
        """Apply an operator in the orientation of the presentation."""
        kind = OperatorKind.parse(kind)
        n = x.degree
        if self.orientation == "cyclic":
            if kind in (OperatorKind.b, OperatorKind.b_prime):
                if n == 0:
                    raise PreconditionError("b lowers the degree")
                m = self.b(n) if kind is OperatorKind.b else self.b_prime(n)
                return ModuleElement(self, n - 1, m.matvec(x.vec))
            if kind in (OperatorKind.s, OperatorKind.B):
                if n >= self.cutoff:
                    raise PreconditionError("result degree exceeds the cutoff")
                m = self.extra(n) if kind is OperatorKind.s else self.B(n)
                return ModuleElement(self, n + 1, m.matvec(x.vec))
            m = self.lam(n) if kind is OperatorKind.lam else self.N(n)
            return ModuleElement(self, n, m.matvec(x.vec))
        # cochain side: transposes of the homological operators, with the
        # sign conventions s = (-1)^n sigma_{n-1} and B = N s (1 - lambda)
        if kind in (OperatorKind.b, OperatorKind.b_prime):
            if n >= self.cutoff:
                raise PreconditionError("result degree exceeds the cutoff")
            m = self.b(n + 1) if kind is OperatorKind.b else self.b_prime(n + 1)
            return ModuleElement(self, n + 1, m.rmatvec(x.vec))
        if kind is OperatorKind.lam:
            return ModuleElement(self, n, self.lam(n).rmatvec(x.vec))
        if kind is OperatorKind.N:
            return ModuleElement(self, n, self.N(n).rmatvec(x.vec))
        if n == 0:
            raise PreconditionError(f"{kind.value} lowers the degree")
        if kind is OperatorKind.s:
            return ModuleElement(self, n - 1, self.extra(n - 1).rmatvec(x.vec) * -1)
        y = x.vec - self.lam(n).rmatvec(x.vec)
        y = self.extra(n - 1).rmatvec(y) * -1
        return ModuleElement(self, n - 1, self.N(n - 1).rmatvec(y))

    def __repr__(self):
        return f"CyclicModulePresentation({self.name!r}, {self.orientation}, dims={self.dims})"


@dataclass
class ModuleElement:
    module: CyclicModulePresentation
    degree: int
    vec: np.ndarray

    def __post_init__(self):
        self.vec = np.array([simplify(v) for v in self.vec], dtype=object)
        if self.vec.shape != (self.module.dims[self.degree],):
            raise PreconditionError("element has the wrong length for its degree")

    def is_zero(self) -> bool:
        return not np.any(self.vec != 0)

    def __add__(self, other):
        return ModuleElement(self.module, self.degree, self.vec + other.vec)

    def __sub__(self, other):
        return ModuleElement(self.module, self.degree, self.vec - other.vec)

    def __eq__(self, other):
        return (isinstance(other, ModuleElement) and other.module is self.module
                and other.degree == self.degree and not np.any(self.vec != other.vec))


# -----------------------------------------------------------------------------
# validation

@dataclass
class ValidationReport:
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"ok": self.ok, "checked": self.checked, "failures": list(self.failures)}


def validate_cyclic_module(M: CyclicModulePresentation) -> ValidationReport:
    """Check the simplicial and cyclic identities degree by degree.

    In homological form (faces d_i, degeneracies s_i, cyclic t):
      d_i d_j = d_{j-1} d_i (i < j),  s_i s_j = s_{j+1} s_i (i <= j),
      d_i s_j = s_{j-1} d_i (i < j),  = id (i = j, j+1),  = s_j d_{i-1} (i > j+1),
      d_i t = t d_{i-1} (i >= 1),  d_0 t = d_n,
      s_i t = t s_{i-1} (i >= 1),  s_0 t = t^2 s_n,  t^(n+1) = id.
    A cocyclic presentation is checked through its transpose, which turns each
    relation into the corresponding cochain-side relation.
    """
    H = M.homological()
    K = H.cutoff
    rep = ValidationReport()
    tag = "tau" if M.orientation == "cocyclic" else "t"

    def check(lhs, rhs, what):
        rep.checked += 1
        if not lhs == rhs:
            rep.failures.append(what)

    d, s, t = H.faces, H.degeneracies, H.cyclic
    I = [SparseMatrix.identity(x) for x in H.dims]
    for n in range(K + 1):
        check(_power(t[n], n + 1), I[n], f"{tag}_{n}^{n + 1} != id")
        if n >= 2:
            for j in range(n + 1):
                for i in range(j):
                    check(d[n - 1][i] @ d[n][j], d[n - 1][j - 1] @ d[n][i], f"face relation d{i} d{j} in degree {n}")
        if n >= 1:
            check(d[n][0] @ t[n], d[n][n], f"d0 {tag} = d{n} in degree {n}")
            for i in range(1, n + 1):
                check(d[n][i] @ t[n], t[n - 1] @ d[n][i - 1], f"d{i} {tag} = {tag} d{i - 1} in degree {n}")
    for n in range(K):
        for i in range(n + 1):
            if n + 1 < K:
                for j in range(i, n + 1):
                    check(s[n + 1][i] @ s[n][j], s[n + 1][j + 1] @ s[n][i],
                          f"degeneracy relation s{i} s{j} in degree {n}")
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = d[n + 1][i] @ s[n][j]
                if i == j or i == j + 1:
                    rhs = I[n]
                elif i < j:
                    rhs = s[n - 1][j - 1] @ d[n][i]
                else:
                    rhs = s[n - 1][j] @ d[n][i - 1]
                check(lhs, rhs, f"d{i} s{j} relation in degree {n}")
        check(s[n][0] @ t[n], t[n + 1] @ t[n + 1] @ s[n][n], f"s0 {tag} = {tag}^2 s{n} in degree {n}")
        for i in range(1, n + 1):
            check(s[n][i] @ t[n], t[n + 1] @ s[n][i - 1], f"s{i} {tag} = {tag} s{i - 1} in degree {n}")
    return rep


# -----------------------------------------------------------------------------
# the cyclic module A^natural of a finite algebra

def _flat_index(key, d):
    i = 0
    for k in key:
        i = i * d + k
    return i


def _keys(d, n):
    return np.array(np.unravel_index(np.arange(d ** (n + 1)), (d,) * (n + 1))).T if n >= 0 else []


def algebra_cyclic_module(alg, top: int) -> CyclicModulePresentation:
    """A^natural truncated at degree ``top``: X_n = A^(n+1),
    d_i multiplies a_i a_{i+1} (d_n: a_n a_0), s_i inserts 1 after a_i,
    t(a_0..a_n) = (a_n, a_0, .., a_{n-1})."""
    if _is_lazy(alg):
        raise PreconditionError("cohomology of lazy algebras is not computed")
    cache = alg._cache.setdefault("natural", {})
    best = max((k for k in cache if k >= top), default=None)
    if best is not None:
        M = cache[best]
        if best == top:
            return M
        return CyclicModulePresentation(M.dims[:top + 1], M.faces[:top + 1], M.degeneracies[:top],
                                        M.cyclic[:top + 1], "cyclic", M.name)
    d = alg.dim
    table = alg.table
    unit = [(i, u) for i, u in enumerate(alg.unit) if u != 0]
    dims = [d ** (n + 1) for n in range(top + 1)]
    faces, degens, cyc = [[]], [], []
    for n in range(top + 1):
        keys = [tuple(int(v) for v in k) for k in _keys(d, n)]
        t = SparseMatrix(dims[n], dims[n])
        for col, k in enumerate(keys):
            t.rows[_flat_index(k[-1:] + k[:-1], d)][col] = 1
        cyc.append(t)
        if n >= 1:
            fs = []
            for i in range(n + 1):
                f = SparseMatrix(dims[n - 1], dims[n])
                for col, k in enumerate(keys):
                    if i < n:
                        prod, rest = table[k[i]][k[i + 1]], (k[:i], k[i + 2:])
                    else:
                        prod, rest = table[k[n]][k[0]], ((), k[1:n])
                    for p, c in prod:
                        row = f.rows[_flat_index(rest[0] + (p,) + rest[1], d)]
                        v = row.get(col, 0) + c
                        if v != 0:
                            row[col] = v
                        else:
                            row.pop(col, None)
                fs.append(f)
            faces.append(fs)
        if n < top:
            ss = []
            for i in range(n + 1):
                s = SparseMatrix(dims[n + 1], dims[n])
                for col, k in enumerate(keys):
                    for u, c in unit:
                        s.rows[_flat_index(k[:i + 1] + (u,) + k[i + 1:], d)][col] = c
                ss.append(s)
            degens.append(ss)
    M = CyclicModulePresentation(dims, faces, degens, cyc, "cyclic", "A-natural")
    cache[top] = M
    return M


# -----------------------------------------------------------------------------
# cohomology engine

COMPLEXES = ("hochschild_scalar", "hochschild_adjoint", "connes_cyclic", "bB_even", "bB_odd",
             "cyclic_bicomplex")


@dataclass
class ComplexReport:
    complex: str
    degree: int
    dim: int
    space_dim: int
    rank_in: int
    rank_out: int
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"complex": self.complex, "degree": self.degree, "dim": self.dim,
               "space_dim": self.space_dim, "rank_in": self.rank_in, "rank_out": self.rank_out}
        out.update(self.extra)
        return out


def _basis_matrix(nrows, vecs) -> SparseMatrix:
    return SparseMatrix.from_columns(nrows, vecs)


def _restricted_rank(D: SparseMatrix, R: SparseMatrix | None) -> int:
    if R is None:
        return rank(D)
    return rank(D @ R)


def _cochain_b(M, n) -> SparseMatrix:
    """b on cochains C^n -> C^{n+1}, as the transpose of the chain boundary."""
    return M._memo(("bT", n), lambda: M.b(n + 1).T)


def _cyclic_cochains(M, n) -> SparseMatrix:
    def build():
        one = SparseMatrix.identity(M.dims[n])
        ker = nullspace((one - M.lam(n)).T)
        return _basis_matrix(M.dims[n], ker)
    return M._memo(("Zlam", n), build)


def _normalized_cochains(M, n) -> SparseMatrix | None:
    """Cochains annihilating every degenerate chain s_j(x), j < n."""
    if n == 0:
        return None

    def build():
        stacked = SparseMatrix(0, M.dims[n])
        for j in range(n):
            stacked = stacked.vstack(M.s(n - 1, j).T)
        return _basis_matrix(M.dims[n], nullspace(stacked))
    return M._memo(("Norm", n), build)


def _hochschild(M, n, normalized=False) -> ComplexReport:
    R_n = _normalized_cochains(M, n) if normalized else None
    R_prev = _normalized_cochains(M, n - 1) if normalized and n >= 1 else None
    space = M.dims[n] if R_n is None else R_n.ncols
    out = _restricted_rank(_cochain_b(M, n), R_n)
    inn = _restricted_rank(_cochain_b(M, n - 1), R_prev) if n >= 1 else 0
    return ComplexReport("hochschild_scalar", n, space - out - inn, space, inn, out,
                         {"normalized": normalized})


def _connes(M, n) -> ComplexReport:
    Z = _cyclic_cochains(M, n)
    out = rank(_cochain_b(M, n) @ Z)
    inn = rank(_cochain_b(M, n - 1) @ _cyclic_cochains(M, n - 1)) if n >= 1 else 0
    return ComplexReport("connes_cyclic", n, Z.ncols - out - inn, Z.ncols, inn, out)


def _bB_total(M, n, width, normalized=False):
    """Chain-side (b + B): Tot_n -> Tot_{n-1} with Tot_n = X_n + X_{n-2} + ..., at most
    ``width`` columns; returns (matrix, column degrees of source, of target)."""
    src = [n - 2 * p for p in range(width) if n - 2 * p >= 0]
    tgt = [n - 1 - 2 * p for p in range(width) if n - 1 - 2 * p >= 0]
    blocks = {}
    for j, q in enumerate(src):
        if q >= 1 and q - 1 in tgt:
            blocks[(tgt.index(q - 1), j)] = M.b(q)
        if q + 1 in tgt:
            blocks[(tgt.index(q + 1), j)] = M.B(q)
    D = block_matrix(blocks, [M.dims[q] for q in tgt], [M.dims[q] for q in src])
    return D, src, tgt


def _normalized_total(M, degrees) -> SparseMatrix | None:
    parts = [_normalized_cochains(M, q) for q in degrees]
    if all(p is None for p in parts):
        return None
    sizes = [M.dims[q] for q in degrees]
    cols = [p.ncols if p is not None else M.dims[q] for p, q in zip(parts, degrees)]
    blocks = {(i, i): (p if p is not None else SparseMatrix.identity(M.dims[q]))
              for i, (p, q) in enumerate(zip(parts, degrees))}
    return block_matrix(blocks, sizes, cols)


def _bB(M, n, width, normalized=False):
    if n + 1 > M.cutoff:
        raise PreconditionError("degree + 1 exceeds the cutoff of the presentation")
    D_out, src, _ = _bB_total(M, n + 1, width, normalized)
    D_in, src_in, tgt_in = _bB_total(M, n, width, normalized)
    space_degrees = [n - 2 * p for p in range(width) if n - 2 * p >= 0]
    if normalized:
        # cochain side: (b + B)^T restricted to normalized cochains
        R_n = _normalized_total(M, space_degrees)
        R_prev = _normalized_total(M, tgt_in) if tgt_in else None
        space = R_n.ncols if R_n is not None else sum(M.dims[q] for q in space_degrees)
        out = _restricted_rank(D_out.T, R_n)
        inn = _restricted_rank(D_in.T, R_prev) if tgt_in else 0
    else:
        space = sum(M.dims[q] for q in space_degrees)
        out = rank(D_out)
        inn = rank(D_in) if tgt_in else 0
    return space - out - inn, space, inn, out


def _bicomplex_total(M, n):
    """Cyclic bicomplex CC: column p holds X_q with vertical b (p even) or -b' (p odd);
    horizontal maps 1 - lambda (from odd p) and N (from even p >= 2)."""
    src = [(p, n - p) for p in range(n + 1)]
    tgt = [(p, n - 1 - p) for p in range(n)]
    blocks = {}
    for j, (p, q) in enumerate(src):
        if q >= 1:
            v = M.b(q) if p % 2 == 0 else M.b_prime(q).scale(-1)
            blocks[(tgt.index((p, q - 1)), j)] = v
        if p >= 1:
            one = SparseMatrix.identity(M.dims[q])
            h = (one - M.lam(q)) if p % 2 == 1 else M.N(q)
            blocks[(tgt.index((p - 1, q)), j)] = h
    D = block_matrix(blocks, [M.dims[q] for _, q in tgt], [M.dims[q] for _, q in src])
    return D, sum(M.dims[q] for _, q in src)


def _cyclic_bicomplex(M, n) -> ComplexReport:
    if n + 1 > M.cutoff:
        raise PreconditionError("degree + 1 exceeds the cutoff of the presentation")
    D_out, _ = _bicomplex_total(M, n + 1)
    D_in, space = _bicomplex_total(M, n)
    out = rank(D_out)
    inn = rank(D_in) if n >= 1 else 0
    return ComplexReport("cyclic_bicomplex", n, space - out - inn, space, inn, out)


def deformation_delta_matrix(alg, n: int) -> SparseMatrix:
    """Matrix of the Hochschild coboundary C^n(A, A) -> C^{n+1}(A, A)."""
    from .cochains import hochschild_delta
    key = ("delta", n)
    if key in alg._cache:
        return alg._cache[key]
    d = alg.dim
    size = d ** (n + 1)
    cols = []
    for j in range(size):
        data = np.zeros(size, dtype=object)
        data[j] = 1
        f = Cochain(alg, n, data.reshape((d,) * (n + 1)), "adjoint")
        img = hochschild_delta(f).data.reshape(-1)
        cols.append({i: v for i, v in enumerate(img) if v != 0})
    m = SparseMatrix.from_columns(d ** (n + 2), cols)
    alg._cache[key] = m
    return m


def _hochschild_adjoint(alg, n) -> ComplexReport:
    out = rank(deformation_delta_matrix(alg, n))
    inn = rank(deformation_delta_matrix(alg, n - 1)) if n >= 1 else 0
    space = alg.dim ** (n + 1)
    return ComplexReport("hochschild_adjoint", n, space - out - inn, space, inn, out)


def _as_presentation(source, top):
    if isinstance(source, CyclicModulePresentation):
        if top > source.cutoff:
            raise PreconditionError(f"degree {top - 1} needs the presentation up to degree {top}")
        return source.homological()
    return algebra_cyclic_module(source, top)


def cohomology_report(complex: str, source, degree: int, cutoff: int = DEFAULT_CUTOFF,
                      normalized: bool = False) -> ComplexReport:
    """Dimension of the degree-n (co)homology of the named complex, with the ranks used."""
    if complex not in COMPLEXES:
        raise ValueError(f"unknown complex {complex!r}; choose from {', '.join(COMPLEXES)}")
    n = int(degree)
    if n < 0:
        raise PreconditionError("degree must be >= 0")
    if n > cutoff:
        raise PreconditionError(f"degree {n} exceeds the cutoff {cutoff}")
    if _is_lazy(source):
        raise PreconditionError("cohomology of lazy algebras is not computed")
    if complex == "hochschild_adjoint":
        if isinstance(source, CyclicModulePresentation):
            raise PreconditionError("the deformation complex needs an algebra")
        return _hochschild_adjoint(source, n)
    M = _as_presentation(source, n + 1)
    if complex == "hochschild_scalar":
        return _hochschild(M, n, normalized)
    if complex == "connes_cyclic":
        return _connes(M, n)
    if complex == "cyclic_bicomplex":
        return _cyclic_bicomplex(M, n)
    parity = 0 if complex == "bB_even" else 1
    if n % 2 != parity:
        raise PreconditionError(f"{complex} computes degrees of parity {parity}")
    w = n + 2
    first = _bB(M, n, w, normalized)
    second = _bB(M, n, w + 1, normalized)
    if first[0] != second[0]:
        raise TruncationError(f"(b,B) total complex unstable in degree {n}: width {w} gives {first[0]}, "
                              f"width {w + 1} gives {second[0]}")
    dim, space, inn, out = first
    return ComplexReport(complex, n, dim, space, inn, out,
                         {"width": w, "normalized": normalized, "recheck_width": w + 1})


def cohomology_dim(complex: str, source, degree: int, cutoff: int = DEFAULT_CUTOFF,
                   normalized: bool = False) -> int:
    return cohomology_report(complex, source, degree, cutoff, normalized).dim


def cyclic_dims(source, top: int, complex: str = "connes_cyclic") -> list:
    return [cohomology_dim(complex, source, n, cutoff=max(top, DEFAULT_CUTOFF)) for n in range(top + 1)]


def _total_cochain_maps(M, n):
    """Cochain-side (b + B) out of Tot^n = C^n + C^(n-2) + .., all columns kept."""
    width = n // 2 + 2
    D, src, tgt = _bB_total(M, n + 1, width)
    return D.T, tgt


def _embed(vec: dict, src_degrees, tgt_degrees, dims) -> dict:
    """Place a Tot^n vector in Tot^N (N = n + 2k) as the tail: the map S^k."""
    src_off, off = {}, 0
    for q in src_degrees:
        src_off[q] = off
        off += dims[q]
    tgt_off, off = {}, 0
    for q in tgt_degrees:
        tgt_off[q] = off
        off += dims[q]
    out = {}
    for q in src_degrees:
        for i in range(dims[q]):
            v = vec.get(src_off[q] + i)
            if v:
                out[tgt_off[q] + i] = v
    return out


def periodicity_rank(M, n: int, N: int) -> int:
    """Rank of S^k: HC^n -> HC^N, N = n + 2k, computed in the (b, B) total complex."""
    if (N - n) % 2 or N < n:
        raise PreconditionError("S raises the degree by 2")
    D_n, _ = _total_cochain_maps(M, n)
    src = [n - 2 * p for p in range(n // 2 + 1)]
    cocycles = nullspace(D_n)
    tgt = [N - 2 * p for p in range(N // 2 + 1)]
    size = sum(M.dims[q] for q in tgt)
    if N >= 1:
        D_prev, _ = _total_cochain_maps(M, N - 1)
        bounds = D_prev.columns()
    else:
        bounds = []
    images = [_embed(z, src, tgt, M.dims) for z in cocycles]
    B = SparseMatrix.from_columns(size, bounds)
    both = SparseMatrix.from_columns(size, bounds + images)
    return rank(both) - rank(B)


def periodic_dim(source, parity: str, cutoff: int = DEFAULT_CUTOFF) -> dict:
    """HP^even/odd as the image of HC^(N-2) in HC^N under S, N the top degree <= cutoff of that parity.

    The image of HC^(N-4) must have the same rank; otherwise the truncation is
    reported as unstable.
    """
    p = {"even": 0, "odd": 1}[parity]
    top = cutoff if cutoff % 2 == p else cutoff - 1
    if top - 4 < 0:
        raise TruncationError(f"cutoff {cutoff} too small: HP^{parity} needs degrees down to {top} - 4 >= 0")
    if _is_lazy(source):
        raise PreconditionError("cohomology of lazy algebras is not computed")
    M = _as_presentation(source, top + 1)
    a = periodicity_rank(M, top - 2, top)
    b = periodicity_rank(M, top - 4, top)
    if a != b:
        raise TruncationError(f"S-images into HC^{top} differ ({b} from degree {top - 4}, {a} from "
                              f"degree {top - 2}); not yet stable")
    hc = [cohomology_report("cyclic_bicomplex", M, q, cutoff=top).dim for q in (top - 4, top - 2, top)]
    return {"parity": parity, "dim": a, "top_degree": top, "s_ranks": {f"{top - 4}->{top}": b,
            f"{top - 2}->{top}": a}, "hc": dict(zip(map(str, (top - 4, top - 2, top)), hc))}
