"""Exact sparse linear algebra over cyclotomic fields.

Matrices are lists of row dicts ``{column: value}`` with int, Fraction or
CycloScalar entries.  Rank uses fraction-free elimination over the ring of
integers of the field: rows are cleared of denominators, combined as
``p*row - a*pivot`` and divided by their integer content.  Nullspaces and
linear solves use ordinary field elimination.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np

from .cyclo import CycloScalar, inv, simplify


def _add_into(row: dict, other: dict, factor) -> None:
    for k, v in other.items():
        s = row.get(k, 0) + factor * v
        if s != 0:
            row[k] = s
        else:
            row.pop(k, None)


class SparseMatrix:
    """A sparse matrix with exact entries stored row by row."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else [dict() for _ in range(nrows)]

    @classmethod
    def identity(cls, n: int, scale=1) -> "SparseMatrix":
        return cls(n, n, [{i: scale} for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "SparseMatrix":
        return cls(nrows, ncols)

    @classmethod
    def from_dense(cls, arr) -> "SparseMatrix":
        arr = np.asarray(arr, dtype=object)
        rows = [{j: simplify(v) for j, v in enumerate(r) if v != 0} for r in arr]
        return cls(arr.shape[0], arr.shape[1], rows)

    @classmethod
    def from_columns(cls, nrows: int, cols) -> "SparseMatrix":
        cols = list(cols)
        m = cls(nrows, len(cols))
        for j, col in enumerate(cols):
            for i, v in col.items():
                m.rows[i][j] = v
        return m

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.nrows, self.ncols), dtype=object)
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                out[i, j] = v
        return out

    def transpose(self) -> "SparseMatrix":
        t = SparseMatrix(self.ncols, self.nrows)
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                t.rows[j][i] = v
        return t

    T = property(transpose)

    def columns(self) -> list:
        return self.transpose().rows

    def __matmul__(self, other):
        if isinstance(other, SparseMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            out = SparseMatrix(self.nrows, other.ncols)
            orows = other.rows
            for i, r in enumerate(self.rows):
                acc: dict = {}
                for k, a in r.items():
                    for j, b in orows[k].items():
                        acc[j] = acc.get(j, 0) + a * b
                out.rows[i] = {j: simplify(v) for j, v in acc.items() if v != 0}
            return out
        return self.matvec(other)

    def matvec(self, vec):
        """Apply to a dense vector (sequence) and return a dense object array."""
        out = np.zeros(self.nrows, dtype=object)
        for i, r in enumerate(self.rows):
            s = 0
            for j, a in r.items():
                v = vec[j]
                if v != 0:
                    s = s + a * v
            out[i] = simplify(s) if s != 0 else 0
        return out

    def rmatvec(self, vec):
        """Apply the transpose to a dense vector."""
        acc: dict = {}
        for i, r in enumerate(self.rows):
            v = vec[i]
            if v != 0:
                for j, a in r.items():
                    acc[j] = acc.get(j, 0) + a * v
        out = np.zeros(self.ncols, dtype=object)
        for j, s in acc.items():
            if s != 0:
                out[j] = simplify(s)
        return out

    def apply_sparse(self, vec: dict) -> dict:
        acc: dict = {}
        t = self.transpose()
        for j, v in vec.items():
            for i, a in t.rows[j].items():
                acc[i] = acc.get(i, 0) + a * v
        return {i: simplify(s) for i, s in acc.items() if s != 0}

    def _combine(self, other: "SparseMatrix", sign) -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        out = SparseMatrix(self.nrows, self.ncols)
        for i in range(self.nrows):
            row = dict(self.rows[i])
            _add_into(row, other.rows[i], sign)
            out.rows[i] = {k: simplify(v) for k, v in row.items()}
        return out

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "SparseMatrix":
        if c == 0:
            return SparseMatrix(self.nrows, self.ncols)
        return SparseMatrix(self.nrows, self.ncols,
                            [{k: simplify(v * c) for k, v in r.items()} for r in self.rows])

    __rmul__ = scale

    def is_zero(self) -> bool:
        return not any(self.rows)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and (self - other).is_zero()

    __hash__ = None

    def hstack(self, other: "SparseMatrix") -> "SparseMatrix":
        out = SparseMatrix(self.nrows, self.ncols + other.ncols)
        off = self.ncols
        for i in range(self.nrows):
            row = dict(self.rows[i])
            for k, v in other.rows[i].items():
                row[k + off] = v
            out.rows[i] = row
        return out

    def vstack(self, other: "SparseMatrix") -> "SparseMatrix":
        return SparseMatrix(self.nrows + other.nrows, self.ncols,
                            [dict(r) for r in self.rows] + [dict(r) for r in other.rows])

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def block_matrix(blocks, row_sizes, col_sizes) -> SparseMatrix:
    """Assemble a matrix from a dict {(block_row, block_col): SparseMatrix}."""
    roff = np.concatenate([[0], np.cumsum(row_sizes)]).astype(int)
    coff = np.concatenate([[0], np.cumsum(col_sizes)]).astype(int)
    out = SparseMatrix(int(roff[-1]), int(coff[-1]))
    for (bi, bj), m in blocks.items():
        if m.shape != (row_sizes[bi], col_sizes[bj]):
            raise ValueError(f"block {(bi, bj)} has shape {m.shape}")
        r0, c0 = int(roff[bi]), int(coff[bj])
        for i, r in enumerate(m.rows):
            target = out.rows[r0 + i]
            for k, v in r.items():
                s = target.get(c0 + k, 0) + v
                if s != 0:
                    target[c0 + k] = s
                else:
                    target.pop(c0 + k, None)
    return out


# --- fraction-free rank -------------------------------------------------------

def _integralize(row: dict) -> dict:
    """Scale a row by a positive integer so every entry is an algebraic integer
    written with integer coordinates, then remove the integer content."""
    d = 1
    for v in row.values():
        den = v.den if isinstance(v, CycloScalar) else (v.denominator if isinstance(v, Fraction) else 1)
        d = d // gcd(d, den) * den
    out = {}
    for k, v in row.items():
        w = v * d
        if isinstance(w, Fraction):
            w = w.numerator
        elif isinstance(w, CycloScalar) and w.m == 1:
            w = w.num[0]
        out[k] = w
    return _primitive(out)


def _content(row: dict) -> int:
    g = 0
    for v in row.values():
        if isinstance(v, int):
            g = gcd(g, v)
        else:
            for c in v.num:
                g = gcd(g, c)
        if g == 1:
            return 1
    return g


def _primitive(row: dict) -> dict:
    g = _content(row)
    if g > 1:
        out = {}
        for k, v in row.items():
            if isinstance(v, int):
                out[k] = v // g
            else:
                out[k] = CycloScalar._raw(v.m, [c // g for c in v.num], 1)
        return out
    return row


def rank(m: SparseMatrix) -> int:
    """Exact rank by fraction-free elimination on the shorter side."""
    rows = m.rows if m.nrows <= m.ncols else m.transpose().rows
    pivots: dict = {}
    for r in rows:
        if not r:
            continue
        row = _integralize(r)
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = row
                break
            p, a = piv[lead], row[lead]
            new = {}
            for k, v in row.items():
                new[k] = v * p
            for k, v in piv.items():
                s = new.get(k, 0) - a * v
                if s != 0:
                    new[k] = s
                else:
                    new.pop(k, None)
            new = {k: (v.num[0] if isinstance(v, CycloScalar) and v.m == 1 else v) for k, v in new.items()}
            row = _primitive(new) if new else new
    return len(pivots)


# --- field elimination ----------------------------------------------------

def rref(m: SparseMatrix):
    """Reduced row echelon form.  Returns (rows, pivot_columns) with each pivot row
    normalized to 1 at its pivot and zero in every other pivot column."""
    pivots: dict = {}
    order = []
    for r in m.rows:
        row = {k: v for k, v in r.items() if v != 0}
        for col in sorted(set(row) & set(pivots)):
            if col in row:
                _add_into(row, pivots[col], -row[col])
        while row:
            lead = min(row)
            if lead in pivots:
                _add_into(row, pivots[lead], -row[lead])
                continue
            c = inv(row[lead])
            row = {k: simplify(v * c) for k, v in row.items()}
            for col, prow in pivots.items():
                if lead in prow:
                    _add_into(prow, row, -prow[lead])
            pivots[lead] = row
            order.append(lead)
            break
    cols = sorted(pivots)
    return [{k: simplify(v) for k, v in pivots[c].items()} for c in cols], cols


def nullspace(m: SparseMatrix) -> list:
    """Basis of {x : m x = 0} as a list of sparse dicts."""
    rows, pcols = rref(m)
    pset = set(pcols)
    basis = []
    for free in range(m.ncols):
        if free in pset:
            continue
        vec = {free: 1}
        for row, pc in zip(rows, pcols):
            v = row.get(free)
            if v is not None:
                vec[pc] = simplify(-v)
        basis.append(vec)
    return basis


def solve(m: SparseMatrix, rhs) -> dict | None:
    """One solution x of m x = rhs (rhs a dense sequence or sparse dict), or None."""
    if not isinstance(rhs, dict):
        rhs = {i: v for i, v in enumerate(rhs) if v != 0}
    aug = SparseMatrix(m.nrows, m.ncols + 1)
    for i in range(m.nrows):
        row = dict(m.rows[i])
        if i in rhs:
            row[m.ncols] = rhs[i]
        aug.rows[i] = row
    rows, pcols = rref(aug)
    if pcols and pcols[-1] == m.ncols:
        return None
    sol = {}
    for row, pc in zip(rows, pcols):
        v = row.get(m.ncols)
        if v is not None and v != 0:
            sol[pc] = v
    return sol


def dense_rank(arr) -> int:
    return rank(SparseMatrix.from_dense(arr))


def dense_nullspace(arr) -> list:
    arr = np.asarray(arr, dtype=object)
    basis = nullspace(SparseMatrix.from_dense(arr))
    out = []
    for vec in basis:
        v = np.zeros(arr.shape[1], dtype=object)
        for k, x in vec.items():
            v[k] = x
        out.append(v)
    return out
