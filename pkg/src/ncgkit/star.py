"""Constant Poisson structures, Moyal products, and the Weyl algebra.

Polynomials are sparse maps from exponent tuples to exact scalars.  The formal
parameter h is never a number: a FormalSeries keeps one polynomial per power
of h.  The imaginary unit is zeta_4.

>>> pi = PoissonStruct.standard(1)
>>> x, y = PolyElement.variable(pi.names, 0), PolyElement.variable(pi.names, 1)
>>> c = moyal_product(pi, x, y, 2) - moyal_product(pi, y, x, 2)
>>> c.coeffs[1].to_text()
'-z(4)'
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .cyclo import CycloScalar, simplify
from .errors import PreconditionError
from .textio import format_coeff as _fmt, parse_poly

I = CycloScalar.root_of_unity(4, 1)


def _is_zero(c) -> bool:
    return c == 0


class PolyElement:
    """A polynomial in named commuting variables with exact coefficients."""

    def __init__(self, names, terms=None):
        self.names = tuple(names)
        self.terms = {}
        for e, c in (terms or {}).items():
            if len(e) != len(self.names) or any(k < 0 for k in e):
                raise PreconditionError(f"bad exponent {e}")
            c = simplify(c)
            if not _is_zero(c):
                self.terms[tuple(e)] = c

    @classmethod
    def constant(cls, names, c=1):
        return cls(names, {(0,) * len(names): c})

    @classmethod
    def variable(cls, names, i):
        e = [0] * len(names)
        e[i] = 1
        return cls(names, {tuple(e): 1})

    @classmethod
    def from_text(cls, text: str, names):
        names = tuple(names)
        pos = {n: i for i, n in enumerate(names)}
        out = {}
        for mono, c in parse_poly(text).items():
            e = [0] * len(names)
            for v, k in mono:
                if v not in pos:
                    raise PreconditionError(f"unknown variable {v!r}")
                if k < 0:
                    raise PreconditionError("negative exponent in polynomial")
                e[pos[v]] += k
            e = tuple(e)
            out[e] = out.get(e, 0) + c
        return cls(names, out)

    def _check(self, other):
        if self.names != other.names:
            raise PreconditionError("polynomials live in different variable sets")

    def _lift(self, other):
        if isinstance(other, PolyElement):
            self._check(other)
            return other
        return PolyElement.constant(self.names, other)

    def __add__(self, other):
        other = self._lift(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return PolyElement(self.names, t)

    __radd__ = __add__

    def __neg__(self):
        return PolyElement(self.names, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, PolyElement):
            return PolyElement(self.names, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return PolyElement(self.names, t)

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        if not isinstance(other, PolyElement):
            other = PolyElement.constant(self.names, other)
        return self.names == other.names and self.terms == other.terms

    def __hash__(self):
        return hash((self.names, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def derivative(self, i: int, k: int = 1) -> "PolyElement":
        t = {}
        for e, c in self.terms.items():
            if e[i] >= k:
                f = list(e)
                f[i] -= k
                t[tuple(f)] = c * (factorial(e[i]) // factorial(e[i] - k))
        return PolyElement(self.names, t)

    def partial(self, alpha) -> "PolyElement":
        out = self
        for i, k in enumerate(alpha):
            if k:
                out = out.derivative(i, k)
        return out

    def coefficient(self, e):
        return self.terms.get(tuple(e), 0)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-k for k in e))):
            c = self.terms[e]
            mono = " ".join(n if k == 1 else f"{n}^{k}" for n, k in zip(self.names, e) if k)
            cs = _fmt(c)
            neg = cs.startswith("-")
            mag = cs[1:] if neg else cs
            if mono:
                body = mono if mag == "1" else f"{mag} {mono}"
            else:
                body = mag
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"PolyElement({self.to_text()!r})"


@dataclass
class PoissonStruct:
    """A constant antisymmetric bivector pi^{ij} on named coordinates."""

    matrix: list
    names: tuple = ()

    def __post_init__(self):
        d = len(self.matrix)
        self.matrix = [[simplify(v) for v in row] for row in self.matrix]
        if any(len(r) != d for r in self.matrix):
            raise PreconditionError("Poisson matrix must be square")
        for i in range(d):
            for j in range(d):
                if self.matrix[i][j] != -self.matrix[j][i]:
                    raise PreconditionError("Poisson matrix is not antisymmetric")
        if not self.names:
            self.names = tuple(f"u{i + 1}" for i in range(d))
        self.names = tuple(self.names)
        if len(self.names) != d:
            raise PreconditionError("need one name per coordinate")

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @classmethod
    def standard(cls, n: int = 1):
        """pi = sum d/dx_i ^ d/dy_i on (x_1..x_n, y_1..y_n)."""
        names = ("x", "y") if n == 1 else tuple(f"x{i}" for i in range(1, n + 1)) + tuple(
            f"y{i}" for i in range(1, n + 1))
        m = [[0] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            m[i][n + i] = 1
            m[n + i][i] = -1
        return cls(m, names)

    @classmethod
    def zero(cls, names):
        d = len(names)
        return cls([[0] * d for _ in range(d)], tuple(names))

    def scaled(self, c):
        return PoissonStruct([[v * c for v in r] for r in self.matrix], self.names)

    def entries(self):
        return [(i, j, v) for i, r in enumerate(self.matrix) for j, v in enumerate(r) if v != 0]

    def to_json(self):
        return {"names": list(self.names), "matrix": [[_fmt(v) for v in r] for r in self.matrix]}


def _check_pi(pi: PoissonStruct, *polys):
    for p in polys:
        if p.names != pi.names:
            raise PreconditionError(
                f"polynomial variables {p.names} do not match the Poisson structure {pi.names}")


def poisson_bracket(pi: PoissonStruct, f: PolyElement, g: PolyElement) -> PolyElement:
    _check_pi(pi, f, g)
    out = PolyElement(pi.names)
    for i, j, v in pi.entries():
        out = out + f.derivative(i) * g.derivative(j) * v
    return out


def _bidiff_symbols(pi: PoissonStruct, n: int, max_f=None, max_g=None):
    """Expand (sum pi^{ij} xi_i eta_j)^n into {(alpha, beta): coefficient}."""
    d = pi.dim
    cur = {((0,) * d, (0,) * d): 1}
    ent = pi.entries()
    for _ in range(n):
        nxt = {}
        for (a, b), c in cur.items():
            for i, j, v in ent:
                a2 = a[:i] + (a[i] + 1,) + a[i + 1:]
                b2 = b[:j] + (b[j] + 1,) + b[j + 1:]
                if max_f is not None and sum(a2) > max_f:
                    continue
                if max_g is not None and sum(b2) > max_g:
                    continue
                k = (a2, b2)
                nxt[k] = nxt.get(k, 0) + c * v
        cur = {k: v for k, v in nxt.items() if v != 0}
    return cur


def bidifferential(pi: PoissonStruct, n: int, f: PolyElement, g: PolyElement) -> PolyElement:
    """B_n(f, g) = sum pi^{i1 j1}..pi^{in jn} d_{i1..in} f d_{j1..jn} g."""
    _check_pi(pi, f, g)
    out = PolyElement(pi.names)
    if n > f.degree() or n > g.degree() or f.is_zero() or g.is_zero():
        return out if n else f * g
    for (a, b), c in _bidiff_symbols(pi, n, f.degree(), g.degree()).items():
        out = out + f.partial(a) * g.partial(b) * c
    return out


@dataclass
class FormalSeries:
    """Truncated power series sum_k coeffs[k] h^k with polynomial coefficients."""

    coeffs: list
    order: int
    param: str = "h"

    def __post_init__(self):
        if len(self.coeffs) > self.order + 1:
            self.coeffs = self.coeffs[: self.order + 1]

    @property
    def names(self):
        return self.coeffs[0].names

    def coeff(self, k):
        if k < len(self.coeffs):
            return self.coeffs[k]
        return PolyElement(self.names)

    def _zip(self, other, op):
        n = min(self.order, other.order)
        return FormalSeries([op(self.coeff(k), other.coeff(k)) for k in range(n + 1)], n, self.param)

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __eq__(self, other):
        if not isinstance(other, FormalSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return all(self.coeff(k) == other.coeff(k) for k in range(n + 1))

    def first_difference(self, other):
        n = min(self.order, other.order)
        for k in range(n + 1):
            if self.coeff(k) != other.coeff(k):
                return k
        return None

    def to_text(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            body = c.to_text()
            if k == 0:
                parts.append(body)
            else:
                hp = self.param if k == 1 else f"{self.param}^{k}"
                parts.append(f"({body}) {hp}")
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        return {"param": self.param, "order": self.order,
                "coeffs": [c.to_text() for c in self.coeffs]}


def _as_series(x, order):
    if isinstance(x, FormalSeries):
        return x
    return FormalSeries([x], order)


def moyal_product(pi: PoissonStruct, f, g, order: int, scale=None) -> FormalSeries:
    """f *_h g = sum_n (1/n!) (-i h/2)^n B_n(f, g), truncated at h^order.

    `f` and `g` may be polynomials or FormalSeries.  `scale` maps n to an extra
    factor multiplying B_n; it exists to check that the associativity test
    notices a wrong coefficient.
    """
    if order < 0:
        raise PreconditionError("order must be >= 0")
    fs, gs = _as_series(f, order), _as_series(g, order)
    names = pi.names
    out = [PolyElement(names) for _ in range(order + 1)]
    for a, fa in enumerate(fs.coeffs[: order + 1]):
        for b, gb in enumerate(gs.coeffs[: order + 1 - a]):
            if fa.is_zero() or gb.is_zero():
                continue
            for n in range(order + 1 - a - b):
                bn = bidifferential(pi, n, fa, gb)
                if bn.is_zero():
                    if n > min(fa.degree(), gb.degree()):
                        break
                    continue
                c = (-I / 2) ** n * Fraction(1, factorial(n)) if n else 1
                if scale is not None:
                    c = c * scale.get(n, 1)
                out[a + b + n] = out[a + b + n] + bn * c
    return FormalSeries(out, order)


def check_associativity(pi: PoissonStruct, f, g, h_elt, order: int, scale=None):
    """First power of h where (f*g)*h and f*(g*h) differ, or "none"."""
    left = moyal_product(pi, moyal_product(pi, f, g, order, scale), h_elt, order, scale)
    right = moyal_product(pi, f, moyal_product(pi, g, h_elt, order, scale), order, scale)
    k = left.first_difference(right)
    return "none" if k is None else k


# --- Hochschild deformation equations over a finite commutative algebra ----

@dataclass
class DeformationStep:
    obstruction: object
    is_cocycle: bool
    solution: object = None
    residual_zero: bool | None = None

    def to_json(self):
        return {"is_cocycle": self.is_cocycle, "solvable": self.solution is not None,
                "obstruction_zero": self.obstruction.is_zero()}


def _obstruction(B_list, n):
    from .cochains import circle_product
    total = None
    for i in range(1, n):
        term = circle_product(B_list[i], B_list[n - i])
        total = term if total is None else total + term
    return total


def bivector_cochain(alg, D1, D2):
    """B(a, b) = D1(a) D2(b) - D2(a) D1(b) for derivations given as d x d matrices."""
    import numpy as np

    from .cochains import Cochain
    d = alg.dim
    D1 = np.array(D1, dtype=object)
    D2 = np.array(D2, dtype=object)
    data = np.zeros((d, d, d), dtype=object)
    for i in range(d):
        for j in range(d):
            a1, a2 = D1[:, i], D2[:, i]
            b1, b2 = D1[:, j], D2[:, j]
            data[i, j] = alg.mul(a1, b2) - alg.mul(a2, b1)
    return Cochain(alg, 2, data, mode="adjoint")


def euler_derivations(alg, exponents):
    """x_k d/dx_k on a truncated polynomial algebra, as matrices."""
    import itertools

    import numpy as np
    monos = list(itertools.product(*[range(e) for e in exponents]))
    if len(monos) != alg.dim:
        raise PreconditionError("exponents do not match the algebra")
    out = []
    for k in range(len(exponents)):
        D = np.zeros((alg.dim, alg.dim), dtype=object)
        for i, m in enumerate(monos):
            D[i, i] = m[k]
        out.append(D)
    return out


def deformation_step(B_list, n: int) -> DeformationStep:
    """Obstruction at level n of sum_{i+j=n} B_i o B_j = delta B_n, and a solution if one exists.

    B_list holds adjoint 2-cochains B_0 .. B_{n-1}, B_0 the multiplication.
    """
    import numpy as np

    from .cochains import Cochain, hochschild_delta, multiplication_cochain
    from .cyclic import deformation_delta_matrix
    from .linalg import solve

    if n < 1 or len(B_list) < n:
        raise PreconditionError("need B_0 .. B_{n-1}")
    alg = B_list[0].algebra
    if not alg.is_commutative():
        raise PreconditionError("deformation_step works over commutative algebras")
    if B_list[0] != multiplication_cochain(alg):
        raise PreconditionError("B_0 must be the multiplication")
    for k in range(1, n):
        lhs = hochschild_delta(B_list[k])
        rhs = _obstruction(B_list, k)
        if k == 1:
            ok = lhs.is_zero()
        else:
            ok = lhs == rhs
        if not ok:
            raise PreconditionError(f"associativity equation fails at level {k}")
    d = alg.dim
    if n == 1:
        obs = Cochain(alg, 3, np.zeros((d,) * 4, dtype=object), mode="adjoint")
    else:
        obs = _obstruction(B_list, n)
    closed = hochschild_delta(obs).is_zero()
    M = deformation_delta_matrix(alg, 2)
    rhs = [simplify(v) for v in obs.data.reshape(-1)]
    sol = solve(M, rhs)
    if sol is None:
        return DeformationStep(obs, closed)
    flat = np.zeros(d ** 3, dtype=object)
    for j, v in sol.items():
        flat[j] = v
    Bn = Cochain(alg, 2, flat.reshape((d,) * 3), mode="adjoint")
    residual = hochschild_delta(Bn) - obs
    return DeformationStep(obs, closed, Bn, residual.is_zero())


# --- Weyl algebra -----------------------------------------------------------

_GEN = re.compile(r"^([xp])_?(\d*)$")


class WeylElement:
    """Element of A_n in normal order x^a p^b, with [p_i, x_j] = delta_ij."""

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        self.terms = {}
        for (a, b), c in (terms or {}).items():
            c = simplify(c)
            if c != 0:
                self.terms[(tuple(a), tuple(b))] = c

    @classmethod
    def one(cls, nvars=1):
        z = (0,) * nvars
        return cls(nvars, {(z, z): 1})

    @classmethod
    def generator(cls, name: str, nvars: int = 1):
        m = _GEN.match(name.strip())
        if not m:
            raise PreconditionError(f"unknown generator {name!r}")
        kind, idx = m.groups()
        i = int(idx) - 1 if idx else 0
        if not 0 <= i < nvars:
            raise PreconditionError(f"generator {name!r} outside A_{nvars}")
        e = [0] * nvars
        e[i] = 1
        z = (0,) * nvars
        key = (tuple(e), z) if kind == "x" else (z, tuple(e))
        return cls(nvars, {key: 1})

    def _lift(self, other):
        if isinstance(other, WeylElement):
            if other.nvars != self.nvars:
                raise PreconditionError("Weyl elements of different rank")
            return other
        return WeylElement.one(self.nvars) * other

    def __add__(self, other):
        other = self._lift(other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, 0) + c
        return WeylElement(self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement(self.nvars, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        if not isinstance(other, WeylElement):
            return WeylElement(self.nvars, {k: c * other for k, c in self.terms.items()})
        other = self._lift(other)
        t = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                # p^b x^c = sum_k C(b,k) C(c,k) k! x^(c-k) p^(b-k), one variable at a time
                partial = {((), ()): c1 * c2}
                for i in range(self.nvars):
                    b, c = b1[i], a2[i]
                    nxt = {}
                    for (xa, pb), v in partial.items():
                        for k in range(min(b, c) + 1):
                            key = (xa + (a1[i] + c - k,), pb + (b - k + b2[i],))
                            nxt[key] = nxt.get(key, 0) + v * comb(b, k) * comb(c, k) * factorial(k)
                    partial = nxt
                for key, v in partial.items():
                    t[key] = t.get(key, 0) + v
        return WeylElement(self.nvars, t)

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            other = self._lift(other)
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def degree(self) -> int:
        """Order as a differential operator: the total p-degree."""
        if not self.terms:
            raise PreconditionError("the zero element has no degree")
        return max(sum(b) for (_, b) in self.terms)

    def names(self):
        if self.nvars == 1:
            return ("x",), ("p",)
        r = range(1, self.nvars + 1)
        return tuple(f"x{i}" for i in r), tuple(f"p{i}" for i in r)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        xs, ps = self.names()
        parts = []
        for (a, b) in sorted(self.terms, key=lambda k: (-sum(k[1]), -sum(k[0]), k)):
            c = self.terms[(a, b)]
            mono = " ".join([n if k == 1 else f"{n}^{k}" for n, k in zip(xs, a) if k]
                            + [n if k == 1 else f"{n}^{k}" for n, k in zip(ps, b) if k])
            cs = _fmt(c)
            neg = cs.startswith("-")
            mag = cs[1:] if neg else cs
            body = (mono if mag == "1" else f"{mag} {mono}") if mono else mag
            parts.append((("-" if neg else "") if not parts else ("- " if neg else "+ ")) + body)
        return " ".join(parts)

    def __repr__(self):
        return f"WeylElement({self.to_text()!r})"


def weyl_normal_form(word, nvars: int | None = None) -> WeylElement:
    """Multiply out a word in the generators x_i, p_i into normal order."""
    word = list(word)
    if nvars is None:
        nvars = 1
        for g in word:
            m = _GEN.match(str(g).strip())
            if not m:
                raise PreconditionError(f"unknown generator {g!r}")
            if m.group(2):
                nvars = max(nvars, int(m.group(2)))
    out = WeylElement.one(nvars)
    for g in word:
        out = out * WeylElement.generator(str(g), nvars)
    return out


def weyl_poisson(nvars: int) -> PoissonStruct:
    """Bracket on symbols induced by commutators, with p_i -> y_i.

    Since [p, x] = 1 maps to {y, x} = 1, this is minus the standard structure.
    """
    std = PoissonStruct.standard(nvars)
    return PoissonStruct([[-v for v in r] for r in std.matrix], std.names)


def symbol_in_degree(w: WeylElement, k: int) -> PolyElement:
    """The p-degree k part of w, read as a polynomial with p_i -> y_i."""
    names = PoissonStruct.standard(w.nvars).names
    t = {}
    for (a, b), c in w.terms.items():
        if sum(b) == k:
            t[a + b] = c
    return PolyElement(names, t)


def principal_symbol(w: WeylElement) -> PolyElement:
    if w.is_zero():
        raise PreconditionError("the zero element has no principal symbol")
    return symbol_in_degree(w, w.degree())
