"""Toeplitz operators on l^2(N) with Laurent polynomial symbols.

Operators are semi-infinite banded matrices whose entries are evaluated on
demand, exactly.  A product entry (AB)_{jk} is a finite sum because both
factors are banded, so no truncation enters until a trace is taken over a
window, and that window is checked to contain the whole support.

>>> commutator_trace(LaurentSymbol.parse("z"), LaurentSymbol.parse("z^-1"), 8)
-1
"""
from __future__ import annotations

from functools import lru_cache

import mpmath

from .cyclo import conj, inv, simplify, to_mpc
from .errors import CertificationError, PreconditionError
from .linalg import SparseMatrix, rank
from .psido import format_laurent, laurent_mul, parse_laurent

WINDING_PREC = 128
WINDING_MARGIN = mpmath.mpf("1e-12")


class LaurentSymbol:
    """A trigonometric polynomial sum_k c_k z^k."""

    def __init__(self, coeffs: dict):
        self.coeffs = {int(k): simplify(v) for k, v in coeffs.items() if simplify(v) != 0}

    @classmethod
    def parse(cls, text: str) -> "LaurentSymbol":
        return cls(parse_laurent(text))

    @classmethod
    def monomial(cls, k: int, c=1) -> "LaurentSymbol":
        return cls({k: c})

    def __getitem__(self, k):
        return self.coeffs.get(k, 0)

    def __mul__(self, other):
        return LaurentSymbol(laurent_mul(self.coeffs, other.coeffs))

    def __eq__(self, other):
        return isinstance(other, LaurentSymbol) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self):
        return not self.coeffs

    @property
    def low(self):
        return min(self.coeffs, default=0)

    @property
    def high(self):
        return max(self.coeffs, default=0)

    def bandwidth(self) -> int:
        return max(abs(self.low), abs(self.high))

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def inverse(self) -> "LaurentSymbol":
        """Exact inverse, available only for c z^k."""
        if not self.is_monomial():
            raise PreconditionError("only monomial symbols have Laurent polynomial inverses")
        (k, c), = self.coeffs.items()
        return LaurentSymbol({-k: inv(c)})

    def adjoint(self) -> "LaurentSymbol":
        """Symbol of T_f^*: the conjugate function, c_k -> conj(c_{-k})."""
        return LaurentSymbol({-k: conj(c) for k, c in self.coeffs.items()})

    def to_text(self) -> str:
        return format_laurent(self.coeffs)

    def __repr__(self):
        return f"LaurentSymbol({self.to_text()!r})"


class BandedOperator:
    """Semi-infinite matrix with entries zero outside -below <= j - k <= above."""

    def __init__(self, entry, below: int, above: int, name: str = ""):
        self._entry = lru_cache(maxsize=None)(entry)
        self.below = below  # nonzero only for j - k <= below
        self.above = above  # nonzero only for k - j <= above
        self.name = name

    def entry(self, j: int, k: int):
        if j < 0 or k < 0 or j - k > self.below or k - j > self.above:
            return 0
        return self._entry(j, k)

    def __add__(self, other):
        return BandedOperator(lambda j, k: simplify(self.entry(j, k) + other.entry(j, k)),
                              max(self.below, other.below), max(self.above, other.above))

    def __sub__(self, other):
        return BandedOperator(lambda j, k: simplify(self.entry(j, k) - other.entry(j, k)),
                              max(self.below, other.below), max(self.above, other.above))

    def scaled(self, c):
        return BandedOperator(lambda j, k: simplify(c * self.entry(j, k)), self.below, self.above)

    def __mul__(self, other):
        if not isinstance(other, BandedOperator):
            return self.scaled(other)
        a, b = self, other

        def entry(j, k):
            lo = max(0, k - b.above, j - a.below)
            hi = min(j + a.above, k + b.below)
            total = 0
            for l in range(lo, hi + 1):
                x = a.entry(j, l)
                if x != 0:
                    total = total + x * b.entry(l, k)
            return simplify(total)

        return BandedOperator(entry, a.below + b.below, a.above + b.above)

    def section(self, rows: int, cols: int) -> SparseMatrix:
        out = SparseMatrix(rows, cols)
        for j in range(rows):
            for k in range(max(0, j - self.below), min(cols, j + self.above + 1)):
                v = self.entry(j, k)
                if v != 0:
                    out.rows[j][k] = v
        return out

    def dense(self, n: int):
        return [[self.entry(j, k) for k in range(n)] for j in range(n)]


class BandedToeplitz(BandedOperator):
    """T_f with (T_f)_{jk} = f_{j-k} on the basis e_0, e_1, ...; W is the evaluation window."""

    def __init__(self, symbol: LaurentSymbol, window: int):
        self.symbol = symbol
        self.window = window
        super().__init__(lambda j, k: symbol[j - k], max(symbol.high, 0), max(-symbol.low, 0),
                         name=f"T[{symbol.to_text()}]")

    def matrix(self):
        return self.dense(self.window)


def toeplitz_op(f: LaurentSymbol, window: int) -> BandedToeplitz:
    if isinstance(f, str):
        f = LaurentSymbol.parse(f)
    if window < f.bandwidth():
        raise PreconditionError(f"window {window} is smaller than the band {f.bandwidth()}")
    return BandedToeplitz(f, window)


def operator_trace(A: BandedOperator, window: int, margin: int):
    """Trace of a finitely supported operator, after checking its support ends
    `margin` rows and columns before the window edge."""
    total = 0
    for j in range(window):
        lo, hi = max(0, j - A.below), min(window, j + A.above + 1)
        for k in range(lo, hi):
            v = A.entry(j, k)
            if v != 0 and (j >= window - margin or k >= window - margin):
                raise PreconditionError(f"window {window} too small: support reaches the edge")
        total = total + A.entry(j, j)
    # entries just outside the window would also show up here
    for j in range(window, window + margin):
        for k in range(max(0, j - A.below), j + A.above + 1):
            if A.entry(j, k) != 0:
                raise PreconditionError(f"window {window} too small: support leaves the window")
    return simplify(total)


def _as_op(x, window):
    if isinstance(x, BandedOperator):
        return x
    if isinstance(x, str):
        x = LaurentSymbol.parse(x)
    return toeplitz_op(x, window)


def commutator_trace(f, g, window: int):
    """Tr([T_f, T_g]); f and g may be symbols, symbol strings, or banded operators."""
    A, B = _as_op(f, window), _as_op(g, window)
    margin = max(A.below, A.above, B.below, B.above, 1)
    if window < 2 * margin:
        raise PreconditionError(f"window {window} is below twice the combined band {margin}")
    C = A * B - B * A
    return operator_trace(C, window, margin)


def winding_number(f: LaurentSymbol) -> int:
    """Zeros of z^m f(z) inside the unit disc minus m, with m = -(lowest power).

    Roots come from companion-matrix eigenvalues at 128-bit precision; a root
    within 1e-12 of the unit circle makes the symbol uncertifiable.
    """
    if isinstance(f, str):
        f = LaurentSymbol.parse(f)
    if f.is_zero():
        raise CertificationError("symbol not certified invertible: zero symbol")
    m = max(0, -f.low)
    lo, hi = f.low, f.high
    # z^m f(z) = z^(lo+m) q(z) with q(0) != 0; the factor z^(lo+m) has its zeros at 0
    inside = lo + m
    deg = hi - lo
    if deg > 0:
        with mpmath.workprec(WINDING_PREC):
            lead = to_mpc(f[hi])
            C = mpmath.matrix(deg, deg)
            for i in range(1, deg):
                C[i, i - 1] = 1
            for i in range(deg):
                C[i, deg - 1] = -to_mpc(f[lo + i]) / lead
            if deg == 1:
                E = [C[0, 0]]  # mpmath.eig returns vectors too for 1 x 1 input
            else:
                E = mpmath.eig(C, left=False, right=False)
            for r in E:
                if abs(abs(r) - 1) < WINDING_MARGIN:
                    raise CertificationError("symbol not certified invertible")
                if abs(r) < 1:
                    inside += 1
    return inside - m


def kernel_dim(A: BandedOperator, window: int) -> int:
    """dim of the kernel on vectors supported in e_0..e_{window-1}, using every row those reach."""
    S = A.section(window + A.below, window)
    return window - rank(S)


def index_by_kernels(f: LaurentSymbol, window: int | None = None) -> int:
    """dim ker T_f - dim ker T_f^*, exact for monomial symbols."""
    if not f.is_monomial():
        raise PreconditionError("the kernel route is exact only for monomial symbols")
    W = window or 2 * f.bandwidth() + 4
    T = toeplitz_op(f, W)
    Tstar = toeplitz_op(f.adjoint(), W)
    return kernel_dim(T, W) - kernel_dim(Tstar, W)


def index_routes(f) -> dict:
    """The index computed every way that applies to f."""
    if isinstance(f, str):
        f = LaurentSymbol.parse(f)
    out = {"winding": -winding_number(f)}
    if f.is_monomial():
        W = 2 * f.bandwidth() + 4
        out["kernels"] = index_by_kernels(f, W)
        out["commutator_trace"] = commutator_trace(f, f.inverse(), W)
    return out


def toeplitz_index(f) -> int:
    """index(T_f) = -winding(f), cross-checked by the exact routes when they apply."""
    routes = index_routes(f)
    vals = set(routes.values())
    if len(vals) != 1:
        raise AssertionError(f"index routes disagree: {routes}")
    return routes["winding"]
