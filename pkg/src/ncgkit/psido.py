"""Formal pseudodifferential operators on the circle.

An operator is sum_k a_k(z) d^k with a_k a Laurent polynomial in z = e^{ix},
kept for orders k inside a window [lo, hi].  d = d/dx acts on z^n by i*n, so
with i = zeta_4 all coefficients stay exact.

Products are computed from the composition rule

    d^m a = sum_{k>=0} C(m, k) a^(k) d^(m-k),

which for negative m is an infinite series.  Whatever falls below the window
is dropped; `truncated` records that this happened and `exact_from` is the
lowest order whose coefficient is still exact (None when everything is).

>>> d = FormalPsiDO.d(1, (-3, 2))
>>> z = FormalPsiDO.mult({1: 1}, (-3, 2))
>>> (d * z).to_text()
'z d + z(4) z'
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cyclo import CycloScalar, simplify
from .errors import PreconditionError
from .linalg import SparseMatrix, rank
from .textio import format_coeff, parse_poly


def _ipow(k: int):
    return simplify(CycloScalar.root_of_unity(4, k % 4))


def binom(m: int, k: int) -> int:
    """Generalized binomial coefficient, valid for negative m."""
    out = Fraction(1)
    for j in range(k):
        out = out * (m - j) / (j + 1)
    return int(out)


def _clean(poly: dict) -> dict:
    out = {}
    for n, c in poly.items():
        c = simplify(c)
        if c != 0:
            out[n] = c
    return out


def laurent_add(p: dict, q: dict, c=1) -> dict:
    out = dict(p)
    for n, v in q.items():
        out[n] = out.get(n, 0) + c * v
    return _clean(out)


def laurent_mul(p: dict, q: dict) -> dict:
    out = {}
    for a, u in p.items():
        for b, v in q.items():
            out[a + b] = out.get(a + b, 0) + u * v
    return _clean(out)


def laurent_derivative(p: dict, k: int = 1) -> dict:
    """k-th derivative in x: z^n -> (i n)^k z^n."""
    if k == 0:
        return dict(p)
    return _clean({n: c * n ** k * _ipow(k) for n, c in p.items()})


def parse_laurent(text: str) -> dict:
    out = {}
    for mono, c in parse_poly(str(text)).items():
        n = 0
        for v, e in mono:
            if v != "z":
                raise PreconditionError(f"unexpected variable {v!r} in a Laurent polynomial")
            n += e
        out[n] = out.get(n, 0) + c
    return _clean(out)


def format_laurent(p: dict) -> str:
    if not p:
        return "0"
    parts = []
    for n in sorted(p, reverse=True):
        cs = format_coeff(p[n])
        neg = cs.startswith("-")
        mag = cs[1:] if neg else cs
        mono = "" if n == 0 else ("z" if n == 1 else f"z^{n}")
        body = (mono if mag == "1" else f"{mag} {mono}") if mono else mag
        parts.append((("-" if neg else "") if not parts else ("- " if neg else "+ ")) + body)
    return " ".join(parts)


def _lower(a, b):
    """Max of two optional lower bounds; None means unconstrained."""
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


@dataclass
class FormalPsiDO:
    window: tuple
    coeffs: dict = field(default_factory=dict)
    truncated: bool = False
    exact_from: int | None = None

    def __post_init__(self):
        lo, hi = self.window
        if lo > hi:
            raise PreconditionError(f"empty window {self.window}")
        self.window = (int(lo), int(hi))
        clean = {}
        for k, p in self.coeffs.items():
            p = _clean(p)
            if not p:
                continue
            if not lo <= k <= hi:
                raise PreconditionError(f"order {k} outside window {self.window}")
            clean[int(k)] = p
        self.coeffs = clean

    @classmethod
    def d(cls, m: int, window):
        return cls(window, {m: {0: 1}})

    @classmethod
    def mult(cls, laurent: dict, window):
        return cls(window, {0: dict(laurent)})

    @classmethod
    def from_terms(cls, terms: dict, window):
        return cls(window, {k: (parse_laurent(v) if isinstance(v, str) else v) for k, v in terms.items()})

    @classmethod
    def from_json(cls, obj: dict):
        window = tuple(obj["window"])
        coeffs = {}
        for t in obj["terms"]:
            k = int(t["order"])
            coeffs[k] = laurent_add(coeffs.get(k, {}), parse_laurent(t["coeff"]))
        return cls(window, coeffs)

    def to_json(self):
        return {"window": list(self.window),
                "terms": [{"order": k, "coeff": format_laurent(self.coeffs[k])}
                          for k in sorted(self.coeffs, reverse=True)],
                "truncated": self.truncated, "exact_from": self.exact_from}

    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs, reverse=True):
            p = format_laurent(self.coeffs[k])
            op = "" if k == 0 else ("d" if k == 1 else f"d^{k}")
            if not op:
                parts.append(p)
            elif p == "1":
                parts.append(op)
            elif len(self.coeffs[k]) == 1 and not p.startswith("-"):
                parts.append(f"{p} {op}")
            else:
                parts.append(f"({p}) {op}")
        return " + ".join(parts)

    def coefficient(self, k: int) -> dict:
        return self.coeffs.get(k, {})

    def top_order(self):
        return max(self.coeffs) if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def rewindow(self, window):
        lo, hi = window
        dropped = any(k < lo for k in self.coeffs)
        if any(k > hi for k in self.coeffs):
            raise PreconditionError("new window cuts off leading orders")
        return FormalPsiDO(window, {k: p for k, p in self.coeffs.items() if k >= lo},
                           self.truncated or dropped, _lower(self.exact_from, lo if dropped else None))

    def _binary(self, other, c):
        if self.window != other.window:
            lo = min(self.window[0], other.window[0])
            hi = max(self.window[1], other.window[1])
        else:
            lo, hi = self.window
        out = dict(self.coeffs)
        for k, p in other.coeffs.items():
            out[k] = laurent_add(out.get(k, {}), p, c)
        return FormalPsiDO((lo, hi), out, self.truncated or other.truncated,
                           _lower(self.exact_from, other.exact_from))

    def __add__(self, other):
        return self._binary(other, 1)

    def __sub__(self, other):
        return self._binary(other, -1)

    def __neg__(self):
        return self.scaled(-1)

    def scaled(self, c):
        return FormalPsiDO(self.window, {k: {n: v * c for n, v in p.items()} for k, p in self.coeffs.items()},
                           self.truncated, self.exact_from)

    def __mul__(self, other):
        if isinstance(other, FormalPsiDO):
            return psido_mul(self, other)
        return self.scaled(other)

    def __rmul__(self, other):
        return self.scaled(other)

    def agrees_with(self, other) -> bool:
        """Equality on every order where both sides are exact."""
        lo = _lower(self.exact_from, other.exact_from)
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.coefficient(k) == other.coefficient(k) for k in keys if lo is None or k >= lo)

    def __eq__(self, other):
        if not isinstance(other, FormalPsiDO):
            return NotImplemented
        return self.coeffs == other.coeffs

    def exact_at(self, k: int) -> bool:
        return self.exact_from is None or k >= self.exact_from


def psido_mul(A: FormalPsiDO, B: FormalPsiDO, window=None) -> FormalPsiDO:
    """Composition A o B, truncated below the window.

    The default window is the union of the two windows with its top raised to
    hold the leading order of the product.
    """
    if window is None:
        lo = min(A.window[0], B.window[0])
        hi = max(A.window[1], B.window[1])
        if A.coeffs and B.coeffs:
            hi = max(hi, A.top_order() + B.top_order())
    else:
        lo, hi = window
    out: dict = {}
    lost = False
    for m, a in A.coeffs.items():
        for n, b in B.coeffs.items():
            b_const = set(b) <= {0}
            k = 0
            while True:
                if m >= 0 and k > m:
                    break
                if k > 0 and b_const:
                    break
                order = m + n - k
                if order < lo:
                    lost = True
                    break
                term = laurent_mul(a, laurent_derivative(b, k))
                c = binom(m, k)
                if term:
                    out[order] = laurent_add(out.get(order, {}), term, c)
                k += 1
    out = {k: p for k, p in out.items() if p}
    if any(k > hi for k in out):
        raise PreconditionError(f"window {lo}:{hi} cannot hold the product of order {max(out)}")
    ef = lo if lost else None
    if A.exact_from is not None and B.coeffs:
        ef = _lower(ef, A.exact_from + B.top_order())
    if B.exact_from is not None and A.coeffs:
        ef = _lower(ef, B.exact_from + A.top_order())
    return FormalPsiDO((lo, hi), out, A.truncated or B.truncated or lost, ef)


def commutator(A: FormalPsiDO, B: FormalPsiDO, window=None) -> FormalPsiDO:
    return psido_mul(A, B, window) - psido_mul(B, A, window)


def residue_trace(A: FormalPsiDO):
    """Adler-Manin trace: the z^0 coefficient of the order -1 symbol."""
    lo, hi = A.window
    if not lo <= -1 <= hi:
        raise PreconditionError(f"window {A.window} does not contain order -1")
    return simplify(A.coefficient(-1).get(0, 0))


def log_derivation(A: FormalPsiDO, window=None) -> FormalPsiDO:
    """[log d, A] from [log d, a d^n] = sum_{k>=1} (-1)^(k-1)/k a^(k) d^(n-k)."""
    lo, hi = window if window is not None else A.window
    out: dict = {}
    lost = False
    for n, a in A.coeffs.items():
        if set(a) <= {0}:
            continue
        k = 1
        while True:
            order = n - k
            if order < lo:
                lost = True
                break
            c = Fraction((-1) ** (k - 1), k)
            out[order] = laurent_add(out.get(order, {}), laurent_derivative(a, k), c)
            k += 1
    out = {k: p for k, p in out.items() if p}
    if any(k > hi for k in out):
        raise PreconditionError("window too small for the derivation")
    ef = lo if lost else None
    if A.exact_from is not None:
        ef = _lower(ef, A.exact_from - 1)
    return FormalPsiDO((lo, hi), out, A.truncated or lost, ef)


def radul_cocycle(a: FormalPsiDO, b: FormalPsiDO, window=None):
    """phi(a, b) = Tr(a [log d, b])."""
    prod = psido_mul(a, log_derivation(b, window), window)
    if not prod.exact_at(-1):
        raise PreconditionError("window too shallow: the order -1 symbol is not exact")
    return residue_trace(prod)


def _basis(window, zdeg):
    lo, hi = window
    return [(k, n) for k in range(lo, hi + 1) for n in range(-zdeg, zdeg + 1)]


def trace_space_dimension(window=(-4, 3), zdeg: int = 2) -> int:
    """Dimension of the functionals on the windowed span of z^n d^k, |n| <= zdeg,
    that vanish on all commutators of basis elements as computed in that window.

    Contributions outside the span, below it or above it, are dropped before
    imposing the relations.
    """
    lo, hi = window
    basis = _basis(window, zdeg)
    pos = {b: i for i, b in enumerate(basis)}
    wide = (lo, 2 * hi - lo + 1)
    elems = [FormalPsiDO(wide, {k: {n: 1}}) for k, n in basis]
    rows = []
    for i, x in enumerate(elems):
        for y in elems[i + 1:]:
            c = commutator(x, y, wide)
            row = {}
            for k, p in c.coeffs.items():
                for n, v in p.items():
                    j = pos.get((k, n))
                    if j is not None:
                        row[j] = v
            if row:
                rows.append(row)
    return len(basis) - rank(SparseMatrix(len(rows), len(basis), rows))
