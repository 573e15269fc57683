"""JSON readers and writers for algebras, Hopf algebras, cochains, K-classes and friends.

Scalars are written as strings: an integer polynomial in ``z`` (standing for
zeta_m, m the file's ``scalar_conductor``) over an optional positive
denominator, e.g. ``"(1 + 2*z)/3"``.  Integers may also appear bare when
reading.  Writing always goes through the canonical form, so parse followed by
serialize is byte-stable.

>>> from ncgkit.algebra import matrix_algebra
>>> text = dumps(algebra_to_json(matrix_algebra(2)))
>>> dumps(algebra_to_json(algebra_from_json(loads(text)))) == text
True
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .algebra import FinAlgebra, build_algebra
from .cyclo import CycloScalar, conductor_of, format_scalar, simplify
from .errors import ValidationError
from .textio import parse_scalar


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(jsonable(obj), indent=2, sort_keys=True) + "\n"


def loads(text: str):
    return json.loads(text)


def load_file(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def jsonable(obj, conductor=None):
    """Replace exact scalars by their text form and numpy containers by lists."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (Fraction, CycloScalar)):
        return scalar_to_text(obj, conductor)
    if isinstance(obj, float):
        return obj
    if isinstance(obj, dict):
        return {str(k): jsonable(v, conductor) for k, v in obj.items()}
    if isinstance(obj, np.ndarray):
        return [jsonable(v, conductor) for v in obj.tolist()] if obj.ndim else jsonable(obj.item(), conductor)
    if isinstance(obj, (list, tuple)):
        return [jsonable(v, conductor) for v in obj]
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json(), conductor)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def scalar_to_text(x, conductor=None) -> str:
    x = simplify(x)
    if conductor is not None and conductor % conductor_of(x) == 0:
        return format_scalar(x, conductor=conductor)
    return format_scalar(x)


def scalar_from_json(v, conductor: int = 1):
    if isinstance(v, bool):
        raise ValidationError("booleans are not scalars")
    if isinstance(v, int):
        return v
    if isinstance(v, float):
        raise ValidationError(f"inexact scalar {v!r}; write it as a fraction string")
    return simplify(parse_scalar(v, conductor))


def vector_from_json(vals, conductor: int = 1):
    return np.array([scalar_from_json(v, conductor) for v in vals], dtype=object)


def matrix_to_json(M, conductor=None) -> list:
    return [[scalar_to_text(v, conductor) for v in row] for row in np.asarray(M, dtype=object)]


def matrix_from_json(rows, conductor: int = 1) -> np.ndarray:
    return np.array([[scalar_from_json(v, conductor) for v in row] for row in rows], dtype=object)


# -- algebras ---------------------------------------------------------------

def algebra_to_json(alg: FinAlgebra) -> dict:
    m = alg.conductor
    d = alg.dim
    struct = [[int(i), int(j), int(k), scalar_to_text(alg.struct[i, j, k], m)]
              for i, j, k in zip(*np.nonzero(alg.struct != 0))]
    out = {"scalar_conductor": m, "dim": d, "labels": list(alg.labels),
           "unit": [scalar_to_text(v, m) for v in alg.unit], "structure": sorted(struct)}
    if alg.involution is not None:
        out["involution"] = matrix_to_json(alg.involution, m)
    return out


def algebra_from_json(obj: dict, validate: bool = True) -> FinAlgebra:
    """Read either the explicit format or a builder shorthand {"kind": ..., ...}."""
    if "kind" in obj and "structure" not in obj:
        return build_algebra(dict(obj))
    try:
        m = int(obj.get("scalar_conductor", 1))
        d = int(obj["dim"])
        c = np.zeros((d, d, d), dtype=object)
        for entry in obj["structure"]:
            i, j, k, v = entry
            if not (0 <= i < d and 0 <= j < d and 0 <= k < d):
                raise ValidationError(f"structure index out of range: {entry}")
            c[i, j, k] = scalar_from_json(v, m)
        unit = vector_from_json(obj["unit"], m)
        inv = obj.get("involution")
        inv = matrix_from_json(inv, m) if inv is not None else None
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(f"malformed algebra JSON: {exc}") from exc
    return FinAlgebra(c, unit, inv, obj.get("labels"), m, validate=validate)


def read_algebra(path) -> FinAlgebra:
    return algebra_from_json(load_file(path))


# -- Hopf algebras ------------------------------------------------------------

def hopf_to_json(H) -> dict:
    m = H.algebra.conductor
    out = algebra_to_json(H.algebra)
    d = H.dim
    out["coproduct"] = sorted([int(i), int(j), int(k), scalar_to_text(H.coproduct[i, j, k], m)]
                              for i, j, k in zip(*np.nonzero(H.coproduct != 0)))
    out["counit"] = [scalar_to_text(v, m) for v in H.counit]
    out["antipode"] = matrix_to_json(H.antipode, m)
    if d and H.name:
        out["name"] = H.name
    return out


def hopf_from_json(obj: dict):
    from .hopf import HopfAlgebra, build_hopf
    if "kind" in obj and "structure" not in obj:
        return build_hopf(obj["kind"], obj["group"])
    alg = algebra_from_json(obj)
    m, d = alg.conductor, alg.dim
    try:
        D = np.zeros((d, d, d), dtype=object)
        for i, j, k, v in obj["coproduct"]:
            D[i, j, k] = scalar_from_json(v, m)
        eps = vector_from_json(obj["counit"], m)
        S = matrix_from_json(obj["antipode"], m)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed Hopf JSON: {exc}") from exc
    return HopfAlgebra(alg, D, eps, S, name=obj.get("name", ""))


def functional_from_json(obj, conductor: int = 1):
    """A character or grouplike: a bare list, or {"values": [...]}."""
    if isinstance(obj, dict):
        obj = obj["values"]
    return vector_from_json(obj, conductor)


# -- cochains and K-theory classes -------------------------------------------

def cochain_to_json(phi) -> dict:
    alg = phi.algebra
    m = alg.conductor
    vals = [[*map(int, idx), scalar_to_text(phi.data[idx], m)] for idx in zip(*np.nonzero(phi.data != 0))]
    return {"algebra": algebra_to_json(alg), "degree": phi.degree, "values": sorted(vals)}


def _cochain_data(alg, degree, values):
    d = alg.dim
    data = np.zeros((d,) * (degree + 1), dtype=object)
    for entry in values:
        *idx, v = entry
        if len(idx) != degree + 1:
            raise ValidationError(f"cochain entry {entry} has the wrong arity")
        data[tuple(idx)] = scalar_from_json(v, alg.conductor)
    return data


def cochains_from_json(obj: dict):
    """Returns (algebra, [Cochain, ...]).

    Accepted shapes: {"algebra", "degree", "values"} for one cocycle,
    {"algebra", "cocycles": [{"degree", "values"}, ...]} for a (b, B)-family,
    and {"builtin": "winding"} for the winding cocycle on C[Z].
    """
    from .cochains import Cochain
    if obj.get("builtin") == "winding":
        from .chern import winding_cocycle
        phi = winding_cocycle()
        return phi.algebra, [phi]
    if "builtin" in obj:
        raise ValidationError(f"unknown builtin cocycle {obj['builtin']!r}")
    alg = algebra_from_json(obj["algebra"])
    parts = obj["cocycles"] if "cocycles" in obj else [obj]
    return alg, [Cochain(alg, int(p["degree"]), _cochain_data(alg, int(p["degree"]), p["values"]))
                 for p in parts]


def _alg_matrix(alg, rows):
    """k x k matrix whose entries are coefficient vectors over the basis of alg."""
    from .cochains import _is_lazy
    if _is_lazy(alg):
        from .psido import parse_laurent
        return np.array([[parse_laurent(v) for v in row] for row in rows] or [[]], dtype=object)
    k = len(rows)
    out = np.zeros((k, k, alg.dim), dtype=object)
    for i, row in enumerate(rows):
        if len(row) != k:
            raise ValidationError("K-theory matrices must be square")
        for j, v in enumerate(row):
            out[i, j] = vector_from_json(v, alg.conductor)
    return out


def class_from_json(obj: dict, alg):
    """{"kind": "idempotent", "matrix": ...} or {"kind": "invertible", "matrix": ..., "inverse": ...}.

    Over C[Z] the entries are Laurent polynomial strings such as "z^-1".
    """
    from .chern import KIdempotent, KInvertible
    kind = obj.get("kind")
    if kind == "idempotent":
        return KIdempotent(alg, _alg_matrix(alg, obj["matrix"]))
    if kind == "invertible":
        return KInvertible(alg, _alg_matrix(alg, obj["matrix"]), _alg_matrix(alg, obj["inverse"]))
    raise ValidationError(f"unknown class kind {kind!r}")


def fredholm_from_json(obj: dict):
    from .chern import FredholmModule
    alg = algebra_from_json(obj["algebra"])
    m = alg.conductor
    return FredholmModule(alg, obj["grading"], matrix_from_json(obj["F"], m),
                          [matrix_from_json(p, m) for p in obj["rep"]])


def fredholm_to_json(FM) -> dict:
    m = FM.algebra.conductor
    return {"algebra": algebra_to_json(FM.algebra), "grading": list(FM.grading),
            "F": matrix_to_json(FM.F, m), "rep": [matrix_to_json(p, m) for p in FM.rep.matrices]}


# -- Poisson structures and text inputs ---------------------------------------------

def poisson_from_json(obj: dict):
    from .star import PoissonStruct
    if "standard" in obj:
        return PoissonStruct.standard(int(obj["standard"]))
    M = matrix_from_json(obj["matrix"])
    return PoissonStruct(M, obj.get("names"))


def read_text_or_literal(arg: str) -> str:
    """Contents of the file `arg` if it exists, else `arg` itself."""
    p = Path(arg)
    if p.is_file():
        return p.read_text(encoding="utf-8").strip()
    return arg
