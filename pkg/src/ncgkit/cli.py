"""The `ncg` command line.

Every command is run by `execute(argv)`, which returns (exit code, stdout,
stderr) without touching the process streams, so the corpus runner can call
it from several threads at once.  `main` is the console entry point.

Exit codes: 0 success, 1 domain error (bad input data, failed precondition,
failed check), 2 usage error (unknown flag, missing file).
"""
from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import io
from .errors import NCGError

DEFAULT_CUTOFF = 4


class UsageError(Exception):
    pass


class _Exit(Exception):
    def __init__(self, status, text=""):
        super().__init__(text)
        self.status = status
        self.text = text


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of printing and exiting."""

    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")

    def print_help(self, file=None):
        raise _Exit(0, self.format_help())

    def exit(self, status=0, message=None):
        raise _Exit(status, message or "")


class Result:
    def __init__(self, text: str, data=None, status: int = 0):
        self.text = text
        self.data = data
        self.status = status


# -----------------------------------------------------------------------------
# input helpers

def _load(path):
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"no such file: {path}")
    try:
        return io.load_file(p)
    except json.JSONDecodeError as exc:
        raise NCGError(f"{path}: invalid JSON ({exc})") from exc


def _load_or_literal(arg):
    """A JSON file, or the JSON text itself (handy for short vectors)."""
    if Path(arg).is_file():
        return io.load_file(arg)
    try:
        return json.loads(arg)
    except json.JSONDecodeError:
        raise UsageError(f"{arg!r} is neither a file nor JSON text") from None


def _text_arg(arg):
    return io.read_text_or_literal(arg)


def _window(text):
    try:
        a, b = text.split(":")
        return int(a), int(b)
    except ValueError:
        raise UsageError(f"window must look like LO:HI, got {text!r}") from None


# -----------------------------------------------------------------------------
# commands

def cmd_hh(args):
    from .cyclic import cohomology_report
    A = io.algebra_from_json(_load(args.algebra))
    complex_ = "hochschild_scalar" if args.coeff == "scalar" else "hochschild_adjoint"
    rep = cohomology_report(complex_, A, args.deg, cutoff=max(args.cutoff, args.deg), normalized=args.normalized)
    return Result(str(rep.dim), rep.to_json())


HC_COMPLEXES = {"connes": "connes_cyclic", "bicomplex": "cyclic_bicomplex", "bB": None}


def cmd_hc(args):
    from .cyclic import cohomology_report
    A = io.algebra_from_json(_load(args.algebra))
    complex_ = HC_COMPLEXES[args.complex]
    if complex_ is None:
        complex_ = "bB_even" if args.deg % 2 == 0 else "bB_odd"
    rep = cohomology_report(complex_, A, args.deg, cutoff=max(args.cutoff, args.deg))
    return Result(str(rep.dim), rep.to_json())


def cmd_hp(args):
    from .cyclic import periodic_dim
    A = io.algebra_from_json(_load(args.algebra))
    out = periodic_dim(A, args.parity, cutoff=args.cutoff)
    return Result(str(out["dim"]), out)


def cmd_pair(args):
    from .chern import pair_bB, pair_even, pair_odd
    alg, cocycles = io.cochains_from_json(_load(args.cocycle))
    cls = io.class_from_json(_load(args.klass), alg)
    kind = type(cls).__name__
    if len(cocycles) > 1:
        if kind != "KIdempotent":
            raise NCGError("a (b, B) family pairs with an idempotent")
        value = pair_bB(cocycles, cls)
    else:
        phi = cocycles[0]
        if phi.degree % 2 == 0:
            if kind != "KIdempotent":
                raise NCGError("even cocycles pair with idempotents")
            value = pair_even(phi, cls)
        else:
            if kind != "KInvertible":
                raise NCGError("odd cocycles pair with invertibles")
            value = pair_odd(phi, cls)
    text = io.scalar_to_text(value)
    return Result(text, {"pairing": text, "degrees": [c.degree for c in cocycles], "class": kind})


def cmd_fredholm_index(args):
    from .chern import fredholm_index
    FM = io.fredholm_from_json(_load(args.module))
    e = io.class_from_json(_load(args.klass), FM.algebra)
    idx = fredholm_index(FM, e)
    return Result(str(idx), {"index": idx})


def cmd_fredholm_character(args):
    from .chern import OddCharacterWarning, fredholm_character
    FM = io.fredholm_from_json(_load(args.module))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", OddCharacterWarning)
        phi = fredholm_character(FM, args.deg)
    data = io.cochain_to_json(phi)
    return Result(io.dumps(data).rstrip("\n"), data)


def cmd_star_mul(args):
    from .star import PolyElement, moyal_product
    pi = io.poisson_from_json(_load(args.pi))
    f = PolyElement.from_text(_text_arg(args.f), pi.names)
    g = PolyElement.from_text(_text_arg(args.g), pi.names)
    s = moyal_product(pi, f, g, args.order)
    return Result(s.to_text(), s.to_json())


def cmd_star_assoc(args):
    from .star import PolyElement, check_associativity
    pi = io.poisson_from_json(_load(args.pi))
    f, g, h = (PolyElement.from_text(_text_arg(t), pi.names) for t in (args.f, args.g, args.h))
    where = check_associativity(pi, f, g, h, args.order)
    return Result(str(where), {"first_failure": where, "order": args.order})


def cmd_psido_trace(args):
    from .psido import FormalPsiDO, residue_trace
    A = FormalPsiDO.from_json(_load(args.op))
    t = io.scalar_to_text(residue_trace(A))
    return Result(t, {"trace": t})


def cmd_psido_mul(args):
    from .psido import FormalPsiDO, psido_mul
    a = FormalPsiDO.from_json(_load(args.a))
    b = FormalPsiDO.from_json(_load(args.b))
    p = psido_mul(a, b, _window(args.window) if args.window else None)
    return Result(p.to_text(), p.to_json())


def cmd_psido_radul(args):
    from .psido import FormalPsiDO, radul_cocycle
    w = _window(args.window)
    a = FormalPsiDO.from_json(_load(args.a)).rewindow(w)
    b = FormalPsiDO.from_json(_load(args.b)).rewindow(w)
    t = io.scalar_to_text(radul_cocycle(a, b, w))
    return Result(t, {"radul": t, "window": list(w)})


def _pair_args(H, args):
    m = H.algebra.conductor
    delta = io.functional_from_json(_load_or_literal(args.delta), m) if args.delta else H.counit
    sigma = io.functional_from_json(_load_or_literal(args.sigma), m) if args.sigma else H.algebra.unit
    return delta, sigma


def cmd_hopf_check(args):
    from .hopf import modular_check
    H = io.hopf_from_json(_load(args.hopf))
    delta, sigma = _pair_args(H, args)
    out = modular_check(H, delta, sigma)
    text = "\n".join(f"{k}: {str(v).lower()}" for k, v in out.items())
    return Result(text, out)


def cmd_hopf_hc(args):
    from .hopf import cm_cocyclic_module, dual_cyclic_module, hopf_cyclic_dims
    H = io.hopf_from_json(_load(args.hopf))
    delta, sigma = _pair_args(H, args)
    build = cm_cocyclic_module if args.pair == "cm" else dual_cyclic_module
    M = build(H, delta, sigma, cutoff=args.deg + 1)
    dims = hopf_cyclic_dims(M, range(args.deg + 1))
    return Result(str(dims[-1]), {"dim": dims[-1], "pair": args.pair, "degree": args.deg,
                                  "dims_through_degree": dims})


def cmd_hopf_haar(args):
    from .hopf import haar_integral, haar_solution_dim
    H = io.hopf_from_json(_load(args.hopf))
    h = haar_integral(H)
    vals = None if h is None else [io.scalar_to_text(v, H.algebra.conductor) for v in h.values]
    return Result("none" if vals is None else " ".join(vals),
                  {"solution_dim": haar_solution_dim(H), "haar": vals})


def cmd_toeplitz_index(args):
    from .toeplitz import LaurentSymbol, index_routes, toeplitz_index
    f = LaurentSymbol.parse(args.symbol)
    idx = toeplitz_index(f)
    return Result(str(idx), {"index": idx, "routes": index_routes(f), "symbol": f.to_text()})


def cmd_toeplitz_ctrace(args):
    from .toeplitz import commutator_trace
    t = io.scalar_to_text(commutator_trace(args.f, args.g, args.window))
    return Result(t, {"trace": t, "window": args.window})


def cmd_toeplitz_winding(args):
    from .toeplitz import winding_number
    w = winding_number(args.symbol)
    return Result(str(w), {"winding": w})


def cmd_groupoid_algebra(args):
    from .groupoid import FiniteGroupoid, build_groupoid, groupoid_algebra
    obj = _load(args.groupoid)
    G = build_groupoid(obj) if "kind" in obj else FiniteGroupoid.from_json(obj)
    data = io.algebra_to_json(groupoid_algebra(G))
    return Result(io.dumps(data).rstrip("\n"), data)


def cmd_algebra_blocks(args):
    from .algebra import wedderburn_blocks
    A = io.algebra_from_json(_load(args.algebra))
    blocks = wedderburn_blocks(A)
    return Result(" ".join(map(str, blocks)), {"blocks": blocks})


def cmd_algebra_canon(args):
    data = io.algebra_to_json(io.algebra_from_json(_load(args.algebra)))
    return Result(io.dumps(data).rstrip("\n"), data)


def cmd_selftest(args):
    """Randomized identity checks, reproducible from --seed."""
    from .algebra import group_algebra, matrix_algebra, rational_torus, truncated_polynomial
    from .checks import operator_suite
    from .groups import cyclic_group
    rng = random.Random(args.seed)
    algs = [matrix_algebra(2), group_algebra(cyclic_group(3)), truncated_polynomial([2, 2]), rational_torus(1, 2)]
    out = operator_suite(algs, args.trials, rng)
    out["seed"] = args.seed
    status = 1 if out["failures"] else 0
    return Result(f"{args.trials} trials, {len(out['failures'])} failures", out, status)


# -----------------------------------------------------------------------------
# corpus

def _corpus_case(root: Path, case: dict) -> dict:
    argv = [a.replace("{corpus}", str(root)) for a in case["argv"]]
    code, out, _err = execute(argv)
    expected_file = root / "expected" / f"{case['name']}.out"
    expected = expected_file.read_text(encoding="utf-8") if expected_file.is_file() else None
    ok = code == case.get("exit", 0) and out == expected
    return {"name": case["name"], "exit": code, "ok": ok,
            "sha256": hashlib.sha256(out.encode("utf-8")).hexdigest(), "output": out}


def cmd_corpus_run(args):
    root = Path(args.dir)
    manifest = _load(root / "manifest.json")
    cases = sorted(manifest["cases"], key=lambda c: c["name"])
    with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
        results = list(pool.map(lambda c: _corpus_case(root, c), cases))
    if args.update:
        (root / "expected").mkdir(exist_ok=True)
        for r in results:
            (root / "expected" / f"{r['name']}.out").write_text(r["output"], encoding="utf-8")
            r["ok"] = True
    for r in results:
        del r["output"]
    failed = [r["name"] for r in results if not r["ok"]]
    data = {"cases": results, "total": len(results), "passed": len(results) - len(failed), "failed": failed}
    lines = [f"{'ok  ' if r['ok'] else 'FAIL'} {r['name']}" for r in results]
    lines.append(f"{data['passed']}/{data['total']} passed")
    return Result("\n".join(lines), data, 1 if failed else 0)


# -----------------------------------------------------------------------------
# parser

def _globals(defaults: bool) -> argparse.ArgumentParser:
    """Global flags, accepted before or after the subcommand."""
    p = _Parser(add_help=False)
    kw = (lambda v: {"default": v}) if defaults else (lambda v: {"default": argparse.SUPPRESS})
    p.add_argument("--json", action="store_true", help="print the JSON report", **kw(False))
    p.add_argument("--cutoff", type=int, help=f"degree cutoff for truncated complexes (default {DEFAULT_CUTOFF})",
                   **kw(DEFAULT_CUTOFF))
    p.add_argument("--seed", type=int, help="seed for randomized checks (default 0)", **kw(0))
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _globals(False)
    parser = _Parser(prog="ncg", parents=[_globals(True)],
                     description="Exact noncommutative geometry computations on finite models.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(parent, name, fn, help_):
        p = parent.add_parser(name, help=help_, description=help_, parents=[common])
        p.set_defaults(fn=fn)
        return p

    def group(name, help_):
        g = sub.add_parser(name, help=help_, description=help_)
        gs = g.add_subparsers(dest="action", metavar="ACTION", parser_class=_Parser)
        gs.required = True
        return gs

    p = add(sub, "hh", cmd_hh, "Hochschild cohomology HH^n(A, A*) or HH^n(A, A)")
    p.add_argument("algebra")
    p.add_argument("--coeff", choices=["scalar", "adjoint"], default="scalar")
    p.add_argument("--deg", type=int, required=True)
    p.add_argument("--normalized", action="store_true", help="use normalized cochains")

    p = add(sub, "hc", cmd_hc, "cyclic cohomology HC^n(A)")
    p.add_argument("algebra")
    p.add_argument("--deg", type=int, required=True)
    p.add_argument("--complex", choices=sorted(HC_COMPLEXES), default="connes",
                   help="Connes complex (default), cyclic bicomplex, or (b,B) total complex")

    p = add(sub, "hp", cmd_hp, "periodic cyclic cohomology, read off at the cutoff")
    p.add_argument("algebra")
    p.add_argument("--parity", choices=["even", "odd"], required=True)

    p = add(sub, "pair", cmd_pair, "pair a cyclic cocycle (or (b,B) family) with a K-theory class")
    p.add_argument("--cocycle", required=True)
    p.add_argument("--class", dest="klass", required=True)

    g = group("fredholm", "finite-dimensional Fredholm modules")
    p = add(g, "index", cmd_fredholm_index, "index of F compressed by an idempotent")
    p.add_argument("module")
    p.add_argument("--class", dest="klass", required=True)
    p = add(g, "character", cmd_fredholm_character, "the character cocycle in degree n")
    p.add_argument("module")
    p.add_argument("--deg", type=int, required=True)

    g = group("star", "Moyal star products on polynomials")
    for name, fn, help_ in (("mul", cmd_star_mul, "f * g through h^order"),
                            ("assoc", cmd_star_assoc, "first power of h where (f*g)*h != f*(g*h)")):
        p = add(g, name, fn, help_)
        p.add_argument("--pi", required=True, help="Poisson JSON {names, matrix} or {standard: n}")
        p.add_argument("--f", required=True, help="polynomial text or a file holding it")
        p.add_argument("--g", required=True)
        if name == "assoc":
            p.add_argument("--h", required=True)
        p.add_argument("--order", type=int, required=True)

    g = group("psido", "formal pseudodifferential operators on the circle")
    p = add(g, "trace", cmd_psido_trace, "the residue trace")
    p.add_argument("op")
    p = add(g, "mul", cmd_psido_mul, "composition a o b")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--window", help="LO:HI")
    p = add(g, "radul", cmd_psido_radul, "the Radul cocycle Tr(a [log d, b])")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--window", required=True, help="LO:HI")

    g = group("hopf", "Hopf algebras and Hopf cyclic cohomology")
    for name, fn, help_ in (("check", cmd_hopf_check, "modular pair and involution checks"),
                            ("hc", cmd_hopf_hc, "Hopf cyclic cohomology dimensions")):
        p = add(g, name, fn, help_)
        p.add_argument("hopf")
        p.add_argument("--delta", help="character: JSON list or file (default counit)")
        p.add_argument("--sigma", help="grouplike: JSON list or file (default unit)")
        if name == "hc":
            p.add_argument("--pair", choices=["cm", "dual"], default="cm")
            p.add_argument("--deg", type=int, required=True)
    p = add(g, "haar", cmd_hopf_haar, "the normalized Haar integral")
    p.add_argument("hopf")

    g = group("toeplitz", "Toeplitz operators with Laurent polynomial symbols")
    p = add(g, "index", cmd_toeplitz_index, "Fredholm index of T_f")
    p.add_argument("symbol")
    p = add(g, "winding", cmd_toeplitz_winding, "winding number of f")
    p.add_argument("symbol")
    p = add(g, "ctrace", cmd_toeplitz_ctrace, "Tr([T_f, T_g]) on a window")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--window", type=int, default=16)

    g = group("groupoid", "finite groupoids")
    p = add(g, "algebra", cmd_groupoid_algebra, "the convolution algebra as algebra JSON")
    p.add_argument("groupoid")

    g = group("algebra", "finite-dimensional algebras")
    p = add(g, "blocks", cmd_algebra_blocks, "Wedderburn block sizes")
    p.add_argument("algebra")
    p = add(g, "canon", cmd_algebra_canon, "canonical JSON form of an algebra file")
    p.add_argument("algebra")

    p = add(sub, "selftest", cmd_selftest, "randomized operator identities (uses --seed)")
    p.add_argument("--trials", type=int, default=50)

    g = group("corpus", "the regression corpus")
    p = add(g, "run", cmd_corpus_run, "replay every corpus case and compare outputs")
    p.add_argument("--dir", default="corpus")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--update", action="store_true", help="rewrite the expected outputs")
    return parser


def _fix_negative_values(argv):
    """Let `--window -6:4` through; argparse would read -6:4 as a flag."""
    out = []
    it = iter(argv)
    for a in it:
        if a == "--window":
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and nxt[1:2].isdigit():
                out.append(f"--window={nxt}")
                continue
            out.append(a)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(a)
    return out


def execute(argv) -> tuple:
    """Run one command; returns (exit code, stdout text, stderr text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(_fix_negative_values(list(argv)))
        res = args.fn(args)
    except _Exit as e:
        return e.status, e.text, ""
    except UsageError as e:
        return 2, "", f"{e}\n"
    except (NCGError, ValueError, KeyError, TypeError, AssertionError) as e:
        # TypeError/KeyError here come from malformed input files
        return 1, "", f"ncg: error: {type(e).__name__}: {e}\n"
    if args.json:
        out = io.dumps(res.data)
    else:
        out = res.text + "\n"
    return res.status, out, ""


def main(argv=None) -> int:
    code, out, err = execute(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
