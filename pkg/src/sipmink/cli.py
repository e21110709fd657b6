"""Command-line harness.

Verbs: classify, product, ortho, auerbach, tangent, distance, verify,
counterexample.  Spaces come from a flat key-value config file (see
``config.py``); ``--seed``, ``--trials``, ``--nodes`` and ``--out``
override it.  The environment variable SIPMINK_TOL_EQ overrides the
equality tolerance.

Exit codes: 0 all passed, 1 suite failure, 2 usage or config error,
3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

import numpy as np

from . import hyperboloid as hyp
from . import minkowski as mink
from . import ortho
from .siip import SiipSpace as _SiipSpace, cauchy_schwarz_witness as _cs_witness, siip as _siip
from .config import RunConfig, load_config
from .errors import (
    ConvergenceError,
    NumericalError,
    PathError,
    SipminkError,
    UsageError,
)
from .isometry import strict_convexity_witness
from .norms import SipSpace
from .numerics import Seed
from .suites import SUITES, rows_to_csv, run_suites

_FMT = "%.17g"


def _parse_vector(text: str) -> np.ndarray:
    try:
        return np.array([float(part) for part in text.split(",")], dtype=float)
    except ValueError:
        raise UsageError(f"cannot parse vector {text!r}; expected comma-separated reals") from None


def _add_common(sub: argparse.ArgumentParser):
    sub.add_argument("--config", help="path to a key=value config file")
    sub.add_argument("--seed", type=int, help="override the config seed")
    sub.add_argument("--out", help="CSV output path")
    sub.add_argument("--trials", type=int, help="override sampling trial count")
    sub.add_argument("--nodes", type=int, help="override path node count")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sipmink", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("classify", help="classify vectors as space-/time-/light-like")
    p.add_argument("vectors", nargs="+", help="vectors as comma-separated reals")
    _add_common(p)

    p = subs.add_parser("product", help="evaluate both products of a vector pair")
    p.add_argument("u")
    p.add_argument("v")
    _add_common(p)

    p = subs.add_parser("ortho", help="test an orthogonality relation")
    p.add_argument("relation", choices=sorted(r.value for r in ortho.OrthoRelation))
    p.add_argument("x")
    p.add_argument("y")
    _add_common(p)

    p = subs.add_parser("auerbach", help="Auerbach basis of the configured space")
    _add_common(p)

    p = subs.add_parser("tangent", help="tangent frame at a lifted point of H+")
    p.add_argument("s", help="S-coordinates of the base point")
    _add_common(p)

    p = subs.add_parser("distance", help="geodesic distance between lifted points")
    p.add_argument("a_s")
    p.add_argument("b_s")
    _add_common(p)

    p = subs.add_parser("verify", help="run named verification suites")
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p.add_argument("--matrix", help="CSV file with a linear map to check for the isometry law")
    _add_common(p)

    p = subs.add_parser("counterexample", help="reproduce the stock counterexamples")
    _add_common(p)
    return parser


def _config(args) -> RunConfig:
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg = replace(cfg, seed=args.seed)
    if args.trials is not None:
        cfg = replace(cfg, trials=args.trials)
    if args.nodes is not None:
        cfg = replace(cfg, nodes=args.nodes)
    if args.out is not None:
        cfg = replace(cfg, out=args.out)
    return cfg


def cmd_classify(args) -> int:
    cfg = _config(args)
    space = cfg.space()
    print("vector | [v,v]+ | class | cone")
    rows = []
    for text in args.vectors:
        v = _parse_vector(text)
        q = mink.product_plus(space, v, v)
        cls = mink.classify(space, v, cfg.tolerances.class_tol)
        cone = (
            mink.cone_part(space, v, cfg.tolerances.class_tol).value
            if space.is_spacetime_model
            else "n/a"
        )
        print(f"{text} | {_FMT % q} | {cls.value} | {cone}")
        rows.append((text, q, cls.value, cone))
    if args.out:
        lines = ["vector,square,class,cone"]
        lines += [f'"{t}",{_FMT % q},{c},{cp}' for t, q, c, cp in rows]
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
    return 0


def cmd_product(args) -> int:
    cfg = _config(args)
    space = cfg.space()
    u = _parse_vector(args.u)
    v = _parse_vector(args.v)
    print(f"[u,v]- = {_FMT % mink.product_minus(space, u, v)}")
    print(f"[u,v]+ = {_FMT % mink.product_plus(space, u, v)}")
    return 0


def cmd_ortho(args) -> int:
    cfg = _config(args)
    block = cfg.s_sip()
    rel = ortho.OrthoRelation(args.relation)
    x = _parse_vector(args.x)
    y = _parse_vector(args.y)
    result = ortho.relation_report(block, rel, x, y, cfg.tolerances.eq_tol)
    lam = "" if result.lam is None else f" lambda* = {_FMT % result.lam}"
    print(f"{args.relation}: {str(result.related).lower()} residual = {_FMT % result.residual}{lam}")
    return 0


def cmd_auerbach(args) -> int:
    cfg = _config(args)
    space = cfg.space()
    basis = ortho.minkowski_auerbach(space, Seed(cfg.seed), cfg.tolerances)
    print("Auerbach basis (rows):")
    for b in basis:
        print("  " + ",".join(_FMT % x for x in b))
    return 0


def cmd_tangent(args) -> int:
    cfg = _config(args)
    space = cfg.space()
    v = hyp.lift(space, _parse_vector(args.s))
    frame = hyp.tangent_frame(space, v)
    print(f"base point: {','.join(_FMT % x for x in v.vector)}")
    for u in frame.vectors:
        q = mink.product_plus(space, u, v.vector)
        cls = mink.classify(space, u, cfg.tolerances.class_tol)
        print(f"  {','.join(_FMT % x for x in u)} | [u,v]+ = {_FMT % q} | {cls.value}")
    return 0


def cmd_distance(args) -> int:
    cfg = _config(args)
    space = cfg.space()
    a = hyp.lift(space, _parse_vector(args.a_s))
    b = hyp.lift(space, _parse_vector(args.b_s))
    path, d = hyp.geodesic_path(space, a, b, cfg.nodes, tolerances=cfg.tolerances)
    mk = mink.product_plus(space, a.vector, b.vector)
    residual = abs(mk + float(np.cosh(d)))
    tag = "" if space.is_pseudo_euclidean else " (exploratory)"
    print(f"distance = {_FMT % d}  nodes = {cfg.nodes}")
    print(f"[a,b]+ = {_FMT % mk}")
    print(f"cosh residual = {_FMT % residual}{tag}")
    print("converged")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(hyp.path_to_csv(path))
        print(f"path: {args.out}")
    return 0


def cmd_verify(args) -> int:
    cfg = _config(args)
    results, rows = run_suites([args.suite], cfg)
    if getattr(args, "matrix", None):
        from .isometry import isometry_report, load_matrix_csv
        from .suites import CheckRow

        F = load_matrix_csv(args.matrix)
        rep = isometry_report(cfg.space(), F, Seed(cfg.seed), cfg.trials, cfg.tolerances)
        tol = cfg.tolerances.eq_tol
        rows = list(rows) + [
            CheckRow("isometry", "user_matrix.product", rep.product_residual <= tol, rep.product_residual),
            CheckRow("isometry", "user_matrix.adjoint", rep.adjoint_residual <= tol, rep.adjoint_residual),
            CheckRow("isometry", "user_matrix.pole", rep.pole_in_upper_sheet, rep.pole_square_residual),
        ]
        print(
            f"user matrix: product {_FMT % rep.product_residual}, adjoint {_FMT % rep.adjoint_residual}, "
            f"pole on upper sheet: {str(rep.pole_in_upper_sheet).lower()}"
        )
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(
            f"{status} {res.suite}: worst residual {_FMT % res.worst_residual}"
            + (f" witness {res.witness}" if not res.passed else "")
            + f" ({res.duration:.2f}s)"
        )
    with open(cfg.out, "w", encoding="utf-8") as fh:
        fh.write(rows_to_csv(rows))
    print(f"report: {cfg.out}")
    matrix_rows_pass = all(r.passed for r in rows)
    return 0 if all(r.passed for r in results) and matrix_rows_pass else 1


def cmd_counterexample(args) -> int:
    cfg = _config(args)
    plane = _SiipSpace.weighted_plane()
    u, v = np.array([1.0, 2.0]), np.array([1.0, 1.0])
    val = _siip(plane, u, v)
    squares = _siip(plane, u, u) * _siip(plane, v, v)
    print("Cauchy-Schwarz fails for the weighted plane product:")
    print(f"  [(1,2),(1,1)] = {_FMT % val} with [u,u][v,v] = {_FMT % squares}")
    print(f"  margin = {_FMT % (val ** 2 - squares)}")
    space = mink.max_norm_spacetime()
    pp = lambda a, b: mink.product_plus(space, a, b)
    basis = [np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.5])]
    witness = _cs_witness(pp, basis, Seed(cfg.seed), 2000, cfg.tolerances)
    if witness is None:
        print("max-norm space-time plane: no violation sampled")
        return 1
    wu, wv, margin = witness
    print("Cauchy-Schwarz fails on a positive subspace of the max-norm space-time:")
    print(f"  u = {','.join(_FMT % x for x in wu)}")
    print(f"  v = {','.join(_FMT % x for x in wv)}")
    print(f"  margin = {_FMT % margin}")
    flat = strict_convexity_witness(SipSpace.max_norm(2), Seed(cfg.seed), 2000, cfg.tolerances)
    if flat is not None:
        print("max norm is not strictly convex; equality witness:")
        print(f"  x = {','.join(_FMT % x for x in flat[0])}, y = {','.join(_FMT % x for x in flat[1])}")
    return 0


_COMMANDS = {
    "classify": cmd_classify,
    "product": cmd_product,
    "ortho": cmd_ortho,
    "auerbach": cmd_auerbach,
    "tangent": cmd_tangent,
    "distance": cmd_distance,
    "verify": cmd_verify,
    "counterexample": cmd_counterexample,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (ConvergenceError, NumericalError, PathError) as err:
        print(f"numerical failure: {err}", file=sys.stderr)
        return 3
    except SipminkError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def entry():
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
