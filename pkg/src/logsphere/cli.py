"""Command-line front end: ``logsphere <subcommand> ...``.

Every JSON document written (stdout with ``--json`` or files via ``--out``)
carries a ``meta`` header with the tool version, the command line and the
RNG seed, so runs can be reproduced from their output alone.
"""
import argparse
import json
import math
import os
import sys

import numpy as np

from . import __version__
from . import formulas
from .exceptions import LogSphereError
from .generators import CATALOG_NAMES, apex_over_base, named, ortho_simplexes, regular_simplex, three_simplex
from .geometry import Configuration, align, log_energy, log_product, read_configuration, write_configuration
from .optimizer import OptimizeSettings, minimize, verify_conjecture, verify_monotonicity
from .stationarity import (
    DEFAULT_RANK_TOL,
    DEFAULT_STATIONARY_TOL,
    check_stationary,
    coefficient_matrix,
    rank_condition_holds,
    scalar_equation_report,
)
from .structure import DEFAULT_TOL, classify_trichotomy


class UsageError(Exception):
    pass


def _meta(args, argv):
    params = {k: v for k, v in vars(args).items() if k not in ("func",)}
    return {
        "tool": "logsphere",
        "version": __version__,
        "command": ["logsphere", *argv],
        "params": params,
        "rng_seed": getattr(args, "rng_seed", None),
    }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_jsonable(v) for v in items]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else repr(v)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _table(rows):
    rows = [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows)


def _load(path, args):
    if os.path.exists(path):
        return read_configuration(path, renormalize=args.renormalize)
    if path in CATALOG_NAMES:
        return named(path)
    raise FileNotFoundError(f"{path!r} is neither a file nor a catalog name")


def _fmt(v):
    if v is None:
        return "-"
    if isinstance(v, float):
        return f"{v:.15g}"
    return str(v)


# subcommand handlers return (payload, text)

def cmd_generate(args):
    kind, params = args.kind, args.params
    ints = lambda: [int(p) for p in params]
    if kind == "simplex":
        (n,) = ints()
        config = regular_simplex(n, args.d if args.d is not None else n - 1)
    elif kind == "ortho":
        sizes = ints()
        d = args.d if args.d is not None else sum(max(s - 1, 1) for s in sizes)
        config = ortho_simplexes(sizes, d)
    elif kind == "three":
        config = three_simplex(*ints())
    elif kind == "apex":
        if len(params) != 1:
            raise UsageError("apex takes one base (catalog name or configuration file)")
        base = _load(params[0], args)
        config = apex_over_base(base, args.d if args.d is not None else base.d + 1)
    elif kind == "named":
        if len(params) != 1:
            raise UsageError(f"named takes one of: {', '.join(CATALOG_NAMES)}")
        config = named(params[0])
    else:
        raise UsageError(f"unknown generator kind {kind!r}")
    payload = {"configuration": config.to_dict()}
    text = f"generated n={config.n} d={config.d}"
    if args.out:
        write_configuration(config, args.out, meta=args._meta)
        text += f" -> {args.out}"
    else:
        text += "\n" + "\n".join(" ".join(f"{v: .17g}" for v in row) for row in config.points)
    return payload, text


def cmd_energy(args):
    config = _load(args.config, args)
    rep = log_energy(config, args.s or ())
    rows = [["quantity", "value"], ["n", config.n], ["d", config.d],
            ["log_product", _fmt(rep.log_product)], ["product", _fmt(rep.product)],
            ["log_energy", _fmt(rep.log_energy)]]
    rows += [[f"riesz_s={s:g}", _fmt(v)] for s, v in rep.riesz.items()]
    return {"energy": rep.to_dict()}, _table(rows)


def cmd_check_stationary(args):
    config = _load(args.config, args)
    rep = check_stationary(config, args.tol)
    rows = [["vertex", "force_residual", "sum_residual"]]
    rows += [[i, f"{f:.3e}", f"{s:.3e}"] for i, (f, s) in enumerate(zip(rep.force_residuals, rep.sum_residuals))]
    text = _table(rows) + f"\nmass_norm {rep.mass_norm:.3e}\nstationary {rep.is_stationary} (tol {rep.tolerance:g})"
    return {"stationarity": rep.to_dict()}, text


def cmd_classify(args):
    config = _load(args.config, args)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        v = classify_trichotomy(config, args.tol)
    sizes = v.partition.sizes if v.partition is not None else None
    text = _table([
        ["case", "{" + ",".join(sorted(v.case_labels)) + "}"],
        ["classes", v.partition.classes if v.partition is not None else "inconsistent"],
        ["class_sizes", sizes],
        ["span_dimension", v.span_dimension],
        ["apex_vertices", v.apex_vertices],
        ["stationary", v.is_stationary],
        ["advisory", v.advisory],
    ])
    return {"verdict": v.to_dict()}, text


def cmd_matrix_rank(args):
    config = _load(args.config, args)
    import warnings

    poles = range(config.n) if args.pole is None else [args.pole]
    entries, rows = [], [["pole", "rank", "N-d", "holds", "gap", "singular_values"]]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for p in poles:
            data = coefficient_matrix(config, p, rank_tol=args.rank_tol)
            k = config.n - config.d
            gap = data.gap(k) if 1 <= k < len(data.singular_values) else None
            holds = rank_condition_holds(data, config.n, config.d)
            entry = {"coefficient_matrix": data.to_dict(), "rank_condition_holds": holds, "gap": gap}
            if config.n == config.d + 2:
                entry["scalar_equation"] = scalar_equation_report(config, p).to_dict()
            entries.append(entry)
            rows.append([p, data.numerical_rank, k, holds, _fmt(gap),
                         " ".join(f"{s:.3e}" for s in data.singular_values)])
    return {"poles": entries}, _table(rows)


def _settings(args):
    return OptimizeSettings(
        max_iters=args.max_iters,
        grad_tol=args.grad_tol,
        seeds=args.seeds,
        rng_seed=args.rng_seed,
        s_exponent=args.s,
    )


def cmd_optimize(args):
    result = minimize(args.n, args.d, _settings(args))
    if args.out:
        write_configuration(result.best, args.out, meta=args._meta)
    rows = [["basin_energy", "count", "seeds"]]
    rows += [[_fmt(b["energy"]), b["count"], ",".join(map(str, b["seeds"][:10]))] for b in result.basin_histogram]
    text = (f"best log_product {result.best_log_product:.15g} (product {_fmt(math.exp(result.best_log_product)) if result.best_log_product < 709 else '-'})\n"
            f"converged {result.n_converged}/{len(result.per_seed)}\n" + _table(rows))
    return {"result": result.to_dict()}, text


_ORACLES = {
    "simplex": lambda n: regular_simplex(n, n - 1),
    "conjecture": lambda d: ortho_simplexes([d // 2 + 1, (d + 1) // 2 + 1], d),
    "square_base": lambda d: apex_over_base(ortho_simplexes([(d - 1) // 2 + 1, d // 2 + 1], d - 1), d),
    "two_simplex": lambda k, l: ortho_simplexes([k, l], max(k - 1, 1) + max(l - 1, 1)),
    "three_simplex": three_simplex,
}


def cmd_formula(args):
    params = [int(p) for p in args.params]
    res = formulas.evaluate(args.id, *params)
    payload = {"formula_id": res.formula_id, "params": list(res.params), "log_value": res.log_value, "value": res.value}
    rows = [["formula", args.id], ["params", params], ["log_value", _fmt(res.log_value)], ["value", _fmt(res.value)]]
    oracle = _ORACLES.get(args.id)
    if oracle is not None:
        geo = log_product(oracle(*params))
        payload["geometric_log_value"] = geo
        payload["difference"] = res.log_value - geo
        rows += [["geometric_log_value", _fmt(geo)], ["difference", f"{res.log_value - geo:.3e}"]]
    return payload, _table(rows)


def cmd_verify_conjecture(args):
    rep = verify_conjecture(args.d, _settings(args))
    if args.out:
        write_configuration(rep.result.best, args.out, meta=args._meta)
    d = rep.to_dict()
    text = _table([[k, _fmt(v)] for k, v in d.items()])
    return {"conjecture": d}, text


def cmd_verify_monotonicity(args):
    rep = verify_monotonicity(args.n, args.d_max, _settings(args), margin=args.margin)
    rows = [["d", "best_log_product"]] + [[d, _fmt(v)] for d, v in zip(rep.dims, rep.log_products)]
    text = _table(rows) + (f"\nstrictly_increasing (d < N) {rep.strictly_increasing}"
                           f"\nplateau at simplex product {rep.plateau_value:.15g}: {rep.plateau_holds}")
    return {"monotonicity": rep.to_dict()}, text


def cmd_compare(args):
    a, b = _load(args.a, args), _load(args.b, args)
    al = align(a, b)
    ea, eb = log_energy(a), log_energy(b)
    payload = {"rotation_distance": al.distance, "exact_search": al.exact,
               "permutation": al.permutation.tolist(), "a": ea.to_dict(), "b": eb.to_dict()}
    text = _table([
        ["", "a", "b"],
        ["log_product", _fmt(ea.log_product), _fmt(eb.log_product)],
        ["log_energy", _fmt(ea.log_energy), _fmt(eb.log_energy)],
    ]) + f"\nrotation_distance {al.distance:.3e} ({'exact' if al.exact else 'heuristic'} relabeling search)"
    return payload, text


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="write pure JSON to stdout")
    common.add_argument("--renormalize", action="store_true", help="accept near-unit input rows and project them")

    opt = argparse.ArgumentParser(add_help=False)
    opt.add_argument("--seeds", type=int, default=50)
    opt.add_argument("--rng-seed", type=int, default=1)
    opt.add_argument("--grad-tol", type=float, default=1e-9)
    opt.add_argument("--max-iters", type=int, default=20000)
    opt.add_argument("--s", type=float, default=None, help="Riesz exponent; omit for the log energy")

    parser = argparse.ArgumentParser(prog="logsphere", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"logsphere {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", parents=[common], help="build a closed-form configuration")
    p.add_argument("kind", choices=["simplex", "ortho", "three", "apex", "named"])
    p.add_argument("params", nargs="*")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("energy", parents=[common], help="log product, log energy, Riesz energies")
    p.add_argument("config")
    p.add_argument("--s", type=float, action="append", help="Riesz exponent (repeatable)")
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("check-stationary", parents=[common], help="force balance residuals")
    p.add_argument("config")
    p.add_argument("--tol", type=float, default=DEFAULT_STATIONARY_TOL)
    p.set_defaults(func=cmd_check_stationary)

    p = sub.add_parser("classify", parents=[common], help="mirror classes and trichotomy labels")
    p.add_argument("config")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("matrix-rank", parents=[common], help="coefficient matrix rank per pole")
    p.add_argument("config")
    p.add_argument("--pole", type=int, default=None)
    p.add_argument("--rank-tol", type=float, default=DEFAULT_RANK_TOL)
    p.set_defaults(func=cmd_matrix_rank)

    p = sub.add_parser("optimize", parents=[common, opt], help="multistart energy minimization")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("formula", parents=[common], help="closed-form log products")
    p.add_argument("id", choices=sorted(formulas.FORMULAS))
    p.add_argument("params", nargs="+")
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("verify-conjecture", parents=[common, opt], help="optimize d+2 points and compare")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify_conjecture)

    p = sub.add_parser("verify-monotonicity", parents=[common, opt], help="best products across dimensions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d-max", type=int, required=True)
    p.add_argument("--margin", type=float, default=0.0)
    p.set_defaults(func=cmd_verify_monotonicity)

    p = sub.add_parser("compare", parents=[common], help="rotation distance and energies of two configurations")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    meta = _meta(args, argv)
    args._meta = meta
    try:
        payload, text = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (LogSphereError, ValueError, OSError, json.JSONDecodeError) as exc:
        err = {"meta": meta, "error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(_jsonable(err)), file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps(_jsonable({"meta": meta, **payload}), indent=1))
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
