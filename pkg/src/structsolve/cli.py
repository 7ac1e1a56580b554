"""Command-line front end: solve single systems, inspect factorizations and
growth, and run the delta-sweep experiments.

System file format (JSON): either

    {"toeplitz": {"n": 4, "a": [...2n-1 coefficients...]}, "b": [...]}

or

    {"cauchy": {"t": [...], "s": [...], "phi": [[...]], "psi": [[...]]},
     "b": [...]}

where every number is either a real scalar or an [re, im] pair.  ``b`` is
required by ``solve`` and optional elsewhere.

Exit codes: 0 success, 2 malformed input, 3 singular system, 4 node
collision.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .cauchy_gko import PivotStrategy, gko_factor, solve_with_factors
from .core import (
    CauchyNodes,
    GeneratorPair,
    NodeCollisionError,
    SingularMatrixError,
    ToeplitzCoeffs,
    materialize_cauchy,
)
from .diagnostics import (
    BackwardErrorReport,
    backward_error_cauchy,
    backward_error_toeplitz,
    growth_report,
    solve_quality,
)
from .oracle import dense_solve
from .sweep import SweepConfig, records_to_csv, run_sweep
from .toeplitz import to_cauchy_generators, toeplitz_factor, toeplitz_generators, toeplitz_solve

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_SINGULAR = 3
EXIT_COLLISION = 4

_STRATEGY_FLAGS = {"none": "none", "partial": "partial_row", "row1col1": "row1_col1"}


class InputError(ValueError):
    pass


def _scalar(x):
    if isinstance(x, (int, float)):
        return complex(x)
    if (
        isinstance(x, (list, tuple))
        and len(x) == 2
        and all(isinstance(v, (int, float)) for v in x)
    ):
        return complex(x[0], x[1])
    raise InputError(f"expected a number or [re, im] pair, got {x!r}")


def _vector(data, name):
    if not isinstance(data, list) or not data:
        raise InputError(f"{name!r} must be a nonempty list")
    return np.array([_scalar(x) for x in data])


def _matrix(data, name):
    if not isinstance(data, list) or not data or not isinstance(data[0], list):
        raise InputError(f"{name!r} must be a list of rows")
    rows = [_vector(r, name) for r in data]
    if len({r.size for r in rows}) != 1:
        raise InputError(f"rows of {name!r} have inconsistent lengths")
    return np.stack(rows)


def _encode(obj):
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.ndarray):
        return [_encode(x) for x in obj.tolist()]
    if isinstance(obj, list):
        return [_encode(x) for x in obj]
    if isinstance(obj, dict):
        return {k: _encode(v) for k, v in obj.items()}
    if isinstance(obj, float) and not np.isfinite(obj):
        return repr(obj)
    return obj


def _load_system(path):
    """Returns (kind, payload, b) with payload ready for factoring."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read system file {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("top-level JSON value must be an object")
    b = _vector(doc["b"], "b") if "b" in doc else None
    if "toeplitz" in doc:
        spec = doc["toeplitz"]
        if not isinstance(spec, dict):
            raise InputError("'toeplitz' must be an object")
        a = _vector(spec.get("a"), "a")
        try:
            coeffs = ToeplitzCoeffs(a=a)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        if "n" in spec and spec["n"] != coeffs.n:
            raise InputError(
                f"declared n={spec['n']} but {a.size} coefficients imply n={coeffs.n}"
            )
        return "toeplitz", coeffs, b
    if "cauchy" in doc:
        spec = doc["cauchy"]
        if not isinstance(spec, dict):
            raise InputError("'cauchy' must be an object")
        try:
            nodes = CauchyNodes(t=_vector(spec.get("t"), "t"), s=_vector(spec.get("s"), "s"))
            gen = GeneratorPair(
                phi=_matrix(spec.get("phi"), "phi"), psi=_matrix(spec.get("psi"), "psi")
            )
        except NodeCollisionError:
            raise
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        if gen.n != nodes.n:
            raise InputError(f"generators order {gen.n} but nodes order {nodes.n}")
        return "cauchy", (gen, nodes), b
    raise InputError("system file needs a 'toeplitz' or 'cauchy' entry")


def _write(payload: str, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _default_seed() -> int:
    return int(os.environ.get("STRUCTSOLVE_SEED", "0"))


def _cmd_solve(args) -> int:
    kind, payload, b = _load_system(args.input)
    if b is None:
        raise InputError("'solve' needs a right-hand side 'b' in the system file")
    strategy = PivotStrategy.coerce(_STRATEGY_FLAGS[args.strategy])
    if kind == "toeplitz":
        f = toeplitz_factor(payload, strategy)
        x = toeplitz_solve(f, b)
        report = solve_quality(payload, b, x)
    else:
        gen, nodes = payload
        f = gko_factor(gen, nodes, strategy)
        x = solve_with_factors(f, b)
        R = materialize_cauchy(gen, nodes)
        report = BackwardErrorReport(
            residual=float(np.linalg.norm(R @ x - b) / np.linalg.norm(b)),
            forward_err=float(
                np.linalg.norm(x - dense_solve(R, b)) / np.linalg.norm(dense_solve(R, b))
            ),
        )
    doc = {"x": _encode(x), "report": _encode(report.to_dict())}
    _write(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK


def _factor_any(kind, payload, strategy):
    if kind == "toeplitz":
        gen, nodes = to_cauchy_generators(toeplitz_generators(payload))
    else:
        gen, nodes = payload
    return gen, nodes, gko_factor(gen, nodes, strategy)


def _cmd_factor(args) -> int:
    kind, payload, _ = _load_system(args.input)
    strategy = PivotStrategy.coerce(_STRATEGY_FLAGS[args.strategy])
    gen, nodes, f = _factor_any(kind, payload, strategy)
    err = backward_error_cauchy(gen, nodes, f)
    doc = {
        "n": f.n,
        "strategy": strategy.value,
        "row_perm": f.row_perm.idx.tolist(),
        "col_perm": f.col_perm.idx.tolist(),
        "pivot_index": f.trace.pivot_index.tolist(),
        "pivot_is_col": f.trace.pivot_is_col.tolist(),
        "pivot_magnitude": f.trace.pivot_magnitude.tolist(),
        "L": _encode(f.L),
        "U": _encode(f.U),
        "reconstruction": _encode(err.to_dict()),
    }
    if kind == "toeplitz":
        tf = toeplitz_factor(payload, strategy)
        doc["toeplitz_backward"] = _encode(backward_error_toeplitz(payload, tf).to_dict())
    _write(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK


def _cmd_growth(args) -> int:
    kind, payload, _ = _load_system(args.input)
    strategy = PivotStrategy.coerce(_STRATEGY_FLAGS[args.strategy])
    gen, nodes, f = _factor_any(kind, payload, strategy)
    report = growth_report(f.trace, f, nodes)
    _write(json.dumps(_encode(report.to_dict()), indent=2) + "\n", args.out)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    strategies = args.strategy or ["partial", "row1col1"]
    config = SweepConfig(
        n=args.n,
        delta_exponents=tuple(range(args.delta_exp_min, args.delta_exp_max + 1)),
        strategies=tuple(_STRATEGY_FLAGS[s] for s in strategies),
        rhs=args.rhs,
        seed=args.seed if args.seed is not None else _default_seed(),
    )
    result = run_sweep(config)
    if args.format == "csv":
        _write(records_to_csv(result.records), args.out)
        if args.summary_out:
            _write(json.dumps(_encode(result.summary), indent=2) + "\n", args.summary_out)
    else:
        doc = {
            "records": [_encode(r.to_dict()) for r in result.records],
            "summary": _encode(result.summary),
        }
        _write(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK if result.all_ok else EXIT_SINGULAR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="structsolve",
        description="Fast structured solvers for Cauchy-type and Toeplitz systems "
        "with growth diagnostics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, needs_input=True):
        if needs_input:
            p.add_argument("input", help="system JSON file")
        p.add_argument(
            "--strategy",
            choices=sorted(_STRATEGY_FLAGS),
            default="partial",
            help="pivoting strategy (default: partial)",
        )
        p.add_argument("--out", default=None, help="output path (default: stdout)")

    p_solve = sub.add_parser("solve", help="factor and solve one system")
    add_common(p_solve)
    p_solve.set_defaults(func=_cmd_solve)

    p_factor = sub.add_parser("factor", help="emit the P^T L U P'^T factorization")
    add_common(p_factor)
    p_factor.set_defaults(func=_cmd_factor)

    p_growth = sub.add_parser("growth", help="emit the generator-growth report")
    add_common(p_growth)
    p_growth.set_defaults(func=_cmd_growth)

    p_sweep = sub.add_parser("sweep", help="run the adversarial delta sweep")
    p_sweep.add_argument("--n", type=int, default=8, help="matrix order (even, default 8)")
    p_sweep.add_argument("--delta-exp-min", type=int, default=2)
    p_sweep.add_argument("--delta-exp-max", type=int, default=16)
    p_sweep.add_argument(
        "--strategy",
        action="append",
        choices=sorted(_STRATEGY_FLAGS),
        help="strategy to sweep; repeatable (default: partial and row1col1)",
    )
    p_sweep.add_argument("--rhs", choices=["ones", "random"], default="ones")
    p_sweep.add_argument("--seed", type=int, default=None,
                         help="seed for random rhs (default: $STRUCTSOLVE_SEED or 0)")
    p_sweep.add_argument("--format", choices=["csv", "json"], default="csv")
    p_sweep.add_argument("--out", default=None)
    p_sweep.add_argument("--summary-out", default=None,
                         help="also write the JSON summary here (csv format only)")
    p_sweep.set_defaults(func=_cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"structsolve: input error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NodeCollisionError as exc:
        print(f"structsolve: node collision: {exc}", file=sys.stderr)
        return EXIT_COLLISION
    except SingularMatrixError as exc:
        print(f"structsolve: singular system: {exc}", file=sys.stderr)
        return EXIT_SINGULAR


if __name__ == "__main__":
    sys.exit(main())
