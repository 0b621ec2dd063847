"""Command-line front end: ``sumprod <subcommand> ...``.

Data goes to stdout (or --out); diagnostics and timestamps go to stderr only.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import expsums, geometry, klein, sets
from .config import ConfigError, load_config
from .ensemble import (GENERATORS, IncompatibleError, generate_set, results_to_csv,
                       results_to_jsonl, run_ensemble, summary_to_jsonl)
from .harness import check_expsum_double, check_expsum_single, check_fourth_moment
from .prime_field import ModulusMismatchError, find_primitive_root

SET_OPS = {
    "sumset": (2, sets.sumset),
    "difference": (2, sets.difference_set),
    "product": (2, sets.product_set),
    "ratio": (2, sets.ratio_set),
    "a-plus-bc": (3, sets.compose_a_plus_bc),
}
COMPUTE_OPS = sorted(list(SET_OPS) + ["nfold", "energy", "energy-moment", "rep", "bilinear",
                                      "incidences", "hole", "katz-koester"])


def fmt_value(v) -> str:
    """Exact integers in full, reals with 12 significant digits."""
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, complex):
        return f"{v.real:.12g} {v.imag:+.12g}j"
    if isinstance(v, (float, np.floating)):
        if float(v).is_integer() and abs(v) < 2**53:
            return str(int(v))
        return f"{float(v):.12g}"
    return str(v)


def _log(msg: str) -> None:
    print(f"[{time.strftime('%Y-%m-%dT%H:%M:%S')}] {msg}", file=sys.stderr)


def _emit(text: str, out: str | None) -> None:
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _set_text(A: sets.ResidueSet) -> str:
    return "\n".join([f"# p={A.p}"] + [str(x) for x in A.elements]) + "\n"


def _load_all(paths, count: int | None = None):
    if count is not None and len(paths) != count:
        raise ValueError(f"expected {count} set file(s), got {len(paths)}")
    return [sets.load_set(path) for path in paths]


def _records_text(records: list[dict], fmt: str) -> str:
    if fmt == "jsonl":
        return "".join(json.dumps({k: v for k, v in r.items()}) + "\n" for r in records)
    keys = list(records[0])
    lines = [",".join(keys)]
    lines += [",".join(fmt_value(r[k]) for k in keys) for r in records]
    return "\n".join(lines) + "\n"


def cmd_gen_set(args) -> int:
    rng = np.random.default_rng(args.seed)
    pinned = args.kind == "subgroup" or (
        args.kind == "arithmetic_progression" and None not in (args.start, args.step))
    if not pinned and args.seed is None:
        _log("warning: no --seed given; output is not reproducible")
    A = generate_set(args.kind, args.p, args.size, rng, zero_free=args.zero_free,
                     start=args.start, step=args.step, ratio=args.ratio, cosets=args.cosets)
    _emit(_set_text(A), args.out)
    return 0


def cmd_compute(args) -> int:
    op = args.op
    if op == "hole":
        if args.p is None or args.N is None:
            raise ValueError("hole needs --p and --N")
        print(expsums.hole_size(args.p, args.a, args.N, args.g))
        return 0
    if op in SET_OPS:
        arity, func = SET_OPS[op]
        result = func(*_load_all(args.files, arity))
        _emit(_set_text(result), args.out)
        return 0
    if op == "nfold":
        (A,) = _load_all(args.files, 1)
        _emit(_set_text(sets.nfold_sum(A, args.n)), args.out)
        return 0
    if op == "katz-koester":
        (A,) = _load_all(args.files, 1)
        _emit(_set_text(sets.katz_koester_mult(A, args.s)), args.out)
        return 0
    if op == "energy":
        files = _load_all(args.files)
        if len(files) not in (1, 2):
            raise ValueError("energy takes one or two set files")
        value = sets.additive_energy(*files) if args.kind == "additive" else (
            sets.energy_moment(files[0], 2, "multiplicative"))
        print(fmt_value(value.value))
        return 0
    if op == "energy-moment":
        (A,) = _load_all(args.files, 1)
        print(fmt_value(sets.energy_moment(A, args.k, args.kind).value))
        return 0
    if op == "rep":
        A, B = _load_all(args.files, 2)
        r = sets.rep_function(A, B, args.law)
        records = [{"s": s, "r": r(s)} for s in r.support]
        _emit(_records_text(records, args.format) if records else "", args.out)
        return 0
    if op == "bilinear":
        print(sets.bilinear_solution_count(*_load_all(args.files, 3)))
        return 0
    if op == "incidences":
        arr = geometry.build_theorem2_arrangement(*_load_all(args.files, 3), budget=args.budget)
        print(geometry.count_incidences(arr))
        return 0
    raise ValueError(f"unknown op {op!r}")


def cmd_incidence(args) -> int:
    A, B, C = _load_all(args.files, 3)
    arr = geometry.build_theorem2_arrangement(A, B, C, budget=args.budget)
    incidences = geometry.count_incidences(arr)
    k = geometry.max_collinear_planes(arr)
    rhs = geometry.theorem1_rhs(arr.m, arr.n, k)
    record = {
        "p": arr.p, "m": arr.m, "n": arr.n,
        "incidences": incidences,
        "bilinear": sets.bilinear_solution_count(A, B, C),
        "k_planes": k,
        "k_points": geometry.max_collinear_points(arr),
        "rhs": rhs,
        "ratio": incidences / rhs,
    }
    if args.dump:
        geometry.write_arrangement_csv(arr, args.dump)
    _emit(_records_text([record], args.format), args.out)
    return 0


def cmd_klein_verify(args) -> int:
    t0 = time.perf_counter()
    sweep = klein.verify_intersection_laws(args.p)
    _log(f"klein sweep over PG(3,{args.p}) took {time.perf_counter() - t0:.2f}s")
    if args.out:
        klein.write_sweep_csv(sweep, args.out)
    record = {
        "p": sweep.p,
        "pairs": len(sweep.rows),
        "mixed_violations": sweep.mixed_violations,
        "same_type_pairs": sweep.same_type_pairs,
        "same_type_violations": sweep.same_type_violations,
        "quadric_violations": sweep.quadric_violations,
        "ok": sweep.ok,
    }
    sys.stdout.write(_records_text([record], args.format))
    return 0 if sweep.ok else 1


def cmd_expsum(args) -> int:
    p, g = args.p, args.g
    if args.kind == "single":
        res = check_expsum_single(p, args.N, args.a, g)
    elif args.kind == "double":
        res = check_expsum_double(p, args.X, args.Y, args.a, g)
    elif args.kind == "fourth":
        res = check_fourth_moment(p, args.N, g)
    else:
        raise ValueError(f"unknown expsum kind {args.kind!r}")
    g = g if g is not None else find_primitive_root(p).value
    records = [{"kind": args.kind, "p": p, "g": g, "claim": c.name, "lhs": c.lhs, "rhs": c.rhs,
                "ratio": c.ratio} for c in res.claims]
    _emit(_records_text(records, args.format), args.out)
    return 0


def cmd_verify(args) -> int:
    cfg = load_config(args.config)
    fmt = args.format_explicit or cfg.format
    all_results, all_summary = [], []
    failed = False
    for checker_id in cfg.checkers:
        t0 = time.perf_counter()
        report = run_ensemble(cfg.ensemble, checker_id, workers=cfg.workers,
                              constants=cfg.constants)
        _log(f"{checker_id}: {len(report.results)} trials in {time.perf_counter() - t0:.2f}s, "
             f"{report.exact_violations} exact violations, "
             f"{report.constant_violations} constant violations")
        all_results += report.results
        all_summary += report.summary
        failed = failed or report.failed
    data = results_to_jsonl(all_results) if fmt == "jsonl" else results_to_csv(all_results)
    out = args.out or cfg.csv_path
    _emit(data, str(out) if out else None)
    if cfg.summary_path:
        Path(cfg.summary_path).write_text(summary_to_jsonl(all_summary))
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    # Global flags are accepted before or after the subcommand.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS, help="output path (default stdout)")
    common.add_argument("--format", choices=("csv", "jsonl"), default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="sumprod", description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--out", default=None)
    parser.add_argument("--format", choices=("csv", "jsonl"), default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen-set", parents=[common], help="generate a set file")
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--kind", choices=GENERATORS, required=True)
    g.add_argument("--size", type=int, required=True)
    g.add_argument("--start", type=int)
    g.add_argument("--step", type=int)
    g.add_argument("--ratio", type=int)
    g.add_argument("--cosets", type=int, default=3)
    g.add_argument("--zero-free", action="store_true")
    g.set_defaults(func=cmd_gen_set)

    c = sub.add_parser("compute", parents=[common], help="one computation on set files")
    c.add_argument("op", choices=COMPUTE_OPS)
    c.add_argument("files", nargs="*")
    c.add_argument("--k", type=float, default=2)
    c.add_argument("--kind", choices=("additive", "multiplicative"), default="additive")
    c.add_argument("--law", choices=("sum", "difference", "product", "ratio"), default="sum")
    c.add_argument("--n", type=int, default=2)
    c.add_argument("--s", type=int, default=1)
    c.add_argument("--p", type=int)
    c.add_argument("--g", type=int)
    c.add_argument("--a", type=int, default=1)
    c.add_argument("--N", type=int)
    c.add_argument("--budget", type=int, default=geometry.DEFAULT_BUDGET)
    c.set_defaults(func=cmd_compute)

    i = sub.add_parser("incidence", parents=[common], help="A+BC point-plane arrangement stats")
    i.add_argument("files", nargs=3)
    i.add_argument("--budget", type=int, default=geometry.DEFAULT_BUDGET)
    i.add_argument("--dump", help="write the arrangement CSV here")
    i.set_defaults(func=cmd_incidence)

    k = sub.add_parser("klein-verify", parents=[common], help="exhaustive alpha/beta plane check")
    k.add_argument("--p", type=int, default=3)
    k.set_defaults(func=cmd_klein_verify)

    e = sub.add_parser("expsum", parents=[common], help="exponential sums over g^n")
    e.add_argument("kind", choices=("single", "double", "fourth"))
    e.add_argument("--p", type=int, required=True)
    e.add_argument("--g", type=int)
    e.add_argument("--a", type=int, default=1)
    e.add_argument("--N", type=int)
    e.add_argument("--X", type=int)
    e.add_argument("--Y", type=int)
    e.set_defaults(func=cmd_expsum)

    v = sub.add_parser("verify", parents=[common], help="run a configured ensemble")
    v.add_argument("config")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    raw = sys.argv[1:] if argv is None else argv
    args = parser.parse_args(raw)
    # remember whether --format was given so a config's format is not overridden by a default
    args.format_explicit = args.format
    args.format = args.format or "csv"
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"sumprod: config error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError, ModulusMismatchError, IncompatibleError,
            OSError, MemoryError) as exc:
        print(f"sumprod: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
