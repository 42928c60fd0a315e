"""Command-line front end.

Exit codes: 0 all pass, 1 any FAILED record, 2 configuration error.
All numeric I/O is exact rational text p/q; decimals are rejected.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import symmetry
from .core import rewrite_system
from .expr import parse_expr
from .freealg import AlgebraError, format_poly
from .representation import (
    OperatorContext,
    build_operator,
    default_param_sets,
    triangle_states,
    validate_params,
)
from .verifier import (
    ConfigError,
    SuiteConfig,
    SUITE_NAMES,
    emit_report,
    jacobi_suite,
    params_from_config,
    parse_config,
    relation_catalog,
    run_suite,
)


def _load_params(path: str | None, window_flag: int | None):
    """Parameter sets for a run: from a config file, or the built-in three."""
    if path is None:
        return default_param_sets(window_flag or 12)
    with open(path) as fh:
        cfg = parse_config(fh.read())
    params = params_from_config(cfg)
    # an explicit flag wins; otherwise the file's window, then a default
    window = window_flag or cfg.get("window") or 12
    return (("config", params, window),)


def cmd_verify(args) -> int:
    suites = tuple(SUITE_NAMES) if args.suites == "all" \
        else tuple(s.strip() for s in args.suites.split(","))
    param_sets = ()
    if args.rank <= 4:
        param_sets = _load_params(args.params, args.window)
    cfg = SuiteConfig(rank=args.rank, param_sets=param_sets, suites=suites,
                      fmt=args.format)
    report = run_suite(cfg)
    sys.stdout.buffer.write(emit_report(report, args.format))
    return report.exit_code


def cmd_reduce(args) -> int:
    poly = parse_expr(args.expr, rank=args.rank)
    normal = rewrite_system(args.rank).reduce(poly)
    print(format_poly(normal))
    return 0


def cmd_list_relations(args) -> int:
    for row in relation_catalog(args.rank):
        print(f"{row['family']:20s} {row['payload']:16s} {row['anchor']}")
    return 0


def cmd_jacobi(args) -> int:
    report = jacobi_suite(args.rank)
    sys.stdout.buffer.write(emit_report(report, args.format))
    return report.exit_code


def cmd_symmetry(args) -> int:
    if args.what == "closure":
        print(f"pentagon action alone: order {symmetry.dihedral_group_order()}")
        print(f"index relabeling alone: order {symmetry.permutation_group_order()}")
        print(f"combined closure: order {symmetry.closure_order()}")
        print("generators: one rotation, one reflection, and the three"
              " adjacent index swaps")
        return 0
    poly = parse_expr(args.generator, rank=4)
    (word,) = poly.terms
    if len(word) != 1:
        raise AlgebraError("orbit wants a single generator symbol")
    for name in symmetry.orbit(word[0], args.group):
        print(name)
    return 0


def cmd_rep_dump(args) -> int:
    (_, params, window) = _load_params(args.params, args.window)[0]
    errors = validate_params(params, window)
    if errors:
        raise ConfigError("; ".join(errors))
    op = build_operator(args.gen, params, window)
    for (t, s) in triangle_states(window):
        for (tt, ss), q in sorted(op.column((t, s)).items()):
            print(f"{t} {s} -> {tt} {ss}  {q}")
    return 0


def cmd_rep_apply(args) -> int:
    (_, params, window) = _load_params(args.params, args.window)[0]
    ctx = OperatorContext(params, window)
    op = ctx.eval(parse_expr(args.expr, rank=4))
    t, s = (int(x) for x in args.state.split(","))
    if (t, s) in op.leaky:
        print(f"state |{t},{s}> is unreliable at window {window}; widen it",
              file=sys.stderr)
        return 1
    combo = op.column((t, s))
    if not combo:
        print("0")
        return 0
    for (tt, ss), q in sorted(combo.items()):
        print(f"{tt} {ss}  {q}")
    return 0


def cmd_rep_probe(args) -> int:
    """Scan for parameter-dependent zeros of the raising/lowering factors
    (possible invariant-subspace boundaries).  Informational only."""
    (_, params, window) = _load_params(args.params, args.window)[0]
    hits = []
    for t in range(window + 1):
        if params.N + 1 - t == 0 or params.N + 2 * params.c2 - t == 0:
            hits.append(f"west factor vanishes for every s at t={t}")
    for line in hits or ["no factor zeros in this window"]:
        print(line)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="racah",
        description="construct and mechanically verify the subset-indexed "
                    "quadratic algebras and their lattice representation")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--rank", type=int, default=4)
    v.add_argument("--params", help="flat key=value parameter file")
    v.add_argument("--window", type=int)
    v.add_argument("--suites", default="all",
                   help="comma list or 'all': " + ", ".join(SUITE_NAMES))
    v.add_argument("--format", choices=("json", "human"), default="json")
    v.set_defaults(fn=cmd_verify)

    r = sub.add_parser("reduce", help="normal form of an expression")
    r.add_argument("expr")
    r.add_argument("--rank", type=int, default=4)
    r.set_defaults(fn=cmd_reduce)

    lr = sub.add_parser("list-relations", help="the machine-readable catalog")
    lr.add_argument("--rank", type=int, default=4)
    lr.set_defaults(fn=cmd_list_relations)

    j = sub.add_parser("jacobi", help="double-commutator suite")
    j.add_argument("--rank", type=int, default=4)
    j.add_argument("--format", choices=("json", "human"), default="human")
    j.set_defaults(fn=cmd_jacobi)

    s = sub.add_parser("symmetry", help="group actions and closure")
    s.add_argument("what", choices=("closure", "orbit"))
    s.add_argument("generator", nargs="?",
                   help="generator symbol for 'orbit', e.g. C12 or Om0")
    s.add_argument("--group", choices=("d5", "p4", "both"), default="both")
    s.set_defaults(fn=cmd_symmetry)

    rp = sub.add_parser("rep", help="representation inspection")
    rsub = rp.add_subparsers(dest="repcmd", required=True)
    d = rsub.add_parser("dump", help="nonzero entries of one generator")
    d.add_argument("--gen", required=True)
    d.add_argument("--window", type=int)
    d.add_argument("--params")
    d.set_defaults(fn=cmd_rep_dump)
    a = rsub.add_parser("apply", help="apply an expression to a state")
    a.add_argument("--expr", required=True)
    a.add_argument("--state", required=True, help="t,s")
    a.add_argument("--window", type=int)
    a.add_argument("--params")
    a.set_defaults(fn=cmd_rep_apply)
    pr = rsub.add_parser("probe", help="scan for factor zeros (informational)")
    pr.add_argument("--window", type=int)
    pr.add_argument("--params")
    pr.set_defaults(fn=cmd_rep_probe)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except BrokenPipeError:
        return 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (AlgebraError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
