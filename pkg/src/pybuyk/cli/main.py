"""
Command line interface.

Exit status is 0 on success, 1 when a verified bound or postcondition fails
(the counterexample is printed) and 2 on usage, file or precondition errors.
"""
import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence

from pybuyk import __version__
from pybuyk.benchmarks.chain import revenue_chain
from pybuyk.benchmarks.menu_size import menu_size_revenue_bound
from pybuyk.benchmarks.optimal import optimal_buy_one
from pybuyk.benchmarks.posted import brev, srev
from pybuyk.buyer.adaptive import verify_adaptive_buyk_ic
from pybuyk.buyer.ic import verify_buyk_ic
from pybuyk.cli.io import (
    InstanceFile,
    InstanceFileError,
    load_instance,
    save_instance,
)
from pybuyk.constructions.coverfree import (
    greedy_coverfree,
    kautz_singleton,
    maximum_coverfree,
    verify_coverfree,
)
from pybuyk.constructions.instances import coffee_shop_instance, srev_gap_instance
from pybuyk.constructions.lowerbound import lowerbound_instance
from pybuyk.constructions.surgery import upper_bound_pipeline
from pybuyk.menugap.gap import menugap, prune_nonpositive
from pybuyk.reporting.report import reports_dataframe, write_report
from pybuyk.utils.config import EnumerationConfig, ParallelConfig, PipelineConfig
from pybuyk.utils.errors import PostconditionError, PreconditionError
from pybuyk.utils.numeric import approx, as_rational, format_rational

__all__ = ["main", "make_parser"]

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(message)s"

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


def _fmt(x: Fraction) -> str:
    return f"{format_rational(x)} (~{approx(x)})"


def _vec(v: Sequence[Fraction]) -> str:
    return "(" + ", ".join(format_rational(x) for x in v) + ")"


def _enumeration_config(args: argparse.Namespace) -> EnumerationConfig:
    return EnumerationConfig(
        max_adaptive_items=args.max_adaptive_items,
        max_multisets=args.max_multisets,
        max_coverfree_ground=args.max_coverfree_ground,
        max_coverfree_tuples=args.max_coverfree_tuples,
        max_lp_variables=args.max_lp_variables,
    )


def _parallel_config(args: argparse.Namespace) -> ParallelConfig:
    return ParallelConfig(backend="joblib" if args.n_jobs != 1 else "sequential")


def cmd_analyze(args: argparse.Namespace) -> int:
    config = _enumeration_config(args)
    instance = load_instance(args.instance)
    dist, k = instance.dist, args.k
    print(f"BRev = {_fmt(brev(dist).value)}")
    print(f"SRev = {_fmt(srev(dist).value)}")
    print(f"OptBuy1 = {_fmt(optimal_buy_one(dist, config=config).value)}")

    status = EXIT_OK
    for m, menu in enumerate(instance.menus or ()):
        prefix = f"menu {m}:"
        verdict = verify_buyk_ic(
            menu,
            dist,
            k,
            config=config,
            parallel_config=_parallel_config(args),
            n_jobs=args.n_jobs,
        )
        check = menu_size_revenue_bound(dist, menu, k, config=config)
        print(f"{prefix} buy-{k} revenue = {_fmt(check.revenue)}")
        print(f"{prefix} IC = {str(verdict.ic).lower()}")
        for w in verdict.witnesses:
            assert w.multiset is not None and w.payment is not None
            print(
                f"  witness type {_vec(w.valuation)}: single utility "
                f"{format_rational(w.single_utility)}, buys {list(w.multiset)} "
                f"paying {format_rational(w.payment)} for utility "
                f"{format_rational(w.multiset_utility)}"
            )
        if instance.n <= config.max_adaptive_items:
            adaptive = verify_adaptive_buyk_ic(menu, dist, k, config=config)
            print(f"{prefix} adaptive IC = {str(adaptive.ic).lower()}")
        print(
            f"{prefix} size bound {check.menu_size} * BRev = "
            f"{format_rational(check.bound)} >= revenue: {str(check.holds).lower()}"
        )
        if k == 1 and not check.holds:
            print(f"{prefix} menu-size bound violated")
            status = EXIT_FAILED
        chain = revenue_chain(dist, menu, k, config=config)
        print(f"{prefix} revenue chain holds: {str(chain.holds).lower()}")
        if not chain.holds:
            print(f"  counterexample: {chain}")
            status = EXIT_FAILED
        if args.pipeline:
            pipeline = PipelineConfig(
                c=None if args.c is None else as_rational(args.c),
                delta=as_rational(args.delta),
                base=args.base,
            )
            trace = upper_bound_pipeline(dist, menu, k, pipeline=pipeline, config=config)
            for stage in trace.stages:
                print(f"  {stage.name}: {_fmt(stage.value)}")
            print(
                f"{prefix} surgery bound {format_rational(trace.bound or 0)} <= "
                f"{format_rational(trace.menugap)}: {str(trace.holds).lower()}"
            )
            if verdict.ic and not trace.holds:
                print(f"  counterexample: {trace}")
                status = EXIT_FAILED
    return status


def cmd_menugap(args: argparse.Namespace) -> int:
    config = _enumeration_config(args)
    instance = load_instance(args.instance)
    if instance.sequences is None:
        raise InstanceFileError("sequences", "the instance has no sequences")
    pair = instance.sequences
    if args.prune:
        pair = prune_nonpositive(pair, args.k, config=config)
        print(f"kept {len(pair)} of {len(instance.sequences)} pairs")
    report = menugap(pair, args.k, config=config)
    for e in report.entries:
        print(
            f"i={e.index}: gap {format_rational(e.gap)}, witness {list(e.witness)}, "
            f"normalized {_fmt(e.normalized)}"
        )
    print(f"total = {_fmt(report.total)}")
    return EXIT_OK


def cmd_gen_lowerbound(args: argparse.Namespace) -> int:
    config = _enumeration_config(args)
    method = "kautz_singleton" if args.method == "ks" else args.method
    instance = lowerbound_instance(
        args.n, args.k, method, q=args.q, m=args.m, config=config  # type: ignore
    )

    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    save_instance(
        InstanceFile(
            args.n, instance.dist, (instance.menu,), instance.sequences
        ),
        out / "instance.json",
    )
    r = instance.report
    assert r.ratio_bound is not None
    verdict = verify_buyk_ic(instance.menu, instance.dist, args.k, config=config)
    document = {
        "n": r.n,
        "k": r.k,
        "family_size": r.family_size,
        "ic": verdict.ic,
        "brev": format_rational(r.brev),
        "buyk_revenue": format_rational(r.buyk_revenue),
        "menugap": format_rational(r.menugap),
        "ratio": format_rational(r.ratio),
        "ratio_bound": format_rational(r.ratio_bound),
        "tail_masses": [format_rational(t) for t in r.tail_masses],
        "holds": r.holds,
    }
    (out / "report.json").write_text(json.dumps(document, sort_keys=True, indent=2) + "\n")
    print(f"|F| = {r.family_size}, BRev = {_fmt(r.brev)}")
    print(f"buy-{r.k} revenue = {_fmt(r.buyk_revenue)}")
    print(f"buy-{r.k} IC: {str(verdict.ic).lower()}")
    print(f"ratio = {_fmt(r.ratio)} >= {_fmt(r.ratio_bound)}: {str(r.holds).lower()}")
    return EXIT_OK if r.holds and verdict.ic else EXIT_FAILED


def cmd_gen_example(args: argparse.Namespace) -> int:
    if args.name == "coffee":
        dist, menu = coffee_shop_instance()
        instance = InstanceFile(2, dist, (menu,))
    else:
        if args.n is None:
            raise PreconditionError("srev-gap needs --n")
        instance = InstanceFile(args.n, srev_gap_instance(args.n))
    save_instance(instance, args.output)
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    config = _enumeration_config(args)
    instances = [(Path(p).name, load_instance(p)) for p in args.instances]
    df = reports_dataframe(
        instances,
        args.k,
        config=config,
        parallel_config=_parallel_config(args),
        n_jobs=args.n_jobs,
    )
    write_report(df, args.csv)
    failed = (
        "size_bound_holds" in df
        and args.k == 1
        and (df["size_bound_holds"].astype(str) == "False").any()
    )
    return EXIT_FAILED if failed else EXIT_OK


def cmd_coverfree(args: argparse.Namespace) -> int:
    config = _enumeration_config(args)
    if args.method == "greedy":
        family = greedy_coverfree(args.n, args.k, config=config, progress=args.progress)
    elif args.method == "max":
        family = maximum_coverfree(args.n, args.k, config=config)
    else:
        if args.q is None or args.m is None:
            raise PreconditionError("The ks method needs --q and --m")
        family = kautz_singleton(args.q, args.m, config=config)
    for s in family.sets:
        print(" ".join(str(j) for j in s))
    print(f"{len(family)} sets over {family.ground_size} elements, k = {family.k}")
    check = verify_coverfree(family, family.k, config=config, progress=args.progress)
    if not check:
        print(f"counterexample: {check.counterexample}")
        return EXIT_FAILED
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pybuyk",
        description="Exact analysis of buy-k mechanisms and gap constructions.",
        allow_abbrev=False,
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="Log debug messages"
    )
    defaults = EnumerationConfig()
    caps = parser.add_argument_group("enumeration caps")
    caps.add_argument("--max-multisets", type=int, default=defaults.max_multisets)
    caps.add_argument(
        "--max-adaptive-items", type=int, default=defaults.max_adaptive_items
    )
    caps.add_argument(
        "--max-coverfree-ground", type=int, default=defaults.max_coverfree_ground
    )
    caps.add_argument(
        "--max-coverfree-tuples", type=int, default=defaults.max_coverfree_tuples
    )
    caps.add_argument(
        "--max-lp-variables", type=int, default=defaults.max_lp_variables
    )
    parser.add_argument(
        "--n-jobs", type=int, default=1, help="Parallel jobs, -1 for all CPUs"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="Benchmarks, IC and bounds of an instance")
    p.add_argument("instance")
    p.add_argument("--k", type=int, default=1)
    p.add_argument(
        "--pipeline", action="store_true", help="Also run the menu surgery"
    )
    p.add_argument("--c", default=None, help="Price threshold, default revenue/100")
    p.add_argument("--delta", default="0", help="Norm slack, default 0")
    p.add_argument("--base", type=int, default=None, help="Band base, default k+1")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("menugap", help="Gaps of the sequences of an instance")
    p.add_argument("instance")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--prune", action="store_true")
    p.set_defaults(func=cmd_menugap)

    p = sub.add_parser("gen-lowerbound", help="Build a lower-bound instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", choices=["greedy", "ks"], default="greedy")
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("-o", "--output", required=True, help="Output directory")
    p.set_defaults(func=cmd_gen_lowerbound)

    p = sub.add_parser("gen-example", help="Write a built-in instance")
    p.add_argument("name", choices=["coffee", "srev-gap"])
    p.add_argument("--n", type=int, default=None)
    p.add_argument("-o", "--output", required=True, help="Output file")
    p.set_defaults(func=cmd_gen_example)

    p = sub.add_parser("report", help="CSV report of several instances")
    p.add_argument("instances", nargs="+")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--csv", required=True)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("coverfree", help="Build and verify a cover-free family")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--method", choices=["greedy", "ks", "max"], default="greedy")
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--progress", action="store_true")
    p.set_defaults(func=cmd_coverfree)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING, format=LOG_FORMAT
    )
    if args.command == "coverfree" and args.method != "ks" and args.n is None:
        parser.error("--n is required for this method")
    try:
        return args.func(args)
    except PostconditionError as e:
        print(f"postcondition failed: {e}", file=sys.stderr)
        print(f"counterexample: {e.counterexample}", file=sys.stderr)
        return EXIT_FAILED
    except (ValueError, OSError) as e:
        # InstanceFileError, PreconditionError, BudgetExceededError and
        # DimensionMismatchError are all ValueErrors
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
