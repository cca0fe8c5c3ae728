"""Command-line interface: solve, validate, bound, generate, export-svg.

Exit codes: 0 success/valid, 1 invalid schedule, 2 inapplicable algorithm,
3 input or parse error.  Summaries print as `key: value` lines; --json
switches to a single structured document on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bounds as bounds_mod
from . import svg as svg_mod
from .errors import (
    CostsNotDiscrete,
    NoSolutionWithin,
    NotAStar,
    NotATree,
    NotBipartite,
    NotBipartitePartition,
    NotComplete,
    ScanCoverError,
    TooLarge,
)
from .generators import (
    RANDOM_KINDS,
    gen_geodesic_star,
    gen_nae_gadget,
    gen_orthant_star,
    gen_random,
    gen_turan_1d,
    parse_formula,
)
from .graphs import bipartition, is_complete, is_tree
from .line1d import (
    bits_to_strings,
    bitschedule_to_schedule,
    solve_bipartite_1d,
    solve_complete_1d,
    vectors_from_coloring,
)
from .model import (
    ABSTRACT,
    Instance,
    angular_cost,
    instance_hash,
    load_instance,
    save_instance,
)
from .oracle import discrete_step_oracle, exact_order_search
from .planar2d import (
    bipartite_rotation,
    complete_recursive_split,
    kcolor_decompose,
    sector_approx,
)
from .schedule import (
    ScanSchedule,
    load_schedule,
    save_schedule,
    validate_schedule,
    validate_trajectory,
)
from .trees import arboricity_approx, tree_approx

ALGOS = (
    "auto",
    "bip-rotation",
    "sector",
    "kcolor",
    "complete-split",
    "bits-1d",
    "tree",
    "arboricity",
    "oracle",
    "oracle-discrete",
)

EXIT_INVALID = 1
EXIT_INAPPLICABLE = 2
EXIT_INPUT = 3

_INAPPLICABLE = (
    NotBipartite,
    NotBipartitePartition,
    NotComplete,
    NotAStar,
    NotATree,
    TooLarge,
    CostsNotDiscrete,
    NoSolutionWithin,
)


class Inapplicable(ScanCoverError):
    pass


def _auto_algo(instance: Instance) -> str:
    if instance.dimension == 1:
        return "bits-1d"
    if instance.dimension == ABSTRACT or instance.dimension == 3:
        return "tree" if is_tree(instance) else "arboricity"
    if bipartition(instance) is not None:
        return "sector"
    if is_complete(instance):
        return "complete-split"
    return "kcolor"


def _need_partition(instance: Instance):
    parts = bipartition(instance)
    if parts is None:
        raise NotBipartite("instance graph is not bipartite")
    return parts


def _infer_step(instance: Instance) -> float:
    """Greatest common step (within tolerance) of all nonzero pair costs."""
    values = sorted(
        {
            round(angular_cost(instance, e1, e2), 9)
            for e1, e2 in instance.incident_pairs()
        }
    )
    values = [v for v in values if v > 1e-9]
    if not values:
        return 180.0
    step = values[0]
    for v in values[1:]:
        a, b = step, v % step
        while b > 1e-6:
            a, b = b, a % b
        step = a
    return step


def solve_instance(instance: Instance, algo: str, step: float | None = None):
    """Run one algorithm; returns (schedule, trajectory|None, bits|None)."""
    if algo == "auto":
        algo = _auto_algo(instance)
    if algo == "bits-1d":
        if instance.dimension != 1:
            raise Inapplicable("bits-1d requires a 1D instance")
        if is_complete(instance) and len(instance.vertex_ids) >= 2:
            bs = solve_complete_1d(instance)
        elif bipartition(instance) is not None:
            bs = solve_bipartite_1d(instance)
        else:
            bs = vectors_from_coloring(instance, bounds_mod.greedy_coloring(instance))
        return bitschedule_to_schedule(bs, instance), None, bits_to_strings(bs)
    if algo == "bip-rotation":
        if instance.dimension != 2:
            raise Inapplicable("bip-rotation requires a 2D instance")
        schedule, traj = bipartite_rotation(instance, _need_partition(instance))
        return schedule, traj, None
    if algo == "sector":
        if instance.dimension != 2:
            raise Inapplicable("sector requires a 2D instance")
        schedule, traj = sector_approx(instance, _need_partition(instance))
        return schedule, traj, None
    if algo == "kcolor":
        if instance.dimension != 2:
            raise Inapplicable("kcolor requires a 2D instance")
        coloring = bounds_mod.greedy_coloring(instance)
        return kcolor_decompose(instance, coloring), None, None
    if algo == "complete-split":
        schedule, traj = complete_recursive_split(instance)
        return schedule, traj, None
    if algo == "tree":
        return tree_approx(instance), None, None
    if algo == "arboricity":
        return arboricity_approx(instance), None, None
    if algo == "oracle":
        return exact_order_search(instance), None, None
    if algo == "oracle-discrete":
        grid = step if step else _infer_step(instance)
        steps, assignment = discrete_step_oracle(instance, grid)
        times = {e: k * grid for e, k in assignment.items()}
        return ScanSchedule(times, "oracle-discrete"), None, None
    raise Inapplicable(f"unknown algorithm {algo!r}")


def _print_summary(pairs: list[tuple[str, object]], as_json: bool) -> None:
    if as_json:
        print(json.dumps(dict(pairs), indent=2, sort_keys=True))
    else:
        for key, value in pairs:
            print(f"{key}: {value}")


def _fmt(x: float) -> float:
    return round(x, 6)


def cmd_solve(args) -> int:
    instance = load_instance(args.instance)
    try:
        schedule, traj, bits = solve_instance(instance, args.algo, args.step)
    except (Inapplicable, *_INAPPLICABLE) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INAPPLICABLE
    report = bounds_mod.compute_bounds(instance)
    best = report.best
    pairs = [
        ("algorithm", schedule.algorithm_tag),
        ("makespan", _fmt(schedule.makespan)),
        ("bound.lambda", _fmt(report.lambda_bound)),
        ("bound.chromatic", _fmt(report.chromatic_bound)),
        ("bound.star", _fmt(report.star_bound)),
        ("bound.best", _fmt(best)),
    ]
    if best > 0:
        pairs.append(("ratio", _fmt(schedule.makespan / best)))
    if args.out:
        save_schedule(args.out, instance, schedule, traj, bits)
        pairs.append(("schedule", args.out))
    _print_summary(pairs, args.json)
    return 0


def cmd_validate(args) -> int:
    instance = load_instance(args.instance)
    ihash, schedule, traj = load_schedule(args.schedule)
    if ihash != instance_hash(instance):
        print("error: schedule was produced for a different instance", file=sys.stderr)
        return EXIT_INPUT
    verdict = validate_schedule(instance, schedule)
    pairs = [("valid", verdict.ok), ("makespan", _fmt(verdict.makespan))]
    ok = verdict.ok
    if not verdict.ok:
        for v in verdict.violations[:20]:
            pairs.append(("violation", str(v)))
    if traj is not None:
        tv = validate_trajectory(instance, schedule, traj)
        pairs.append(("trajectory_valid", tv.ok))
        if not tv.ok:
            ok = False
            for v in tv.violations[:20]:
                pairs.append(("violation", str(v)))
    _print_summary(pairs, args.json)
    return 0 if ok else EXIT_INVALID


def cmd_bound(args) -> int:
    instance = load_instance(args.instance)
    report = bounds_mod.compute_bounds(instance)
    if args.json:
        print(json.dumps(report.as_dict(), indent=2, sort_keys=True))
        return 0
    _print_summary(
        [
            ("bound.lambda", f"{_fmt(report.lambda_bound)} ({report.lambda_tag})"),
            (
                "bound.chromatic",
                f"{_fmt(report.chromatic_bound)} ({report.chromatic_tag}, "
                f"chi in [{report.chi_lower}, {report.chi_upper}])",
            ),
            ("bound.star", f"{_fmt(report.star_bound)} ({report.star_tag})"),
            ("bound.best", _fmt(report.best)),
        ],
        False,
    )
    return 0


def cmd_generate(args) -> int:
    if args.kind == "nae-gadget":
        if not args.formula:
            print("error: nae-gadget needs --formula", file=sys.stderr)
            return EXIT_INPUT
        instance = gen_nae_gadget(parse_formula(args.formula), args.phi)
    elif args.kind == "turan-1d":
        instance = gen_turan_1d(args.ell)
    elif args.kind == "geodesic-star":
        instance = gen_geodesic_star(args.sub)
    elif args.kind == "orthant-star":
        instance = gen_orthant_star(args.n, args.d)
    else:  # random
        instance, _ = gen_random(args.rand_kind, args.n, args.seed)
    save_instance(instance, args.out)
    _print_summary(
        [
            ("instance", args.out),
            ("vertices", len(instance.vertex_ids)),
            ("edges", len(instance.edges)),
        ],
        args.json,
    )
    return 0


def cmd_export_svg(args) -> int:
    instance = load_instance(args.instance)
    ihash, schedule, _ = load_schedule(args.schedule)
    if ihash != instance_hash(instance):
        print("error: schedule was produced for a different instance", file=sys.stderr)
        return EXIT_INPUT
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(svg_mod.render_svg(instance, schedule))
    print(f"svg: {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scancover",
        description="Schedule edge scans with angular transition costs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="compute a schedule for an instance")
    p_solve.add_argument("instance")
    p_solve.add_argument("--algo", choices=ALGOS, default="auto")
    p_solve.add_argument("--out", help="write the schedule file here")
    p_solve.add_argument("--step", type=float, help="grid for oracle-discrete")
    p_solve.add_argument("--json", action="store_true")
    p_solve.set_defaults(func=cmd_solve)

    p_val = sub.add_parser("validate", help="check a schedule against an instance")
    p_val.add_argument("instance")
    p_val.add_argument("schedule")
    p_val.add_argument("--json", action="store_true")
    p_val.set_defaults(func=cmd_validate)

    p_bound = sub.add_parser("bound", help="print certified lower bounds")
    p_bound.add_argument("instance")
    p_bound.add_argument("--json", action="store_true")
    p_bound.set_defaults(func=cmd_bound)

    p_gen = sub.add_parser("generate", help="write a generated instance file")
    p_gen.add_argument(
        "kind",
        choices=("nae-gadget", "turan-1d", "geodesic-star", "orthant-star", "random"),
    )
    p_gen.add_argument("--formula", help='e.g. "(x1,x2,!x3)(!x1,x2,x3)"')
    p_gen.add_argument("--phi", type=float, default=120.0)
    p_gen.add_argument("--ell", type=int, default=1)
    p_gen.add_argument("--sub", type=int, default=0)
    p_gen.add_argument("--n", type=int, default=3)
    p_gen.add_argument("--d", type=int, default=3)
    p_gen.add_argument("--kind", dest="rand_kind", choices=RANDOM_KINDS,
                       default="sparse2d", help="random instance family")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", required=True)
    p_gen.add_argument("--json", action="store_true")
    p_gen.set_defaults(func=cmd_generate)

    p_svg = sub.add_parser("export-svg", help="render instance + schedule")
    p_svg.add_argument("instance")
    p_svg.add_argument("schedule")
    p_svg.add_argument("--out", required=True)
    p_svg.set_defaults(func=cmd_export_svg)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ScanCoverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
