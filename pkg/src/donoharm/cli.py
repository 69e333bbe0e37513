"""Command-line front end.

Reports go to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 data/validation error, 2 usage error.  Runs are reproducible: the same
flags (including --seed) give byte-identical structured output.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .engine import (
    DEFAULT_ASYMMETRY,
    DEFAULT_UTILITY,
    evaluate_deterministic,
    evaluate_population,
    evaluate_stochastic_unit,
    paradox_report,
    population_marginals,
)
from .lottery import coherence_check
from .model import Bernoulli, ModelError
from .scenario import (
    LotteryPair,
    Report,
    ScenarioError,
    ScenarioFile,
    as_deterministic_view,
    as_population,
    builtin_scenarios,
    load_scenario,
    render_report,
)
from .simulate import SimulationConfig, simulate_deterministic, simulate_population

EVALUATORS = ("deterministic", "stochastic", "population")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="donoharm",
        description="Exact decision analysis under an asymmetric status-quo utility.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--scenario", required=True, help="built-in name or path to a JSON file")
        p.add_argument("--format", choices=("text", "structured"), default="text")

    p_eval = sub.add_parser("evaluate", help="run the exact evaluators")
    add_common(p_eval)
    p_eval.add_argument("--evaluator", choices=EVALUATORS + ("all",), default="all")

    p_sim = sub.add_parser("simulate", help="run the Monte Carlo oracle")
    add_common(p_sim)
    p_sim.add_argument(
        "--evaluator",
        choices=("deterministic", "stochastic", "population"),
        default="population",
        help="stochastic is an alias for population (the nested simulator)",
    )
    p_sim.add_argument("--replications", type=int, default=1_000_000)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--parallelism", type=int, default=1)
    p_sim.add_argument("--inner-samples", type=int, default=1024)

    p_par = sub.add_parser("paradox", help="check recommendation against dominance")
    add_common(p_par)

    p_lot = sub.add_parser("lottery", help="compare a lottery pair under the penalty")
    add_common(p_lot)

    p_list = sub.add_parser("list-scenarios", help="list built-in scenarios")
    p_list.add_argument("--format", choices=("text", "structured"), default="text")
    return parser


def _resolve_scenario(source: str) -> ScenarioFile:
    for sc in builtin_scenarios():
        if sc.name == source:
            return sc
    path = Path(source)
    if path.exists():
        return load_scenario(path)
    raise ScenarioError(f"{source!r} is neither a built-in scenario nor a readable file")


def _exact_results(sc: ScenarioFile, which: str) -> dict:
    m = as_population(sc)
    view = as_deterministic_view(sc)
    p0, p1 = population_marginals(m)
    u = sc.utility or DEFAULT_UTILITY
    spec = sc.asymmetry or DEFAULT_ASYMMETRY
    results = {}
    if which in ("deterministic", "all"):
        results["deterministic"] = evaluate_deterministic(view, u, spec).expected_relative_utility
    if which in ("stochastic", "all"):
        results["stochastic"] = evaluate_stochastic_unit(Bernoulli(p0), Bernoulli(p1), u, spec)
    if which in ("population", "all"):
        results["population"] = evaluate_population(m, u, spec).expected_relative_utility
    if which == "all":
        results["classical"] = evaluate_population(m, u, spec).classical_effect
    return results


def _cmd_evaluate(args: argparse.Namespace) -> int:
    sc = _resolve_scenario(args.scenario)
    if sc.kind == "lottery_pair":
        raise ScenarioError("lottery scenarios are evaluated with the 'lottery' command")
    report = Report(
        scenario=sc.name,
        variation_locus=sc.variation_locus,
        results=_exact_results(sc, args.evaluator),
    )
    sys.stdout.write(render_report(report, args.format))
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    sc = _resolve_scenario(args.scenario)
    if sc.kind == "lottery_pair":
        raise ScenarioError("lottery scenarios cannot be simulated; use the 'lottery' command")
    u = sc.utility or DEFAULT_UTILITY
    spec = sc.asymmetry or DEFAULT_ASYMMETRY
    cfg = SimulationConfig(
        replications=args.replications,
        seed=args.seed,
        parallelism=args.parallelism,
        inner_samples=args.inner_samples,
    )
    m = as_population(sc)
    view = as_deterministic_view(sc)
    if args.evaluator == "deterministic":
        target = evaluate_deterministic(view, u, spec).expected_relative_utility
        estimate = simulate_deterministic(view, u, spec, cfg, exact_target=target)
    else:
        target = evaluate_population(m, u, spec).expected_relative_utility
        estimate = simulate_population(m, u, spec, cfg, exact_target=target)
    report = Report(scenario=sc.name, variation_locus=sc.variation_locus, simulation=estimate)
    sys.stdout.write(render_report(report, args.format))
    return 0


def _cmd_paradox(args: argparse.Namespace) -> int:
    sc = _resolve_scenario(args.scenario)
    if sc.kind == "lottery_pair":
        raise ScenarioError("lottery scenarios have no paradox check; use the 'lottery' command")
    u = sc.utility or DEFAULT_UTILITY
    spec = sc.asymmetry or DEFAULT_ASYMMETRY
    report = Report(
        scenario=sc.name,
        variation_locus=sc.variation_locus,
        paradox=paradox_report(as_population(sc), as_deterministic_view(sc), u, spec),
    )
    # A detected contradiction is data, not an error: still exit 0.
    sys.stdout.write(render_report(report, args.format))
    return 0


def _cmd_lottery(args: argparse.Namespace) -> int:
    sc = _resolve_scenario(args.scenario)
    if sc.kind != "lottery_pair":
        raise ScenarioError(
            f"'lottery' needs a lottery_pair scenario, got kind {sc.kind!r}"
        )
    assert isinstance(sc.payload, LotteryPair)
    check = coherence_check(sc.payload.left, sc.payload.right, sc.payload.penalty)
    report = Report(scenario=sc.name, lottery=check)
    sys.stdout.write(render_report(report, args.format))
    return 0


def _cmd_list(args: argparse.Namespace) -> int:
    scenarios = builtin_scenarios()
    if args.format == "structured":
        import json

        doc = [{"name": sc.name, "kind": sc.kind} for sc in scenarios]
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        for sc in scenarios:
            sys.stdout.write(f"{sc.name} ({sc.kind})\n")
    return 0


_COMMANDS = {
    "evaluate": _cmd_evaluate,
    "simulate": _cmd_simulate,
    "paradox": _cmd_paradox,
    "lottery": _cmd_lottery,
    "list-scenarios": _cmd_list,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ScenarioError, ModelError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
