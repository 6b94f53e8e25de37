"""Command line front end.

Subcommands:

    maslov   --in scenario.ssf          Maslov data for each triple query
    check    --theorem NAME [--in F]    randomized campaign, or re-check a file
    compose  --in pipeline.cbf          glue the pipeline's morphisms in order
    even     --in pipeline.cbf          evenness report per morphism
    gen      --spec TEXT --seed N       build a random even morphism
    closure  --trials N --seed N        even-closure campaign over random pairs

Exit codes: 0 success / property holds, 1 a campaign found a counterexample,
2 input error.  With --output json the report is a single JSON document with
a stable key set; identical seeds and flags give byte-identical output.
Counterexamples are written as complete scenario or pipeline files so they
re-run standalone.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import campaigns
from .cobordism import compose, is_even, push_forward, validate
from .errors import EvencobError
from .formats import (
    Scenario,
    parse_pipeline,
    parse_scenario,
    pipeline_for_morphism,
    serialize_pipeline,
)
from .generators import format_generator_spec, parse_generator_spec, random_even_morphism
from .maslov import (
    LagrangianTriple,
    dim_sum_parity,
    form_annihilator,
    maslov_form,
    maslov_index,
    parity_prediction,
)
from .sampling import random_abstract_even_pair, random_even_pair

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_INPUT_ERROR = 2

SCHEMA_VERSION = 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evencob",
        description="Exact Maslov indices and the weighted cobordism category over Q.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--output", choices=("text", "json"), default="text")

    p = sub.add_parser("maslov", help="Maslov data for the triples in a scenario file")
    p.add_argument("--in", dest="input", required=True, metavar="PATH")
    common(p)

    p = sub.add_parser("check", help="verify a theorem on random or given data")
    p.add_argument(
        "--theorem",
        required=True,
        choices=("parity", "dim-sum", "annihilator", "pair-dims", "ann-identities"),
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--genus-max", type=int, default=3)
    p.add_argument("--in", dest="input", metavar="PATH")
    p.add_argument("--counterexample-out", metavar="PATH")
    common(p)

    p = sub.add_parser("compose", help="glue the morphisms of a pipeline file in order")
    p.add_argument("--in", dest="input", required=True, metavar="PATH")
    common(p)

    p = sub.add_parser("even", help="evenness report for every morphism in a pipeline file")
    p.add_argument("--in", dest="input", required=True, metavar="PATH")
    common(p)

    p = sub.add_parser("gen", help="build a seeded random even morphism from a plan")
    p.add_argument("--spec", required=True, metavar="TEXT")
    p.add_argument("--seed", type=int, default=0)
    common(p)

    p = sub.add_parser("closure", help="compose random even pairs and check evenness")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--genus-max", type=int, default=3)
    p.add_argument("--counterexample-out", metavar="PATH")
    common(p)

    return parser


def _base_report(command: str, params: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "params": params,
        "status": "ok",
        "results": [],
        "counterexample": None,
    }


def _triple_report(scenario: Scenario, names: tuple[str, str, str]) -> dict:
    subs = tuple(scenario.named_subspaces[n] for n in names)
    triple = LagrangianTriple(scenario.space, *subs)
    form = maslov_form(triple)
    index = maslov_index(triple)
    p, q = dim_sum_parity(triple)
    return {
        "triple": list(names),
        "domain_dim": form.dim,
        "maslov_index": index,
        "parity": index % 2,
        "parity_prediction": parity_prediction(triple),
        "annihilator_dim": form_annihilator(triple).dim,
        "dim_sum_parity": [p, q],
    }


def _cmd_maslov(args: argparse.Namespace) -> tuple[dict, int]:
    scenario = parse_scenario(Path(args.input).read_text())
    campaigns.check_scenario_triples(scenario)
    report = _base_report("maslov", {"input": args.input})
    report["results"] = [_triple_report(scenario, names) for names in scenario.queries]
    return report, EXIT_OK


def _cmd_check(args: argparse.Namespace) -> tuple[dict, int]:
    params = {
        "theorem": args.theorem,
        "seed": args.seed,
        "trials": args.trials,
        "genus_max": args.genus_max,
        "input": args.input,
    }
    report = _base_report("check", params)
    if args.input is not None:
        scenario = parse_scenario(Path(args.input).read_text())
        results = campaigns.evaluate_scenario(args.theorem, scenario)
        report["results"] = [
            {"instance": label, "holds": out.holds, "details": _plain(out.details)}
            for label, out in results
        ]
        if all(out.holds for _, out in results):
            report["status"] = "holds"
            return report, EXIT_OK
        report["status"] = "counterexample"
        return report, EXIT_COUNTEREXAMPLE

    result = campaigns.run_campaign(args.theorem, args.trials, args.seed, args.genus_max)
    report["results"] = [{"checked": result.checked, "trials": result.trials}]
    if result.holds:
        report["status"] = "holds"
        return report, EXIT_OK
    report["status"] = "counterexample"
    out_path = args.counterexample_out or f"{args.theorem}-counterexample.ssf"
    Path(out_path).write_text(result.failure.scenario_text)
    report["counterexample"] = {
        "trial": result.failure.trial,
        "seed": result.failure.seed,
        "details": _plain(result.failure.details),
        "scenario": result.failure.scenario_text,
        "written_to": out_path,
    }
    return report, EXIT_COUNTEREXAMPLE


def _morphism_summary(m) -> dict:
    report = is_even(m)
    return {
        "weight": m.weight,
        "beta1": m.h1_dim,
        "beta0": m.h0_dim,
        "even": report.is_even,
        "parity_rhs": report.parity_rhs,
        "terms": dict(report.term_breakdown),
        "violations": validate(m),
    }


def _cmd_compose(args: argparse.Namespace) -> tuple[dict, int]:
    pipeline = parse_pipeline(Path(args.input).read_text())
    if not pipeline.entries:
        raise EvencobError("pipeline has no morphisms to compose")
    composite = pipeline.entries[0].morphism
    for entry in pipeline.entries[1:]:
        composite = compose(composite, entry.morphism)
    report = _base_report("compose", {"input": args.input})
    summary = _morphism_summary(composite)
    summary["source"] = pipeline.entries[0].source_name
    summary["target"] = pipeline.entries[-1].target_name
    summary["pushforward_dim"] = push_forward(composite, composite.source.lagrangian).dim
    report["results"] = [summary]
    return report, EXIT_OK


def _cmd_even(args: argparse.Namespace) -> tuple[dict, int]:
    pipeline = parse_pipeline(Path(args.input).read_text())
    report = _base_report("even", {"input": args.input})
    results = []
    for entry in pipeline.entries:
        summary = _morphism_summary(entry.morphism)
        summary["name"] = entry.name
        results.append(summary)
    report["results"] = results
    return report, EXIT_OK


def _cmd_gen(args: argparse.Namespace) -> tuple[dict, int]:
    spec = parse_generator_spec(args.spec)
    morphism = random_even_morphism(spec, args.seed)
    report = _base_report("gen", {"spec": format_generator_spec(spec), "seed": args.seed})
    summary = _morphism_summary(morphism)
    summary["source_genera"] = list(morphism.source.genera)
    summary["target_genera"] = list(morphism.target.genera)
    summary["pipeline"] = serialize_pipeline(pipeline_for_morphism(morphism))
    report["results"] = [summary]
    return report, EXIT_OK


def _cmd_closure(args: argparse.Namespace) -> tuple[dict, int]:
    params = {"seed": args.seed, "trials": args.trials, "genus_max": args.genus_max}
    report = _base_report("closure", params)
    failure = None
    abstract_even = abstract_odd = 0
    for trial in range(args.trials):
        trial_seed = args.seed + trial
        m1, m2 = random_even_pair(trial_seed, args.genus_max)
        composite = compose(m1, m2)
        if not is_even(composite).is_even:
            failure = (trial, trial_seed, m1, m2)
            break
        # abstract validated records: outcomes are logged, not asserted
        a1, a2 = random_abstract_even_pair(trial_seed, args.genus_max)
        if is_even(compose(a1, a2)).is_even:
            abstract_even += 1
        else:
            abstract_odd += 1
    report["results"] = [
        {
            "pairs_checked": args.trials if failure is None else failure[0] + 1,
            "abstract_records": {"even": abstract_even, "odd": abstract_odd},
        }
    ]
    if failure is None:
        report["status"] = "holds"
        return report, EXIT_OK
    report["status"] = "counterexample"
    trial, trial_seed, m1, m2 = failure
    from .formats import Pipeline, PipelineEntry

    objects = {"a": m1.source, "b": m1.target, "c": m2.target}
    pipeline = Pipeline(
        objects,
        (PipelineEntry("m1", "a", "b", m1), PipelineEntry("m2", "b", "c", m2)),
    )
    text = serialize_pipeline(pipeline)
    out_path = args.counterexample_out or "closure-counterexample.cbf"
    Path(out_path).write_text(text)
    report["counterexample"] = {
        "trial": trial,
        "seed": trial_seed,
        "pipeline": text,
        "written_to": out_path,
    }
    return report, EXIT_COUNTEREXAMPLE


def _plain(value):
    """Make details JSON-friendly (Fractions to strings, tuples to lists)."""
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    return str(value)


def render(report: dict, mode: str) -> str:
    if mode == "json":
        return json.dumps(report, sort_keys=True, indent=2)
    lines = [f"{report['command']}: {report['status']}"]
    for result in report["results"]:
        parts = ", ".join(f"{k}={v}" for k, v in result.items() if k != "pipeline")
        lines.append(f"  {parts}")
        if "pipeline" in result:
            lines.append(result["pipeline"].rstrip())
    if report.get("counterexample"):
        ce = report["counterexample"]
        lines.append(f"counterexample at trial {ce['trial']} (seed {ce['seed']})")
        if "written_to" in ce:
            lines.append(f"written to {ce['written_to']}")
    return "\n".join(lines)


_COMMANDS = {
    "maslov": _cmd_maslov,
    "check": _cmd_check,
    "compose": _cmd_compose,
    "even": _cmd_even,
    "gen": _cmd_gen,
    "closure": _cmd_closure,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT_ERROR
    try:
        report, code = _COMMANDS[args.command](args)
    except EvencobError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    print(render(report, args.output))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
