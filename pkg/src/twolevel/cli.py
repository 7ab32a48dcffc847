"""Command-line front end: ``twolevel {run,check,gen,oracle}``.

Exit codes: 0 pass, 1 property violation, 2 input error, 3 model mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .analysis import (
    DeviationGrid,
    ViolationKind,
    ViolationReport,
    approximation_ratio,
    check_critical_bid,
    check_equal_treatment,
    check_outcome_properties,
    check_truthful,
    gen_appendix_a,
    gen_lb_pair,
    gen_random,
    gen_unit_identical,
    optimal_assignment,
    probe_consumer_sovereignty,
    welfare,
)
from .analysis.checks import sort_reports
from .domain import Instance, Model, parse_rational
from .engine import Kind, Mechanism, run, run_traced
from .errors import (
    DegenerateRatioError,
    DomainError,
    InstanceTooLargeError,
    ModelMismatchError,
    ParseError,
    TwoLevelError,
)

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_MODEL = 0, 1, 2, 3


def _mechanism(args) -> Mechanism:
    return Mechanism.parse(args.mechanism, args.aggregation)


def _require_model(mech: Mechanism, instance: Instance) -> None:
    if mech.model is not instance.model:
        raise ModelMismatchError(
            f"{mech.label} needs a {mech.model.value} instance, got {instance.model.value}")


def _emit(args, payload: dict, text: str) -> None:
    out = io.dumps(payload) if args.format == "json" else text
    if getattr(args, "out", None):
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)


def _one_based_trace(mech: Mechanism, trace: dict) -> dict:
    def fix(t):
        return {**t, "winner": t["winner"] + 1}
    if mech.kind is Kind.MECHANISM1:
        return fix(trace)
    if mech.kind is Kind.MECHANISM2:
        return {"items": [fix(t) for t in trace["items"]]}
    return {**trace, "assignment": [[l + 1 for l in s] for s in trace["assignment"]]}


def cmd_run(args) -> int:
    instance = io.load_instance(args.instance)
    mech = _mechanism(args)
    outcome, trace = run_traced(mech, instance)
    sw = welfare(instance, outcome)
    try:
        opt, _ = optimal_assignment(instance)
    except InstanceTooLargeError:
        opt = None
    ratio = None
    if opt is not None:
        try:
            ratio = approximation_ratio(instance, outcome)
        except DegenerateRatioError:
            ratio = None
    payload = {
        "mechanism": mech.label,
        "model": instance.model.value,
        "outcome": io.outcome_to_dict(outcome, instance),
        "welfare": str(sw),
        "opt_welfare": None if opt is None else str(opt),
        "ratio": None if ratio is None else str(ratio),
        "trace": io.jsonable(_one_based_trace(mech, trace)),
    }
    lines = [f"mechanism: {mech.label}"]
    for j, g in enumerate(payload["outcome"]["groups"], 1):
        items = ",".join(map(str, g["items"])) or "-"
        lines.append(f"group {j} ({g['name']}): items {items}, pays {g['payment']}")
        for i, mbr in enumerate(g["members"], 1):
            mitems = ",".join(map(str, mbr["items"])) or "-"
            lines.append(f"  bidder {i}: items {mitems}, pays {mbr['payment']}")
    lines.append(f"welfare: {payload['welfare']}")
    lines.append(f"opt_welfare: {payload['opt_welfare'] or 'n/a'}")
    lines.append(f"ratio: {payload['ratio'] or 'n/a'}")
    lines.append(f"trace: {json.dumps(payload['trace'])}")
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_OK


def _pick(instance: Instance, group, bidder):
    if group is None:
        return list(instance.bidders())
    j = group - 1
    if not 0 <= j < instance.k:
        raise DomainError(f"group {group} out of range")
    if bidder is None:
        return [(j, i) for i in range(instance.groups[j].size)]
    if not 0 <= bidder - 1 < instance.groups[j].size:
        raise DomainError(f"bidder {bidder} out of range")
    return [(j, bidder - 1)]


def cmd_check(args) -> int:
    instance = io.load_instance(args.instance)
    mech = _mechanism(args)
    _require_model(mech, instance)
    prop = args.property
    notes = []
    if prop == "truthful":
        truthful = run(mech, instance)
        grid = DeviationGrid.standard(instance, truthful)
        reports = check_truthful(mech, instance, grid)
        notes.append(f"{len(grid)} grid candidates per bidder; a clean grid is evidence, not proof")
    elif prop == "outcome":
        if args.outcome:
            data = io.load_json(args.outcome)
            outcome = io.outcome_from_dict(data.get("outcome", data) if isinstance(data, dict) else data)
        else:
            outcome = run(mech, instance)
        try:
            outcome.check_shape(instance)
        except TwoLevelError as exc:
            raise ParseError(str(exc)) from None
        reports = check_outcome_properties(instance, outcome)
        problems = outcome.problems()
        if problems and not reports:
            reports = [ViolationReport(ViolationKind.BUDGET_BALANCE, 0, None, witness=p)
                       for p in problems]
    elif prop == "equal-treatment":
        reports = check_equal_treatment(mech, instance)
    elif prop == "critical-bid":
        if instance.model is not Model.SINGLE_ITEM:
            raise ModelMismatchError("critical-bid checks need a single-item instance")
        outcome = run(mech, instance)
        reports = []
        for j, i in _pick(instance, args.group, args.bidder):
            if outcome.accesses(j, i):
                r = check_critical_bid(mech, instance, j, i)
                if r is not None:
                    reports.append(r)
    else:
        reports = []
        for j, i in _pick(instance, args.group, args.bidder):
            if not probe_consumer_sovereignty(mech, instance, j, i):
                reports.append(ViolationReport(
                    ViolationKind.CONSUMER_SOVEREIGNTY, j, i,
                    witness=f"an overwhelming bid does not buy bidder {i + 1} of group "
                            f"{j + 1} a value-maximising bundle"))
    reports = sort_reports(reports)
    payload = {
        "property": prop,
        "mechanism": mech.label,
        "passed": not reports,
        "violations": [r.to_dict() for r in reports],
        "notes": notes,
    }
    lines = [f"{prop} [{mech.label}]: {'pass' if not reports else f'{len(reports)} violation(s)'}"]
    for r in reports:
        line = f"  {r.kind.value}: {r.witness}"
        if r.kind is ViolationKind.TRUTHFULNESS:
            line += f" (utility {r.truthful_utility} -> {r.deviant_utility})"
        lines.append(line)
    lines.extend(f"  note: {n}" for n in notes)
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_VIOLATION if reports else EXIT_OK


def _need(args, *names):
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        raise DomainError("missing parameter(s): " + ", ".join("--" + n for n in missing))


def cmd_gen(args) -> int:
    fam = args.family
    if fam == "lb-pair":
        _need(args, "n", "delta")
        first, second = gen_lb_pair(args.n, parse_rational(args.delta))
        if args.out:
            out = Path(args.out)
            paths = [out.with_name(f"{out.stem}-{s}{out.suffix or '.json'}") for s in (1, 2)]
            for inst, path in zip((first, second), paths):
                io.save_instance(inst, path)
            print("\n".join(map(str, paths)))
        else:
            sys.stdout.write(io.dumps([io.instance_to_dict(first), io.instance_to_dict(second)]))
        return EXIT_OK
    if fam == "unit-identical":
        _need(args, "n", "eps")
        inst = gen_unit_identical(args.n, parse_rational(args.eps))
    elif fam == "appendix-a":
        _need(args, "eps")
        inst = gen_appendix_a(parse_rational(args.eps))
    else:
        _need(args, "seed", "k", "group-size", "max-value")
        inst = gen_random(args.seed, args.k, args.group_size, args.items or 1,
                          Model(args.model), args.max_value)
    text = io.dumps(io.instance_to_dict(inst))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_oracle(args) -> int:
    instance = io.load_instance(args.instance)
    opt, assignment = optimal_assignment(instance)
    payload = {
        "opt_welfare": str(opt),
        "assignment": [sorted(l + 1 for l in s) for s in assignment],
    }
    lines = [f"opt_welfare: {opt}"]
    for j, s in enumerate(payload["assignment"], 1):
        lines.append(f"group {j}: items {','.join(map(str, s)) or '-'}")
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twolevel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, mechanism=True):
        p.add_argument("--instance", required=True, metavar="PATH")
        p.add_argument("--format", choices=("text", "json"), default="text")
        if mechanism:
            p.add_argument("--mechanism", required=True, choices=[k.value for k in Kind])
            p.add_argument("--aggregation", choices=("sum", "max", "per-item-wtp"))

    p = sub.add_parser("run", help="run a mechanism on an instance file")
    common(p)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("check", help="check a property of a mechanism")
    p.add_argument("property", choices=("truthful", "outcome", "equal-treatment",
                                        "critical-bid", "sovereignty"))
    common(p)
    p.add_argument("--outcome", metavar="PATH", help="run report to audit instead of a fresh run")
    p.add_argument("--group", type=int, help="1-based group number")
    p.add_argument("--bidder", type=int, help="1-based bidder number within --group")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gen", help="generate instance files")
    p.add_argument("family", choices=("lb-pair", "unit-identical", "appendix-a", "random"))
    p.add_argument("--n", type=int)
    p.add_argument("--delta")
    p.add_argument("--eps")
    p.add_argument("--seed", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--group-size", type=int)
    p.add_argument("--items", type=int)
    p.add_argument("--max-value", type=int)
    p.add_argument("--model", choices=[m.value for m in Model], default="single-item")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("oracle", help="optimal welfare and assignment")
    common(p, mechanism=False)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ModelMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except (TwoLevelError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
