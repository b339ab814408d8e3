"""Command-line front door.

Subcommands: eval, pushforward, pullback, cesaro, invariant, entropy,
intersect, build-model, verify.  Computational subcommands accept either
direct flags or ``--scenario`` (a JSON file naming the operation, model,
initial data and parameters) and write a machine-readable report that is
byte-deterministic for a fixed seed; measured wall times are included
only on request.  Exit codes: 0 success, 2 validation error, 3 numerical
non-convergence.  The SUBMEASURE_LOG environment variable sets the log
level.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import time

import numpy as np

from . import dynamics, models, serialize
from .errors import NonConvergenceError, SchemaError, SubmeasureError
from .intersection import least_negative, minimal_negative_mass
from .measures import StrongSubmeasure
from .space import indicator_basis
from .verify import run_checks

log = logging.getLogger("submeasure")

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NO_CONVERGENCE = 3


#: scenario op name -> CLI subcommand carrying it
SCENARIO_OPS = {
    "eval": "eval",
    "pushforward": "pushforward",
    "pullback": "pullback",
    "cesaro": "cesaro",
    "invariant": "invariant",
    "inv_leq": "invariant",
    "inv_geq": "invariant",
    "entropy": "entropy",
    "intersect": "intersect",
}


def run_scenario(path, out=None, fmt="json", seed=20240801):
    """Execute a scenario file and write its report; returns the exit code."""
    doc = serialize.read_json(path)
    op = doc.get("op")
    if op not in SCENARIO_OPS:
        print(f"error: $.op: unknown operation {op!r}", file=sys.stderr)
        return EXIT_VALIDATION
    argv = [SCENARIO_OPS[op], "--scenario", str(path), "--format", fmt,
            "--seed", str(seed)]
    if out:
        argv += ["--out", str(out)]
    return main(argv)


def main(argv=None):
    level = os.environ.get("SUBMEASURE_LOG", "warning").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except NonConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except SubmeasureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="submeasure",
        description="calculus for strong submeasures on finite spaces",
    )
    sub = parser.add_subparsers(required=True)

    def common(p, scenario=True):
        p.add_argument("--out", help="report destination (default stdout)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--seed", type=int, default=20240801)
        p.add_argument("--wall-times", action="store_true",
                       help="include wall-clock timings (breaks byte determinism)")
        if scenario:
            p.add_argument("--scenario", help="scenario JSON overriding direct flags")

    p = sub.add_parser("eval", help="evaluate a submeasure on functions")
    p.add_argument("--model", help="JSON with space and submeasure")
    p.add_argument("--function", action="append", default=[],
                   help="function JSON file (repeatable)")
    common(p)
    p.set_defaults(handler=_cmd_eval, op="eval")

    for name, helptext in (("pushforward", "transport a submeasure forward"),
                           ("pullback", "transport a submeasure backward")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--model", help="correspondence JSON")
        p.add_argument("--submeasure", help="submeasure JSON (weights keyed by labels)")
        common(p)
        p.set_defaults(handler=_cmd_transport, op=name)

    p = sub.add_parser("cesaro", help="averaged pushforward iterates")
    p.add_argument("--model", help="endo-correspondence JSON")
    p.add_argument("--initial", help="submeasure JSON")
    p.add_argument("--n", type=int, default=8)
    common(p)
    p.set_defaults(handler=_cmd_cesaro, op="cesaro")

    p = sub.add_parser("invariant", help="extremal invariant submeasures")
    p.add_argument("--model", help="endo-correspondence JSON")
    p.add_argument("--initial", help="submeasure JSON")
    p.add_argument("--direction", choices=("below", "above"), default="below")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--max-iter", type=int, default=None)
    common(p)
    p.set_defaults(handler=_cmd_invariant, op="invariant",
                   op_aliases=("invariant", "inv_leq", "inv_geq"))

    p = sub.add_parser("entropy", help="orbit-subshift entropies")
    p.add_argument("--model", help="endo-correspondence JSON")
    p.add_argument("--submeasure", help="optional invariant submeasure JSON")
    p.add_argument("--reachable-only", action="store_true")
    common(p)
    p.set_defaults(handler=_cmd_entropy, op="entropy")

    p = sub.add_parser("intersect", help="least-negative family aggregation")
    p.add_argument("--family", help="signed-family JSON")
    p.add_argument("--function", action="append", default=[])
    common(p)
    p.set_defaults(handler=_cmd_intersect, op="intersect")

    p = sub.add_parser("build-model", help="emit a bundled model as JSON")
    p.add_argument("--kind", required=True,
                   choices=("blowup", "cremona", "transcendental", "line", "exceptional"))
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--n-fiber", type=int, default=3)
    p.add_argument("--out", help="destination (default stdout)")
    p.set_defaults(handler=_cmd_build_model)

    p = sub.add_parser("verify", help="run the named property suites")
    p.add_argument("--filter", default=None, help="substring of suite names")
    p.add_argument("--seed", type=int, default=20240801)
    p.set_defaults(handler=_cmd_verify)

    return parser


# -- scenario plumbing ---------------------------------------------------


def _load_scenario_inputs(args, fields):
    """Resolve direct flags vs --scenario into one inputs document."""
    if getattr(args, "scenario", None):
        doc = serialize.read_json(args.scenario)
        op = serialize._require(doc, "op", "$", str)
        accepted = getattr(args, "op_aliases", (args.op,))
        if op not in accepted:
            raise SchemaError("$.op", f"scenario op {op!r} does not match subcommand {args.op!r}")
        params = serialize._require(doc, "params", "$", dict, optional=True, default={})
        inputs = {"op": op, "params": params}
        for field in fields:
            inputs[field] = serialize._require(doc, field, "$", optional=True)
        name = serialize._require(doc, "name", "$", str, optional=True)
        if name:
            inputs["name"] = name
        return inputs
    inputs = {"op": args.op, "params": {}}
    for field in fields:
        pathval = getattr(args, field.replace("-", "_"), None)
        if isinstance(pathval, str):
            inputs[field] = serialize.read_json(pathval)
        elif isinstance(pathval, list):
            inputs[field] = [serialize.read_json(p) for p in pathval]
        else:
            inputs[field] = pathval
    return inputs


def _as_list(value):
    """Scenario fields holding one-or-many documents accept both shapes."""
    if value is None:
        return []
    return value if isinstance(value, list) else [value]


def _param(inputs, args, key, default=None):
    if key in inputs.get("params", {}):
        return inputs["params"][key]
    return getattr(args, key.replace("-", "_"), default)


def _emit_report(args, inputs, results, traces=None, counters=None):
    canonical_inputs = json.loads(serialize.canonical_json(inputs))
    digest = hashlib.sha256(
        serialize.canonical_json(canonical_inputs).encode()
    ).hexdigest()
    report = {
        "inputs_digest": digest,
        "inputs": canonical_inputs,
        "results": results,
        "traces": traces or {},
        "timings": dict(counters or {}),
    }
    if getattr(args, "wall_times", False):
        report["timings"]["wall_seconds"] = time.perf_counter() - args._t0
    if args.format == "csv":
        text = _to_csv(report)
    else:
        text = serialize.canonical_json(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _to_csv(report, prefix="", rows=None):
    top = rows is None
    rows = [] if top else rows
    src = report if isinstance(report, dict) else {str(i): v for i, v in enumerate(report)}
    for key, value in src.items():
        path = f"{prefix}.{key}" if prefix else str(key)
        if isinstance(value, (dict, list)):
            _to_csv(value, path, rows)
        else:
            rows.append(f"{path},{value}")
    if top:
        return "\n".join(rows) + "\n"
    return rows


def _basis_table(mu, selection=None):
    table = {
        p: float(v)
        for p, v in zip(mu.space.points, mu.basis_values())
    }
    if selection:
        missing = [p for p in selection if p not in table]
        if missing:
            raise SchemaError("$.params.basis", f"unknown labels {missing}")
        table = {p: table[p] for p in selection}
    return table


# -- handlers -------------------------------------------------------------


def _cmd_eval(args):
    args._t0 = time.perf_counter()
    inputs = _load_scenario_inputs(args, ["model", "function"])
    model = inputs.get("model")
    if model is None:
        raise SchemaError("$.model", "missing model")
    space = serialize.load_space(
        serialize._require(model, "space", "$.model", dict), "$.model.space"
    )
    mu = serialize.load_submeasure(
        serialize._require(model, "submeasure", "$.model", dict), space, "$.model.submeasure"
    )
    funcs = _as_list(inputs.get("function"))
    results = {"basis_values": _basis_table(mu), "mass": list(mu.mass_info())}
    for k, fdoc in enumerate(funcs):
        phi = serialize.load_function(fdoc, space, f"$.function[{k}]")
        results.setdefault("values", []).append(mu.evaluate(phi))
    return _emit_report(args, inputs, results,
                        counters={"generators": len(mu.generators)})


def _load_corr_and_sub(inputs, which):
    model_doc = inputs.get("model")
    if model_doc is None:
        raise SchemaError("$.model", "missing model")
    corr = serialize.load_correspondence(model_doc, "$.model")
    sub_doc = inputs.get(which)
    if sub_doc is None:
        raise SchemaError(f"$.{which}", "missing submeasure")
    space = corr.source if which != "pullback-side" else corr.target
    return corr, sub_doc, space


def _cmd_transport(args):
    args._t0 = time.perf_counter()
    inputs = _load_scenario_inputs(args, ["model", "submeasure"])
    corr = serialize.load_correspondence(inputs["model"], "$.model")
    space = corr.source if args.op == "pushforward" else corr.target
    mu = serialize.load_submeasure(inputs["submeasure"], space, "$.submeasure")
    moved = (corr.pushforward_submeasure(mu) if args.op == "pushforward"
             else corr.pullback_submeasure(mu))
    if isinstance(moved, StrongSubmeasure):
        results = {
            "submeasure": serialize.dump_submeasure(moved),
            "basis_values": _basis_table(moved),
        }
    else:  # lazy transport of a signed submeasure: report basis values only
        basis = indicator_basis(moved.space)
        results = {
            "basis_values": {
                p: moved.evaluate(phi) for p, phi in zip(moved.space.points, basis)
            }
        }
    return _emit_report(args, inputs, results)


def _cmd_cesaro(args):
    args._t0 = time.perf_counter()
    inputs = _load_scenario_inputs(args, ["model", "initial"])
    corr = serialize.load_correspondence(inputs["model"], "$.model")
    mu0 = serialize.load_submeasure(inputs["initial"], corr.source, "$.initial")
    n = int(_param(inputs, args, "n", 8))
    basis = _param(inputs, args, "basis", None)
    traces = {"steps": []}
    current = mu0
    for k in range(n):
        current = corr.pushforward_submeasure(current).prune()
        traces["steps"].append(_basis_table(current, basis))
    avg = dynamics.cesaro_average(corr, mu0, n)
    pushed = corr.pushforward_submeasure(avg)
    defect = float(np.max(np.abs(pushed.basis_values() - avg.basis_values())))
    results = {
        "submeasure": serialize.dump_submeasure(avg),
        "basis_values": _basis_table(avg, basis),
        "invariance_defect": defect,
    }
    return _emit_report(args, inputs, results, traces=traces,
                        counters={"iterations": n})


def _cmd_invariant(args):
    args._t0 = time.perf_counter()
    inputs = _load_scenario_inputs(args, ["model", "initial"])
    corr = serialize.load_correspondence(inputs["model"], "$.model")
    mu0 = serialize.load_submeasure(inputs["initial"], corr.source, "$.initial")
    direction = _param(inputs, args, "direction", "below")
    if inputs["op"] == "inv_leq":
        direction = "below"
    elif inputs["op"] == "inv_geq":
        direction = "above"
    tol = float(_param(inputs, args, "tol", 1e-9))
    max_iter = _param(inputs, args, "max_iter", None)
    solver = (dynamics.largest_invariant_below if direction == "below"
              else dynamics.smallest_invariant_above)
    trace = []
    result = solver(corr, mu0, tol=tol, max_iter=max_iter, trace=trace)
    basis = _param(inputs, args, "basis", None)
    results = {
        "direction": direction,
        "submeasure": serialize.dump_submeasure(result),
        "basis_values": _basis_table(result, basis),
    }
    steps = [
        {p: float(v) for p, v in zip(corr.source.points, vals)
         if basis is None or p in basis}
        for vals in trace
    ]
    return _emit_report(args, inputs, results, traces={"steps": steps},
                        counters={"iterations": len(trace)})


def _cmd_entropy(args):
    args._t0 = time.perf_counter()
    inputs = _load_scenario_inputs(args, ["model", "submeasure"])
    corr = serialize.load_correspondence(inputs["model"], "$.model")
    reachable = bool(_param(inputs, args, "reachable_only", False))
    sft = dynamics.build_orbit_sft(corr, reachable_only=reachable)
    results = {"topological_entropy": dynamics.topological_entropy(sft)}
    if inputs.get("submeasure"):
        mu = serialize.load_submeasure(inputs["submeasure"], corr.source, "$.submeasure")
        out = dynamics.submeasure_entropy(sft, mu)
        results["submeasure_entropy"] = {"value": out.value, "exact": out.exact}
    return _emit_report(args, inputs, results)


def _cmd_intersect(args):
    args._t0 = time.perf_counter()
    inputs = _load_scenario_inputs(args, ["family", "function"])
    if inputs.get("family") is None:
        raise SchemaError("$.family", "missing family")
    family = serialize.load_family(inputs["family"], "$.family")
    kappa = minimal_negative_mass(family)
    aggregate = least_negative(family)
    results = {
        "minimal_negative_mass": kappa,
        "kept_generators": serialize.dump_submeasure(aggregate)["generators"],
        "basis_values": _basis_table(aggregate),
        "intersection_number": family.intersection_number,
    }
    for k, fdoc in enumerate(_as_list(inputs.get("function"))):
        phi = serialize.load_function(fdoc, family.space, f"$.function[{k}]")
        results.setdefault("values", []).append(aggregate.evaluate(phi))
    return _emit_report(args, inputs, results,
                        counters={"members": len(family.all_members())})


def _cmd_build_model(args):
    if args.kind == "blowup":
        doc = serialize.dump_correspondence(
            models.build_blowup_model(args.n, args.n_fiber).projection
        )
    elif args.kind == "cremona":
        doc = serialize.dump_correspondence(models.build_cremona_model(args.n).map)
    elif args.kind == "transcendental":
        doc = serialize.dump_correspondence(models.build_transcendental_model(args.n).map)
    elif args.kind == "line":
        from .intersection import build_line_family

        doc = serialize.dump_family(build_line_family(args.n))
    else:
        from .intersection import build_exceptional_family

        doc = serialize.dump_family(build_exceptional_family(args.n))
    text = serialize.canonical_json(doc)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_verify(args):
    rows = run_checks(args.filter, seed=args.seed)
    if not rows:
        print(f"no suites match filter {args.filter!r}", file=sys.stderr)
        return EXIT_VALIDATION
    width = max(len(name) for name, _, _ in rows)
    print(f"seed {args.seed}")
    failures = 0
    for name, ok, detail in rows:
        status = "PASS" if ok else "FAIL"
        failures += 0 if ok else 1
        print(f"{status}  {name:<{width}}  {detail}")
    print(f"{len(rows) - failures}/{len(rows)} suites passed")
    return EXIT_OK if failures == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
