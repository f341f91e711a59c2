"""Batch front door: ``kundtlab <kind> --in FILE --out FILE [--samples N] [--seed S]``.

Exit codes: 0 every check passed, 1 some check failed (witnesses in the
report), 2 the input could not be read or validated.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from pathlib import Path

from . import io
from .algebra.ratfunc import to_text
from .report import jsonable


@dataclass
class Job:
    kind: str
    input: str | None
    output: str | None
    samples: int = 20
    seed: int = 0


def _check(name: str, verdict, extra: dict | None = None) -> dict:
    out = {"check": name, "verdict": bool(verdict),
           "witnesses": [] if verdict else [verdict.to_json() if hasattr(verdict, "to_json")
                                            else jsonable(verdict)]}
    if extra:
        out.update(extra)
    return out


def _finish(kind: str, checks: list[dict], **extra) -> dict:
    report = {"kind": kind, "verdict": all(c["verdict"] for c in checks), "checks": checks}
    report.update(extra)
    return report


# -- kinds ------------------------------------------------------------------

def _gn_check(m, job: Job) -> dict:
    from .gn import gn_conditions

    conds = gn_conditions(m)
    checks = [_check(f"condition {k}", v) for k, v in conds.items()]
    return _finish(job.kind, checks, failed=[k for k, v in conds.items() if not v])


def _tensor_classify(model, job: Job) -> dict:
    from .boost import AdaptedFrame, boost_order, is_type, offending_component

    t = model["tensor"]
    frame = model.get("frame") or AdaptedFrame.standard(t.n)
    order = boost_order(t, frame)
    extra = {"boost_order": order if isinstance(order, int) else "-inf",
             "type_II": is_type(t, frame, "II"), "type_III": is_type(t, frame, "III")}
    bad = offending_component(t, frame, 0)
    if bad is not None:
        extra["offending_component"] = jsonable(bad)
    checks = []
    if "gn" in model:
        from .gn import gn_member

        member = gn_member(model["gn"])
        checks.append(_check("gn-member", member))
        if member:
            moved = boost_order(t, frame.acted(model["gn"]))
            checks.append(_check("boost-order-invariance", moved == order,
                                 {"acted_order": moved if isinstance(moved, int) else "-inf"}))
    return _finish(job.kind, checks, **extra)


def _metric_belongs(p, job: Job) -> dict:
    from .chart.connection import christoffel, connection_belongs, curvature_type_II_check
    from .chart.fields import metric_belongs

    wanted = p.extra.get("checks", ["metric"])
    checks = []
    if "metric" in wanted:
        checks.append(_check("metric-belongs", metric_belongs(p.metric, p.quadruple)))
    if "connection" in wanted or "curvature" in wanted:
        conn = christoffel(p.metric)
        if "connection" in wanted:
            checks.append(_check("connection-belongs", connection_belongs(conn, p.quadruple, p.metric)))
        if "curvature" in wanted:
            try:
                verdict = curvature_type_II_check(conn, p.quadruple, p.metric, job.samples, job.seed)
            except ValueError as exc:
                checks.append({"check": "curvature-type-II", "verdict": False,
                               "witnesses": [{"precondition": str(exc)}]})
            else:
                checks.append(_check("curvature-type-II", verdict))
    return _finish(job.kind, checks)


def _kundt_verify(p, job: Job) -> dict:
    from .chart.fields import frobenius_integrable
    from .chart.kundt import kundt_vector_check, nil_killing_check

    x = p.extra["X"]
    y = p.extra.get("Y", p.quadruple.transversal)
    nk = nil_killing_check(x, p.metric, p.quadruple)
    kv = kundt_vector_check(x, p.metric, y)
    checks = [_check("nil-killing", nk), _check("kundt-vector", kv),
              _check("lambda-perp-integrable", frobenius_integrable(p.quadruple.Lambda, p.metric.coords))]
    return _finish(job.kind, checks, agree=bool(nk) == bool(kv))


def _degenerate(d, job: Job) -> dict:
    from .degenerate import invariants

    inv = invariants(d)
    checks = [_check("degenerate", True if inv["degenerate"] else inv["violation"])]
    extra = {}
    if inv["degenerate"]:
        checks.append(_check("psi-automorphism-invariant", inv["psi_invariant"]))
        extra = {"psi": to_text(inv["psi"]), "phi": [to_text(x) for x in inv["phi"]],
                 "theta": to_text(inv["theta"])}
    return _finish(job.kind, checks, **extra)


def _lie_classify(model, job: Job) -> dict:
    from .lie.algebra import is_nilpotent, validate_lie_algebra
    from .lie.codim1 import codim1_subalgebras
    from .lie.quadruple import example_3dim, is_kundt_quadruple, nilpotent_conditions

    lie = model["algebra"]
    valid = validate_lie_algebra(lie)
    checks = [_check("lie-algebra", valid)]
    extra = {"algebra": io.lie_to_json(lie)}
    if not valid:
        return _finish(job.kind, checks, **extra)
    nil = is_nilpotent(lie)
    extra["nilpotent"] = nil
    if lie.dim <= 4:
        extra["codim1_subalgebras"] = codim1_subalgebras(lie).to_json()
    q = model.get("quadruple")
    if q is not None:
        rep = is_kundt_quadruple(q, model["h"], lie)
        extra["classification"] = rep.to_json()
        checks.append({"check": "gn-quadruple", "verdict": rep.gn_valid,
                       "witnesses": [] if rep.gn_valid else jsonable(rep.witnesses)})
        checks.append({"check": "kundt-quadruple", "verdict": rep.kundt_valid,
                       "witnesses": [] if rep.kundt_valid else jsonable(rep.witnesses)})
        if nil and rep.kundt_valid:
            extra["nilpotent_conditions"] = nilpotent_conditions(lie, q)
    elif lie.dim == 3:
        found = example_3dim(lie)
        extra["example"] = found.to_json()
    return _finish(job.kind, checks, **extra)


def _bianchi_sweep(model, job: Job) -> dict:
    from .lie.algebra import Subspace, random_basis_change
    from .lie.presets import bianchi_presets
    from .lie.quadruple import NonExistence, example_3dim, is_kundt_quadruple

    presets = bianchi_presets()
    rng = random.Random(job.seed)
    results = {}
    checks = []
    for name in model["presets"]:
        lie = presets[name]
        found = example_3dim(lie)
        entry = {"algebra": io.lie_to_json(lie)}
        if isinstance(found, NonExistence):
            entry["result"] = found.to_json()
            stable = all(isinstance(example_3dim(lie.change_basis(random_basis_change(rng, 3))),
                                    NonExistence)
                         for _ in range(model["basis_changes"]))
            entry["stable_under_basis_change"] = stable
            checks.append(_check(f"{name}: non-existence stable", stable))
        else:
            entry["result"] = {"quadruple": found.to_json()}
            ok = is_kundt_quadruple(found, Subspace.zero(3), lie).kundt_valid
            checks.append(_check(f"{name}: quadruple is Kundt", ok))
        results[name] = entry
    return _finish(job.kind, checks, presets=results)


def _cross_validate(model, job: Job) -> dict:
    from .lie.algebra import Subspace
    from .lie.presets import chart_kundt_verdict, realize_group_metric
    from .lie.quadruple import example_3dim, is_gn_quadruple, is_kundt_quadruple, random_quadruple

    lie = model["algebra"]
    quads = list(model["quadruples"])
    if not quads:
        rng = random.Random(job.seed)
        quads.append(example_3dim(lie))
        while len(quads) < job.samples:
            q = random_quadruple(rng, lie, closed=False)
            if q is not None:
                quads.append(q)
    rows = []
    checks = []
    for i, q in enumerate(quads):
        rep = is_gn_quadruple(q, Subspace.zero(3), lie)
        if not rep.gn_valid:
            checks.append({"check": f"quadruple {i}", "verdict": False,
                           "witnesses": jsonable(rep.witnesses)})
            continue
        algebra = is_kundt_quadruple(q, Subspace.zero(3), lie).kundt_valid
        metric, quad, x = realize_group_metric(model["preset"], q)
        chart = chart_kundt_verdict(metric, quad, x)
        rows.append({"quadruple": q.to_json(), "algebra_verdict": algebra,
                     "chart_verdict": chart["verdict"], "chart_witnesses": chart["witnesses"]})
        checks.append({"check": f"quadruple {i} agreement", "verdict": algebra == chart["verdict"],
                       "witnesses": [] if algebra == chart["verdict"] else chart["witnesses"]})
    return _finish(job.kind, checks, preset=model["preset"], results=rows)


HANDLERS = {
    "gn-check": _gn_check,
    "tensor-classify": _tensor_classify,
    "metric-belongs": _metric_belongs,
    "kundt-verify": _kundt_verify,
    "degenerate-invariants": _degenerate,
    "lie-classify": _lie_classify,
    "bianchi-sweep": _bianchi_sweep,
    "cross-validate": _cross_validate,
}


def dumps(report: dict) -> str:
    # counts and indices stay JSON integers; exact values arrive preformatted
    return json.dumps(report, indent=2, sort_keys=True, default=jsonable) + "\n"


def _emit(job: Job, report: dict) -> None:
    text = dumps(report)
    if job.output:
        Path(job.output).write_text(text)
    else:
        sys.stdout.write(text)


def run_job(job: Job) -> int:
    try:
        if job.input is None:
            if job.kind != "bianchi-sweep":
                raise io.SchemaError("", f"--in is required for {job.kind}")
            data = {}
        else:
            data = io.read_json(job.input)
        model = io.parse(job.kind, data)
    except io.SchemaError as exc:
        sys.stderr.write(f"input error at {exc.pointer or '/'}: {exc.message}\n")
        _emit(job, {"kind": job.kind, "verdict": False,
                    "error": {"pointer": exc.pointer, "message": exc.message}})
        return 2
    report = HANDLERS[job.kind](model, job)
    _emit(job, report)
    return 0 if report["verdict"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kundtlab", description=__doc__.splitlines()[0])
    parser.add_argument("kind", choices=sorted(HANDLERS))
    parser.add_argument("--in", dest="input", help="problem file (JSON)")
    parser.add_argument("--out", dest="output", help="report file; stdout when omitted")
    parser.add_argument("--samples", type=int, default=20, help="sample points or quadruples")
    parser.add_argument("--seed", type=int, default=0, help="random seed")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.samples < 1:
        sys.stderr.write("--samples must be positive\n")
        return 2
    return run_job(Job(args.kind, args.input, args.output, args.samples, args.seed))


if __name__ == "__main__":
    sys.exit(main())
