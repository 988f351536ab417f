"""JSON and text rendering of verification runs.

The JSON document is the source of truth; the text report is rendered
from it, so both always carry the same verdicts and findings.
"""
from __future__ import annotations

import json
from dataclasses import asdict
from importlib import resources

from . import __version__
from .checks import CheckResult
from .statespace import Path


def load_schema() -> dict:
    return json.loads(resources.files("skinet").joinpath("report.schema.json").read_text())


def path_to_json(net, path: Path) -> list[dict]:
    steps = []
    for t in path.transitions:
        tr = net.transitions[t]
        ins, outs = set(tr.inputs), set(tr.outputs)
        steps.append({
            "transition": tr.name,
            "marking_delta": {
                "removed": [net.places[p].name for p in sorted(ins - outs)],
                "added": [net.places[p].name for p in sorted(outs - ins)],
            },
        })
    return steps


def result_to_json(net, graph, result: CheckResult, timings: bool = True) -> dict:
    stats = dict(result.stats)
    if not timings:
        stats.pop("elapsed_s", None)
    findings = []
    for f in result.findings:
        findings.append({
            "subject": f.subject,
            "message": f.message,
            "path": None if f.path is None else path_to_json(net, f.path),
            "state": None if f.state is None else graph.marked(f.state),
        })
    return {"name": result.name, "formula": result.formula, "verdict": result.verdict,
            "findings": findings, "statistics": stats}


def build_report(skillset, net, graph, results, timings: bool = True) -> dict:
    doc = {
        "tool_version": __version__,
        "skillset": skillset.name,
        "build": {
            "options": asdict(net.options) if net.options is not None else {},
            **(net.report.to_dict() if net.report is not None else {}),
        },
        "exploration": None,
        "checks": [result_to_json(net, graph, r, timings) for r in results],
    }
    if graph is not None:
        doc["exploration"] = {"states": len(graph.states), "edges": len(graph.edges),
                              "deadlocks": sum(graph.deadlock)}
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def render_text(doc: dict) -> str:
    b = doc["build"]
    out = [f"skillset {doc['skillset']}  (skinet {doc['tool_version']})",
           f"net: {b.get('places', '?')} places, {b.get('transitions', '?')} transitions"]
    for w in b.get("warnings", []):
        out.append(f"warning: {w}")
    if doc["exploration"]:
        e = doc["exploration"]
        out.append(f"state space: {e['states']} states, {e['edges']} edges, {e['deadlocks']} deadlock(s)")
    for c in doc["checks"]:
        out.append("")
        out.append(f"[{c['verdict'].upper()}] {c['name']}")
        out.append(f"  formula: {c['formula']}")
        for f in c["findings"]:
            out.append(f"  - {f['subject']}: {f['message']}")
            if f["path"] is not None:
                trace = " -> ".join(s["transition"] for s in f["path"]) or "(initial state)"
                out.append(f"    path: {trace}")
            if f["state"] is not None:
                out.append(f"    state: {' '.join(f['state'])}")
    failed = [c["name"] for c in doc["checks"] if c["verdict"] != "pass"]
    out.append("")
    out.append(f"{len(doc['checks']) - len(failed)}/{len(doc['checks'])} checks passed")
    return "\n".join(out) + "\n"
