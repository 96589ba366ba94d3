"""Deterministic report documents, markdown rendering and batch runs."""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .catalog import builtin_pairs
from .io import pair_to_json
from .obstruction import CONDITIONS, ConditionDisagreement, InvariantFailure, run_battery

SCHEMA = "lieform-report/1"


def pair_entry(name: str, g, h, conditions=CONDITIONS, cap: int | None = None, family: str = "") -> dict:
    """Report JSON for one pair; disagreements become error entries."""
    try:
        rep = run_battery(name, g, h, conditions=conditions, cap=cap, family=family)
    except ConditionDisagreement as exc:
        return {"name": name, "family": family, "error": "condition_disagreement",
                "message": str(exc), "dump": exc.dump, "input": pair_to_json(name, g, h)}
    except InvariantFailure as exc:
        return {"name": name, "family": family, "error": "invariant_failure",
                "message": str(exc), "dump": exc.dump, "input": pair_to_json(name, g, h)}
    out = rep.to_json()
    out["input"] = pair_to_json(name, g, h)
    return out


def entry_ok(entry: dict) -> bool:
    return "error" not in entry and all(v for v in entry["checks"].values())


def document(entries: list, config: dict) -> dict:
    entries = sorted(entries, key=lambda e: e["name"])
    failed = [e["name"] for e in entries if not entry_ok(e)]
    return {
        "schema": SCHEMA,
        "tool_version": __version__,
        "config": config,
        "pairs": entries,
        "summary": {"pairs": len(entries), "invariant_failures": failed},
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _ranks(e: dict) -> str:
    r = e["ranks"]
    return f"{r['g']}-{r['g_theta']} vs {r['h']}-{r['k_h']}"


def markdown(doc: dict) -> str:
    lines = [f"# lieform report ({doc['schema']}, version {doc['tool_version']})", "",
             "| pair | ranks | " + " | ".join(f"({c})" for c in CONDITIONS) + " | verdict | checks |",
             "|" + "---|" * (4 + len(CONDITIONS))]
    for e in doc["pairs"]:
        if "error" in e:
            lines.append(f"| {e['name']} | | " + " | ".join("" for _ in CONDITIONS) + f" | ERROR | {e['error']} |")
            continue
        conds = []
        for c in CONDITIONS:
            v = e["conditions"].get(c)
            conds.append("" if v is None else ("yes" if v["value"] else "no"))
        v = e["verdict"]
        verdict = ("OBSTRUCTED / " if v["obstructed"] else "") + v["reason"]
        bad = [k for k, ok in e["checks"].items() if not ok]
        checks = "ok" if not bad else "FAILED: " + ", ".join(bad)
        lines.append(f"| {e['name']} | {_ranks(e)} | " + " | ".join(conds) + f" | {verdict} | {checks} |")
    lines.append("")
    lines.append("Ranks read rank g - rank g^θ vs rank h - rank k_h. NONE_FOUND means no obstruction "
                 "was detected; it does not assert that compact quotients exist.")
    return "\n".join(lines) + "\n"


def threads() -> int:
    raw = os.environ.get("LIEFORM_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _run_builtin(args) -> dict:
    name, conditions, cap = args
    spec = {p.name: p for p in builtin_pairs()}[name]
    return pair_entry(spec.name, spec.g, spec.subalgebra(), conditions, cap, spec.family)


def select_pairs(family: str | None = None) -> list:
    pairs = builtin_pairs()
    if family is not None:
        pairs = [p for p in pairs if p.family == family]
    return sorted(p.name for p in pairs)


def run_catalog(names: list, conditions=CONDITIONS, cap: int | None = None, workers: int | None = None) -> list:
    """Run the battery over builtin pairs; results are independent of `workers`."""
    workers = threads() if workers is None else workers
    jobs = [(n, tuple(conditions), cap) for n in names]
    if workers <= 1 or len(jobs) <= 1:
        return [_run_builtin(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
        return list(pool.map(_run_builtin, jobs))
