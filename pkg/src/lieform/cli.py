"""The lieform command line."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .catalog import builtin_pairs
from .complexes import ComplexError, ce_complex, cohomology, relative_complex
from .io import SchemaError, load_input, load_json
from .lie import ValidationError
from .models import algebra_data
from .obstruction import CONDITIONS, ConditionDisagreement, InvariantFailure
from .report import document, dumps, entry_ok, markdown, pair_entry, run_catalog, select_pairs
from .transgression import TransgressionError
from .verify import verify_document

EXIT_OK, EXIT_SCHEMA, EXIT_VALIDATION, EXIT_INVARIANT = 0, 2, 3, 4


def _err(msg: str) -> None:
    print(f"lieform: {msg}", file=sys.stderr)


def _load(path: str):
    """Input file, or a builtin pair name."""
    p = Path(path)
    if not p.exists():
        specs = {s.name: s for s in builtin_pairs()}
        if path in specs:
            s = specs[path]
            return ("pair", s.name, s.g, s.subalgebra())
    return load_input(p)


def _algebra(kind):
    return kind[2] if kind[0] == "pair" else kind[1]


def cmd_cohomology(args) -> int:
    kind = _load(args.file)
    if args.relative:
        if kind[0] != "pair":
            raise SchemaError("--relative needs a pair file", args.file)
        _, _, g, h = kind
        top = g.dim - h.dim
        cap = top if args.cap is None else min(args.cap, top)
        hh = cohomology(relative_complex(g, h, cap), cap)
    else:
        g = _algebra(kind)
        cap = g.dim if args.cap is None else min(args.cap, g.dim)
        hh = cohomology(ce_complex(g, cap), cap)
    print(",".join(str(hh.dim(n)) for n in range(cap + 1)))
    return EXIT_OK


def cmd_primitives(args) -> int:
    g = _algebra(_load(args.file))
    ps = algebra_data(g).prims
    for d, b in zip(ps.degrees, ps.basis):
        print(f"{d}\t{b}")
    print(f"rank {ps.dim}; -θ part {len(ps.minus)}")
    return EXIT_OK


def cmd_transgress(args) -> int:
    g = _algebra(_load(args.file))
    data = algebra_data(g)
    for i, (d, t) in enumerate(zip(data.prims.degrees, data.td.tau)):
        print(f"a{i + 1} ({d})\t{t}")
    return EXIT_OK


def _emit(doc: dict, fmt: str, out: str | None) -> None:
    text = dumps(doc) if fmt == "json" else markdown(doc)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _conditions(raw: str | None) -> tuple:
    if raw is None:
        return CONDITIONS
    conds = tuple(c.strip() for c in raw.split(",") if c.strip())
    bad = [c for c in conds if c not in CONDITIONS]
    if bad or not conds:
        raise SchemaError(f"unknown condition {bad[0] if bad else raw!r}", "--conditions")
    return tuple(c for c in CONDITIONS if c in conds)


def _status(doc: dict) -> int:
    for e in doc["pairs"]:
        if "error" in e:
            _err(f"{e['name']}: {e['message']}")
            return EXIT_INVARIANT
        if not entry_ok(e):
            bad = ", ".join(k for k, v in e["checks"].items() if not v)
            _err(f"{e['name']}: invariant checks failed: {bad}")
            return EXIT_INVARIANT
    return EXIT_OK


def cmd_check(args) -> int:
    kind = _load(args.file)
    if kind[0] != "pair":
        raise SchemaError("expected a pair file (with h_basis)", args.file)
    _, name, g, h = kind
    conds = _conditions(args.conditions)
    entry = pair_entry(name, g, h, conditions=conds, cap=args.cap)
    doc = document([entry], {"conditions": list(conds), "cap": args.cap, "inputs": [name]})
    _emit(doc, args.format, args.output)
    return _status(doc)


def cmd_catalog_run(args) -> int:
    names = select_pairs(None if args.all else args.family)
    if not names:
        raise SchemaError(f"no builtin pair in family {args.family!r}", "--family")
    conds = _conditions(args.conditions)
    entries = run_catalog(names, conds, args.cap)
    doc = document(entries, {"conditions": list(conds), "cap": args.cap,
                             "selector": "all" if args.all else f"family:{args.family}"})
    if args.output:
        d = Path(args.output)
        d.mkdir(parents=True, exist_ok=True)
        (d / "report.json").write_text(dumps(doc), encoding="utf-8")
        (d / "report.md").write_text(markdown(doc), encoding="utf-8")
        sys.stdout.write(markdown(doc))
    else:
        _emit(doc, args.format, None)
    return _status(doc)


def cmd_verify_witness(args) -> int:
    doc = load_json(args.report)
    if not isinstance(doc, dict) or "pairs" not in doc:
        raise SchemaError("not a lieform report", args.report)
    results = verify_document(doc)
    for name, cond, ok in results:
        print(f"{name}\t({cond})\t{'verified' if ok else 'FAILED'}")
    if not results:
        print("no witnesses in report")
    return EXIT_OK if all(ok for _, _, ok in results) else EXIT_INVARIANT


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lieform", description="Exact relative Lie algebra cohomology "
                                "and obstructions to compact quotients of homogeneous spaces.")
    p.add_argument("--version", action="version", version=f"lieform {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("cohomology", help="cohomology dimensions of g or of a pair")
    c.add_argument("file")
    c.add_argument("--relative", action="store_true", help="H(g, h) instead of H(g)")
    c.add_argument("--cap", type=int)
    c.set_defaults(func=cmd_cohomology)

    c = sub.add_parser("primitives", help="primitive invariant forms")
    c.add_argument("file")
    c.set_defaults(func=cmd_primitives)

    c = sub.add_parser("transgress", help="a θ-compatible transgression")
    c.add_argument("file")
    c.set_defaults(func=cmd_transgress)

    c = sub.add_parser("check", help="run the condition battery on a pair")
    c.add_argument("file", help="pair JSON file or builtin pair name")
    c.add_argument("--conditions", help=f"comma-separated subset of {','.join(CONDITIONS)}")
    c.add_argument("--cap", type=int)
    c.add_argument("-o", "--output")
    c.add_argument("--format", choices=("json", "markdown"), default="json")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("catalog", help="builtin catalog")
    csub = c.add_subparsers(dest="catalog_command", required=True)
    r = csub.add_parser("run", help="run the battery over builtin pairs")
    g = r.add_mutually_exclusive_group(required=True)
    g.add_argument("--all", action="store_true")
    g.add_argument("--family")
    r.add_argument("--conditions")
    r.add_argument("--cap", type=int)
    r.add_argument("-o", "--output", help="directory for report.json and report.md")
    r.add_argument("--format", choices=("json", "markdown"), default="json")
    r.set_defaults(func=cmd_catalog_run)

    c = sub.add_parser("verify-witness", help="re-verify the witnesses in a report")
    c.add_argument("report")
    c.set_defaults(func=cmd_verify_witness)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "cap", None) is not None and args.cap < 0:
        _err("--cap must be non-negative")
        return EXIT_SCHEMA
    try:
        return args.func(args)
    except SchemaError as exc:
        _err(f"schema error at {exc}")
        return EXIT_SCHEMA
    except ValidationError as exc:
        msg = f"invalid input: {exc}"
        if exc.witness is not None:
            msg += f" (witness: {', '.join(map(str, exc.witness))})"
        _err(msg)
        return EXIT_VALIDATION
    except ConditionDisagreement as exc:
        _err(str(exc))
        print(json.dumps(exc.dump, indent=2, ensure_ascii=False), file=sys.stderr)
        return EXIT_INVARIANT
    except (InvariantFailure, ComplexError, TransgressionError) as exc:
        _err(f"internal invariant violated: {exc}")
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
