"""Re-verify the witnesses stored in a report against freshly built objects."""

from __future__ import annotations

from .complexes import cohomology, relative_complex
from .graded import GradedElement
from .io import pair_from_json
from .linalg import Echelon, LinalgError
from .obstruction import (PairContext, _minus_part, cond_vi, ideal_span, restrict_form,
                          viii_model)
from .sullivan import spectral_sequence


def _verify_i(ctx: PairContext, w: dict) -> bool:
    g = ctx.g
    n = w["degree"]
    gens = g.dual_generators()
    cocycle = GradedElement.from_json(gens, w["cocycle"])
    prim = GradedElement.from_json(gens, w["primitive"])
    if not cocycle or g.ce_differential(gens)(prim) != cocycle:
        return False
    hh = cohomology(relative_complex(g, ctx.h, n), n)
    hk = relative_complex(g, ctx.k, n)
    try:
        coords = dict(enumerate(hh.complex.spaces[n].coords(cocycle.terms)))
        hk.spaces[n - 1].coords(prim.terms)
    except LinalgError:
        return False
    return hh.is_cocycle(n, coords) and not hh.is_coboundary(n, coords)


def _verify_v(ctx: PairContext, w: dict) -> bool:
    hd = ctx.h_data
    k = w["s_degree"] // 2
    x = GradedElement.from_json(hd.shifted, w["polynomial"])
    space = hd.invariants(2 * k).spaces[k]
    if not x or not space.contains(x.terms):
        return False
    minus = _minus_part(ctx.h.induced, hd.shifted, space, ctx.h.induced.theta)
    if not Echelon(m.terms for m in minus).contains(x.terms):
        return False
    return not ideal_span(ctx, k).contains(x.terms)


def _verify_vi(ctx: PairContext, w: dict) -> bool:
    rows = {r["s_degree"]: r for r in cond_vi(ctx).details["degrees"]}
    r = rows.get(w["s_degree"])
    return r is not None and r == {k: w[k] for k in r} and r["rank"] < r["target_minus"]


def _verify_vii(ctx: PairContext, w: dict) -> bool:
    ph = ctx.h_data.prims
    x = GradedElement.from_json(ph.gens, w["missing"])
    try:
        c = ph.coords(x)
    except LinalgError:
        return False
    minus = Echelon(dict(enumerate(v)) for v in ph.minus)
    vec = {i: v for i, v in enumerate(c) if v}
    if not vec or not minus.contains(vec):
        return False
    image = Echelon()
    for alpha in ctx.g_data.prims.minus_elements():
        image.add(dict(enumerate(ph.coords(restrict_form(ctx, alpha)))))
    return not image.contains(vec)


def _verify_viii(ctx: PairContext, w: dict) -> bool:
    n = w["degree"]
    model = viii_model(ctx, n)
    ss = spectral_sequence(model)
    return ss.total(2, n) == w["e2_total"] and ss.target_dims[n] == w["target_dim"] and \
        w["e2_total"] != w["target_dim"]


VERIFIERS = {"i": _verify_i, "v": _verify_v, "vi": _verify_vi, "vii": _verify_vii, "viii": _verify_viii}


def verify_document(doc: dict) -> list:
    """[(pair, condition, ok)] for every witness in the document."""
    out = []
    for entry in doc.get("pairs", []):
        conds = entry.get("conditions", {})
        witnessed = [(c, v["witness"]) for c, v in conds.items() if "witness" in v]
        if not witnessed:
            continue
        name, g, h = pair_from_json(entry["input"], where=f"pairs[{entry['name']}].input")
        ctx = PairContext(name, g, h)
        for c, w in witnessed:
            try:
                ok = VERIFIERS[c](ctx, w)
            except (KeyError, TypeError, ValueError, LinalgError):
                ok = False
            out.append((entry["name"], c, bool(ok)))
    return out
