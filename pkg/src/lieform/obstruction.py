"""The condition battery for a θ-stable pair, the rank verdict and model checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cartan import build_cartan_complex
from .complexes import cohomology, relative_complex
from .graded import GradedElement, homomorphism, multiply
from .lie import LieAlgebra, Subalgebra, ValidationError
from .linalg import Echelon, Matrix, eigenspace_split, sparse_kernel
from .models import (AlgebraData, PairModel, algebra_data, check_chevalley, compare_kernel,
                     image_w_prime_dims, model_cohomology, pair_map, pair_model,
                     restrict_polynomial, within)
from .sullivan import check_model, relative_model, spectral_sequence
from .transgression import indecomposables, primitives, restriction_hom, theta_hom

CONDITIONS = ("i", "v", "vi", "vii", "viii")
RANK_CRITERION = "RANK_CRITERION"
NON_INJECTIVE_I = "NON_INJECTIVE_I"
NONE_FOUND = "NONE_FOUND"


class ConditionDisagreement(RuntimeError):
    """The computed conditions are not all equal; carries a dump of them."""

    def __init__(self, message: str, dump: dict):
        super().__init__(message)
        self.dump = dump


class InvariantFailure(RuntimeError):
    def __init__(self, message: str, dump: dict):
        super().__init__(message)
        self.dump = dump


@dataclass
class Condition:
    name: str
    value: bool
    cap: int | None = None
    details: dict = field(default_factory=dict)
    witness: dict | None = None

    def to_json(self) -> dict:
        out = {"value": self.value, "cap": self.cap, "details": self.details}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class Verdict:
    rank_lhs: int
    rank_rhs: int
    obstructed: bool
    reason: str

    def to_json(self) -> dict:
        return {"rank_lhs": self.rank_lhs, "rank_rhs": self.rank_rhs,
                "obstructed": self.obstructed, "reason": self.reason}


class PairContext:
    """g with θ, a θ-stable subalgebra h, k_h = h^θ and the per-algebra data."""

    def __init__(self, name: str, g: LieAlgebra, h: Subalgebra):
        if g.theta is None:
            raise ValidationError(f"{g.name} carries no involution")
        if h.g is not g:
            raise ValueError("subalgebra belongs to a different Lie algebra")
        if not h.theta_stable:
            raise ValidationError(f"{h.name} is not θ-stable")
        self.name = name
        self.g = g
        self.h = h
        self.k = h.fixed_part(name="k")
        whole = Subalgebra(g, [{i: Fraction(1)} for i in range(g.dim)], name=g.name, basis_names=g.basis)
        self.g_theta = whole.fixed_part(name="gtheta")
        self.k_in_h = within(self.k, h)
        self._cache: dict = {}

    def _get(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    @property
    def g_data(self) -> AlgebraData:
        return self._get("g", lambda: algebra_data(self.g))

    @property
    def h_data(self) -> AlgebraData:
        return self._get("h", lambda: algebra_data(self.h.induced, check_rank=False))

    @property
    def k_data(self) -> AlgebraData:
        return self._get("k", lambda: algebra_data(self.k_in_h.induced, check_rank=False))

    @property
    def model(self) -> PairModel:
        return self._get("model", lambda: pair_model(self.g, self.h, self.g_data, self.h_data))

    def default_cap(self) -> int:
        return self.g.dim - self.h.dim + 1

    def k_cap(self) -> int:
        return self.g.dim - self.k.dim + 1

    def sdeg_cap(self) -> int:
        return max(self.h_data.prims.degrees, default=0) + 1

    def ranks(self) -> dict:
        def build():
            gt = primitives(self.g_theta.induced, check_rank=False).dim
            rank_g = self.g.rank if self.g.rank is not None else self.g_data.prims.dim
            return {"g": rank_g, "g_theta": gt, "h": self.h_data.prims.dim, "k_h": self.k_data.prims.dim}
        return self._get("ranks", build)

    def is_symmetric(self) -> bool:
        """h = g^θ."""
        if self.h.dim != self.g_theta.dim:
            return False
        ech = Echelon(self.g_theta.vectors)
        return all(ech.contains(v) for v in self.h.vectors)


# ---------- condition (i) ----------

def cond_i(ctx: PairContext, cap: int | None = None) -> Condition:
    """Injectivity of H(g, h) → H(g, k_h) induced by the literal inclusion."""
    g = ctx.g
    cap = ctx.k_cap() if cap is None else cap
    hh = cohomology(relative_complex(g, ctx.h, cap), cap)
    hk = cohomology(relative_complex(g, ctx.k, cap), cap)
    kc = hk.complex
    dims, ranks = [], []
    witness = None
    for n in range(cap + 1):
        reps = hh.rep_elements(n)
        images = []
        for r in reps:
            try:
                images.append(dict(enumerate(kc.spaces[n].coords(r.terms))))
            except Exception as exc:  # the inclusion must land in the bigger complex
                raise InvariantFailure("relative cochain of h is not a k_h cochain", {"degree": n}) from exc
        bvecs = list(hk.boundaries[n].reduced().values()) if n in hk.boundaries else []
        ech = Echelon(bvecs)
        base = ech.rank
        for y in images:
            ech.add(y)
        rank = ech.rank - base
        dims.append(len(reps))
        ranks.append(rank)
        if rank < len(reps) and witness is None:
            witness = _injectivity_witness(hh, hk, n, reps, images, bvecs)
    value = all(r == d for r, d in zip(ranks, dims))
    return Condition("i", value, cap, {"source_dims": dims, "image_ranks": ranks,
                                       "target_dims": [hk.dim(n) for n in range(cap + 1)]}, witness)


def _injectivity_witness(hh, hk, n, reps, images, bvecs) -> dict:
    cols = [("r", i) for i in range(len(images))] + [("b", j) for j in range(len(bvecs))]
    rows: dict = {}
    for c, vec in enumerate(images + [{i: -x for i, x in b.items()} for b in bvecs]):
        for i, x in vec.items():
            rows.setdefault(i, {})[c] = x
    for w in sparse_kernel(list(rows.values()), range(len(cols))):
        if any(c < len(images) for c in w):
            cocycle = GradedElement.zero(reps[0].ambient)
            for c, x in w.items():
                if c < len(images):
                    cocycle = cocycle + reps[c].scale(x)
            coords = dict(enumerate(hk.complex.spaces[n].coords(cocycle.terms)))
            prim = hk.primitive(n, coords)
            pel = hk.complex.element(n - 1, [prim.get(i, 0) for i in range(hk.complex.dim(n - 1))])
            return {"degree": n, "cocycle": cocycle.to_json(), "primitive": pel.to_json()}
    raise InvariantFailure("rank deficit without a kernel vector", {"degree": n})


# ---------- condition (v) ----------

def _minus_part(alg: LieAlgebra, gens, space, theta: Matrix) -> list:
    """Basis elements of the -1 eigenspace of θ on an invariant subspace."""
    if not space.dim:
        return []
    th = theta_hom(gens, theta, range(alg.dim))
    cols = []
    for b in space.basis:
        cols.append(dict(enumerate(space.coords(th(GradedElement(gens, b)).terms))))
    m = Matrix.from_columns(space.dim, cols)
    _, minus = eigenspace_split(m)
    return [GradedElement(gens, space.combine(v)) for v in minus]


def ideal_span(ctx: PairContext, k: int) -> Echelon:
    """((S⁺ sg*)^g|_h · (S sh*)^h) in S-degree k, inside S sh*."""
    gd, hd = ctx.g_data, ctx.h_data
    ginv, hinv = gd.invariants(2 * k), hd.invariants(2 * k)
    ech = Echelon()
    for a in range(1, k + 1):
        for p in ginv.elements(a):
            rp = restrict_polynomial(ctx.h, gd.shifted, hd.shifted, p)
            if not rp:
                continue
            for q in hinv.elements(k - a):
                prod = multiply(rp, q)
                if prod:
                    ech.add(prod.terms)
    return ech


def cond_v(ctx: PairContext, sdeg_cap: int | None = None) -> Condition:
    """((S⁺ sh*)^h)^{-θ} lies in the ideal generated by restricted g-invariants."""
    sdeg_cap = ctx.sdeg_cap() if sdeg_cap is None else sdeg_cap
    hd = ctx.h_data
    hinv = hd.invariants(sdeg_cap)
    theta = ctx.h.induced.theta
    minus_dims, missing = [], None
    for k in range(1, sdeg_cap // 2 + 1):
        minus = _minus_part(ctx.h.induced, hd.shifted, hinv.spaces[k], theta)
        minus_dims.append(len(minus))
        if not minus:
            continue
        ideal = ideal_span(ctx, k)
        for x in minus:
            if not ideal.contains(x.terms):
                if missing is None:
                    missing = {"s_degree": 2 * k, "polynomial": x.to_json()}
                break
    return Condition("v", missing is None, sdeg_cap, {"minus_dims": minus_dims}, missing)


# ---------- condition (vi) ----------

def cond_vi(ctx: PairContext) -> Condition:
    """Surjectivity on -θ parts of indecomposables."""
    gd, hd = ctx.g_data, ctx.h_data
    top = ctx.sdeg_cap()
    ginv, hinv = gd.invariants(top), hd.invariants(top)
    ig = indecomposables(ginv, ctx.g.theta)
    ih = indecomposables(hinv, ctx.h.induced.theta)
    rows, witness = [], None
    for k in range(1, top // 2 + 1):
        tgt = ih.minus.get(k, [])
        src = ig.minus.get(k, [])
        tech = Echelon(dict(enumerate(v)) for v in tgt)
        ech = Echelon()
        for v in src:
            p = ig.lift_element(k, v)
            r = restrict_polynomial(ctx.h, gd.shifted, hd.shifted, p)
            img = ih.project(k, r) if ih.dim(k) else []
            vec = {i: x for i, x in enumerate(img) if x}
            if vec and not tech.contains(vec):
                raise InvariantFailure("restriction does not commute with θ on indecomposables", {"k": k})
            ech.add(vec)
        rows.append({"s_degree": 2 * k, "source_minus": len(src), "target_minus": len(tgt), "rank": ech.rank})
        if ech.rank < len(tgt) and witness is None:
            witness = dict(rows[-1])
    return Condition("vi", witness is None, top, {"degrees": rows}, witness)


# ---------- condition (vii) ----------

def restrict_form(ctx: PairContext, alpha: GradedElement) -> GradedElement:
    src = ctx.g.dual_generators()
    tgt = ctx.h.induced.dual_generators()
    return homomorphism(src, tgt, restriction_hom(ctx.h, src, tgt))(alpha)


def cond_vii(ctx: PairContext) -> Condition:
    """Surjectivity of restriction (P_g)^{-θ} → (P_h)^{-θ}."""
    pg, ph = ctx.g_data.prims, ctx.h_data.prims
    src = pg.minus_elements()
    tgt = ph.minus
    tech = Echelon(dict(enumerate(v)) for v in tgt)
    ech = Echelon()
    for alpha in src:
        r = restrict_form(ctx, alpha)
        try:
            c = ph.coords(r)
        except Exception as exc:
            raise InvariantFailure("restricted primitive is not primitive", {"form": r.to_json()}) from exc
        vec = {i: x for i, x in enumerate(c) if x}
        if vec and not tech.contains(vec):
            raise InvariantFailure("restriction does not commute with θ on primitives", {})
        ech.add(vec)
    details = {"source_minus_dim": len(src), "target_minus_dim": len(tgt), "rank": ech.rank}
    witness = None
    if ech.rank < len(tgt):
        for v in tgt:
            if not ech.contains(dict(enumerate(v))):
                witness = dict(details, missing=ph.combine(v).to_json())
                break
    return Condition("vii", ech.rank == len(tgt), None, details, witness)


# ---------- condition (viii) ----------

def viii_model(ctx: PairContext, cap: int | None = None):
    cap = ctx.k_cap() if cap is None else cap
    u = [(f"a{i + 1}", d) for i, d in enumerate(ctx.g_data.prims.degrees)]
    v = [(f"b{i + 1}", d) for i, d in enumerate(ctx.h_data.prims.degrees)]
    w = [(f"c{i + 1}", d) for i, d in enumerate(ctx.k_data.prims.degrees)]
    f = ctx.model.f
    gmap = pair_map(ctx.h_data, ctx.k_data, ctx.k_in_h)
    return relative_model(u, v, w, f, gmap, cap)


def cond_viii(ctx: PairContext, cap: int | None = None) -> tuple:
    """Collapse at E_2 of the spectral sequence of the (g, h, k_h) model."""
    if not ctx.h_data.td.theta_compatible:
        raise InvariantFailure("transgression of h is not θ-compatible", {})
    model = viii_model(ctx, cap)
    ss = spectral_sequence(model)
    fail = ss.first_failure()
    witness = None
    if fail is not None:
        witness = {"degree": fail, "e2_total": ss.total(2, fail), "target_dim": ss.target_dims[fail]}
    details = {"e2_totals": [ss.total(2, n) for n in range(model.cap + 1)],
               "target_dims": ss.target_dims}
    return Condition("viii", fail is None, model.cap, details, witness), model, ss


# ---------- verdict ----------

def verdict(ctx: PairContext, conds: dict) -> Verdict:
    r = ctx.ranks()
    lhs, rhs = r["g"] - r["g_theta"], r["h"] - r["k_h"]
    vii = conds["vii"].value
    if lhs < rhs and vii:
        raise InvariantFailure("rank criterion holds but (vii) is surjective", {"lhs": lhs, "rhs": rhs})
    if not vii:
        reason = RANK_CRITERION if lhs < rhs else NON_INJECTIVE_I if "i" in conds and not conds["i"].value \
            else NONE_FOUND
    else:
        reason = NONE_FOUND
    if reason == NON_INJECTIVE_I and conds["i"].value:
        raise InvariantFailure("NON_INJECTIVE_I without an (i) failure", {})
    return Verdict(lhs, rhs, not vii, reason)


def agree(conds: dict) -> bool:
    return len({c.value for c in conds.values()}) <= 1


# ---------- structure checks ----------

def symmetric_structure(ctx: PairContext, hm, cap: int) -> bool:
    """dim H^n(model) = Σ_j dim Λ^j(P^{-θ}) · dim (im w′)^{n-j} for h = g^θ."""
    minus_deg = [x.degree for x in ctx.g_data.prims.minus_elements()]
    lam = [0] * (cap + 1)
    lam[0] = 1
    for d in minus_deg:
        for n in range(cap, d - 1, -1):
            lam[n] += lam[n - d]
    im = image_w_prime_dims(ctx.model, hm, cap)
    for n in range(cap + 1):
        if hm.dim(n) != sum(lam[j] * im[n - j] for j in range(n + 1)):
            return False
    return True


# ---------- the full battery ----------

@dataclass
class PairReport:
    name: str
    family: str
    ctx: PairContext
    caps: dict
    ranks: dict
    primitive_degrees: dict
    cohomology: dict
    conditions: dict
    verdict: Verdict | None
    checks: dict

    @property
    def failures(self) -> list:
        return sorted(k for k, v in self.checks.items() if v is False)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "family": self.family,
            "algebra": self.ctx.g.name,
            "dim_g": self.ctx.g.dim,
            "dim_h": self.ctx.h.dim,
            "dim_k_h": self.ctx.k.dim,
            "caps": self.caps,
            "ranks": self.ranks,
            "primitive_degrees": self.primitive_degrees,
            "cohomology": self.cohomology,
            "conditions": {k: c.to_json() for k, c in sorted(self.conditions.items(), key=lambda t: CONDITIONS.index(t[0]))},
            "verdict": self.verdict.to_json() if self.verdict else None,
            "checks": dict(sorted(self.checks.items())),
        }


def run_battery(name: str, g: LieAlgebra, h: Subalgebra, conditions=CONDITIONS, cap: int | None = None,
                family: str = "", full: bool = True) -> PairReport:
    """Compute the requested conditions plus (unless full=False) every cross-check.

    Raises ConditionDisagreement when the conditions differ.
    """
    unknown = set(conditions) - set(CONDITIONS)
    if unknown:
        raise ValueError(f"unknown conditions: {sorted(unknown)}")
    ctx = PairContext(name, g, h)
    rel_cap = ctx.default_cap() if cap is None else cap
    k_cap = ctx.k_cap() if cap is None else cap
    conds: dict = {}
    checks: dict = {}
    if "vii" not in conditions:
        conditions = tuple(conditions) + ("vii",)
    ss = None
    for c in CONDITIONS:
        if c not in conditions:
            continue
        if c == "i":
            conds[c] = cond_i(ctx, k_cap)
        elif c == "v":
            conds[c] = cond_v(ctx)
        elif c == "vi":
            conds[c] = cond_vi(ctx)
        elif c == "vii":
            conds[c] = cond_vii(ctx)
        else:
            conds[c], model, ss = cond_viii(ctx, k_cap)
    ranks = ctx.ranks()
    pg, ph = ctx.g_data.prims, ctx.h_data.prims
    prim = {"g": list(pg.degrees), "h": list(ph.degrees), "k_h": list(ctx.k_data.prims.degrees),
            "g_minus": len(pg.minus), "h_minus": len(ph.minus)}
    checks["rank_identity_g"] = len(pg.minus) == ranks["g"] - ranks["g_theta"]
    checks["rank_identity_h"] = len(ph.minus) == ranks["h"] - ranks["k_h"]
    if g.rank is not None:
        checks["declared_rank"] = pg.dim == g.rank
    cohom = {}
    if full:
        rel = cohomology(relative_complex(g, h, rel_cap), rel_cap)
        hm = model_cohomology(ctx.model, rel_cap)
        cohom["relative"] = [rel.dim(n) for n in range(rel_cap + 1)]
        cohom["model"] = [hm.dim(n) for n in range(rel_cap + 1)]
        checks["two_path_cohomology"] = cohom["relative"] == cohom["model"]
        cc = build_cartan_complex(g, h, rel_cap)
        chev = check_chevalley(ctx.model, rel_cap, cc)
        cohom["cartan"] = chev.cartan_dims
        checks["chevalley_cochain_map"] = chev.cochain and chev.lands_in_invariants
        checks["chevalley_quasi_iso"] = chev.iso
        kcap = max(rel_cap, 2 * ctx.sdeg_cap())
        hk = model_cohomology(ctx.model, kcap)
        checks["chern_weil_kernel"] = all(compare_kernel(ctx.model, hk, n).equal for n in range(kcap + 1))
        if ctx.is_symmetric():
            checks["symmetric_structure"] = symmetric_structure(ctx, hk, kcap)
        if ss is not None:
            checks["model_identities"] = check_model(model).all_ok()
            checks["spectral_convergence"] = ss.converges()
            checks["spectral_e2_formula"] = ss.e2_matches_formula()
            checks["spectral_edge"] = ss.edge_ok()
    verdict_ = verdict(ctx, conds)
    caps = {"relative": rel_cap, "k_h": k_cap, "s_degree": ctx.sdeg_cap()}
    report = PairReport(name, family, ctx, caps, ranks, prim, cohom, conds, verdict_, checks)
    if not agree(conds):
        raise ConditionDisagreement(f"{name}: conditions disagree", report.to_json())
    if "i" in conds and "v" in conds and not conds["i"].value and conds["v"].value:
        raise ConditionDisagreement(f"{name}: (i) fails while (v) holds", report.to_json())
    return report
