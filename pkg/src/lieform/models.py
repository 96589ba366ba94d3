"""Sullivan models of Lie pairs: the map f, the Chevalley homomorphism, ker w′."""

from __future__ import annotations

from dataclasses import dataclass, field

from .cartan import CartanComplex, build_cartan_complex
from .complexes import Cohomology, cohomology
from .graded import (Generator, GeneratorSet, GradedElement, basis_of_degree, homomorphism,
                     multiply)
from .lie import LieAlgebra, Subalgebra
from .linalg import Echelon, Subspace, solve_sparse, sparse_kernel
from .sullivan import PureSullivanAlgebra, induced_rank, make_psa
from .transgression import (InvariantPolynomials, PrimitiveSpace, TransgressionData,
                            build_transgression, invariant_polynomials, primitives,
                            restriction_hom)


class PairModelError(ArithmeticError):
    pass


@dataclass
class AlgebraData:
    """Primitives, invariant polynomials and a transgression for one algebra."""

    algebra: LieAlgebra
    prims: PrimitiveSpace
    td: TransgressionData
    _inv: dict = field(default_factory=dict)
    _sinv: dict = field(default_factory=dict)

    @property
    def shifted(self) -> GeneratorSet:
        return self.td.inv.gens

    def invariants(self, max_sdeg: int) -> InvariantPolynomials:
        if self.td.inv.spaces and max(self.td.inv.spaces) * 2 >= max_sdeg:
            return self.td.inv
        if max_sdeg not in self._inv:
            self._inv[max_sdeg] = invariant_polynomials(self.algebra, max_sdeg)
        return self._inv[max_sdeg]

    def suspension_gens(self, prefix: str) -> GeneratorSet:
        return GeneratorSet(Generator(f"s{prefix}{i + 1}", d + 1) for i, d in enumerate(self.prims.degrees))

    def s_tau(self, prefix: str):
        """sτ: S sP → (S s·*)^· as an algebra map."""
        sg = self.suspension_gens(prefix)
        return sg, homomorphism(sg, self.shifted, dict(enumerate(self.td.tau)))

    def s_tau_inverse(self, poly: GradedElement, prefix: str = "b") -> dict:
        """Exponent vectors over sP with sτ(result) = poly (poly must be invariant)."""
        if poly.ambient != self.shifted:
            raise PairModelError("polynomial lives in the wrong ring")
        out: dict = {}
        for n in sorted(poly.degrees()):
            part = poly.homogeneous(n)
            sg, hom = self.s_tau(prefix)
            mons = basis_of_degree(sg, n)
            rows: dict = {}
            for c, key in enumerate(mons):
                for tk, v in hom(GradedElement.monomial(sg, key)).terms.items():
                    rows.setdefault(tk, {})[c] = v
            index = {k: i for i, k in enumerate(sorted(set(rows) | set(part.terms)))}
            srows = {index[k]: r for k, r in rows.items()}
            x = solve_sparse(srows, len(mons), {index[k]: v for k, v in part.terms.items()})
            if x is None:
                raise PairModelError("polynomial is not in the image of sτ")
            for c, v in x.items():
                out[mons[c][1]] = out.get(mons[c][1], 0) + v
        return {e: c for e, c in out.items() if c}


def algebra_data(alg: LieAlgebra, check_rank: bool = True) -> AlgebraData:
    prims = primitives(alg, check_rank=check_rank)
    td = build_transgression(alg, prims, theta=alg.theta)
    return AlgebraData(alg, prims, td)


def restrict_polynomial(h: Subalgebra, src: GeneratorSet, tgt: GeneratorSet, poly: GradedElement) -> GradedElement:
    hom = homomorphism(src, tgt, restriction_hom(h, src, tgt))
    return hom(poly)


def pair_map(g_data: AlgebraData, h_data: AlgebraData, h: Subalgebra) -> dict:
    """f(sα_i) = sτ_h⁻¹(τ_g(α_i)|_h), as exponent dictionaries over sP_h."""
    out = {}
    for i, t in enumerate(g_data.td.tau):
        r = restrict_polynomial(h, g_data.shifted, h_data.shifted, t)
        out[i] = h_data.s_tau_inverse(r)
    return out


def within(sub: Subalgebra, h: Subalgebra, name: str = "k") -> Subalgebra:
    """`sub` (a subalgebra of g inside h) as a subalgebra of h.induced."""
    vecs = []
    for v in sub.vectors:
        c = h.coords(v)
        if c is None:
            raise PairModelError(f"{sub.name} is not contained in {h.name}")
        vecs.append({a: x for a, x in enumerate(c) if x})
    return Subalgebra(h.induced, vecs, name=name)


@dataclass
class PairModel:
    """Λ P_g ⊗ S sP_h with -δ_f for a pair (g, h)."""

    g: LieAlgebra
    h: Subalgebra
    g_data: AlgebraData
    h_data: AlgebraData
    psa: PureSullivanAlgebra
    f: dict

    def u_list(self) -> list:
        return [(f"a{i + 1}", d) for i, d in enumerate(self.g_data.prims.degrees)]

    def v_list(self) -> list:
        return [(f"b{i + 1}", d) for i, d in enumerate(self.h_data.prims.degrees)]


def pair_model(g: LieAlgebra, h: Subalgebra, g_data: AlgebraData | None = None,
               h_data: AlgebraData | None = None) -> PairModel:
    g_data = g_data or algebra_data(g)
    h_data = h_data or algebra_data(h.induced, check_rank=False)
    f = pair_map(g_data, h_data, h)
    u = [(f"a{i + 1}", d) for i, d in enumerate(g_data.prims.degrees)]
    sv = [(f"sb{i + 1}", d + 1) for i, d in enumerate(h_data.prims.degrees)]
    psa = make_psa(u, sv, f)
    return PairModel(g, h, g_data, h_data, psa, f)


def model_cohomology(pm: PairModel, cap: int) -> Cohomology:
    return cohomology(pm.psa.complex(cap), cap)


# ---------- Chevalley homomorphism ----------

@dataclass
class ChevalleyHom:
    pm: PairModel
    cc: CartanComplex
    hom: object

    def __call__(self, x: GradedElement) -> GradedElement:
        return self.hom(x)


def chevalley_hom(pm: PairModel, cc: CartanComplex) -> ChevalleyHom:
    """α ↦ α ⊗ 1 + (1 ⊗ res)Ω(α), sβ ↦ 1 ⊗ τ_h(β)."""
    g, h = pm.g, pm.h
    td = pm.g_data.td
    cg = td.data.gens
    res_images = {k: GradedElement.gen(cc.gens, k) for k in range(g.dim)}
    res_images.update(restriction_hom(h, cg, cc.gens, offset_src=g.dim, offset_tgt=g.dim))
    res = homomorphism(cg, cc.gens, res_images)
    images = {}
    zeros = (0,) * h.dim
    for i, (alpha, om) in enumerate(zip(pm.g_data.prims.basis, td.omega)):
        a1 = GradedElement(cc.gens, {(m, zeros): c for (m, _), c in alpha.terms.items()})
        images[i] = a1 + res(om)
    nu = len(pm.g_data.prims.degrees)
    for j, t in enumerate(pm.h_data.td.tau):
        images[nu + j] = GradedElement(cc.gens, {(0, e): c for (_, e), c in t.terms.items()})
    return ChevalleyHom(pm, cc, homomorphism(pm.psa.gens, cc.gens, images))


@dataclass
class ChevalleyCheck:
    cochain: bool
    lands_in_invariants: bool
    iso: bool
    model_dims: list
    cartan_dims: list


def check_chevalley(pm: PairModel, cap: int, cc: CartanComplex | None = None) -> ChevalleyCheck:
    cc = cc or build_cartan_complex(pm.g, pm.h, cap)
    theta = chevalley_hom(pm, cc)
    d_model = pm.psa.differential()
    d_cartan = cc.d
    cochain, lands = True, True
    for n in range(cap + 1):
        for key in basis_of_degree(pm.psa.gens, n):
            x = GradedElement.monomial(pm.psa.gens, key)
            y = theta(x)
            if y and not cc.complex.spaces[n].contains(y.terms):
                lands = False
            if theta(d_model(x)) != d_cartan(y):
                cochain = False
    hm = cohomology(pm.psa.complex(cap), cap)
    hc = cohomology(cc.complex, cap)
    iso = lands and cochain
    if iso:
        for n in range(cap + 1):
            if hm.dim(n) != hc.dim(n) or induced_rank(theta, hm, hc, n, cc.gens) != hc.dim(n):
                iso = False
    return ChevalleyCheck(cochain, lands, iso, [hm.dim(n) for n in range(cap + 1)],
                          [hc.dim(n) for n in range(cap + 1)])


# ---------- Chern–Weil kernel ----------

@dataclass
class KernelComparison:
    degree: int
    kernel_dim: int
    ideal_dim: int
    kernel_in_ideal: bool
    ideal_in_kernel: bool

    @property
    def equal(self) -> bool:
        return self.kernel_in_ideal and self.ideal_in_kernel and self.kernel_dim == self.ideal_dim


def _sv_keys(pm: PairModel, n: int) -> list:
    return [k for k in basis_of_degree(pm.psa.gens, n) if k[0] == 0]


def ker_w_prime(pm: PairModel, hm: Cohomology, n: int) -> list:
    """Basis of {Q ∈ (S sV)^n : 1 ⊗ Q is a coboundary}, as elements of the model."""
    cx = hm.complex
    sub = Subspace.coordinate(_sv_keys(pm, n))
    if not sub.dim:
        return []
    pos = {k: i for i, k in enumerate(cx.spaces[n].positions)}
    bnd = hm.boundaries[n].reduced() if n in hm.boundaries else {}
    bvecs = list(bnd.values())
    if not bvecs:
        return []
    inside = {pos[k] for k in sub.positions}
    rows: dict = {}
    for c, v in enumerate(bvecs):
        for i, x in v.items():
            if i not in inside:
                rows.setdefault(i, {})[c] = x
    combos = sparse_kernel(list(rows.values()), range(len(bvecs)))
    out = []
    for w in combos:
        acc: dict = {}
        for c, x in w.items():
            for i, y in bvecs[c].items():
                acc[i] = acc.get(i, 0) + x * y
        out.append(cx.element(n, [acc.get(i, 0) for i in range(cx.dim(n))]))
    return out


def ideal_in_model(pm: PairModel, n: int) -> list:
    """Spanning set of ((S⁺ sg*)^g|_h · (S sh*)^h)^n, pulled back along sτ_h."""
    gd, hd = pm.g_data, pm.h_data
    ginv = gd.invariants(n)
    hinv = hd.invariants(n)
    out = []
    for a in range(1, n // 2 + 1):
        b = n // 2 - a
        if n % 2:
            break
        gp = ginv.spaces.get(a)
        hq = hinv.spaces.get(b)
        if gp is None or hq is None:
            continue
        for p in ginv.elements(a):
            rp = restrict_polynomial(pm.h, gd.shifted, hd.shifted, p)
            if not rp:
                continue
            for q in hinv.elements(b):
                prod = multiply(rp, q)
                if prod:
                    exps = hd.s_tau_inverse(prod)
                    out.append(GradedElement(pm.psa.gens, {(0, e): c for e, c in exps.items()}))
    return out


def compare_kernel(pm: PairModel, hm: Cohomology, n: int) -> KernelComparison:
    ker = ker_w_prime(pm, hm, n)
    ideal = ideal_in_model(pm, n)
    kech = Echelon(x.terms for x in ker)
    iech = Echelon(x.terms for x in ideal)
    return KernelComparison(n, kech.rank, iech.rank,
                            all(iech.contains(x.terms) for x in ker),
                            all(kech.contains(x.terms) for x in ideal))


def image_w_prime_dims(pm: PairModel, hm: Cohomology, cap: int) -> list:
    """dim of the image of S sV in H(model), per degree."""
    out = []
    for n in range(cap + 1):
        out.append(len(_sv_keys(pm, n)) - len(ker_w_prime(pm, hm, n)))
    return out
