"""The Cartan model (Λ g* ⊗ S sh*)^h with d_{g,h} = d ⊗ 1 - Σ_j ι(F_j) ⊗ μ(sF^j)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from .complexes import CochainComplex, build_complex, cohomology, interior_rows
from .graded import (Generator, GeneratorSet, GradedElement, derivation, homomorphism,
                     monomials_by_counts)
from .invariants import GeneratorAction, coadjoint_action, merge_actions
from .lie import LieAlgebra, Subalgebra, ValidationError
from .linalg import Matrix, Subspace, inverse


def cartan_generators(g: LieAlgebra, h: Subalgebra) -> GeneratorSet:
    gens = [Generator(nm, 1) for nm in g.dual_names()]
    gens += [Generator(f"s{b}*", 2) for b in h.induced.basis]
    return GeneratorSet(gens)


@dataclass
class CartanComplex:
    g: LieAlgebra
    h: Subalgebra
    cap: int
    gens: GeneratorSet
    action: GeneratorAction
    complex: CochainComplex

    @property
    def d(self):
        return cartan_differential(self.g, self.h, self.gens)

    def bidegree_space(self, a: int, j: int) -> Subspace:
        return invariant_bidegree(self.gens, self.action, self.g.dim, a, j)


def cartan_action(g: LieAlgebra, h: Subalgebra, gens: GeneratorSet) -> GeneratorAction:
    on_forms = coadjoint_action(g, gens, acting=h.vectors)
    on_shifted = coadjoint_action(h.induced, gens, offset=g.dim)
    return GeneratorAction(h.induced, gens, merge_actions(on_forms, on_shifted))


def cartan_differential(g: LieAlgebra, h: Subalgebra, gens: GeneratorSet):
    images = g.ce_images(gens)
    for a, v in enumerate(h.vectors):
        skey = gens.generator_key(g.dim + a)
        for k, c in v.items():
            t = dict(images[k].terms)
            t[skey] = t.get(skey, 0) - c
            images[k] = GradedElement(gens, t)
    return derivation(gens, images, odd=True)


def invariant_bidegree(gens: GeneratorSet, action: GeneratorAction, n_forms: int, a: int, j: int) -> Subspace:
    """(Λ^a g* ⊗ S^j sh*)^h."""
    if a < 0 or j < 0 or a > n_forms:
        return Subspace([], [])
    keys = monomials_by_counts(gens, a, j)
    return action.invariants(keys)


def _union(spaces) -> Subspace:
    basis, pos = [], []
    for s in spaces:
        basis.extend(s.basis)
        pos.extend(s.positions)
    return Subspace(basis, pos)


def build_cartan_complex(g: LieAlgebra, h: Subalgebra, cap: int) -> CartanComplex:
    if cap < 0:
        raise ValueError("cap must be non-negative")
    gens = cartan_generators(g, h)
    action = cartan_action(g, h, gens)
    spaces = {}
    for n in range(cap + 2):
        parts = [invariant_bidegree(gens, action, g.dim, n - 2 * j, j) for j in range(n // 2 + 1)]
        spaces[n] = _union(parts)
    cx = build_complex(gens, spaces, cartan_differential(g, h, gens), name=f"Cartan({g.name},{h.name})")
    return CartanComplex(g, h, cap, gens, action, cx)


def epsilon(cc: CartanComplex, alpha: GradedElement) -> GradedElement:
    """α ↦ α ⊗ 1 for a relative cochain α ∈ Λ g*."""
    h = cc.h
    for v in h.vectors:
        rows = interior_rows(alpha.ambient, list(alpha.terms), v)
        if any(sum((r.get(k, 0) * c for k, c in alpha.terms.items()), Fraction(0)) for r in rows):
            raise ValidationError("cochain is not horizontal")
    zeros = (0,) * h.dim
    return GradedElement(cc.gens, {(mask, zeros): c for (mask, _), c in alpha.terms.items()})


# ---------- ψ_V ----------

@dataclass
class PsiV:
    """ψ_V: Λ g* ⊗ S sh* → Λ g*, α ⊗ sQ ↦ π_V(α) ∧ χ(sQ)."""

    projection: Matrix     # π_V on g* coordinates: x^k ↦ Σ_j projection[k, j] x^j
    hom: object
    chi_images: dict

    def __call__(self, x: GradedElement) -> GradedElement:
        return self.hom(x)


def complement_data(h: Subalgebra):
    """(V vectors, P^{-1}) with P = [h basis | V basis]; V is h-invariant."""
    vs, invariant = h.complement()
    if not invariant:
        raise ValidationError(f"no invariant complement to {h.name}: the invariant form degenerates on it")
    g = h.g
    p = Matrix.from_columns(g.dim, h.vectors + vs)
    return vs, inverse(p), p


def build_psi(cc: CartanComplex) -> PsiV:
    g, h = cc.g, cc.h
    vs, pinv, p = complement_data(h)
    dh = h.dim
    keep = Matrix(g.dim, g.dim, {i: {i: 1} for i in range(dh, g.dim)})
    proj_v = p @ keep @ pinv            # projection g -> V along h, on columns
    lam = g.dual_generators()
    # π_V(x^k) = x^k ∘ p_V = Σ_j proj_v[k, j] x^j
    pi_images = {}
    for k in range(g.dim):
        pi_images[k] = GradedElement(lam, {lam.generator_key(j): c for j, c in proj_v.row(k).items()})
    pi = homomorphism(lam, lam, pi_images)
    d = g.ce_differential(lam)
    images = dict(pi_images)
    chi = {}
    for a in range(dh):
        fa = GradedElement(lam, {lam.generator_key(j): c for j, c in pinv.row(a).items()})
        # curvature of the connection p_h; the sign follows the CE convention in use
        chi[a] = pi(d(fa))
        images[g.dim + a] = chi[a]
    hom = homomorphism(cc.gens, lam, images)
    return PsiV(proj_v, hom, chi)


def chern_weil(cc: CartanComplex, psi: PsiV, q: GradedElement) -> GradedElement:
    """Representative ψ_V(1 ⊗ sQ) in the relative complex; q lives in the Cartan ambient."""
    return psi(q)


def shifted_to_cartan(cc: CartanComplex, q: GradedElement) -> GradedElement:
    """Move an element of S sh* (generators named s<b>*) into the Cartan ambient."""
    out = {}
    for (mask, exps), c in q.terms.items():
        if mask:
            raise ValueError("expected a polynomial in shifted generators")
        out[(0, tuple(exps))] = c
    return GradedElement(cc.gens, out)


def cartan_cohomology_dims(g: LieAlgebra, h: Subalgebra, cap: int) -> list:
    cc = build_cartan_complex(g, h, cap)
    hh = cohomology(cc.complex, cap)
    return [hh.dim(n) for n in range(cap + 1)]


def check_epsilon_psi(cc: CartanComplex, psi: PsiV, rel: CochainComplex) -> bool:
    """ψ_V ∘ ε = identity on every relative basis element."""
    for n in rel.degrees:
        for b in rel.spaces[n].basis:
            a = GradedElement(rel.gens, b)
            if psi(epsilon(cc, a)) != a:
                return False
    return True
