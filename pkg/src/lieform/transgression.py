"""Primitive invariant forms, invariant polynomials, the Cartan map and transgressions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cartan import cartan_action, cartan_differential, cartan_generators, invariant_bidegree
from .complexes import exterior_piece, invariant_spaces
from .graded import (Generator, GeneratorSet, GradedElement, basis_of_degree, exterior_dims,
                     homomorphism, monomials_by_counts, multiply)
from .invariants import GeneratorAction, adjoint_action_matrix, coadjoint_action, theta_images
from .lie import LieAlgebra, Subalgebra
from .linalg import (Echelon, Matrix, Subspace, eigenspace_split, inverse,
                     quotient_and_section, solve_sparse, sparse_kernel)


class TransgressionError(ArithmeticError):
    pass


def _elements(gens: GeneratorSet, space: Subspace) -> list:
    return [GradedElement(gens, b) for b in space.basis]


def theta_hom(gens: GeneratorSet, theta: Matrix, indices: Sequence[int]):
    images = {i: GradedElement.gen(gens, i) for i in range(len(gens))}
    images.update(theta_images(gens, theta, indices))
    return homomorphism(gens, gens, images)


# ---------- primitives ----------

@dataclass
class PrimitiveSpace:
    algebra: LieAlgebra
    gens: GeneratorSet                  # dual generators of the algebra
    basis: list                         # GradedElements, RREF-normalized, sorted by degree
    degrees: list
    invariant_dims: list                # dim (Λ^p g*)^g, p = 0..dim
    theta_matrix: Matrix | None = None  # θ on primitive coordinates
    plus: list = field(default_factory=list)   # coordinate vectors
    minus: list = field(default_factory=list)
    _space: Subspace | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, x: GradedElement) -> list:
        """Coordinates of a primitive form in `basis` (LinalgError if not primitive)."""
        return self._space.coords(x.terms)

    def combine(self, coords: Sequence) -> GradedElement:
        out = GradedElement.zero(self.gens)
        for c, b in zip(coords, self.basis):
            if c:
                out = out + b.scale(c)
        return out

    def minus_elements(self) -> list:
        return [self.combine(v) for v in self.minus]


def invariant_multivectors(g: LieAlgebra) -> dict:
    """(Λ^p g)^g for all p, on vector generators."""
    gens = g.vector_generators()
    action = GeneratorAction(g, gens, [adjoint_action_matrix(g, a) for a in range(g.dim)])
    return gens, {p: action.invariants(exterior_piece(gens, p)) for p in range(g.dim + 1)}


def primitives(g: LieAlgebra, check_rank: bool = True) -> PrimitiveSpace:
    """P_{g*}: invariant forms killing decomposable invariant multivectors.

    The pairing of Λ^p g with Λ^p g* is the determinant pairing, under which
    dual monomials pair to 1 and distinct monomials to 0.
    """
    gens = g.dual_generators()
    forms = invariant_spaces(g)
    vgens, vecs = invariant_multivectors(g)
    vel = {p: _elements(vgens, s) for p, s in vecs.items()}
    basis, degrees = [], []
    for p in range(1, g.dim + 1):
        dec = Echelon()
        for a in range(1, p):
            for x in vel[a]:
                for y in vel[p - a]:
                    xy = multiply(x, y)
                    if xy:
                        dec.add(xy.terms)
        inv = forms[p]
        if not inv.dim:
            continue
        rows = []
        for drow in dec.reduced().values():
            rows.append({i: sum((b.get(k, 0) * v for k, v in drow.items()), Fraction(0))
                         for i, b in enumerate(inv.basis)})
        ker = sparse_kernel(rows, range(inv.dim))
        prim = [inv.combine([k.get(i, 0) for i in range(inv.dim)]) for k in ker]
        sp = Subspace.span(prim)
        for b in sp.basis:
            basis.append(GradedElement(gens, b))
            degrees.append(p)
    inv_dims = [forms[p].dim for p in range(g.dim + 1)]
    ps = PrimitiveSpace(g, gens, basis, degrees, inv_dims)
    ps._space = Subspace([b.terms for b in basis], [min(b.terms) for b in basis])
    if any(d % 2 == 0 for d in degrees):
        raise TransgressionError(f"{g.name}: primitive of even degree found")
    if exterior_dims(degrees, g.dim) != inv_dims:
        raise TransgressionError(f"{g.name}: Λ P does not match the invariant forms")
    if check_rank and g.rank is not None and len(basis) != g.rank:
        raise TransgressionError(f"{g.name}: dim P = {len(basis)} but declared rank is {g.rank}")
    if g.theta is not None:
        th = theta_hom(gens, g.theta, range(g.dim))
        cols = [dict(enumerate(ps.coords(th(b)))) for b in basis]
        tm = Matrix.from_columns(len(basis), cols)
        plus, minus = eigenspace_split(tm)
        ps.theta_matrix = tm
        ps.plus = [list(v) for v in plus]
        ps.minus = [list(v) for v in minus]
    return ps


# ---------- invariant polynomials ----------

def shifted_generators(alg: LieAlgebra) -> GeneratorSet:
    return GeneratorSet(Generator(nm, 2) for nm in [f"s{b}*" for b in alg.basis])


@dataclass
class InvariantPolynomials:
    algebra: LieAlgebra
    gens: GeneratorSet
    spaces: dict          # k -> Subspace of (S^k sg*)^g (shifted degree 2k)

    def dim(self, k: int) -> int:
        return self.spaces[k].dim if k in self.spaces else 0

    def elements(self, k: int) -> list:
        return _elements(self.gens, self.spaces.get(k, Subspace([], [])))


def invariant_polynomials(alg: LieAlgebra, max_sdeg: int) -> InvariantPolynomials:
    """(S sg*)^g in shifted degrees 0..max_sdeg (only even degrees are nonzero)."""
    gens = shifted_generators(alg)
    action = GeneratorAction(alg, gens, coadjoint_action(alg, gens))
    spaces = {k: action.invariants(monomials_by_counts(gens, 0, k)) for k in range(max_sdeg // 2 + 1)}
    return InvariantPolynomials(alg, gens, spaces)


def decomposables(inv: InvariantPolynomials, k: int) -> list:
    """Products of positive-degree invariants landing in S^k."""
    out = Echelon()
    for a in range(1, k // 2 + 1):
        for x in inv.elements(a):
            for y in inv.elements(k - a):
                out.add(multiply(x, y).terms)
    return list(out.reduced().values())


# ---------- Cartan map ----------

@dataclass
class CartanMapData:
    """Cached (g, g) Cartan structures for repeated Cartan-map solves."""

    g: LieAlgebra
    whole: Subalgebra
    gens: GeneratorSet
    action: GeneratorAction
    d: object
    forms: dict
    _bidegree: dict = field(default_factory=dict)

    def space(self, a: int, j: int) -> Subspace:
        if (a, j) not in self._bidegree:
            self._bidegree[(a, j)] = invariant_bidegree(self.gens, self.action, self.g.dim, a, j)
        return self._bidegree[(a, j)]

    def to_cartan(self, p: GradedElement) -> GradedElement:
        """S sg* (shifted generators) -> Λ g* ⊗ S sg*."""
        return GradedElement(self.gens, {(0, exps): c for (_, exps), c in p.terms.items()})

    def form_part(self, x: GradedElement) -> GradedElement:
        lam = self.g.dual_generators()
        return GradedElement(lam, {(m, ()): c for (m, e), c in x.terms.items() if not any(e)})


def cartan_map_data(g: LieAlgebra) -> CartanMapData:
    whole = Subalgebra(g, [{i: Fraction(1)} for i in range(g.dim)], name=g.name, basis_names=g.basis)
    gens = cartan_generators(g, whole)
    action = cartan_action(g, whole, gens)
    d = cartan_differential(g, whole, gens)
    return CartanMapData(g, whole, gens, action, d, invariant_spaces(g))


def cartan_map(data: CartanMapData, sp: GradedElement, k: int, need_certificate: bool = True):
    """(ρ(sP), Ω) with d_{g,g}(ρ ⊗ 1 + Ω) = -1 ⊗ sP for sP ∈ (S^k sg*)^g.

    When (Λ^{2k-1} g*)^g = 0 and no certificate is requested, returns (0, None).
    """
    g = data.g
    lam = g.dual_generators()
    top = 2 * k - 1
    if not need_certificate and (top > g.dim or data.forms[top].dim == 0):
        return GradedElement.zero(lam), None
    cols = []
    for j in range(k):
        a = top - 2 * j
        if a < 0:
            continue
        for b in data.space(a, j).basis:
            cols.append(b)
    rhs = (-data.to_cartan(sp)).terms
    images = [data.d(GradedElement(data.gens, b)).terms for b in cols]
    rows: dict = {}
    for c, img in enumerate(images):
        for key, v in img.items():
            rows.setdefault(key, {})[c] = v
    keys = sorted(set(rows) | set(rhs))
    kidx = {key: i for i, key in enumerate(keys)}
    x = solve_sparse({kidx[key]: r for key, r in rows.items()}, len(cols),
                     {kidx[key]: v for key, v in rhs.items()})
    if x is None:
        raise TransgressionError("Cartan map system is inconsistent; the (g, g) complex is not acyclic")
    total: dict = {}
    for c, v in x.items():
        for key, w in cols[c].items():
            total[key] = total.get(key, 0) + v * w
    sol = GradedElement(data.gens, total)
    if data.d(sol) != -data.to_cartan(sp):
        raise TransgressionError("Cartan map certificate failed re-verification")
    rho = data.form_part(sol)
    omega = GradedElement(data.gens, {(m, e): c for (m, e), c in sol.terms.items() if any(e)})
    return rho, omega


# ---------- indecomposables ----------

@dataclass
class Indecomposables:
    """Per S-degree k: quotient of (S^k)^g by decomposables, in invariant coordinates."""

    inv: InvariantPolynomials
    projection: dict      # k -> Matrix (quotient coords x invariant coords)
    lift: dict            # k -> Matrix
    theta: dict           # k -> Matrix on quotient coords
    plus: dict
    minus: dict

    def dim(self, k: int) -> int:
        return self.projection[k].nrows if k in self.projection else 0

    def lift_element(self, k: int, qcoords: Sequence) -> GradedElement:
        icoords = self.lift[k] @ list(qcoords)
        return GradedElement(self.inv.gens, self.inv.spaces[k].combine(icoords))

    def project(self, k: int, p: GradedElement) -> tuple:
        c = self.inv.spaces[k].coords(p.terms)
        return self.projection[k] @ c


def indecomposables(inv: InvariantPolynomials, theta: Matrix | None = None) -> Indecomposables:
    alg = inv.algebra
    proj, lift, th, plus, minus = {}, {}, {}, {}, {}
    thom = theta_hom(inv.gens, theta, range(alg.dim)) if theta is not None else None
    for k in sorted(inv.spaces):
        if k == 0:
            continue
        space = inv.spaces[k]
        dec = [space.coords(v) for v in decomposables(inv, k)]
        p, l = quotient_and_section(space.dim, dec)
        proj[k], lift[k] = p, l
        if thom is not None:
            cols = []
            for c in range(l.ncols):
                x = GradedElement(inv.gens, space.combine(l @ [1 if i == c else 0 for i in range(l.ncols)]))
                cols.append(dict(enumerate(p @ space.coords(thom(x).terms))))
            tm = Matrix.from_columns(p.nrows, cols)
            th[k] = tm
            pl, mi = eigenspace_split(tm)
            plus[k], minus[k] = pl, mi
    return Indecomposables(inv, proj, lift, th, plus, minus)


# ---------- transgressions ----------

@dataclass
class TransgressionData:
    """τ: P_{g*} → (S⁺ sg*)^g with certificates Ω."""

    algebra: LieAlgebra
    prims: PrimitiveSpace
    inv: InvariantPolynomials
    data: CartanMapData
    tau: list              # per primitive basis element: GradedElement in S sg*
    omega: list            # per primitive: GradedElement in the (g, g) Cartan ambient
    theta_compatible: bool

    def tau_of(self, coords: Sequence) -> GradedElement:
        out = GradedElement.zero(self.inv.gens)
        for c, t in zip(coords, self.tau):
            if c:
                out = out + t.scale(c)
        return out

    def verify_certificates(self) -> bool:
        d = self.data
        for alpha, t, om in zip(self.prims.basis, self.tau, self.omega):
            lhs = GradedElement(d.gens, {(m, (0,) * self.algebra.dim): c for (m, _), c in alpha.terms.items()})
            if d.d(lhs + om) != -d.to_cartan(t):
                return False
        return True


def transgression_cap(prims: PrimitiveSpace) -> int:
    return max(prims.degrees, default=0) + 1


def build_transgression(g: LieAlgebra, prims: PrimitiveSpace | None = None,
                        theta: Matrix | None = None, inv: InvariantPolynomials | None = None,
                        data: CartanMapData | None = None) -> TransgressionData:
    """A transgression via exact ρ-preimages of indecomposables, θ-averaged when θ is given."""
    prims = prims or primitives(g)
    cap = transgression_cap(prims)
    if inv is None or max(inv.spaces) * 2 < cap:
        inv = invariant_polynomials(g, cap)
    data = data or cartan_map_data(g)
    ind = indecomposables(inv)
    n = prims.dim
    tau: list = [None] * n
    omega: list = [None] * n
    for p in sorted(set(prims.degrees)):
        k = (p + 1) // 2
        idx = [i for i, d in enumerate(prims.degrees) if d == p]
        m = ind.dim(k)
        if m != len(idx):
            raise TransgressionError(f"{g.name}: {m} indecomposables in S^{k} but {len(idx)} primitives")
        lifts, rhos, omegas = [], [], []
        for c in range(m):
            q = ind.lift_element(k, [1 if i == c else 0 for i in range(m)])
            rho, om = cartan_map(data, q, k)
            lifts.append(q)
            omegas.append(om)
            coords = prims.coords(rho)
            rhos.append([coords[i] for i in idx])
            if any(coords[i] for i in range(n) if i not in idx):
                raise TransgressionError("Cartan map left the primitive degree")
        r = Matrix.from_columns(m, [dict(enumerate(v)) for v in rhos])
        rinv = inverse(r)
        for col, i in enumerate(idx):
            t = GradedElement.zero(inv.gens)
            om = GradedElement.zero(data.gens)
            for c in range(m):
                w = rinv[c, col]
                if w:
                    t = t + lifts[c].scale(w)
                    om = om + omegas[c].scale(w)
            tau[i], omega[i] = t, om
    compatible = False
    if theta is not None:
        tau, omega = _theta_average(g, prims, inv, data, tau, omega, theta)
        compatible = True
    td = TransgressionData(g, prims, inv, data, tau, omega, compatible)
    if not td.verify_certificates():
        raise TransgressionError("transgression certificate failed re-verification")
    if compatible and not theta_commutes(td, theta):
        raise TransgressionError("θ-averaged transgression does not commute with θ")
    return td


def _theta_average(g, prims, inv, data, tau, omega, theta):
    tm = prims.theta_matrix
    if tm is None:
        gens = prims.gens
        th = theta_hom(gens, theta, range(g.dim))
        tm = Matrix.from_columns(prims.dim, [dict(enumerate(prims.coords(th(b)))) for b in prims.basis])
    ts = theta_hom(inv.gens, theta, range(g.dim))
    tc = theta_hom(data.gens, theta, list(range(g.dim)))
    tc2 = theta_hom(data.gens, theta, list(range(g.dim, 2 * g.dim)))
    half = Fraction(1, 2)
    new_tau, new_omega = [], []
    for i in range(prims.dim):
        # θ τ θ applied to the i-th primitive: θ(α_i) = Σ_l tm[l, i] α_l
        t2 = GradedElement.zero(inv.gens)
        o2 = GradedElement.zero(data.gens)
        for l in range(prims.dim):
            c = tm[l, i]
            if c:
                t2 = t2 + tau[l].scale(c)
                o2 = o2 + omega[l].scale(c)
        new_tau.append((tau[i] + ts(t2)).scale(half))
        new_omega.append((omega[i] + tc2(tc(o2))).scale(half))
    return new_tau, new_omega


def theta_commutes(td: TransgressionData, theta: Matrix) -> bool:
    g = td.algebra
    ts = theta_hom(td.inv.gens, theta, range(g.dim))
    tm = td.prims.theta_matrix
    if tm is None:
        th = theta_hom(td.prims.gens, theta, range(g.dim))
        tm = Matrix.from_columns(td.prims.dim, [dict(enumerate(td.prims.coords(th(b)))) for b in td.prims.basis])
    for i in range(td.prims.dim):
        rhs = td.tau_of([tm[l, i] for l in range(td.prims.dim)])
        if ts(td.tau[i]) != rhs:
            return False
    return True


def rho_tau_identity(td: TransgressionData) -> bool:
    """ρ(τ(α_i)) = α_i for every primitive basis element, by fresh solves."""
    for i, t in enumerate(td.tau):
        k = (td.prims.degrees[i] + 1) // 2
        rho, _ = cartan_map(td.data, t, k)
        if rho != td.prims.basis[i]:
            return False
    return True


def kernel_of_rho_is_decomposable(td: TransgressionData, max_k: int) -> bool:
    """ker ρ = decomposables on (S^k)^g for 1 <= k <= max_k (two-sided, by rank)."""
    inv = td.inv
    if max(inv.spaces) < max_k:
        inv = invariant_polynomials(td.algebra, 2 * max_k)
    for k in range(1, max_k + 1):
        space = inv.spaces[k]
        if not space.dim:
            continue
        rhos = []
        for b in inv.elements(k):
            rho, _ = cartan_map(td.data, b, k, need_certificate=False)
            rhos.append(rho.terms)
        # kernel of the map (invariant coords) -> forms
        rows: dict = {}
        for c, r in enumerate(rhos):
            for key, v in r.items():
                rows.setdefault(key, {})[c] = v
        ker = sparse_kernel(list(rows.values()), range(space.dim))
        dec = [space.coords(v) for v in decomposables(inv, k)]
        dech = Echelon(dict(enumerate(v)) for v in dec)
        if len(ker) != dech.rank:
            return False
        if not all(dech.contains(v) for v in ker):
            return False
    return True


def suspension_bijective(td: TransgressionData, max_sdeg: int) -> bool:
    """sτ: S sP → (S sg*)^g is bijective in every shifted degree <= max_sdeg."""
    inv = td.inv
    if max(inv.spaces) * 2 < max_sdeg:
        inv = invariant_polynomials(td.algebra, max_sdeg)
    sdeg = [d + 1 for d in td.prims.degrees]
    sgens = GeneratorSet(Generator(f"t{i}", d) for i, d in enumerate(sdeg))
    hom = homomorphism(sgens, inv.gens, {i: t for i, t in enumerate(td.tau)})
    for n in range(0, max_sdeg + 1, 2):
        mons = basis_of_degree(sgens, n)
        target = inv.spaces.get(n // 2)
        tdim = target.dim if target is not None else 0
        if len(mons) != tdim:
            return False
        ech = Echelon()
        for mkey in mons:
            img = hom(GradedElement.monomial(sgens, mkey))
            if target is not None and not target.contains(img.terms):
                return False
            ech.add(img.terms)
        if ech.rank != tdim:
            return False
    return True


def restriction_hom(h: Subalgebra, source: GeneratorSet, target: GeneratorSet, offset_src: int = 0,
                    offset_tgt: int = 0):
    """Restriction of (shifted) dual generators of g to those of h: x^k ↦ Σ_a v_a[k] F^a."""
    g = h.g
    images = {}
    for k in range(g.dim):
        terms = {}
        for a, v in enumerate(h.vectors):
            c = v.get(k, 0)
            if c:
                terms[target.generator_key(offset_tgt + a)] = c
        images[offset_src + k] = GradedElement(target, terms)
    return images
