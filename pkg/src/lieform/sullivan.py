"""Pure Sullivan algebras, the relative model (m, κ, φ) and its spectral sequence."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .complexes import CochainComplex, Cohomology, build_complex, cohomology
from .graded import (Generator, GeneratorSet, GradedElement, basis_of_degree, derivation,
                     homomorphism, mask_sign)
from .linalg import Echelon, Matrix, Subspace, sparse_kernel


class ModelError(ArithmeticError):
    pass


def coordinate_complex(gens: GeneratorSet, d: Callable, cap: int, name: str = "") -> CochainComplex:
    """The full monomial complex in degrees 0..cap+1 (differentials up to degree cap)."""
    spaces = {n: Subspace.coordinate(basis_of_degree(gens, n)) for n in range(cap + 2)}
    return build_complex(gens, spaces, d, name=name)


def induced_rank(f: Callable, src: Cohomology, tgt: Cohomology, n: int, target_gens: GeneratorSet) -> int:
    """Rank of H^n(f) for a cochain map f between monomial-coordinate complexes."""
    tc = tgt.complex
    ech = tgt.boundaries[n].copy() if n in tgt.boundaries else Echelon()
    base = ech.rank
    for r in src.representatives.get(n, []):
        x = src.complex.element(n, [r.get(i, 0) for i in range(src.complex.dim(n))])
        y = f(x)
        if y.ambient != target_gens:
            raise ModelError("map lands in the wrong algebra")
        ech.add(dict(enumerate(tc.spaces[n].coords(y.terms))))
    return ech.rank - base


# ---------- pure Sullivan algebras ----------

@dataclass
class PureSullivanAlgebra:
    """(Λ U ⊗ S sV, -δ_f); generators are U (odd) followed by sV (even)."""

    gens: GeneratorSet
    n_u: int
    f: dict                 # u index -> GradedElement (polynomial in sV generators)

    @property
    def n_v(self) -> int:
        return len(self.gens) - self.n_u

    def koszul(self):
        """δ_f: u ↦ f(su), sv ↦ 0."""
        return derivation(self.gens, self.f, odd=True)

    def differential(self):
        """-δ_f."""
        return derivation(self.gens, {i: -x for i, x in self.f.items()}, odd=True)

    def complex(self, cap: int) -> CochainComplex:
        return coordinate_complex(self.gens, self.differential(), cap, name="PSA")


def make_psa(u: Sequence[tuple], sv: Sequence[tuple], f: Mapping[int, Mapping]) -> PureSullivanAlgebra:
    """u, sv: (name, degree) lists; f[i] maps sV exponent tuples to coefficients."""
    gens = GeneratorSet([Generator(n, d) for n, d in u] + [Generator(n, d) for n, d in sv])
    for _, d in u:
        if d % 2 == 0:
            raise ModelError("U must be oddly graded")
    for _, d in sv:
        if d % 2:
            raise ModelError("shifted generators must be even")
    images = {}
    for i, (_, d) in enumerate(u):
        poly = f.get(i, {})
        el = GradedElement(gens, {(0, tuple(e)): c for e, c in poly.items()})
        if el and el.degree != d + 1:
            raise ModelError(f"f(s{u[i][0]}) must have degree {d + 1}")
        images[i] = el
    return PureSullivanAlgebra(gens, len(u), images)


def cohomology_psa(psa: PureSullivanAlgebra, cap: int) -> Cohomology:
    return cohomology(psa.complex(cap), cap)


def permuted(psa: PureSullivanAlgebra, order: Sequence[int]) -> PureSullivanAlgebra:
    """The same algebra with its U generators listed in `order`."""
    gs = psa.gens.generators
    n = psa.n_u
    gens = GeneratorSet([gs[i] for i in order] + list(gs[n:]))
    images = {new: GradedElement(gens, psa.f[old].terms) for new, old in enumerate(order)}
    return PureSullivanAlgebra(gens, n, images)


def koszul_differential(psa: PureSullivanAlgebra, cap: int) -> dict:
    """Matrices of δ_f in degrees 0..cap, with ranks re-checked under a reversed U basis."""
    cx = coordinate_complex(psa.gens, psa.koszul(), cap, name="Koszul")
    if psa.n_u > 1:
        other = permuted(psa, list(range(psa.n_u))[::-1])
        ox = coordinate_complex(other.gens, other.koszul(), cap, name="Koszul")
        for n, mat in cx.differentials.items():
            if mat.rank() != ox.differentials[n].rank():
                raise ModelError(f"δ_f depends on the U basis in degree {n}")
    return cx.differentials


# ---------- relative model ----------

@dataclass
class RelativeModel:
    """Λ U ⊗ S sV ⊗ Λ V ⊗ S sW with -δ_f - δ_g + δ_V, and the map m."""

    big: GeneratorSet
    u: list
    sv: list
    v: list
    sw: list
    source: GeneratorSet      # Λ U ⊗ S sV
    target: GeneratorSet      # Λ U ⊗ S sW
    fiber: GeneratorSet       # Λ V ⊗ S sW
    f_src: dict               # u -> element of source (poly in sV)
    g_fib: dict               # v -> element of fiber (poly in sW)
    cap: int
    _cache: dict = field(default_factory=dict)

    # --- embeddings between the four algebras ---

    def _hom(self, src: GeneratorSet, tgt: GeneratorSet, pairs):
        return homomorphism(src, tgt, {i: GradedElement.gen(tgt, j) for i, j in pairs})

    def src_to_big(self):
        return self._hom(self.source, self.big, zip(range(len(self.source)), self.u + self.sv))

    def fib_to_big(self):
        return self._hom(self.fiber, self.big, zip(range(len(self.fiber)), self.v + self.sw))

    def f_big(self) -> dict:
        emb = self.src_to_big()
        return {self.u[i]: emb(x) for i, x in self.f_src.items()}

    def g_big(self) -> dict:
        emb = self.fib_to_big()
        return {self.v[i]: emb(x) for i, x in self.g_fib.items()}

    def g_on_source(self) -> dict:
        """g(sv) as elements of the target, indexed by source sV indices."""
        nu = len(self.u)
        emb = self._hom(self.fiber, self.target,
                        [(len(self.v) + t, nu + t) for t in range(len(self.sw))])
        return {nu + t: emb(self.g_fib[t]) for t in range(len(self.v))}

    # --- differentials ---

    def delta_f(self):
        return derivation(self.big, self.f_big(), odd=True)

    def delta_g(self):
        return derivation(self.big, self.g_big(), odd=True)

    def delta_v(self):
        return derivation(self.big, {self.v[t]: GradedElement.gen(self.big, self.sv[t])
                                     for t in range(len(self.v))}, odd=True)

    def delta_gf(self):
        """u ↦ g(f(su)) on the big algebra."""
        gb = self.g_big()
        gmap = {self.sv[t]: gb[self.v[t]] for t in range(len(self.v))}
        images = {i: GradedElement.gen(self.big, i) for i in range(len(self.big))}
        images.update(gmap)
        sub = homomorphism(self.big, self.big, images)
        return derivation(self.big, {u: sub(x) for u, x in self.f_big().items()}, odd=True)

    def total(self):
        """-δ_f - δ_g + δ_V."""
        images = {u: -x for u, x in self.f_big().items()}
        gb = self.g_big()
        for t, v in enumerate(self.v):
            images[v] = GradedElement.gen(self.big, self.sv[t]) - gb[v]
        return derivation(self.big, images, odd=True)

    def source_differential(self):
        return derivation(self.source, {i: -x for i, x in self.f_src.items()}, odd=True)

    def fiber_differential(self):
        return derivation(self.fiber, {i: -x for i, x in self.g_fib.items()}, odd=True)

    def target_differential(self):
        gs = self.g_on_source()
        nu = len(self.u)
        images = {i: GradedElement.gen(self.target, i) for i in range(nu)}
        images.update(gs)
        for t in range(len(self.sv)):
            images.setdefault(nu + t, GradedElement.zero(self.target))
        sub = homomorphism(self.source, self.target, images)
        return derivation(self.target, {i: -sub(x) for i, x in self.f_src.items()}, odd=True)

    # --- maps ---

    def m(self):
        """u ↦ u, sv ↦ g(sv), v ↦ 0, sw ↦ sw."""
        nu = len(self.u)
        images = {self.u[i]: GradedElement.gen(self.target, i) for i in range(nu)}
        gs = self.g_on_source()
        for t in range(len(self.sv)):
            images[self.sv[t]] = gs[nu + t]
        for t in range(len(self.sw)):
            images[self.sw[t]] = GradedElement.gen(self.target, nu + t)
        return homomorphism(self.big, self.target, images)

    def inclusion(self):
        return self.src_to_big()

    def one_tensor_g(self):
        nu = len(self.u)
        images = {i: GradedElement.gen(self.target, i) for i in range(nu)}
        images.update(self.g_on_source())
        return homomorphism(self.source, self.target, images)

    def pi_to_target(self, x: GradedElement) -> GradedElement:
        """π: keep monomials without sV and V factors, read in the target."""
        out = {}
        for key, c in x.terms.items():
            pq = self.bidegree(key)
            if pq == (0, 0):
                out[self.big_key_to_target(key)] = c
        return GradedElement(self.target, out)

    def pi00(self, x: GradedElement) -> GradedElement:
        return GradedElement(self.big, {k: c for k, c in x.terms.items() if self.bidegree(k) == (0, 0)})

    def big_key_to_target(self, key):
        mask, exps = key
        nu = len(self.u)
        umask = mask & ((1 << nu) - 1)
        nsv = len(self.sv)
        return (umask, tuple(exps[nsv:]))

    def bidegree(self, key) -> tuple:
        """(p, q) = (number of sV factors, number of V factors)."""
        mask, exps = key
        nu = len(self.u)
        nsv = len(self.sv)
        return sum(exps[:nsv]), (mask >> nu).bit_count()

    def filtration(self, key) -> int:
        """Degree of the (Λ U ⊗ S sV) part."""
        mask, exps = key
        nu = len(self.u)
        deg = 0
        for t in range(nu):
            if mask >> t & 1:
                deg += self.big.odd_degrees[t]
        for t in range(len(self.sv)):
            deg += exps[t] * self.big.even_degrees[t]
        return deg

    def kappa(self, x: GradedElement) -> GradedElement:
        """κ = (1/(p+q)) Σ_j v_j ∂(sv_j) on the (p, q) component; 0 on (0, 0)."""
        nu = len(self.u)
        out: dict = {}
        for key, c in x.terms.items():
            p, q = self.bidegree(key)
            if p + q == 0:
                continue
            scale = Fraction(1, p + q)
            mask, exps = key
            for t in range(len(self.sv)):
                e = exps[t]
                if not e:
                    continue
                vbit = 1 << (nu + t)
                if mask & vbit:
                    continue
                lowered = list(exps)
                lowered[t] -= 1
                nkey = (mask | vbit, tuple(lowered))
                val = c * e * scale * mask_sign(vbit, mask)
                nv = out.get(nkey, 0) + val
                if nv:
                    out[nkey] = nv
                else:
                    out.pop(nkey, None)
        return GradedElement(self.big, out)

    def phi(self):
        """The coordinate-change algebra endomorphism φ."""
        if "phi" in self._cache:
            return self._cache["phi"]
        dg = self.delta_g()
        images = {}
        fb = self.f_big()
        for u in self.u:
            y = fb[u]
            acc = GradedElement.zero(self.big)
            steps = 0
            while y:
                t = self.kappa(y)
                acc = acc + t
                y = dg(t)
                steps += 1
                if steps > 10 * (self.cap + 2):
                    raise ModelError("δ_g κ failed to be nilpotent")
            images[u] = GradedElement.gen(self.big, u) + acc
        gb = self.g_big()
        for t, sv in enumerate(self.sv):
            images[sv] = GradedElement.gen(self.big, sv) - gb[self.v[t]]
        for i in self.v + self.sw:
            images[i] = GradedElement.gen(self.big, i)
        hom = homomorphism(self.big, self.big, images)
        self._cache["phi"] = hom
        return hom

    def phi_inverse(self, x: GradedElement) -> GradedElement:
        """Σ_k (1 - φ)^k x, finite by nilpotence."""
        phi = self.phi()
        acc = GradedElement.zero(self.big)
        y = x
        steps = 0
        while y:
            acc = acc + y
            y = y - phi(y)
            steps += 1
            if steps > 10 * (self.cap + 2):
                raise ModelError("1 - φ is not nilpotent")
        return acc

    def basis(self, n: int) -> list:
        key = ("basis", n)
        if key not in self._cache:
            self._cache[key] = basis_of_degree(self.big, n)
        return self._cache[key]


def relative_model(u: Sequence[tuple], v: Sequence[tuple], w: Sequence[tuple],
                   f: Mapping[int, Mapping], g: Mapping[int, Mapping], cap: int) -> RelativeModel:
    """Build the model from (name, degree) lists for U, V, W.

    f[i] maps sV exponent tuples to coefficients (f(su_i)); g[j] maps sW
    exponent tuples to coefficients (g(sv_j)).
    """
    for lst in (u, v, w):
        for _, d in lst:
            if d % 2 == 0 or d <= 0:
                raise ModelError("U, V, W must be oddly and positively graded")
    su = [(f"s{n}", d + 1) for n, d in v]
    sw = [(f"s{n}", d + 1) for n, d in w]
    gens = [Generator(n, d) for n, d in u] + [Generator(n, d) for n, d in su] + \
           [Generator(n, d) for n, d in v] + [Generator(n, d) for n, d in sw]
    big = GeneratorSet(gens)
    nu, nv, nw = len(u), len(v), len(w)
    ui = list(range(nu))
    svi = list(range(nu, nu + nv))
    vi = list(range(nu + nv, nu + 2 * nv))
    swi = list(range(nu + 2 * nv, nu + 2 * nv + nw))
    source = GeneratorSet([Generator(n, d) for n, d in u] + [Generator(n, d) for n, d in su])
    target = GeneratorSet([Generator(n, d) for n, d in u] + [Generator(n, d) for n, d in sw])
    fiber = GeneratorSet([Generator(n, d) for n, d in v] + [Generator(n, d) for n, d in sw])
    f_src = {}
    for i, (_, d) in enumerate(u):
        el = GradedElement(source, {(0, tuple(e)): c for e, c in f.get(i, {}).items()})
        if el and el.degree != d + 1:
            raise ModelError("f does not preserve degree")
        f_src[i] = el
    g_fib = {}
    for j, (_, d) in enumerate(v):
        el = GradedElement(fiber, {(0, tuple(e)): c for e, c in g.get(j, {}).items()})
        if el and el.degree != d + 1:
            raise ModelError("g does not preserve degree")
        g_fib[j] = el
    return RelativeModel(big, ui, svi, vi, swi, source, target, fiber, f_src, g_fib, cap)


# ---------- identities ----------

@dataclass
class ModelChecks:
    """Outcome of check_model.

    phi_intertwines: φ(δ_V - δ_gf) = D φ for the total differential D.
    phi_unipotent: 1 - φ is nilpotent in every degree.
    m_phi_projects: m φ is the projection onto Λ U ⊗ S sW.
    """

    d_squared: bool
    homotopy: bool
    phi_intertwines: bool
    phi_unipotent: bool
    m_phi_projects: bool
    phi_inverse: bool
    m_inclusion: bool
    m_cochain: bool
    m_iso: bool
    source_dims: list
    target_dims: list
    big_dims: list

    def all_ok(self) -> bool:
        return all([self.d_squared, self.homotopy, self.phi_intertwines, self.phi_unipotent, self.m_phi_projects,
                    self.phi_inverse, self.m_inclusion, self.m_cochain, self.m_iso])


def _columns_equal(keys, lhs: Callable, rhs: Callable, gens) -> bool:
    for k in keys:
        x = GradedElement.monomial(gens, k)
        if lhs(x) != rhs(x):
            return False
    return True


def operator_matrix(op: Callable, src_keys: Sequence, tgt_keys: Sequence, gens) -> Matrix:
    idx = {k: i for i, k in enumerate(tgt_keys)}
    cols = []
    for k in src_keys:
        y = op(GradedElement.monomial(gens, k))
        col = {}
        for tk, c in y.terms.items():
            if tk not in idx:
                raise ModelError("operator leaves the target space")
            col[idx[tk]] = c
        cols.append(col)
    return Matrix.from_columns(len(tgt_keys), cols)


def check_model(model: RelativeModel, cap: int | None = None) -> ModelChecks:
    """All identities behind the model theorem, as exact columnwise identities."""
    cap = model.cap if cap is None else cap
    big = model.big
    total = model.total()
    dv, dg, df, dgf = model.delta_v(), model.delta_g(), model.delta_f(), model.delta_gf()
    phi = model.phi()
    m = model.m()
    keys_all = [k for n in range(cap + 1) for k in model.basis(n)]

    d_sq = all(not total(total(GradedElement.monomial(big, k))) for k in keys_all)
    d_sq = d_sq and all(not df(df(GradedElement.monomial(big, k))) for k in keys_all)
    d_sq = d_sq and all(not dg(dg(GradedElement.monomial(big, k))) for k in keys_all)
    homotopy = _columns_equal(keys_all, lambda x: dv(model.kappa(x)) + model.kappa(dv(x)),
                              lambda x: x - model.pi00(x), big)
    phi_intertwines = _columns_equal(keys_all, lambda x: phi(dv(x) - dgf(x)), lambda x: total(phi(x)), big)
    m_phi_projects = _columns_equal(keys_all, lambda x: m(phi(x)), model.pi_to_target, big)
    phi_unipotent = True
    for n in range(cap + 1):
        keys = model.basis(n)
        if not keys:
            continue
        one_minus = operator_matrix(lambda x: x - phi(x), keys, keys, big)
        power = one_minus
        for _ in range(len(keys)):
            if power.is_zero():
                break
            power = power @ one_minus
        if not power.is_zero():
            phi_unipotent = False
    phi_inv = _columns_equal(keys_all, lambda x: phi(model.phi_inverse(x)), lambda x: x, big)
    incl = model.inclusion()
    src_keys = [k for n in range(cap + 1) for k in basis_of_degree(model.source, n)]
    m_incl = _columns_equal(src_keys, lambda x: m(incl(x)), model.one_tensor_g(), model.source)
    tdiff = model.target_differential()
    m_cochain = _columns_equal(keys_all, lambda x: m(total(x)), lambda x: tdiff(m(x)), big)

    hb = cohomology(coordinate_complex(big, total, cap), cap)
    ht = cohomology(coordinate_complex(model.target, tdiff, cap), cap)
    hs = cohomology(coordinate_complex(model.source, model.source_differential(), cap), cap)
    iso = True
    for n in range(cap + 1):
        if hb.dim(n) != ht.dim(n) or induced_rank(m, hb, ht, n, model.target) != ht.dim(n):
            iso = False
    return ModelChecks(d_sq, homotopy, phi_intertwines, phi_unipotent, m_phi_projects, phi_inv, m_incl, m_cochain, iso,
                       [hs.dim(n) for n in range(cap + 1)], [ht.dim(n) for n in range(cap + 1)],
                       [hb.dim(n) for n in range(cap + 1)])


# ---------- spectral sequence ----------

@dataclass
class SpectralSequence:
    cap: int
    pages: dict              # r -> {(p, q): dim}, r = 1, 2, ...; "inf" for E_∞
    target_dims: list        # dim H^n(Λ U ⊗ S sW, -δ_gf)
    e2_formula: dict         # (p, q) -> dim H^p(source) * dim H^q(fiber)
    edge_ranks: list         # rank of H^p(1 ⊗ g)

    def total(self, r, n: int) -> int:
        return sum(v for (p, q), v in self.pages[r].items() if p + q == n)

    def converges(self) -> bool:
        return all(self.total("inf", n) == self.target_dims[n] for n in range(self.cap + 1))

    def e2_matches_formula(self) -> bool:
        return all(self.pages[2].get(pq, 0) == v for pq, v in self.e2_formula.items()) and \
            all(self.e2_formula.get(pq, 0) == v for pq, v in self.pages[2].items())

    def collapses(self) -> bool:
        """Σ_{p+q=n} dim E_2^{p,q} = dim H^n(target) for every n <= cap."""
        return all(self.total(2, n) == self.target_dims[n] for n in range(self.cap + 1))

    def first_failure(self):
        for n in range(self.cap + 1):
            if self.total(2, n) != self.target_dims[n]:
                return n
        return None

    def edge_ok(self) -> bool:
        return all(self.edge_ranks[p] == self.pages["inf"].get((p, 0), 0) for p in range(self.cap + 1))


class _FiltrationData:
    """Monomial complex with a filtration function, for page computations."""

    def __init__(self, model: RelativeModel, cap: int):
        self.model = model
        total = model.total()
        self.keys = {n: model.basis(n) for n in range(cap + 2)}
        self.filt = {n: [model.filtration(k) for k in self.keys[n]] for n in range(cap + 2)}
        self.d = {}
        for n in range(cap + 1):
            idx = {k: i for i, k in enumerate(self.keys[n + 1])}
            rows: dict = {}
            for c, k in enumerate(self.keys[n]):
                for tk, v in total(GradedElement.monomial(model.big, k)).terms.items():
                    rows.setdefault(idx[tk], {})[c] = v
            self.d[n] = rows
        self._z: dict = {}

    def z(self, r: int, p: int, n: int) -> list:
        """Basis of {x ∈ F^p C^n : d x ∈ F^{p+r} C^{n+1}} as column-index dicts."""
        key = (r, p, n)
        if key in self._z:
            return self._z[key]
        cols = [c for c, f in enumerate(self.filt[n]) if f >= p]
        colset = set(cols)
        tf = self.filt[n + 1]
        rows = []
        for i, row in self.d.get(n, {}).items():
            if tf[i] < p + r:
                rr = {c: v for c, v in row.items() if c in colset}
                if rr:
                    rows.append(rr)
        out = sparse_kernel(rows, cols)
        self._z[key] = out
        return out

    def apply_d(self, n: int, vec: Mapping) -> dict:
        out: dict = {}
        for i, row in self.d.get(n, {}).items():
            s = sum((v * vec[c] for c, v in row.items() if c in vec), Fraction(0))
            if s:
                out[i] = s
        return out

    def page_dim(self, r: int, p: int, n: int) -> int:
        zr = self.z(r, p, n)
        if not zr:
            return 0
        denom = Echelon(self.z(r - 1, p + 1, n))
        if n >= 1:
            for x in self.z(r - 1, p - r + 1, n - 1):
                y = self.apply_d(n - 1, x)
                if y:
                    denom.add(y)
        return len(zr) - denom.rank


def spectral_sequence(model: RelativeModel, cap: int | None = None, max_page: int = 2) -> SpectralSequence:
    cap = model.cap if cap is None else cap
    fd = _FiltrationData(model, cap)
    pages = {}
    for r in list(range(1, max_page + 1)) + ["inf"]:
        page = {}
        for n in range(cap + 1):
            rr = n + 3 if r == "inf" else r
            for p in range(n + 1):
                dim = fd.page_dim(rr, p, n)
                if dim:
                    page[(p, n - p)] = dim
        pages[r] = page
    tdiff = model.target_differential()
    ht = cohomology(coordinate_complex(model.target, tdiff, cap), cap)
    hs = cohomology(coordinate_complex(model.source, model.source_differential(), cap), cap)
    hf = cohomology(coordinate_complex(model.fiber, model.fiber_differential(), cap), cap)
    formula = {}
    for p in range(cap + 1):
        for q in range(cap + 1 - p):
            v = hs.dim(p) * hf.dim(q)
            if v:
                formula[(p, q)] = v
    og = model.one_tensor_g()
    edge = [induced_rank(og, hs, ht, p, model.target) for p in range(cap + 1)]
    return SpectralSequence(cap, pages, [ht.dim(n) for n in range(cap + 1)], formula, edge)


# ---------- random instances ----------

def _random_poly(rng, degrees: Sequence[int], target: int, scale: int = 3) -> dict:
    """A random homogeneous polynomial of the given degree in even generators."""
    gens = GeneratorSet(Generator(f"x{i}", d) for i, d in enumerate(degrees))
    out = {}
    for key in basis_of_degree(gens, target):
        if rng.random() < 0.6:
            c = rng.randint(-scale, scale)
            if c:
                out[key[1]] = Fraction(c)
    return out


def random_model(rng, max_gens: int = 3, max_degree: int = 7, cap: int = 12) -> RelativeModel:
    """A random relative model with 1 <= |U|, |V|, |W| <= max_gens and odd degrees <= max_degree.

    Low degrees are favoured so that f and g are rarely forced to vanish.
    """
    odd = list(range(1, max_degree + 1, 2))
    weights = [len(odd) - i for i in range(len(odd))]

    def pick(prefix):
        n = rng.randint(1, max_gens)
        return [(f"{prefix}{i}", rng.choices(odd, weights)[0]) for i in range(n)]

    u, v, w = pick("u"), pick("v"), pick("w")
    sv = [d + 1 for _, d in v]
    sw = [d + 1 for _, d in w]
    f = {i: _random_poly(rng, sv, d + 1) for i, (_, d) in enumerate(u)}
    g = {j: _random_poly(rng, sw, d + 1) for j, (_, d) in enumerate(v)}
    return relative_model(u, v, w, f, g, cap)
