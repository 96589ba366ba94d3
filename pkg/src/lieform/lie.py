"""Lie algebras over Q given by structure constants, and their subalgebras."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .graded import Generator, GeneratorSet, GradedElement, derivation
from .linalg import Matrix, Subspace, as_fraction, inverse, kernel_basis, rref_rows


class ValidationError(ValueError):
    """Input data is well-formed but mathematically invalid."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


def _add_into(acc: dict, vec: Mapping, c=1) -> None:
    for k, v in vec.items():
        nv = acc.get(k, 0) + c * v
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)


class LieAlgebra:
    """A finite-dimensional Lie algebra with basis X_0, ..., X_{n-1}.

    `brackets` maps (i, j) to {k: c} meaning [X_i, X_j] = sum_k c X_k.  Either
    orientation may be given; a pair given both ways must be antisymmetric.
    `theta` acts on coordinate columns.
    """

    def __init__(self, name: str, basis: Sequence[str], brackets: Mapping,
                 theta: Matrix | None = None, rank: int | None = None,
                 invariant_form: Matrix | None = None):
        self.name = name
        self.basis = tuple(basis)
        n = len(self.basis)
        if len(set(self.basis)) != n:
            raise ValueError("duplicate basis names")
        br: dict = {}
        for (i, j), vec in brackets.items():
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"bracket index ({i}, {j}) out of range")
            vec = {k: as_fraction(c) for k, c in vec.items() if as_fraction(c)}
            for k in vec:
                if not 0 <= k < n:
                    raise ValueError(f"bracket result index {k} out of range")
            if i == j:
                if vec:
                    raise ValidationError(f"[{self.basis[i]}, {self.basis[i]}] must vanish",
                                          witness=(self.basis[i],))
                continue
            neg = {k: -c for k, c in vec.items()}
            if (i, j) in br and br[(i, j)] != vec:
                raise ValidationError(f"conflicting brackets for ({self.basis[i]}, {self.basis[j]})",
                                      witness=(self.basis[i], self.basis[j]))
            if (j, i) in br and br[(j, i)] != neg:
                raise ValidationError(f"bracket ({self.basis[i]}, {self.basis[j]}) is not antisymmetric",
                                      witness=(self.basis[i], self.basis[j]))
            if vec:
                br[(i, j)] = vec
                br[(j, i)] = neg
        self._br = br
        if theta is not None and theta.shape != (n, n):
            raise ValueError("theta has the wrong shape")
        if invariant_form is not None and invariant_form.shape != (n, n):
            raise ValueError("invariant form has the wrong shape")
        self.theta = theta
        self.rank = rank
        self.invariant_form = invariant_form
        self._ad: dict = {}
        self._killing = None

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name!r}, dim={self.dim})"

    @property
    def dim(self) -> int:
        return len(self.basis)

    def bracket_basis(self, i: int, j: int) -> dict:
        return dict(self._br.get((i, j), {}))

    def structure_constants(self) -> list:
        """Sorted triples (i, j, k, c) with i < j."""
        out = []
        for (i, j), vec in sorted(self._br.items()):
            if i < j:
                out.extend((i, j, k, c) for k, c in sorted(vec.items()))
        return out

    def is_abelian(self) -> bool:
        return not self._br

    def bracket(self, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        for i, a in x.items():
            if not a:
                continue
            for j, b in y.items():
                if b and (i, j) in self._br:
                    _add_into(out, self._br[(i, j)], a * b)
        return out

    def ad(self, x) -> Matrix:
        """Matrix of ad(x) on coordinate columns; x is a basis index or a vector."""
        if isinstance(x, int):
            if x not in self._ad:
                cols = [self._br.get((x, j), {}) for j in range(self.dim)]
                self._ad[x] = Matrix.from_columns(self.dim, cols)
            return self._ad[x]
        acc = Matrix.zeros(self.dim, self.dim)
        for i, a in x.items():
            if a:
                acc = acc + self.ad(i) * a
        return acc

    def check_jacobi(self):
        """(True, None) or (False, (i, j, k)) for the first failing basis triple."""
        n = self.dim
        e = lambda i: {i: Fraction(1)}
        for i in range(n):
            for j in range(i + 1, n):
                ij = self._br.get((i, j), {})
                for k in range(j + 1, n):
                    acc: dict = {}
                    _add_into(acc, self.bracket(ij, e(k)))
                    _add_into(acc, self.bracket(self._br.get((j, k), {}), e(i)))
                    _add_into(acc, self.bracket(self._br.get((k, i), {}), e(j)))
                    if acc:
                        return False, (i, j, k)
        return True, None

    def is_automorphism(self, m: Matrix) -> bool:
        cols = m.columns()
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                lhs = m.apply_sparse(self._br.get((i, j), {}))
                if lhs != self.bracket(cols[i], cols[j]):
                    return False
        return True

    def killing_form(self) -> Matrix:
        if self._killing is None:
            n = self.dim
            ads = [self.ad(i) for i in range(n)]
            rows = {}
            for i in range(n):
                rows[i] = {}
                for j in range(i, n):
                    prod = ads[i] @ ads[j]
                    t = sum((prod[k, k] for k in range(n)), Fraction(0))
                    if t:
                        rows[i][j] = t
            for i in range(n):
                for j, v in list(rows[i].items()):
                    rows.setdefault(j, {})[i] = v
            self._killing = Matrix(n, n, rows)
        return self._killing

    def form(self) -> Matrix:
        """The declared invariant form, falling back to the Killing form."""
        return self.invariant_form if self.invariant_form is not None else self.killing_form()

    def is_invariant_form(self, b: Matrix) -> bool:
        if b != b.T:
            return False
        for i in range(self.dim):
            a = self.ad(i)
            if not (a.T @ b + b @ a).is_zero():
                return False
        return True

    def validate(self) -> None:
        """Raise ValidationError unless Jacobi, θ and the form are consistent."""
        ok, bad = self.check_jacobi()
        if not ok:
            names = tuple(self.basis[t] for t in bad)
            raise ValidationError(f"Jacobi identity fails on {names}", witness=names)
        if self.theta is not None:
            if self.theta @ self.theta != Matrix.identity(self.dim):
                raise ValidationError("theta does not square to the identity")
            if not self.is_automorphism(self.theta):
                raise ValidationError("theta is not a Lie algebra automorphism")
        if self.invariant_form is not None:
            if not self.is_invariant_form(self.invariant_form):
                raise ValidationError("invariant_form is not a symmetric ad-invariant form")
            if self.invariant_form.rank() != self.dim:
                raise ValidationError("invariant_form is degenerate")

    # ----- dual generators and actions -----

    def dual_names(self) -> list:
        return [f"{b}*" for b in self.basis]

    def dual_generators(self) -> GeneratorSet:
        return GeneratorSet(Generator(nm, 1) for nm in self.dual_names())

    def vector_generators(self) -> GeneratorSet:
        return GeneratorSet(Generator(nm, 1) for nm in self.basis)

    def shifted_dual_names(self) -> list:
        return [f"s{b}*" for b in self.basis]

    def coadjoint_matrix(self, x) -> Matrix:
        """Action of x on dual coordinates: x^k -> sum_j ad(x)[k, j] x^j.

        This is the Lie derivative dι + ιd for the differential used here.
        """
        return self.ad(x)

    def ce_images(self, gens: GeneratorSet, offset: int = 0) -> dict:
        """d x^k = sum_{i<j} c_ij^k x^i x^j, on dual generators starting at `offset`."""
        images = {}
        for k in range(self.dim):
            images[offset + k] = {}
        for (i, j), vec in self._br.items():
            if i < j:
                key = _pair_key(gens, offset + i, offset + j)
                for k, c in vec.items():
                    t = images[offset + k]
                    t[key] = t.get(key, 0) + c
        return {i: GradedElement(gens, t) for i, t in images.items()}

    def ce_differential(self, gens: GeneratorSet | None = None):
        gens = gens or self.dual_generators()
        return derivation(gens, self.ce_images(gens), odd=True)

    def in_basis(self, vectors: Sequence[Mapping], names: Sequence[str], name: str | None = None) -> "LieAlgebra":
        """The same algebra written in a new basis (given by coordinate vectors)."""
        p = Matrix.from_columns(self.dim, [dict(v) for v in vectors])
        pinv = inverse(p)
        cols = p.columns()
        br = {}
        for a in range(self.dim):
            for b in range(a + 1, self.dim):
                v = self.bracket(cols[a], cols[b])
                if v:
                    br[(a, b)] = pinv.apply_sparse(v)
        theta = None if self.theta is None else pinv @ self.theta @ p
        form = None if self.invariant_form is None else p.T @ self.invariant_form @ p
        out = LieAlgebra(name or self.name, names, br, theta=theta, rank=self.rank, invariant_form=form)
        if self._killing is not None:
            out._killing = p.T @ self._killing @ p
        return out


def _pair_key(gens: GeneratorSet, a: int, b: int):
    ta = gens.slot[a][1]
    tb = gens.slot[b][1]
    return ((1 << ta) | (1 << tb), (0,) * gens.n_even)


class Subalgebra:
    """A subalgebra of g spanned by the given coordinate vectors.

    `induced` is the abstract subalgebra in the given basis; if g carries θ and
    the span is θ-stable, the induced algebra carries the restricted θ.
    """

    def __init__(self, g: LieAlgebra, vectors: Sequence[Mapping], name: str = "h",
                 basis_names: Sequence[str] | None = None):
        self.g = g
        self.name = name
        vecs = [{k: as_fraction(v) for k, v in dict(x).items() if as_fraction(v)} for x in vectors]
        if Matrix.from_columns(g.dim, vecs).rank() != len(vecs):
            raise ValidationError(f"basis of {name} is linearly dependent")
        self.vectors = vecs
        self.span = Subspace.span(vecs)
        # coordinates of span members relative to `vectors`
        self._coord_matrix = None
        dh = len(vecs)
        names = list(basis_names) if basis_names else [f"{name}{a}" for a in range(dh)]
        br = {}
        for a in range(dh):
            for b in range(a + 1, dh):
                v = g.bracket(vecs[a], vecs[b])
                c = self.coords(v)
                if c is None:
                    raise ValidationError(f"{name} is not closed under the bracket",
                                          witness=(names[a], names[b]))
                c = {k: x for k, x in enumerate(c) if x}
                if c:
                    br[(a, b)] = c
        theta = None
        self.theta_stable = None
        if g.theta is not None:
            cols = []
            stable = True
            for v in vecs:
                c = self.coords(g.theta.apply_sparse(v))
                if c is None:
                    stable = False
                    break
                cols.append(dict(enumerate(c)))
            self.theta_stable = stable
            if stable:
                theta = Matrix.from_columns(dh, cols)
        self.induced = LieAlgebra(name, names, br, theta=theta)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def matrix(self) -> Matrix:
        return Matrix.from_columns(self.g.dim, self.vectors)

    def coords(self, v: Mapping):
        """Coordinates of v relative to `vectors`, or None when v is outside the span."""
        if self._coord_matrix is None:
            self._coord_matrix = self.matrix()
        from .linalg import solve_sparse
        x = solve_sparse(self._coord_matrix.sparse_rows(), self.dim, {k: c for k, c in v.items() if c})
        if x is None:
            return None
        check = self._coord_matrix.apply_sparse(x)
        if check != {k: as_fraction(c) for k, c in v.items() if c}:
            return None
        return [x.get(a, Fraction(0)) for a in range(self.dim)]

    def restriction_matrix(self) -> Matrix:
        """g* -> h* on coordinates: column k is x^k restricted, i.e. (v_a[k])_a."""
        rows = {a: dict(v) for a, v in enumerate(self.vectors)}
        return Matrix(self.dim, self.g.dim, rows)

    def fixed_part(self, name: str | None = None) -> "Subalgebra":
        """h^θ as a subalgebra of g."""
        if not self.theta_stable:
            raise ValidationError(f"{self.name} is not θ-stable")
        th = self.induced.theta
        fixed = kernel_basis(th - Matrix.identity(self.dim))
        vecs = []
        for c in fixed:
            acc: dict = {}
            for a, x in enumerate(c):
                if x:
                    _add_into(acc, self.vectors[a], x)
            vecs.append(acc)
        return Subalgebra(self.g, vecs, name=name or f"{self.name}^theta")

    def complement(self):
        """(vectors, invariant) for a complement V of h in g.

        V is the orthogonal complement under the invariant form (θ-stable and
        h-invariant) when the form is nondegenerate on h; otherwise a
        coordinate complement is returned with invariant=False.
        """
        g = self.g
        b = g.invariant_form if g.invariant_form is not None else g.killing_form()
        rows = [b.apply_sparse(v) for v in self.vectors]
        vs = kernel_basis(Matrix(self.dim, g.dim, dict(enumerate(rows))))
        vs = [{k: x for k, x in enumerate(v) if x} for v in vs]
        if len(vs) == g.dim - self.dim and Matrix.from_columns(g.dim, self.vectors + vs).rank() == g.dim:
            invariant = True
            for a in range(self.dim):
                for v in vs:
                    w = g.bracket(self.vectors[a], v)
                    if any(_dot(b.apply_sparse(w), u) for u in self.vectors):
                        invariant = False
            return vs, invariant
        red = rref_rows(self.vectors)
        free = [k for k in range(g.dim) if k not in red]
        return [{k: Fraction(1)} for k in free], False


def _dot(a: Mapping, b: Mapping) -> Fraction:
    return sum((v * b[k] for k, v in a.items() if k in b), Fraction(0))


def adapted(h: Subalgebra):
    """g rewritten in the basis (h basis, complement basis).

    Returns (g', complement vectors, invariant flag).  In g' the subalgebra is
    spanned by the first dim h basis vectors, so horizontal forms are the
    exterior algebra on the last dim g - dim h dual generators.
    """
    g = h.g
    vs, invariant = h.complement()
    names = list(h.induced.basis) + [f"v{t}" for t in range(len(vs))]
    gp = g.in_basis(h.vectors + vs, names, name=f"{g.name}/{h.name}")
    return gp, vs, invariant
