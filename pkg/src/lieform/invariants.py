"""Invariants of a Lie algebra acting on a free graded-commutative algebra.

The algebra acts by even derivations that are linear on generators.  The
invariant part of a graded piece is the joint kernel of the action.  Two
reductions keep the systems small: basis elements that act diagonally on the
generators are imposed by a weight-zero filter on monomials, and the kernel is
only taken over a set of elements that generate the algebra together with the
diagonal ones.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .graded import GeneratorSet, GradedElement, derivation
from .lie import LieAlgebra
from .linalg import Echelon, Matrix, Subspace


def generated_subalgebra(alg: LieAlgebra, vectors: Sequence[Mapping]) -> Echelon:
    ech = Echelon()
    basis = []
    for v in vectors:
        if ech.add(v):
            basis.append(dict(v))
    i = 0
    while i < len(basis):
        for j in range(i):
            w = alg.bracket(basis[j], basis[i])
            if w and ech.add(w):
                basis.append(w)
        i += 1
    return ech


def lie_generating_set(alg: LieAlgebra, diagonal: Sequence[int]) -> list:
    """Basis indices that, together with `diagonal`, generate alg as a Lie algebra."""
    unit = lambda i: {i: Fraction(1)}
    current = [unit(i) for i in diagonal]
    ech = generated_subalgebra(alg, current)
    chosen = []
    for i in range(alg.dim):
        if ech.rank == alg.dim:
            break
        if i in diagonal or ech.contains(unit(i)):
            continue
        chosen.append(i)
        current.append(unit(i))
        ech = generated_subalgebra(alg, current)
    return chosen


class GeneratorAction:
    """alg acting on `gens` by derivations; matrices[a][i] = {j: c} gives X_a . gen_i."""

    def __init__(self, alg: LieAlgebra, gens: GeneratorSet, matrices: Sequence[Mapping]):
        if len(matrices) != alg.dim:
            raise ValueError("one action matrix per basis element is required")
        self.alg = alg
        self.gens = gens
        self.matrices = [{i: {j: c for j, c in row.items() if c} for i, row in m.items()} for m in matrices]
        self.diagonal = [a for a, m in enumerate(self.matrices)
                         if all(set(row) <= {i} for i, row in m.items())]
        self.weights = []
        for a in self.diagonal:
            m = self.matrices[a]
            self.weights.append([m.get(i, {}).get(i, Fraction(0)) for i in range(len(gens))])
        self.chosen = lie_generating_set(alg, self.diagonal)
        self._derivs = {}

    def derivation_of(self, a: int):
        if a not in self._derivs:
            gens = self.gens
            images = {}
            for i, row in self.matrices[a].items():
                images[i] = GradedElement(gens, {gens.generator_key(j): c for j, c in row.items()})
            self._derivs[a] = derivation(gens, images, odd=False)
        return self._derivs[a]

    def key_weight(self, key, w: Sequence) -> Fraction:
        total = Fraction(0)
        for i in self.gens.key_factors(key):
            total += w[i]
        return total

    def weight_zero(self, keys: Sequence) -> list:
        if not self.weights:
            return list(keys)
        return [k for k in keys if all(self.key_weight(k, w) == 0 for w in self.weights)]

    def invariants(self, keys: Sequence, extra_rows: Sequence[Mapping] = ()) -> Subspace:
        """Invariant subspace of span(keys); keys must span an action-stable piece.

        `extra_rows` are additional linear conditions given as {key: coef}
        functionals on span(keys) (used for horizontality).
        """
        keys = self.weight_zero(keys)
        index = {k: c for c, k in enumerate(keys)}
        rows: dict = {}
        for a in self.chosen:
            on_key = self.derivation_of(a).on_key
            for c, k in enumerate(keys):
                for tk, v in on_key(k).items():
                    rows.setdefault((a, tk), {})[c] = v
        condition_rows = list(rows.values())
        for r in extra_rows:
            cr = {index[k]: v for k, v in r.items() if k in index and v}
            if cr:
                condition_rows.append(cr)
        sub = Subspace.kernel(condition_rows, range(len(keys)))
        return Subspace([{keys[c]: v for c, v in sorted(b.items())} for b in sub.basis],
                        [keys[p] for p in sub.positions])

    def apply(self, a: int, x: GradedElement) -> GradedElement:
        return self.derivation_of(a)(x)


def coadjoint_action(g: LieAlgebra, gens: GeneratorSet, offset: int = 0,
                     acting: Sequence[Mapping] | None = None, acting_alg: LieAlgebra | None = None) -> list:
    """Action matrices of elements of g on the dual generators starting at `offset`.

    X . x^k = sum_j ad(X)[k, j] x^j.  `acting` lists the acting vectors
    (default: the basis of g).
    """
    vectors = acting if acting is not None else [{i: Fraction(1)} for i in range(g.dim)]
    out = []
    for v in vectors:
        adm = g.ad(dict(v))
        m = {}
        for k, row in adm.sparse_rows().items():
            m[offset + k] = {offset + j: c for j, c in row.items()}
        out.append(m)
    return out


def merge_actions(*parts: Sequence[Mapping]) -> list:
    """Componentwise union of per-element action matrices on disjoint generators."""
    n = len(parts[0])
    out = []
    for a in range(n):
        m: dict = {}
        for p in parts:
            m.update(p[a])
        out.append(m)
    return out


def adjoint_action_matrix(g: LieAlgebra, a: int) -> dict:
    """ad(X_a) on vector generators: X_j -> [X_a, X_j] = sum_k ad[k, j] X_k."""
    m: dict = {}
    for k, row in g.ad(a).sparse_rows().items():
        for j, c in row.items():
            m.setdefault(j, {})[k] = c
    return m


def theta_images(gens: GeneratorSet, matrix: Matrix, indices: Sequence[int]) -> dict:
    """Images of generators indices[k] under the transpose action of `matrix`.

    For θ on g acting on columns, the induced map on the dual sends
    x^k to x^k∘θ = sum_j θ[k, j] x^j.
    """
    images = {}
    for k, row in enumerate(matrix.to_lists()):
        images[indices[k]] = GradedElement(gens, {gens.generator_key(indices[j]): c
                                                  for j, c in enumerate(row) if c})
    return images
