"""Cochain complexes with explicit bases, and Chevalley–Eilenberg complexes."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .graded import GeneratorSet, GradedElement, monomials_by_counts
from .invariants import GeneratorAction, coadjoint_action
from .lie import LieAlgebra, Subalgebra
from .linalg import Echelon, LinalgError, Matrix, Subspace, sparse_kernel


class ComplexError(ArithmeticError):
    """A computed subspace is not stable under the differential, or d∘d ≠ 0."""


@dataclass
class CochainComplex:
    """Degreewise bases (Subspaces of monomial-keyed vectors) and differentials.

    differentials[n] maps coordinates in spaces[n] to coordinates in
    spaces[n + 1].
    """

    gens: GeneratorSet
    spaces: dict
    differentials: dict
    name: str = ""

    def dim(self, n: int) -> int:
        s = self.spaces.get(n)
        return 0 if s is None else s.dim

    @property
    def degrees(self) -> list:
        return sorted(self.spaces)

    def element(self, n: int, coords) -> GradedElement:
        return GradedElement(self.gens, self.spaces[n].combine(coords))

    def check_d_squared(self) -> bool:
        for n, d in self.differentials.items():
            d2 = self.differentials.get(n + 1)
            if d2 is not None and not (d2 @ d).is_zero():
                return False
        return True


def build_complex(gens: GeneratorSet, spaces: Mapping, d: Callable, top: int | None = None,
                  name: str = "") -> CochainComplex:
    """Matrices of d between consecutive spaces; raises ComplexError if not stable."""
    degs = sorted(spaces)
    diffs = {}
    for n in degs:
        src = spaces[n]
        tgt = spaces.get(n + 1)
        if tgt is None:
            if top is not None and n + 1 <= top:
                raise ComplexError(f"missing space in degree {n + 1}")
            continue
        cols = []
        for b in src.basis:
            img = d(GradedElement(gens, b))
            try:
                cols.append(dict(enumerate(tgt.coords(img.terms))))
            except LinalgError:
                raise ComplexError(f"{name or 'subspace'} is not closed under d in degree {n}") from None
        diffs[n] = Matrix.from_columns(tgt.dim, cols)
    cx = CochainComplex(gens, dict(spaces), diffs, name=name)
    if not cx.check_d_squared():
        raise ComplexError(f"d∘d ≠ 0 on {name or 'complex'}")
    return cx


@dataclass
class Cohomology:
    """H^n = ker d_n / im d_{n-1} with representative cocycles."""

    complex: CochainComplex
    dims: dict = field(default_factory=dict)
    cocycles: dict = field(default_factory=dict)        # n -> list of coordinate dicts
    boundaries: dict = field(default_factory=dict)      # n -> Echelon on coordinates
    representatives: dict = field(default_factory=dict)  # n -> list of coordinate dicts

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def is_cocycle(self, n: int, coords: Mapping) -> bool:
        d = self.complex.differentials.get(n)
        return d is None or not d.apply_sparse(coords)

    def is_coboundary(self, n: int, coords: Mapping) -> bool:
        if not any(coords.values()):
            return True
        b = self.boundaries.get(n)
        return b is not None and b.contains(coords)

    def primitive(self, n: int, coords: Mapping):
        """Some y with d y = coords, or None."""
        from .linalg import solve_sparse
        d = self.complex.differentials.get(n - 1)
        if d is None:
            return None if any(coords.values()) else {}
        return solve_sparse(d.sparse_rows(), d.ncols, dict(coords))

    def rep_elements(self, n: int) -> list:
        return [self.complex.element(n, [r.get(i, 0) for i in range(self.complex.dim(n))])
                for r in self.representatives.get(n, [])]


def cohomology(c: CochainComplex, cap: int | None = None) -> Cohomology:
    h = Cohomology(c)
    for n in c.degrees:
        if cap is not None and n > cap:
            continue
        dn = c.dim(n)
        d = c.differentials.get(n)
        if d is None and n + 1 in c.spaces:
            raise ComplexError(f"missing differential in degree {n}")
        if d is None:
            z = [{i: Fraction(1)} for i in range(dn)]
        else:
            z = sparse_kernel(d.sparse_rows().values(), range(dn))
        prev = c.differentials.get(n - 1)
        bech = Echelon(prev.columns() if prev is not None else [])
        reps = []
        ech = bech.copy()
        for v in z:
            if ech.add(v):
                reps.append(v)
        h.dims[n] = len(reps)
        h.cocycles[n] = z
        h.boundaries[n] = bech
        h.representatives[n] = reps
    return h


# ---------- Chevalley–Eilenberg and relative complexes ----------

def exterior_piece(gens: GeneratorSet, n: int, slots=None) -> list:
    return monomials_by_counts(gens, n, 0, odd_slots=slots)


def ce_complex(g: LieAlgebra, cap: int | None = None) -> CochainComplex:
    """(Λ g*, d) in degrees 0..min(cap + 1, dim g), enough for H^n with n <= cap."""
    gens = g.dual_generators()
    top = g.dim if cap is None else min(cap + 1, g.dim)
    spaces = {n: Subspace.coordinate(exterior_piece(gens, n)) for n in range(top + 1)}
    return build_complex(gens, spaces, g.ce_differential(gens), name=f"CE({g.name})")


def interior_rows(gens: GeneratorSet, keys, vector: Mapping) -> list:
    """Rows expressing ι(vector) = 0 on span(keys) (as functionals in key space)."""
    from .graded import derivation
    images = {k: GradedElement.one(gens, c) for k, c in vector.items() if c}
    on_key = derivation(gens, images, odd=True).on_key
    rows: dict = {}
    for k in keys:
        for tk, v in on_key(k).items():
            rows.setdefault(tk, {})[k] = v
    return list(rows.values())


def relative_spaces(g: LieAlgebra, h: Subalgebra, top: int) -> dict:
    """Bases of (Λ^n (g/h)*)^h for n <= top, inside Λ g*."""
    gens = g.dual_generators()
    action = GeneratorAction(h.induced, gens, coadjoint_action(g, gens, acting=h.vectors))
    spaces = {}
    for n in range(top + 1):
        keys = exterior_piece(gens, n)
        extra = []
        for v in h.vectors:
            extra.extend(interior_rows(gens, keys, v))
        spaces[n] = action.invariants(keys, extra_rows=extra)
    return spaces


def relative_complex(g: LieAlgebra, h: Subalgebra, cap: int | None = None) -> CochainComplex:
    """The horizontal h-invariant subcomplex of (Λ g*, d), through degree cap + 1."""
    if h.g is not g:
        raise ValueError("subalgebra belongs to a different Lie algebra")
    top = g.dim - h.dim
    if cap is not None:
        top = min(top, cap + 1)
    spaces = relative_spaces(g, h, top)
    gens = g.dual_generators()
    return build_complex(gens, spaces, g.ce_differential(gens), name=f"C({g.name},{h.name})")


def invariant_spaces(g: LieAlgebra, top: int | None = None) -> dict:
    """(Λ^n g*)^g for n <= top."""
    gens = g.dual_generators()
    action = GeneratorAction(g, gens, coadjoint_action(g, gens))
    top = g.dim if top is None else top
    return {n: action.invariants(exterior_piece(gens, n)) for n in range(top + 1)}
