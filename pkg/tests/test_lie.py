from __future__ import annotations

from fractions import Fraction as F
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from lieform.catalog import (CatalogError, abelian, classical, direct_sum, sl, so, sp, split_torus,
                             su, u)
from lieform.complexes import ce_complex, cohomology, invariant_spaces, relative_complex
from lieform.graded import GradedElement, basis_of_degree, multiply
from lieform.invariants import coadjoint_action, GeneratorAction
from lieform.lie import LieAlgebra, Subalgebra, ValidationError
from lieform.linalg import Matrix
from lieform.transgression import shifted_generators, theta_hom

from conftest import pair_specs


def dims(c, cap=None):
    h = cohomology(c, cap)
    return [h.dim(n) for n in sorted(c.spaces) if cap is None or n <= cap]


def wedge(g, *names):
    gens = g.dual_generators()
    out = GradedElement.one(gens)
    for n in names:
        out = multiply(out, GradedElement.gen(gens, n))
    return out


def test_sl2_jacobi_and_corruption():
    g = sl(2)
    assert g.check_jacobi()[0]
    br = {(i, j): v for (i, j), v in g._br.items() if i < j}
    h, e, f = 0, 1, 2
    br[(h, e)] = {e: F(3)}
    bad = LieAlgebra("bad", g.basis, br)
    ok, witness = bad.check_jacobi()
    assert not ok and sorted(witness) == [h, e, f]
    with pytest.raises(ValidationError):
        bad.validate()


def test_abelian_jacobi():
    assert abelian(4).check_jacobi()[0]


def test_sl2_ce_differential():
    g = sl(2)
    d = g.ce_differential()
    gens = g.dual_generators()
    assert d(GradedElement.gen(gens, "h*")) == wedge(g, "e*", "f*")
    assert d(GradedElement.gen(gens, "e*")) == wedge(g, "h*", "e*").scale(2)
    assert d(GradedElement.gen(gens, "f*")) == wedge(g, "h*", "f*").scale(-2)
    assert not d(wedge(g, "e*", "f*"))


def test_abelian_differential_vanishes():
    g = abelian(3)
    d = g.ce_differential()
    for n in range(4):
        for k in basis_of_degree(g.dual_generators(), n):
            assert not d(GradedElement.monomial(g.dual_generators(), k))


def test_invariant_forms_sl2():
    assert [s.dim for s in invariant_spaces(sl(2)).values()] == [1, 0, 0, 1]


def test_invariants_of_abelian_are_everything():
    g = abelian(3)
    assert [s.dim for s in invariant_spaces(g).values()] == [comb(3, p) for p in range(4)]


def test_quadratic_invariant_of_sl2_is_trace_form():
    g = sl(2)
    gens = shifted_generators(g)
    act = GeneratorAction(g, gens, coadjoint_action(g, gens))
    from lieform.graded import monomials_by_counts
    space = act.invariants(monomials_by_counts(gens, 0, 2))
    assert space.dim == 1
    (b,) = space.basis
    # minus the determinant of a h + b e + c f
    assert str(GradedElement(gens, b)) == "1*se**sf* + 1*sh*^2"


def test_relative_examples():
    g = sl(2)
    so2 = Subalgebra(g, [{1: 1, 2: -1}])
    assert dims(relative_complex(g, so2)) == [1, 0, 1]
    assert dims(relative_complex(g, Subalgebra(g, []))) == [1, 0, 0, 1]
    so11 = Subalgebra(g, [{0: 1}])
    c = relative_complex(g, so11)
    assert [c.dim(n) for n in range(3)] == [1, 0, 1]
    (b,) = c.spaces[2].basis
    assert GradedElement(c.gens, b) == wedge(g, "e*", "f*")


def test_abelian_cohomology_is_binomial():
    g = abelian(4)
    assert dims(ce_complex(g)) == [comb(4, p) for p in range(5)]


@pytest.mark.parametrize("name", ["sl2", "sl2+sl2", "sl3", "su2"])
def test_poincare_duality(name):
    from conftest import algebras
    g = algebras()[name]
    ds = dims(ce_complex(g))
    assert ds == ds[::-1]


@pytest.mark.parametrize("name", ["sl2", "so1,1", "sl2+sl2", "sl3", "su2"])
def test_theta_commutes_with_d(name):
    from conftest import algebras
    g = algebras()[name]
    gens = g.dual_generators()
    th = theta_hom(gens, g.theta, range(g.dim))
    d = g.ce_differential(gens)
    for n in range(g.dim + 1):
        for k in basis_of_degree(gens, n):
            x = GradedElement.monomial(gens, k)
            assert th(d(x)) == d(th(x))


@settings(max_examples=15, deadline=None)
@given(st.data())
def test_relative_dims_independent_of_basis_scaling(data):
    specs = pair_specs()
    name = data.draw(st.sampled_from(["sl2/so2", "sl2/so1,1", "su2/u1", "sl2+sl2/diag"]))
    spec = specs[name]
    h = spec.subalgebra()
    scales = [data.draw(st.sampled_from([F(-2), F(1, 3), F(5)])) for _ in h.vectors]
    scaled = [{k: v * c for k, v in vec.items()} for vec, c in zip(h.vectors, scales)]
    h2 = Subalgebra(spec.g, scaled)
    assert dims(relative_complex(spec.g, h)) == dims(relative_complex(spec.g, h2))


def test_sl2_catalog_entry():
    g = sl(2)
    assert (g.dim, g.rank) == (3, 1)
    th = g.theta
    assert th.column(0) == {0: -1}
    assert th.column(1) == {2: -1} and th.column(2) == {1: -1}
    whole = Subalgebra(g, [{i: 1} for i in range(3)])
    assert whole.fixed_part().dim == 1


def test_split_torus_and_sums():
    t = split_torus()
    assert t.rank == 1 and t.theta == Matrix.identity(1) * -1
    s = direct_sum(sl(2), sl(2))
    assert s.rank == 2 and s.dim == 6
    whole = Subalgebra(s, [{i: 1} for i in range(6)])
    assert whole.fixed_part().dim == 2


@pytest.mark.parametrize("alg,dim,rank", [
    (lambda: sl(3), 8, 2), (lambda: so(3), 3, 1), (lambda: so(2, 1), 3, 1), (lambda: so(4), 6, 2),
    (lambda: sp(4), 10, 2), (lambda: su(2), 3, 1), (lambda: su(1, 1), 3, 1), (lambda: u(1, 1), 4, 2),
    (lambda: abelian(2), 2, 2),
])
def test_classical_families(alg, dim, rank):
    g = alg()
    g.validate()
    assert (g.dim, g.rank) == (dim, rank)
    assert g.theta @ g.theta == Matrix.identity(dim)


def test_classical_dispatch():
    assert classical("sl", 2).dim == 3
    with pytest.raises(CatalogError):
        classical("g2")


def test_non_subalgebra_rejected():
    g = sl(2)
    with pytest.raises(ValidationError):
        Subalgebra(g, [{1: 1}, {2: 1}])


def test_theta_stability_flag():
    g = sl(2)
    assert Subalgebra(g, [{0: 1}]).theta_stable
    assert not Subalgebra(g, [{1: 1}]).theta_stable


@pytest.mark.parametrize("name", ["sl2/so2", "sl2/0", "sl3/torus"])
def test_truncation_does_not_change_dims(name):
    spec = pair_specs()[name]
    h = spec.subalgebra()
    full = dims(relative_complex(spec.g, h))
    for cap in range(len(full)):
        assert cohomology(relative_complex(spec.g, h, cap), cap).dim(cap) == full[cap]
    g = spec.g
    whole = dims(ce_complex(g))
    for cap in range(g.dim + 1):
        assert cohomology(ce_complex(g, cap), cap).dim(cap) == whole[cap]
