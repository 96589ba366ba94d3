from __future__ import annotations

import pytest

from lieform.cartan import (build_cartan_complex, build_psi, cartan_cohomology_dims, check_epsilon_psi,
                            epsilon, shifted_to_cartan)
from lieform.complexes import cohomology, relative_complex
from lieform.graded import GradedElement, multiply
from lieform.lie import ValidationError
from lieform.transgression import invariant_polynomials, shifted_generators

from conftest import pair_specs

PAIRS = ["sl2/so2", "sl2/so1,1", "sl2/0", "su2/u1", "sl2+sl2/diag", "sl3/torus"]


def setup(name, cap=None):
    spec = pair_specs()[name]
    h = spec.subalgebra()
    cap = spec.g.dim - h.dim if cap is None else cap
    return spec.g, h, cap


@pytest.mark.parametrize("name", PAIRS)
def test_d_squared_and_dims_match_relative(name):
    g, h, cap = setup(name)
    cc = build_cartan_complex(g, h, cap)
    assert cc.complex.check_d_squared()
    rel = cohomology(relative_complex(g, h, cap), cap)
    assert cartan_cohomology_dims(g, h, cap) == [rel.dim(n) for n in range(cap + 1)]


@pytest.mark.parametrize("name", ["sl2/so2", "sl2/so1,1", "su2/u1", "sl2+sl2/diag", "sl3/torus"])
def test_psi_left_inverse_of_epsilon(name):
    g, h, cap = setup(name)
    cc = build_cartan_complex(g, h, cap)
    assert check_epsilon_psi(cc, build_psi(cc), relative_complex(g, h, cap))


@pytest.mark.parametrize("name", ["sl2/so2", "su2/u1", "sl2+sl2/diag"])
def test_epsilon_and_psi_are_cochain_maps(name):
    g, h, cap = setup(name)
    cc = build_cartan_complex(g, h, cap)
    rel = relative_complex(g, h, cap)
    psi = build_psi(cc)
    d_rel = g.ce_differential(rel.gens)
    for n in range(cap + 1):
        for b in rel.spaces[n].basis:
            a = GradedElement(rel.gens, b)
            assert cc.d(epsilon(cc, a)) == epsilon(cc, d_rel(a))
        for b in cc.complex.spaces[n].basis:
            x = GradedElement(cc.gens, b)
            assert psi(cc.d(x)) == d_rel(psi(x))


def test_epsilon_rejects_non_horizontal():
    g, h, cap = setup("sl2/so2")
    cc = build_cartan_complex(g, h, cap)
    with pytest.raises(ValidationError):
        epsilon(cc, GradedElement.gen(g.dual_generators(), "e*"))


@pytest.mark.parametrize("name", ["sl2/so2", "sl2/so1,1", "su2/u1"])
def test_chern_weil_class_of_circle_is_nonzero(name):
    # no invariant of g restricts into S^1, so the ideal is zero there
    g, h, cap = setup(name)
    cc = build_cartan_complex(g, h, cap)
    w = build_psi(cc)(GradedElement.gen(cc.gens, g.dim))
    rel = cohomology(relative_complex(g, h, cap), cap)
    coords = dict(enumerate(rel.complex.spaces[2].coords(w.terms)))
    assert w.degree == 2
    assert rel.is_cocycle(2, coords) and not rel.is_coboundary(2, coords)


@pytest.mark.parametrize("name", ["su2/u1", "sl2+sl2/diag", "sl3/torus"])
def test_chern_weil_is_multiplicative(name):
    g, h, cap = setup(name)
    cc = build_cartan_complex(g, h, cap)
    psi = build_psi(cc)
    inv = invariant_polynomials(h.induced, 4)
    elems = [shifted_to_cartan(cc, q) for k in (1, 2) for q in inv.elements(k)]
    for p in elems:
        for q in elems:
            assert psi(multiply(p, q)) == multiply(psi(p), psi(q))


def test_invariant_polynomials_map_to_cocycles():
    g, h, cap = setup("sl3/torus")
    cc = build_cartan_complex(g, h, cap)
    psi = build_psi(cc)
    d = g.ce_differential(g.dual_generators())
    for q in invariant_polynomials(h.induced, 4).elements(2):
        assert not d(psi(shifted_to_cartan(cc, q)))
