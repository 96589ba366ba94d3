from __future__ import annotations

import pytest

from lieform.cartan import build_cartan_complex
from lieform.complexes import cohomology, relative_complex
from lieform.graded import GradedElement
from lieform.lie import Subalgebra
from lieform.models import (algebra_data, chevalley_hom, check_chevalley, compare_kernel, model_cohomology,
                            pair_model, within)

from conftest import algebras, pair_specs

PAIRS = sorted(pair_specs())


def model_for(name):
    spec = pair_specs()[name]
    return pair_model(spec.g, spec.subalgebra())


@pytest.mark.parametrize("name", ["sl2", "su2", "sl2+sl2", "sl3"])
def test_whole_algebra_model_is_acyclic(name):
    g = algebras()[name]
    whole = Subalgebra(g, [{i: 1} for i in range(g.dim)])
    hm = model_cohomology(pair_model(g, whole), 6)
    assert [hm.dim(n) for n in range(7)] == [1, 0, 0, 0, 0, 0, 0]


def test_circle_model_dims():
    hm = model_cohomology(model_for("sl2/so2"), 4)
    assert [hm.dim(n) for n in range(5)] == [1, 0, 1, 0, 0]


def test_circle_model_map_is_nonzero_square():
    pm = model_for("sl2/so2")
    (f,) = pm.f.values()
    (exps, c), = f.items()
    assert tuple(exps) == (2,) and c != 0


def test_split_circle_model_dims():
    hm = model_cohomology(model_for("sl2/so1,1"), 3)
    assert [hm.dim(n) for n in range(4)] == [1, 0, 1, 0]


@pytest.mark.parametrize("name", PAIRS)
def test_model_matches_relative_cohomology(name):
    spec = pair_specs()[name]
    h = spec.subalgebra()
    cap = spec.g.dim - h.dim + 1
    hm = model_cohomology(pair_model(spec.g, h), cap)
    rel = cohomology(relative_complex(spec.g, h, cap), cap)
    assert [hm.dim(n) for n in range(cap + 1)] == [rel.dim(n) for n in range(cap + 1)]


@pytest.mark.parametrize("name", PAIRS)
def test_chevalley_quasi_isomorphism(name):
    spec = pair_specs()[name]
    h = spec.subalgebra()
    check = check_chevalley(pair_model(spec.g, h), spec.g.dim - h.dim + 1)
    assert check.cochain and check.lands_in_invariants and check.iso
    assert check.model_dims == check.cartan_dims


def test_chevalley_on_shifted_generator_is_identity():
    spec = pair_specs()["sl2/so2"]
    h = spec.subalgebra()
    pm = pair_model(spec.g, h)
    cc = build_cartan_complex(spec.g, h, 3)
    hom = chevalley_hom(pm, cc)
    sb = GradedElement.gen(pm.psa.gens, "sb1")
    assert hom(sb) == GradedElement.gen(cc.gens, spec.g.dim)


@pytest.mark.parametrize("name", PAIRS)
def test_chern_weil_kernel_equals_ideal(name):
    pm = model_for(name)
    top = 2 * (max(pm.h_data.prims.degrees, default=0) + 1)
    hm = model_cohomology(pm, top)
    for n in range(0, top + 1, 2):
        assert compare_kernel(pm, hm, n).equal


def test_within_gives_fixed_part_inside_h():
    spec = pair_specs()["sl2+sl2/diag"]
    h = spec.subalgebra()
    k = h.fixed_part("k")
    kh = within(k, h)
    assert kh.g is h.induced and kh.dim == k.dim == 1


def test_algebra_data_caches_invariants():
    d = algebra_data(algebras()["sl2"])
    assert d.invariants(4) is d.invariants(4)
