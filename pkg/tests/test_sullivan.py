from __future__ import annotations

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from lieform.graded import GradedElement, basis_of_degree
from lieform.sullivan import (ModelError, check_model, cohomology_psa, koszul_differential, make_psa,
                              permuted, random_model, relative_model, spectral_sequence)


def dims(psa, cap):
    h = cohomology_psa(psa, cap)
    return [h.dim(n) for n in range(cap + 1)]


def test_zero_f_gives_zero_differential():
    psa = make_psa([("u", 3)], [("sv", 4)], {})
    assert all(m.is_zero() for m in koszul_differential(psa, 8).values())


def test_identity_f_is_acyclic():
    psa = make_psa([("u", 3)], [("sv", 4)], {0: {(1,): 1}})
    assert dims(psa, 10) == [1] + [0] * 10


def test_single_odd_generator():
    psa = make_psa([("u", 3)], [], {})
    assert dims(psa, 5) == [1, 0, 0, 1, 0, 0]


def test_decomposable_image():
    # u ↦ sv^2 truncates S sv at sv^2; u sv^k never closes
    psa = make_psa([("u", 3)], [("sv", 2)], {0: {(2,): 1}})
    assert dims(psa, 8) == [1, 0, 1, 0, 0, 0, 0, 0, 0]


def test_sign_convention_is_minus_delta():
    psa = make_psa([("u", 3)], [("sv", 4)], {0: {(1,): 1}})
    u = GradedElement.gen(psa.gens, 0)
    assert psa.differential()(u) == -psa.koszul()(u)


def test_make_psa_rejects_bad_degrees():
    with pytest.raises(ModelError):
        make_psa([("u", 2)], [], {})
    with pytest.raises(ModelError):
        make_psa([("u", 3)], [("sv", 2)], {0: {(1,): 1}})


def poly_strategy(sdegs, target):
    from lieform.graded import Generator, GeneratorSet
    gens = GeneratorSet(Generator(f"x{i}", d) for i, d in enumerate(sdegs))
    keys = [k[1] for k in basis_of_degree(gens, target)]
    if not keys:
        return st.just({})
    return st.dictionaries(st.sampled_from(keys), st.integers(-3, 3).map(F), max_size=3)


@st.composite
def psas(draw):
    u = [(f"u{i}", draw(st.sampled_from([1, 3, 5]))) for i in range(draw(st.integers(1, 3)))]
    sv = [(f"sv{i}", draw(st.sampled_from([2, 4]))) for i in range(draw(st.integers(1, 3)))]
    f = {i: draw(poly_strategy([d for _, d in sv], d + 1)) for i, (_, d) in enumerate(u)}
    return make_psa(u, sv, f)


@settings(max_examples=60, deadline=None)
@given(psas())
def test_koszul_squares_to_zero(psa):
    d = psa.koszul()
    for n in range(9):
        for k in basis_of_degree(psa.gens, n):
            assert not d(d(GradedElement.monomial(psa.gens, k)))


@settings(max_examples=30, deadline=None)
@given(psas())
def test_cohomology_independent_of_u_order(psa):
    order = list(range(psa.n_u))[::-1]
    assert dims(psa, 8) == dims(permuted(psa, order), 8)
    koszul_differential(psa, 8)


def test_w_equals_v_with_identity():
    u = [("u", 3)]
    f = {0: {(2,): 1}}
    model = relative_model(u, [("v", 1)], [("w", 1)], f, {0: {(1,): 1}}, 8)
    c = check_model(model)
    assert c.all_ok()
    psa = make_psa(u, [("sv", 2)], f)
    assert c.big_dims == dims(psa, 8) == c.target_dims


def test_empty_u():
    # the source is S sV with zero differential and the target is S sW
    model = relative_model([], [("v", 3)], [("w", 1)], {}, {0: {(2,): F(1, 2)}}, 8)
    c = check_model(model)
    assert c.all_ok()
    assert c.big_dims == c.target_dims == [1, 0] * 4 + [1]
    assert c.source_dims == [1, 0, 0, 0, 1, 0, 0, 0, 1]


def test_desk_instance_three_three_one():
    model = relative_model([("u", 3)], [("v", 3)], [("w", 1)], {0: {(1,): 2}}, {0: {(2,): -3}}, 10)
    c = check_model(model)
    assert c.all_ok() and c.big_dims == c.target_dims


def test_kappa_vanishes_without_sv_and_v():
    model = relative_model([("u", 3)], [("v", 1)], [("w", 1)], {0: {(2,): 1}}, {0: {(1,): 1}}, 8)
    for n in range(9):
        for k in basis_of_degree(model.big, n):
            if model.bidegree(k) == (0, 0):
                assert not model.kappa(GradedElement.monomial(model.big, k))


def test_spectral_sequence_small_example():
    model = relative_model([("u", 3)], [("v", 1)], [("w", 1)], {0: {(2,): 1}}, {0: {(1,): 1}}, 8)
    ss = spectral_sequence(model)
    assert ss.pages[2] == {(0, 0): 1, (2, 0): 1} == ss.pages["inf"]
    assert ss.converges() and ss.collapses() and ss.e2_matches_formula() and ss.edge_ok()


def test_spectral_sequence_can_fail_to_collapse():
    # with g = 0 both E_2 factors are large but the target is only S sW
    model = relative_model([], [("v", 1)], [("w", 1)], {}, {}, 6)
    ss = spectral_sequence(model)
    assert ss.converges() and ss.e2_matches_formula()
    assert not ss.collapses() and ss.first_failure() == 1


def test_filtration_is_preserved():
    rng = random.Random(7)
    model = random_model(rng, cap=8)
    total = model.total()
    for n in range(9):
        for k in model.basis(n):
            p = model.filtration(k)
            img = total(GradedElement.monomial(model.big, k))
            assert all(model.filtration(key) >= p for key in img.terms)


@pytest.mark.parametrize("seed", range(6))
def test_random_models(seed):
    model = random_model(random.Random(seed), cap=8)
    assert check_model(model).all_ok()
    ss = spectral_sequence(model)
    assert ss.converges() and ss.edge_ok() and ss.e2_matches_formula()
