from __future__ import annotations

from fractions import Fraction as F

import pytest

from lieform.catalog import abelian, sl, split_torus
from lieform.graded import GradedElement
from lieform.models import algebra_data
from lieform.transgression import (TransgressionError, build_transgression, cartan_map, invariant_polynomials,
                                   kernel_of_rho_is_decomposable, primitives, rho_tau_identity,
                                   suspension_bijective, theta_commutes)

from conftest import algebras

NAMES = ["sl2", "so1,1", "sl2+sl2", "sl3", "su2"]


@pytest.fixture(scope="module")
def data():
    return {n: algebra_data(algebras()[n]) for n in NAMES}


@pytest.mark.parametrize("name,degrees", [("sl2", [3]), ("so1,1", [1]), ("sl2+sl2", [3, 3]),
                                          ("sl3", [3, 5]), ("su2", [3])])
def test_primitive_degrees(data, name, degrees):
    assert data[name].prims.degrees == degrees


def test_sl2_primitive_is_volume_form():
    ps = primitives(sl(2))
    (b,) = ps.basis
    assert set(b.terms) == {(0b111, ())}


def test_sl2_invariant_polynomial_dims():
    # indexed by polynomial degree; shifted degree is twice that
    inv = invariant_polynomials(sl(2), 8)
    assert [inv.dim(k) for k in range(5)] == [1, 0, 1, 0, 1]


def test_sl3_invariant_polynomial_dims():
    # generated in shifted degrees 4 and 6
    inv = invariant_polynomials(sl(3), 8)
    assert [inv.dim(k) for k in range(5)] == [1, 0, 1, 1, 1]


@pytest.mark.parametrize("name", NAMES)
def test_rho_tau_is_identity(data, name):
    assert rho_tau_identity(data[name].td)


@pytest.mark.parametrize("name", NAMES)
def test_kernel_of_rho_is_decomposable(data, name):
    td = data[name].td
    top = max(td.prims.degrees) + 1
    assert kernel_of_rho_is_decomposable(td, top // 2 + 1)


@pytest.mark.parametrize("name", NAMES)
def test_suspension_is_bijective(data, name):
    g = algebras()[name]
    assert suspension_bijective(data[name].td, min(g.dim + 1, 8))


@pytest.mark.parametrize("name", NAMES)
def test_transgression_commutes_with_theta(data, name):
    td = data[name].td
    assert td.theta_compatible and theta_commutes(td, algebras()[name].theta)
    assert td.verify_certificates()


def test_abelian_cartan_map_is_shift_inverse():
    g = split_torus()
    td = build_transgression(g)
    (t,) = td.tau
    assert str(t) == "1*sa0*"
    rho, omega = cartan_map(td.data, t, 1)
    assert rho == td.prims.basis[0] and not omega


def test_abelian_quadratic_is_decomposable():
    g = abelian(2)
    td = build_transgression(g)
    assert kernel_of_rho_is_decomposable(td, 2)
    inv = invariant_polynomials(g, 4)
    for q in inv.elements(2):
        rho, _ = cartan_map(td.data, q, 2)
        assert not rho


def test_sl3_theta_split():
    ps = algebra_data(sl(3)).prims
    # θ fixes the cubic primitive and negates the quintic one
    assert ps.minus == [[F(0), F(1)]] and ps.plus == [[F(1), F(0)]]


def test_declared_rank_mismatch_is_reported():
    g = sl(2)
    g.rank = 2
    try:
        with pytest.raises(TransgressionError):
            primitives(g)
        assert primitives(g, check_rank=False).dim == 1
    finally:
        g.rank = 1


def test_sl2_cartan_map_of_quadratic():
    td = algebra_data(sl(2)).td
    (q,) = invariant_polynomials(sl(2), 4).elements(2)
    rho, _ = cartan_map(td.data, q, 2)
    assert rho.degree == 3 and rho
    assert GradedElement(td.prims.gens, rho.terms) == rho
