from __future__ import annotations

from fractions import Fraction as F
from math import comb

from hypothesis import given, settings, strategies as st

from lieform.graded import (Generator, GeneratorSet, GradedElement, basis_of_degree, derivation,
                            homomorphism, interior_derivation, multiply, polynomial_derivation,
                            series_dims, truncate)

MIXED = GeneratorSet([Generator("x", 3), Generator("y", 5), Generator("z", 1),
                      Generator("p", 4), Generator("q", 2)])


def gen(name, gens=MIXED):
    return GradedElement.gen(gens, name)


@st.composite
def monomials(draw, gens=MIXED, max_deg=12):
    n = draw(st.integers(0, max_deg))
    keys = basis_of_degree(gens, n)
    if not keys:
        return GradedElement.one(gens)
    return GradedElement.monomial(gens, draw(st.sampled_from(keys)), draw(st.integers(-3, 3).filter(bool)))


@st.composite
def elements(draw, gens=MIXED):
    out = GradedElement.zero(gens)
    for _ in range(draw(st.integers(0, 3))):
        out = out + draw(monomials(gens))
    return out


def test_odd_square_vanishes():
    x = gen("x")
    assert not multiply(x, x)


def test_koszul_sign_odd_odd():
    x, y = gen("x"), gen("y")
    assert multiply(x, y) == -multiply(y, x)


def test_even_generators_commute():
    p, q = gen("p"), gen("q")
    assert multiply(p, q) == multiply(q, p)


@settings(max_examples=80, deadline=None)
@given(monomials(), monomials())
def test_graded_commutativity(a, b):
    sign = -1 if (a.degree % 2 and b.degree % 2) else 1
    assert multiply(a, b) == multiply(b, a).scale(sign)


@settings(max_examples=60, deadline=None)
@given(elements(), elements(), elements())
def test_associativity(a, b, c):
    assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


def test_interior_examples():
    x, y = gen("x"), gen("y")
    assert interior_derivation({"x": 1}, multiply(x, y)) == y
    assert not interior_derivation({"x": 1}, y)
    assert not interior_derivation({"x": 1}, multiply(x, x))


def test_polynomial_derivation_examples():
    p, q = gen("p"), gen("q")
    assert polynomial_derivation({"p": 1}, multiply(p, p)) == p.scale(2)
    assert not polynomial_derivation({"p": 1}, q)


def test_euler_identity_on_cubics():
    gens = GeneratorSet([Generator("s1", 2), Generator("s2", 2), Generator("s3", 4)])
    for key in basis_of_degree(gens, 6) + basis_of_degree(gens, 8):
        m = GradedElement.monomial(gens, key)
        total = GradedElement.zero(gens)
        for g in gens.generators:
            total = total + multiply(gen(g.name, gens), polynomial_derivation({g.name: 1}, m))
        assert total == m.scale(sum(key[1]))


@settings(max_examples=60, deadline=None)
@given(monomials(), elements(), st.booleans(), st.data())
def test_derivation_rule(a, b, odd, data):
    shift = 1 if odd else 2
    images = {}
    for i, g in enumerate(MIXED.generators):
        target = basis_of_degree(MIXED, g.degree + shift)
        if target and data.draw(st.booleans()):
            images[i] = GradedElement.monomial(MIXED, data.draw(st.sampled_from(target)))
    d = derivation(MIXED, images, odd=odd)
    sign = -1 if (odd and a.degree % 2) else 1
    assert d(multiply(a, b)) == multiply(d(a), b) + multiply(a, d(b)).scale(sign)


def test_truncate_examples():
    x = gen("x")
    one = GradedElement.one(MIXED)
    assert truncate(one + x, 0) == one
    assert truncate(one + x, 10) == one + x
    gens = GeneratorSet([Generator("sP", 4)])
    sp = gen("sP", gens)
    assert truncate(sp + multiply(sp, sp), 4) == sp


def test_basis_examples():
    three = GeneratorSet([Generator(n, 1) for n in "abc"])
    assert len(basis_of_degree(three, 2)) == 3
    s = GeneratorSet([Generator("sP", 4)])
    assert basis_of_degree(s, 8) == [(0, (2,))]
    mixed = GeneratorSet([Generator("x", 3), Generator("sP", 4)])
    assert basis_of_degree(mixed, 7) == [(1, (1,))]


@settings(max_examples=30, deadline=None)
@given(st.lists(st.sampled_from([1, 2, 3, 4, 5, 6]), min_size=1, max_size=5), st.integers(0, 14))
def test_basis_counts_match_series(degrees, cap):
    gens = GeneratorSet([Generator(f"g{i}", d) for i, d in enumerate(degrees)])
    sizes = [len(basis_of_degree(gens, n)) for n in range(cap + 1)]
    assert sizes == series_dims(gens, cap)
    for n in range(cap + 1):
        keys = basis_of_degree(gens, n)
        assert len(set(keys)) == len(keys)
        assert all(gens.key_degree(k) == n for k in keys)


def test_binomial_exterior_dims():
    for n in range(1, 6):
        gens = GeneratorSet([Generator(f"x{i}", 3) for i in range(n)])
        assert [len(basis_of_degree(gens, 3 * p)) for p in range(n + 1)] == [comb(n, p) for p in range(n + 1)]


def test_homomorphism_is_multiplicative():
    x, y, p = gen("x"), gen("y"), gen("p")
    phi = homomorphism(MIXED, MIXED, {0: x + multiply(gen("z"), p), 3: p.scale(2)})
    a = multiply(x, p)
    b = multiply(y, p)
    assert phi(multiply(a, b)) == multiply(phi(a), phi(b))


def test_json_round_trip():
    e = multiply(gen("x"), gen("p")).scale(F(-3, 2)) + gen("z")
    assert GradedElement.from_json(MIXED, e.to_json()) == e
