import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hitproblem.cohit import admissible_basis
from hitproblem.fixtures import load_fixture
from hitproblem.monomials import Polynomial, enumerate_monomials, order_key, param_vector, parse_poly
from hitproblem.morphisms import (
    IndexPair,
    index_pairs,
    kameko_down,
    kameko_up,
    phi_sets,
    psi,
    subst_p,
    subst_q,
)
from hitproblem.steenrod import sq


def test_kameko_examples():
    assert kameko_down((3, 5, 1, 1, 1)) == (1, 2, 0, 0, 0)
    assert kameko_down((2, 1)) is None
    assert kameko_down((1, 1, 1, 1, 1)) == (0, 0, 0, 0, 0)
    assert kameko_up((1, 0)) == (3, 1)
    assert kameko_up((0,) * 5) == (1,) * 5


def test_kameko_up_fixture():
    xi = load_fixture("xi_n0")
    f = kameko_up(xi, 5)
    assert f.degree == 41 and len(f) == len(xi)
    assert all(kameko_down(t) in xi for t in f.terms)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 6).flatmap(lambda m: st.tuples(*[st.integers(0, 20)] * m)))
def test_kameko_down_up(u):
    assert kameko_down(kameko_up(u)) == u


def test_subst_q_examples():
    assert subst_q(1, 2, (3,)) == (0, 3)
    assert subst_q(2, 3, (2, 1)) == (2, 0, 1)
    assert subst_q(3, 3, (1, 1)) == (1, 1, 0)
    with pytest.raises(ValueError):
        subst_q(4, 3, (1, 1))


def test_subst_p_examples():
    assert subst_p(IndexPair(1, (2,)), (1, 2)) == Polynomial(1, [(3,)])
    assert subst_p(IndexPair(1, ()), (1, 2)) == Polynomial(1)
    assert subst_p(IndexPair(2, (3,)), subst_q(2, 3, (2, 1))) == Polynomial(2, [(2, 1)])


def test_index_pair_validation():
    with pytest.raises(ValueError):
        IndexPair(2, (2,)).check(3)
    with pytest.raises(ValueError):
        IndexPair(1, (3, 2)).check(3)
    assert len(index_pairs(3)) == 3 + 2 + 1 + 1  # (1,*) 4, (2,*) 2, (3,) 1


def test_psi_examples():
    assert psi(IndexPair(1, (2,)), (3, 0)) == (1, 2, 0)
    assert psi(IndexPair(1, (2,)), (2, 0)) is None
    for x in enumerate_monomials(3, 5):
        for l in range(1, 5):
            assert psi(IndexPair(l), x) == subst_q(l, 4, x)


def test_psi_preserves_degree():
    for x in enumerate_monomials(3, 9):
        for pr in index_pairs(4):
            y = psi(pr, x)
            if y is not None:
                assert sum(y) == sum(x) and min(y) >= 0


def test_phi_sets_examples():
    z, p = phi_sets([(3,)], 2)
    assert z == {(3, 0), (0, 3)}
    assert phi_sets([], 4) == (set(), set())
    with pytest.raises(ValueError):
        phi_sets([(3, 0), (1, 1)], 3)


def _poly(data, m, n):
    mons = enumerate_monomials(m, n)
    return Polynomial(m, data.draw(st.lists(st.sampled_from(mons), max_size=4)))


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 4), st.integers(0, 10), st.integers(0, 4), st.data())
def test_q_and_p_commute_with_sq(m, n, k, data):
    f = _poly(data, m - 1, n)
    l = data.draw(st.integers(1, m))
    assert sq(k, subst_q(l, m, f)) == subst_q(l, m, sq(k, f))
    pr = data.draw(st.sampled_from(index_pairs(m)))
    g = _poly(data, m, n)
    assert sq(k, subst_p(pr, g)) == subst_p(pr, sq(k, g))


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 4), st.integers(0, 10), st.data())
def test_p_after_q_is_identity(m, n, data):
    f = _poly(data, m - 1, n)
    pr = data.draw(st.sampled_from(index_pairs(m)))
    assert subst_p(pr, subst_q(pr.l, m, f)) == f


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 5), st.integers(1, 16), st.data())
def test_p_does_not_raise_weight(m, n, data):
    x = data.draw(st.sampled_from(enumerate_monomials(m, n)))
    pr = data.draw(st.sampled_from(index_pairs(m)))
    width = n.bit_length() + 1
    w = order_key(x, width)[0]
    for t in subst_p(pr, x).terms:
        assert order_key(t, width)[0] <= w


def test_admissibility_transfer():
    # x_l^(2^d - 1) q_l(X) is admissible whenever X is
    for m in range(2, 5):
        for d in (1, 2):
            for n in range(0, 13 - (2 ** d - 1)):
                target = set(admissible_basis(m, n + 2 ** d - 1).admissibles)
                for x in admissible_basis(m - 1, n).admissibles:
                    for l in range(1, m + 1):
                        y = list(subst_q(l, m, x))
                        y[l - 1] += 2 ** d - 1
                        assert tuple(y) in target, (x, l, d)


def test_phi_positive_images_degree41_weight_block():
    # quick tier: the 4-variable side is small
    V = admissible_basis(4, 41).by_weight[(3, 3, 2, 1, 1)]
    assert len(V) == 225
    zero, pos = phi_sets(V, 5)
    assert len(zero) == 975
    assert len(pos) == 683
    assert all(param_vector(x) == (3, 3, 2, 1, 1) for x in pos)
