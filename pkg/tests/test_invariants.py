from pathlib import Path

import pytest

from hitproblem.cohit import admissible_basis, normal_form
from hitproblem.fixtures import fixture_names, load_fixture
from hitproblem.gf2core import BitVector
from hitproblem.invariants import (
    action,
    generator_range,
    invariant_subspace,
    rho,
    verify_invariant,
    weight_action,
)
from hitproblem.monomials import Polynomial, enumerate_monomials, order_key, parse_poly

DATA = Path(__file__).parent / "data"
WEIGHTS18 = [(2, 2, 1, 1), (2, 2, 3), (2, 4, 2), (4, 1, 1, 1), (4, 1, 3), (4, 3, 2)]


def test_rho_examples():
    assert rho(1, (2, 1)) == Polynomial(2, [(1, 2)])
    assert rho(2, (0, 2)) == Polynomial(2, [(2, 0), (0, 2)])
    assert rho(2, (0, 3)) == Polynomial(2, [(3, 0), (2, 1), (1, 2), (0, 3)])
    with pytest.raises(ValueError):
        rho(3, (1, 1))
    with pytest.raises(ValueError):
        rho(1, (3,))


def test_rho_does_not_raise_weight():
    for m in (3, 4):
        for x in enumerate_monomials(m, 11):
            w = order_key(x, 5)[0]
            assert all(order_key(t, 5)[0] <= w for t in rho(m, x).terms)


def test_generator_range():
    assert list(generator_range(5, "sym")) == [1, 2, 3, 4]
    assert list(generator_range(5, "gl")) == [1, 2, 3, 4, 5]
    with pytest.raises(ValueError):
        generator_range(5, "other")


def test_action_degree3():
    b = admissible_basis(2, 3)
    act = action(b)
    i, j, k = b.index[(3, 0)], b.index[(0, 3)], b.index[(1, 2)]
    assert act.apply(1, 1 << i) == 1 << j
    assert act.apply(1, 1 << k) == 1 << k


def _square(act, j, v):
    return act.apply(j, act.apply(j, v))


@pytest.mark.parametrize("m,n", [(3, 6), (3, 10), (4, 7), (4, 9)])
def test_group_relations(m, n):
    act = action(admissible_basis(m, n))
    for c in range(act.dim):
        v = 1 << c
        for j in range(1, m):
            assert _square(act, j, v) == v
        for j in range(1, m - 1):
            w = v
            for _ in range(3):
                w = act.apply(j, act.apply(j + 1, w))
            assert w == v
    for j in range(1, m + 1):
        rows = act.matrix_rows(j)
        from hitproblem.gf2core import rank
        assert rank([BitVector(act.dim, r) for r in rows]) == act.dim


@pytest.mark.parametrize("m,n", [(3, 6), (4, 7), (4, 8)])
def test_gl_invariants_inside_sym(m, n):
    act = action(admissible_basis(m, n))
    gl = invariant_subspace(act, "gl")
    sym = invariant_subspace(act, "sym")
    assert len(gl) <= len(sym)
    for v in gl:
        for j in range(1, m + 1):
            assert act.apply(j, v.bits) == v.bits


def test_degree18_gl_invariants():
    b = admissible_basis(5, 18)
    act = action(b)
    assert act.dim == 730
    inv = invariant_subspace(act, "gl")
    assert len(inv) == 1
    xi = load_fixture("xi_n0")
    assert normal_form(xi, b) == inv[0]
    assert verify_invariant(xi, "gl")


@pytest.mark.parametrize("w,expected", list(zip(WEIGHTS18, [11, 2, 1, 4, 2, 2])))
def test_degree18_sym_weight_invariants(w, expected):
    act = weight_action(5, 18, w, gens=range(1, 5))
    assert len(invariant_subspace(act, "sym")) == expected


def test_r4prime_weight_invariant():
    r = load_fixture("R4prime")
    assert r.degree == 18
    assert verify_invariant(r, "sym", "weight", (4, 1, 1, 1))
    assert verify_invariant(r, "gl", "weight", (4, 1, 1, 1))


def test_spike_alone_not_invariant():
    assert not verify_invariant(Polynomial(5, [(1, 1, 1, 1, 14)]), "gl")


def test_xi_n0_decomposition():
    total = load_fixture("R4prime")
    for k in (2, 8, 9, 13, 15, 25, 27, 29):
        total = total + load_fixture(f"g{k}")
    assert total == load_fixture("xi_n0")


def test_fixtures_well_formed():
    names = fixture_names()
    assert {"xi_n0", "xi_n1", "R4prime"} <= set(names)
    assert sum(n.startswith("g") for n in names) == 31
    assert all(load_fixture(n).degree == 18 for n in names if n != "xi_n1")
    assert load_fixture("xi_n1").degree == 41
    with pytest.raises(KeyError):
        load_fixture("nope")


def _y_basis():
    lines = [l.strip() for l in (DATA / "weight_4111_basis.txt").read_text().splitlines()]
    return [next(iter(parse_poly(l, 5).terms)) for l in lines if l]


def test_weight_4111_listing_matches_engine():
    ys = _y_basis()
    assert len(ys) == len(set(ys)) == 110
    assert set(ys) == set(admissible_basis(5, 18).by_weight[(4, 1, 1, 1)])


def test_r4prime_is_sum_of_listed_monomials():
    ys = _y_basis()
    terms = load_fixture("R4prime").terms
    picked = [i + 1 for i, y in enumerate(ys) if y in terms]
    assert len(picked) == len(terms) == 12
