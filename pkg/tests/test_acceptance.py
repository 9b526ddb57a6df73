"""Acceptance criteria, one test per criterion.

Each test records a PASS or FAIL line; the lines are printed at the end of
the pytest run (and by running this file directly).  Criteria 9 and 10 need
the full degree-41 basis in five variables and only run with
HITPROBLEM_EXTENDED=1.
"""

import os
import random
import sys

import pytest

from hitproblem.cohit import (
    admissible_basis,
    kameko_kernel_dim,
    normal_form,
    split_zero_positive,
    walker_wood_zero_dim,
    weight_local_dim,
)
from hitproblem.fixtures import load_fixture
from hitproblem.invariants import action, invariant_subspace, weight_action
from hitproblem.monomials import (
    Polynomial,
    beta,
    enumerate_monomials,
    order_key,
    spikes,
)
from hitproblem.morphisms import index_pairs, kameko_down, kameko_up, subst_p, subst_q
from hitproblem.oracles import (
    C,
    ERRATA,
    check_conjecture,
    consistency_sweep,
    kameko_bound,
    stated_dim,
)
from hitproblem.steenrod import is_hit, sq
from hitproblem.topomod import cp_quotient, modules_isomorphic, sphere_wedge

sys.path.insert(0, os.path.dirname(__file__))
from listed import LISTED_DEGREE17  # noqa: E402

RESULTS: list[str] = []
EXTENDED = bool(os.environ.get("HITPROBLEM_EXTENDED"))

WEIGHTS18 = [(2, 2, 1, 1), (2, 2, 3), (2, 4, 2), (4, 1, 1, 1), (4, 1, 3), (4, 3, 2)]
OMEGA41 = (3, 3, 2, 1, 1)

# values the errata cells must take for the stated facts around them to agree
CONSISTENT = {
    (3, 4, (2, 1)): 8,
    (3, 4, (4,)): 0,
    (4, 4, (2, 1)): 2 * C(4, 2) + 2 * C(4, 3),
}

# weights whose dims were computed on the way; criterion 8 checks them all
COMPUTED: dict[tuple, int] = {}


def record(num: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"criterion {num:2d} {'PASS' if ok else 'FAIL'}: {title}"
    if detail:
        line += f" ({detail})"
    RESULTS.append(line)
    print(line)
    assert ok, line


def extended_only(num: int, title: str) -> None:
    if not EXTENDED:
        line = f"criterion {num:2d} SKIP: {title} (extended tier, set HITPROBLEM_EXTENDED=1)"
        RESULTS.append(line)
        pytest.skip(line)


def _note_weights(m, n):
    for w, d in admissible_basis(m, n).weight_dims().items():
        COMPUTED[(m, n, w)] = d


def test_criterion_01_tables():
    cells = sorted({(m, n) for m in range(1, 5) for n in range(1, 10)}
                   | {(m, n) for m in range(1, 7) for n in range(1, 7)})
    rows = consistency_sweep(cells)
    bad = [r for r in rows if r["status"] not in ("pass", "erratum")]
    for m, n in cells:
        _note_weights(m, n)
    # erratum cells: the engine takes the value the neighbouring facts force
    err_ok = all(COMPUTED.get(k, 0) == v for k, v in CONSISTENT.items())
    err_ok &= set(CONSISTENT) == set(ERRATA)
    splits = {
        (4, 6): [20, 4],
        (4, 7): [14, 1, 20],
        (4, 8): [45, 4, 6],
        (3, 7): [7, 3],
    }
    split_ok = all(
        list(admissible_basis(m, n).weight_dims().values()) == v for (m, n), v in splits.items())
    n_rows = sum(r["status"] == "pass" for r in rows)
    record(1, "closed forms for m<=4, n<=9 and m<=6, n<=6",
           not bad and err_ok and split_ok,
           f"{n_rows} rows pass, {len(rows) - n_rows - len(bad)} erratum rows consistent, {len(bad)} bad")


def test_criterion_02_degree18():
    b = admissible_basis(5, 18)
    dims = [len(b.by_weight.get(w, [])) for w in WEIGHTS18]
    _note_weights(5, 18)
    ok = b.dim == 730 and dims == [300, 15, 10, 110, 15, 280] and len(b.by_weight) == 6
    record(2, "dim Q_18 in five variables is 730 with weights 300,15,10,110,15,280", ok,
           f"{b.dim}: {dims}")


def test_criterion_03_gl_invariants_18():
    b = admissible_basis(5, 18)
    inv = invariant_subspace(action(b), "gl")
    xi = normal_form(load_fixture("xi_n0"), b)
    ok = len(inv) == 1 and xi == inv[0] and xi.bits != 0
    record(3, "GL(5) invariants in degree 18 are spanned by the fixture class", ok,
           f"dim {len(inv)}")


def test_criterion_04_sym_weight_invariants_18():
    got = [len(invariant_subspace(weight_action(5, 18, w, gens=range(1, 5)), "sym"))
           for w in WEIGHTS18]
    record(4, "Sigma_5 weight-local invariants in degree 18 are 11,2,1,4,2,2",
           got == [11, 2, 1, 4, 2, 2], str(got))


def test_criterion_05_degree17_list():
    b = admissible_basis(5, 17)
    adm = set(b.admissibles)
    bad = []
    for x in LISTED_DEGREE17:
        kx = order_key(x, 6)
        img = normal_form(Polynomial(5, [x]), b)
        if x in adm or any(order_key(b.admissibles[i], 6) >= kx for i in img.indices()):
            bad.append(x)
    record(5, "listed degree-17 monomials are nonadmissible", not bad,
           f"{len(LISTED_DEGREE17)} monomials, {len(bad)} admissible")


def _steenrod_spots(rng):
    for _ in range(60):
        m = rng.randint(1, 4)
        f = Polynomial(m, [tuple(rng.randint(0, 5) for _ in range(m))])
        g = Polynomial(m, [tuple(rng.randint(0, 5) for _ in range(m))])
        k = rng.randint(0, 6)
        cartan = Polynomial(m)
        for i in range(k + 1):
            cartan = cartan + sq(i, f) * sq(k - i, g)
        if sq(k, f * g) != cartan:
            return "Cartan"
        d = f.degree
        if sq(d + 1, f) or sq(d, f) != f * f:
            return "instability"
        if sq(1, sq(1, f)) or sq(1, sq(2, f)) != sq(3, f) \
                or sq(2, sq(2, f)) != sq(3, sq(1, f)):
            return "Adem"
    return None


def _spikes_not_hit():
    for m in range(1, 5):
        for n in range(1, 21):
            for x in spikes(m, n):
                if is_hit(Polynomial(m, [x])):
                    return (m, n, x)
    return None


def _wood():
    for m in range(1, 5):
        for n in range(1, 26):
            if beta(n) > m and admissible_basis(m, n).dim:
                return (m, n)
    return None


def _morphisms(rng):
    for m in range(1, 6):
        for _ in range(30):
            u = tuple(rng.randint(0, 12) for _ in range(m))
            if kameko_down(kameko_up(u)) != u:
                return "Kameko"
    for m in range(2, 5):
        for n in range(0, 11):
            mons = enumerate_monomials(m - 1, n)
            for pr in index_pairs(m):
                for x in rng.sample(mons, min(5, len(mons))):
                    if subst_p(pr, subst_q(pr.l, m, x)) != Polynomial(m - 1, [x]):
                        return "p after q"
            width = n.bit_length() + 1
            for y in rng.sample(enumerate_monomials(m, n), min(8, len(enumerate_monomials(m, n)))):
                w = order_key(y, width)[0]
                for pr in index_pairs(m):
                    if any(order_key(t, width)[0] > w for t in subst_p(pr, y).terms):
                        return "weight of p"
    for m in range(2, 5):
        for d in (1, 2, 3):
            e = 2 ** d - 1
            for n in range(0, 13 - e):
                target = set(admissible_basis(m, n + e).admissibles)
                for x in admissible_basis(m - 1, n).admissibles:
                    for l in range(1, m + 1):
                        y = list(subst_q(l, m, x))
                        y[l - 1] += e
                        if tuple(y) not in target:
                            return "admissibility transfer"
    return None


def _grouped_direct():
    cells = [(m, n) for m in (2, 3) for n in range(1, 13)] + [(4, n) for n in range(1, 10)]
    for m, n in cells:
        for w, d in admissible_basis(m, n).weight_dims().items():
            if weight_local_dim(m, w, "direct") != d:
                return (m, n, w)
    if weight_local_dim(5, (4, 1, 1, 1), "direct") != 110:
        return (5, 18)
    return None


def _walker_wood():
    zero18 = split_zero_positive(admissible_basis(5, 18))[0]
    if zero18 != walker_wood_zero_dim(5, 18):
        return "degree 18"
    # the only nonzero terms in degree 41 are r = 3, 4
    p3 = stated_dim(3, 41, part="positive")
    p4 = stated_dim(4, 41, part="positive")
    eng = [split_zero_positive(admissible_basis(r, 41))[1] for r in (1, 2, 3, 4)]
    if eng != [0, 0, p3, p4] or 10 * p3 + 5 * p4 != stated_dim(5, 41, OMEGA41, "zero"):
        return "degree 41"
    return None


def test_criterion_06_properties():
    rng = random.Random(6)
    fails = {}
    for name, check in [("steenrod", lambda: _steenrod_spots(rng)), ("spikes", _spikes_not_hit),
                        ("wood", _wood), ("morphisms", lambda: _morphisms(rng)),
                        ("grouped/direct", _grouped_direct), ("walker-wood", _walker_wood)]:
        r = check()
        if r is not None:
            fails[name] = r
    record(6, "property suites", not fails, "all hold" if not fails else str(fails))


def test_criterion_07_cp_quotients():
    got = {n: modules_isomorphic(cp_quotient(n), sphere_wedge([2 * n - 2, 2 * n]))
           for n in range(3, 13)}
    ok = all(v == (n % 2 == 1) for n, v in got.items()) and not got[4]
    record(7, "CP^n/CP^(n-2) splits exactly for odd n, 3<=n<=12", ok)


def test_criterion_08_conjectured_bound():
    for m, n in [(m, n) for m in range(1, 5) for n in range(1, 10)] + [(5, 18), (6, 6)]:
        _note_weights(m, n)
    over = [(k, d) for k, d in COMPUTED.items() if not check_conjecture(k[0], k[2], d)]
    top = max(d / kameko_bound(k[0]) for k, d in COMPUTED.items())
    record(8, "weight dims stay below prod(2^j - 1)", not over,
           f"{len(COMPUTED)} weights, largest ratio {top:.3f}")


def test_criterion_09_kernel_41():
    extended_only(9, "Kameko kernel in degree 41")
    b = admissible_basis(5, 41)
    zero, pos = split_zero_positive(b)
    ker = kameko_kernel_dim(5, 41)
    w = b.by_weight.get(OMEGA41, [])
    wpos = sum(1 for x in w if all(x))
    p4 = split_zero_positive(admissible_basis(4, 41))[1]
    COMPUTED.update({(5, 41, k): len(v) for k, v in b.by_weight.items()})
    ok = (ker == 1900 and zero == 975 and wpos == 925 and len(w) == 1900
          and b.dim == 2630 and p4 == 165)
    record(9, "Kameko kernel in degree 41 is 1900 = 975 + 925, total 2630", ok,
           f"kernel {ker}, zero {zero}, positive in weight {wpos}, total {b.dim}, four-variable {p4}")


def test_criterion_10_invariants_41():
    extended_only(10, "invariants in degree 41")
    b = admissible_basis(5, 41)
    inv = invariant_subspace(action(b), "gl")
    rep = normal_form(kameko_up(load_fixture("xi_n0"), 5) + load_fixture("xi_n1"), b)
    sym = invariant_subspace(weight_action(5, 41, OMEGA41, gens=range(1, 5)), "sym")
    ok = len(inv) == 1 and rep == inv[0] and len(sym) == 31
    record(10, "GL(5) invariants in degree 41 spanned by the stated class; Sigma_5 weight part 31",
           ok, f"GL dim {len(inv)}, representative {'matches' if inv and rep == inv[0] else 'differs'},"
               f" Sigma_5 dim {len(sym)}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
