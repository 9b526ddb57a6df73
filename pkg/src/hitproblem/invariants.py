"""Actions of the generators rho_1..rho_m on cohit spaces, and invariants.

rho_j swaps x_j and x_{j+1} for j < m; rho_m sends x_m to x_{m-1} + x_m.
rho_1..rho_{m-1} generate the symmetric group and all m of them generate
GL(m, F_2), so a class is invariant exactly when every generator fixes it.

Matrices are stored by columns: column c is the normal form of rho_j applied
to the c-th basis monomial.
"""

from __future__ import annotations

from .cohit import CohitBasis, admissible_basis, normal_form
from .gf2core import BitVector, kernel
from .monomials import Monomial, Polynomial, order_key, param_vector
from .steenrod import OutsideFiltration, equiv

__all__ = [
    "rho",
    "GroupAction",
    "action",
    "weight_action",
    "invariant_subspace",
    "verify_invariant",
    "generator_range",
]


def _rho_terms(j: int, x: Monomial) -> list[Monomial]:
    m = len(x)
    if j < m:
        y = list(x)
        y[j - 1], y[j] = y[j], y[j - 1]
        return [tuple(y)]
    b, c = x[m - 2], x[m - 1]
    out = []
    s = c
    # (x_{m-1} + x_m)^c = sum over bit-subsets s of c of x_{m-1}^s x_m^{c-s}
    while True:
        y = list(x)
        y[m - 2] = b + s
        y[m - 1] = c - s
        out.append(tuple(y))
        if s == 0:
            return out
        s = (s - 1) & c


def rho(j: int, f, m: int | None = None) -> Polynomial:
    if not isinstance(f, Polynomial):
        f = Polynomial(len(f), [f])
    m = f.m if m is None else m
    if not 1 <= j <= m:
        raise ValueError(f"generator index {j} out of range 1..{m}")
    if m < 2:
        raise ValueError("rho needs at least two variables")
    acc: set = set()
    for t in f.terms:
        acc.symmetric_difference_update(_rho_terms(j, t))
    return Polynomial(m, acc)


def generator_range(m: int, group: str) -> range:
    if group in ("sym", "Sym", "sigma"):
        return range(1, m)
    if group in ("gl", "GL"):
        return range(1, m + 1)
    raise ValueError(f"unknown group {group!r}")


class GroupAction:
    def __init__(self, basis: CohitBasis, monomials: list[Monomial], columns: list[list[int]],
                 weight: tuple[int, ...] | None = None):
        self.basis = basis
        self.monomials = monomials
        self.weight = weight
        self.dim = len(monomials)
        # columns[j-1][c] = bitset image of basis vector c under rho_j
        self.columns = columns

    @property
    def m(self) -> int:
        return self.basis.m

    def matrix_rows(self, j: int) -> list[int]:
        cols = self.columns[j - 1]
        rows = [0] * self.dim
        for c, v in enumerate(cols):
            while v:
                low = v & -v
                rows[low.bit_length() - 1] |= 1 << c
                v ^= low
        return rows

    def apply(self, j: int, v: int) -> int:
        cols = self.columns[j - 1]
        out = 0
        while v:
            low = v & -v
            out ^= cols[low.bit_length() - 1]
            v ^= low
        return out

    def to_polynomial(self, v: BitVector) -> Polynomial:
        return Polynomial(self.m, (self.monomials[i] for i in v.indices()))


def action(basis: CohitBasis, gens=None) -> GroupAction:
    """Matrices of rho_j on the whole cohit space (all j by default)."""
    m = basis.m
    gens = range(1, m + 1) if gens is None else gens
    columns = [[] for _ in range(m)]
    for j in gens:
        columns[j - 1] = [normal_form(rho(j, Polynomial(m, [x])), basis).bits
                          for x in basis.admissibles]
    return GroupAction(basis, list(basis.admissibles), columns)


def weight_action(m: int, n: int, weight, gens=None) -> GroupAction:
    """Matrices of rho_j on the weight-local quotient for ``weight``.

    The normal form of a polynomial in P^{<=w} keeps all its terms in P^{<=w};
    reducing modulo P^{<w} as well then just drops the terms of lower weight.
    """
    weight = tuple(weight)
    basis = admissible_basis(m, n)
    mons = basis.by_weight.get(weight, [])
    local = {x: i for i, x in enumerate(mons)}
    width = n.bit_length() + 1
    wk = weight + (0,) * (width - len(weight))
    gens = range(1, m + 1) if gens is None else gens
    hs = basis.hit_space()
    columns = [[] for _ in range(m)]
    for j in gens:
        col = []
        for x in mons:
            img = rho(j, Polynomial(m, [x]))
            r = hs.reduce(img)
            v = 0
            for t in r.terms:
                k = order_key(t, width)[0]
                if k > wk:
                    raise OutsideFiltration(f"rho_{j}({x}) has a term of weight {param_vector(t)}")
                if k == wk:
                    v |= 1 << local[t]
            col.append(v)
        columns[j - 1] = col
    return GroupAction(basis, mons, columns, weight)


def invariant_subspace(act: GroupAction, group: str = "gl") -> list[BitVector]:
    """Basis of the common kernel of (M_j + I) over the group's generators."""
    eqs = []
    for j in generator_range(act.m, group):
        rows = act.matrix_rows(j)
        eqs.extend(BitVector(act.dim, r ^ (1 << i)) for i, r in enumerate(rows))
    if not eqs:
        return [BitVector(act.dim, 1 << i) for i in range(act.dim)]
    sol = kernel(eqs, act.dim)
    for v in sol:
        for j in generator_range(act.m, group):
            if act.apply(j, v.bits) != v.bits:
                raise RuntimeError("kernel vector is not fixed by a generator")
    return sol


def verify_invariant(f: Polynomial, group: str = "gl", mode: str = "full",
                     weight=None, nonzero: bool = True) -> bool:
    """True iff rho_j(f) ~ f for every generator (and f is not ~ 0 if ``nonzero``)."""
    z = Polynomial(f.m)
    if nonzero and equiv(f, z, mode, weight):
        return False
    return all(equiv(rho(j, f), f, mode, weight) for j in generator_range(f.m, group))
