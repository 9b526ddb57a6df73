"""Admissible monomial bases of the cohit spaces and what is built on them.

A monomial is admissible when no hit element has it as its largest term, so
the admissibles of degree n are the non-pivot columns of the hit echelon
taken in the monomial order.  Because weight is compared first, grouping the
admissibles by weight vector gives a basis of every weight-local quotient.
"""

from __future__ import annotations

from math import comb

from .gf2core import BitVector, Eliminator
from .monomials import (
    MONOMIAL_CAP,
    Monomial,
    Polynomial,
    count_monomials,
    enumerate_monomials,
    order_key,
    param_degree,
    param_vector,
)
from .morphisms import kameko_down
from .steenrod import HitSpace, _squares, hit_space, sq_monomial

__all__ = [
    "CohitBasis",
    "admissible_basis",
    "normal_form",
    "weight_local_dim",
    "split_zero_positive",
    "kameko_kernel_dim",
    "kameko_matrix_rank",
    "first_exponent_ok",
]


def first_exponent_ok(x: Monomial) -> bool:
    """The x_1 exponent of an admissible monomial has the form 2^a - 1."""
    return x[0] & (x[0] + 1) == 0


class CohitBasis:
    def __init__(self, m: int, n: int, admissibles: list[Monomial], hit_rank: int,
                 hits: HitSpace | None = None):
        self.m = m
        self.n = n
        self.admissibles = admissibles
        self.hit_rank = hit_rank
        self.hits = hits
        self.index = {x: i for i, x in enumerate(admissibles)}
        self.by_weight: dict[tuple[int, ...], list[Monomial]] = {}
        for x in admissibles:
            self.by_weight.setdefault(param_vector(x), []).append(x)

    @property
    def dim(self) -> int:
        return len(self.admissibles)

    def weights(self) -> list[tuple[int, ...]]:
        """Weights present, smallest first."""
        width = self.n.bit_length() + 1
        return sorted(self.by_weight, key=lambda w: tuple(w) + (0,) * (width - len(w)))

    def weight_dims(self) -> dict[tuple[int, ...], int]:
        return {w: len(self.by_weight[w]) for w in self.weights()}

    def check(self) -> None:
        if self.dim + self.hit_rank != count_monomials(self.m, self.n):
            raise ValueError(
                f"basis ({self.m},{self.n}): {self.dim} admissibles + rank {self.hit_rank}"
                f" != {count_monomials(self.m, self.n)} monomials")

    def hit_space(self) -> HitSpace:
        if self.hits is None:
            self.hits = hit_space(self.m, self.n)
        return self.hits

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "dim": self.dim,
            "hit_rank": self.hit_rank,
            "weights": [
                {"param": list(w), "monomials": [list(x) for x in self.by_weight[w]]}
                for w in reversed(self.weights())
            ],
        }

    @classmethod
    def from_json(cls, d: dict) -> CohitBasis:
        mons = [tuple(x) for w in d["weights"] for x in w["monomials"]]
        width = d["n"].bit_length() + 1
        mons.sort(key=lambda x: order_key(x, width), reverse=True)
        b = cls(d["m"], d["n"], mons, d["hit_rank"])
        if b.dim != d["dim"]:
            raise ValueError("dim field disagrees with the monomial lists")
        for w in d["weights"]:
            if any(param_vector(tuple(x)) != tuple(w["param"]) for x in w["monomials"]):
                raise ValueError(f"monomial filed under the wrong weight {w['param']}")
        return b

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CohitBasis):
            return NotImplemented
        return (self.m, self.n, self.admissibles, self.hit_rank) == (
            other.m, other.n, other.admissibles, other.hit_rank)


_BASES: dict[tuple[int, int], CohitBasis] = {}


def admissible_basis(m: int, n: int, cap: int = MONOMIAL_CAP) -> CohitBasis:
    key = (m, n)
    b = _BASES.get(key)
    if b is not None:
        return b
    if n == 0:
        b = CohitBasis(m, 0, [(0,) * m], 0)
    else:
        h = hit_space(m, n, cap=cap)
        adm = h.admissible()
        bad = [x for x in adm if not first_exponent_ok(x)]
        if bad:
            raise RuntimeError(f"admissible {bad[0]} has first exponent not of the form 2^a-1")
        b = CohitBasis(m, n, adm, h.rank, h)
    b.check()
    _BASES[key] = b
    return b


def normal_form(f: Polynomial, basis: CohitBasis) -> BitVector:
    """Coordinates of the class of f in the admissible basis."""
    d = f.degree
    if d is not None and d != basis.n:
        raise ValueError(f"degree {d} does not match basis degree {basis.n}")
    if f.m != basis.m:
        raise ValueError("variable count mismatch")
    if basis.n == 0:
        return BitVector(basis.dim, len(f) % 2)
    r = basis.hit_space().reduce(f)
    idx = basis.index
    return BitVector.from_indices(basis.dim, (idx[t] for t in r.terms))


def coords_to_poly(v: BitVector, basis: CohitBasis) -> Polynomial:
    return Polynomial(basis.m, (basis.admissibles[i] for i in v.indices()))


def _direct_weight_dim(m: int, w: tuple[int, ...]) -> int:
    """rank(H + U) - rank(H + W), U = span P^{<=w}, W = span P^{<w}.

    Built from raw Sq^{2^i} images over all monomials, with columns in plain
    enumeration order; shares nothing with the blockwise echelon.
    """
    n = param_degree(w)
    mons = enumerate_monomials(m, n)
    mons = sorted(mons)  # plain lexicographic column order
    col = {x: i for i, x in enumerate(mons)}
    width = n.bit_length() + 1
    wk = tuple(w) + (0,) * (width - len(w))
    below = 0
    upto = 0
    for x in mons:
        k = order_key(x, width)[0]
        if k < wk:
            below |= 1 << col[x]
        if k <= wk:
            upto |= 1 << col[x]

    def span_rank(mask: int) -> int:
        # rank(H + span{e_c : c in mask}) = |mask| + rank(H with mask columns dropped)
        keep = ~mask
        el = Eliminator()
        for k in _squares(n, width, None, False):
            for y in enumerate_monomials(m, n - k):
                v = 0
                for t in sq_monomial(k, y):
                    v |= 1 << col[t]
                el.add(v & keep)
        return bin(mask).count("1") + len(el)

    return span_rank(upto) - span_rank(below)


def weight_local_dim(m: int, w, method: str = "grouped") -> int:
    w = tuple(w)
    n = param_degree(w)
    if n < 1:
        raise ValueError("weight vector must have positive degree")
    if method == "grouped":
        return len(admissible_basis(m, n).by_weight.get(w, []))
    if method == "direct":
        return _direct_weight_dim(m, w)
    raise ValueError(f"unknown method {method!r}")


def split_zero_positive(basis: CohitBasis) -> tuple[int, int]:
    pos = sum(1 for x in basis.admissibles if all(x))
    return basis.dim - pos, pos


def walker_wood_zero_dim(m: int, n: int) -> int:
    """sum over r < m of C(m, r) times the positive-part dimension in r variables."""
    total = 0
    for r in range(1, m):
        total += comb(m, r) * split_zero_positive(admissible_basis(r, n))[1]
    return total


def kameko_matrix_rank(m: int, n: int, weight: tuple[int, ...] | None = None) -> tuple[int, int]:
    """(source dimension, rank) of the Kameko map on Q_n, optionally on one weight."""
    if n < m or (n - m) % 2:
        raise ValueError(f"Kameko map needs n >= m and n = m mod 2 (got m={m}, n={n})")
    src = admissible_basis(m, n)
    tgt = admissible_basis(m, (n - m) // 2)
    xs = src.admissibles if weight is None else src.by_weight.get(tuple(weight), [])
    el = Eliminator()
    for x in xs:
        y = kameko_down(x)
        if y is not None:
            el.add(normal_form(Polynomial(m, [y]), tgt).bits)
    return len(xs), len(el)


def kameko_kernel_dim(m: int, n: int) -> int:
    dim, rk = kameko_matrix_rank(m, n)
    tgt = admissible_basis(m, (n - m) // 2).dim
    if rk != tgt:
        raise RuntimeError(f"Kameko map ({m},{n}) has rank {rk}, target dimension {tgt}")
    return dim - rk
