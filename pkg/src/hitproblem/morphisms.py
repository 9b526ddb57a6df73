"""Maps between polynomial algebras acting on raw monomials and polynomials.

kameko_down / kameko_up
    halve-and-drop-one on all-odd monomials, and u -> x_1...x_m u^2.
subst_q
    insert a new variable at position l (an A-module map P_{m-1} -> P_m).
subst_p
    substitute x_l -> sum of x_{p-1} over p in L and shift later variables
    down (an A-module map P_m -> P_{m-1}); p o q is the identity.
psi
    a degree-preserving monomial map P_{m-1} -> P_m built from q by moving
    some 2-power exponent parts onto the new variable.  Not an A-module map.

Indices l and L are 1-based throughout, matching x_1..x_m.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .monomials import Monomial, Polynomial

__all__ = [
    "IndexPair",
    "index_pairs",
    "kameko_down",
    "kameko_up",
    "subst_q",
    "subst_p",
    "psi",
    "phi_sets",
]


@dataclass(frozen=True)
class IndexPair:
    l: int
    L: tuple[int, ...] = ()

    def check(self, m: int) -> None:
        if not 1 <= self.l <= m:
            raise ValueError(f"l={self.l} out of range 1..{m}")
        prev = self.l
        for p in self.L:
            if not prev < p <= m:
                raise ValueError(f"L={self.L} must increase strictly from l={self.l} up to {m}")
            prev = p


def index_pairs(m: int, min_len: int = 0, max_len: int | None = None) -> list[IndexPair]:
    top = m - 1 if max_len is None else max_len
    out = []
    for l in range(1, m + 1):
        rest = range(l + 1, m + 1)
        for r in range(min_len, min(top, len(rest)) + 1):
            out.extend(IndexPair(l, L) for L in combinations(rest, r))
    return out


def kameko_down(x: Monomial) -> Monomial | None:
    """(a_1..a_m) -> ((a_1-1)/2 ..) when every a_j is odd, else None (zero)."""
    if all(a & 1 for a in x):
        return tuple(a >> 1 for a in x)
    return None


def kameko_up(u, m: int | None = None):
    """x_1...x_m * u^2 for a monomial tuple or a Polynomial."""
    if isinstance(u, Polynomial):
        if m is not None and m != u.m:
            raise ValueError("variable count mismatch")
        # squaring is additive over F_2
        return Polynomial(u.m, (tuple(2 * a + 1 for a in t) for t in u.terms))
    if m is not None and m != len(u):
        raise ValueError("variable count mismatch")
    return tuple(2 * a + 1 for a in u)


def subst_q(l: int, m: int, x):
    """Insert a zero exponent at position l (1-based) of an (m-1)-variable input."""
    if not 1 <= l <= m:
        raise ValueError(f"l={l} out of range 1..{m}")
    if isinstance(x, Polynomial):
        if x.m != m - 1:
            raise ValueError("input must have m-1 variables")
        return Polynomial(m, (subst_q(l, m, t) for t in x.terms))
    if len(x) != m - 1:
        raise ValueError("input must have m-1 variables")
    return tuple(x[: l - 1]) + (0,) + tuple(x[l - 1:])


def _bit_spread(e: int, slots: list[int], base: list[int], out: set) -> None:
    """Add base * (sum of y_s for s in slots)^e, each bit of e going to one slot."""
    bits = [1 << i for i in range(e.bit_length()) if (e >> i) & 1]
    cur = list(base)

    def rec(k):
        if k == len(bits):
            out.symmetric_difference_update([tuple(cur)])
            return
        for s in slots:
            cur[s] += bits[k]
            rec(k + 1)
            cur[s] -= bits[k]

    rec(0)


def subst_p(pair: IndexPair, f) -> Polynomial:
    """Image of f (Polynomial or monomial in m variables) in m-1 variables."""
    if not isinstance(f, Polynomial):
        f = Polynomial(len(f), [f])
    m = f.m
    pair.check(m)
    l = pair.l
    slots = [p - 2 for p in pair.L]  # x_{p-1} in the (m-1)-variable target, 0-based
    out: set = set()
    for t in f.terms:
        e = t[l - 1]
        base = list(t[: l - 1]) + list(t[l:])
        if e == 0:
            out.symmetric_difference_update([tuple(base)])
        elif slots:
            _bit_spread(e, slots, base, out)
    return Polynomial(m - 1, out)


def _psi_split(r: int, t: Monomial, L: tuple[int, ...]) -> int | None:
    """Smallest u meeting the case conditions of psi, or None."""
    top = 1 << r
    tv = [t[p - 2] for p in L]  # t_{l_d - 1}, d = 1..r
    for u in range(1, r + 1):
        if any(tv[d] + 1 != top for d in range(u - 1)):
            continue
        a = tv[u - 1]
        if a + 1 <= top:
            continue
        if not all((a >> (r - d)) & 1 for d in range(1, u + 1)):
            continue
        if not all((tv[d - 1] >> (r - d)) & 1 for d in range(u + 1, r + 1)):
            continue
        return u
    return None


def psi(pair: IndexPair, x: Monomial, m: int | None = None) -> Monomial | None:
    """psi_(l,L) on a monomial in m-1 variables; None stands for zero."""
    if m is None:
        m = len(x) + 1
    if len(x) != m - 1:
        raise ValueError("input must have m-1 variables")
    pair.check(m)
    l, L = pair.l, pair.L
    r = len(L)
    y = list(subst_q(l, m, x))
    if r == 0:
        return tuple(y)
    u = _psi_split(r, x, L)
    if u is None:
        return None
    y[l - 1] += (1 << r) - 1
    y[L[u - 1] - 1] -= sum(1 << (r - d) for d in range(1, u + 1))
    for d in range(u + 1, r + 1):
        y[L[d - 1] - 1] -= 1 << (r - d)
    return tuple(y)


def phi_sets(V: Iterable[Monomial], m: int) -> tuple[set, set]:
    """(all q-images, all nonzero psi-images with |L| >= 1 and no zero exponent)."""
    V = [tuple(v) for v in V]
    if len({sum(v) for v in V}) > 1:
        raise ValueError("monomials of mixed degree")
    zero = {subst_q(l, m, v) for l in range(1, m + 1) for v in V}
    pos = set()
    pairs = index_pairs(m, min_len=1)
    for v in V:
        for pr in pairs:
            y = psi(pr, v, m)
            if y is not None and all(y):
                pos.add(y)
    return zero, pos
