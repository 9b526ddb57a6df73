"""Monomials, polynomials over F_2, weight vectors and the monomial order.

A monomial in ``m`` variables is a tuple of ``m`` non-negative exponents.
A polynomial is a set of monomials of one degree (coefficient 1 = present).

The order: first compare weight vectors left-lexicographically (padded with
zeros), then exponent vectors left-lexicographically.
"""

from __future__ import annotations

import re
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Iterator

__all__ = [
    "Monomial",
    "Polynomial",
    "MONOMIAL_CAP",
    "param_vector",
    "param_degree",
    "order_key",
    "compare",
    "alpha",
    "beta",
    "is_spike",
    "spikes",
    "minimal_spike",
    "enumerate_monomials",
    "count_monomials",
    "format_monomial",
    "parse_monomial",
    "format_poly",
    "parse_poly",
]

Monomial = tuple
MONOMIAL_CAP = 1 << 27


def param_vector(x: Monomial) -> tuple[int, ...]:
    """Entry i counts the exponents with bit (i-1) set; trailing zeros trimmed."""
    top = max(x, default=0).bit_length()
    return tuple(sum((e >> i) & 1 for e in x) for i in range(top))


def param_degree(w: Iterable[int]) -> int:
    return sum(c << i for i, c in enumerate(w))


def _pad(w: tuple[int, ...], n: int) -> tuple[int, ...]:
    return w + (0,) * (n - len(w))


def order_key(x: Monomial, width: int = 64) -> tuple:
    """Sort key realising the monomial order among monomials of one degree."""
    return (_pad(param_vector(x), width), tuple(x))


def compare(x: Monomial, y: Monomial) -> int:
    """-1, 0 or 1 as x <, =, > y."""
    if len(x) != len(y):
        raise ValueError("variable count mismatch")
    if sum(x) != sum(y):
        raise ValueError("degree mismatch")
    kx, ky = order_key(x), order_key(y)
    return (kx > ky) - (kx < ky)


def alpha(n: int) -> int:
    return bin(n).count("1")


def beta(n: int) -> int:
    """Least k with alpha(n + k) <= k."""
    k = 0
    while alpha(n + k) > k:
        k += 1
    return k


def is_spike(x: Monomial) -> bool:
    return all((e & (e + 1)) == 0 for e in x)


def spikes(m: int, n: int) -> list[Monomial]:
    """All spikes of degree n in m variables with non-increasing exponents."""
    out = []

    def rec(rest, slots, cap, acc):
        if rest == 0:
            out.append(tuple(acc) + (0,) * slots)
            return
        if slots == 0:
            return
        d = min(cap, (rest + 1).bit_length() - 1)
        while d >= 1:
            p = (1 << d) - 1
            if p * slots >= rest:
                rec(rest - p, slots - 1, d, acc + [p])
            elif p * slots < rest:
                break
            d -= 1

    rec(n, m, (n + 1).bit_length(), [])
    return out


def minimal_spike(m: int, n: int) -> Monomial | None:
    if beta(n) > m:
        return None
    cands = spikes(m, n)
    width = n.bit_length() + 1
    return min(cands, key=lambda x: _pad(param_vector(x), width))


def count_monomials(m: int, n: int) -> int:
    return comb(n + m - 1, m - 1) if m >= 1 else int(n == 0)


def _compositions(m: int, n: int) -> Iterator[Monomial]:
    # stars and bars
    for bars in combinations(range(n + m - 1), m - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(n + m - 2 - prev)
        yield tuple(out)


def enumerate_monomials(m: int, n: int, cap: int = MONOMIAL_CAP) -> list[Monomial]:
    """All monomials of degree n in m variables, largest first."""
    if m < 1 or n < 0:
        raise ValueError("need m >= 1 and n >= 0")
    if count_monomials(m, n) > cap:
        raise OverflowError(f"{count_monomials(m, n)} monomials exceed cap {cap}")
    return _sorted_monomials(m, n, positive=False)


@lru_cache(maxsize=64)
def _sorted_monomials_cached(m, n, positive):
    if positive:
        if n < m:
            return ()
        mons = (tuple(e + 1 for e in c) for c in _compositions(m, n - m))
    else:
        mons = _compositions(m, n)
    width = n.bit_length() + 1
    return tuple(sorted(mons, key=lambda x: order_key(x, width), reverse=True))


def _sorted_monomials(m, n, positive=False):
    return list(_sorted_monomials_cached(m, n, positive))


def format_monomial(x: Monomial) -> str:
    parts = []
    for i, e in enumerate(x, 1):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts) if parts else "1"


def _normalize(s: str) -> str:
    # accept TeX-ish spellings such as ``x_{1}^{3} x_2``
    s = s.replace("$", "").replace("\\cdot", "*")
    s = re.sub(r"x_\{?(\d+)\}?", r"x\1", s)
    s = re.sub(r"\^\{(\d+)\}", r"^\1", s)
    return s


def parse_monomial(s: str, m: int | None = None) -> Monomial:
    """Parse ``x1^3*x2`` (also ``x_1^{3} x_2``) into an exponent tuple."""
    t = _normalize(s).strip()
    if t == "1":
        if m is None:
            raise ValueError("variable count needed for the constant monomial")
        return (0,) * m
    t = re.sub(r"[\s*]+", "", t)
    if not re.fullmatch(r"(?:x\d+(?:\^\d+)?)+", t):
        raise ValueError(f"bad monomial {s!r}")
    exps: dict[int, int] = {}
    for idx, e in re.findall(r"x(\d+)(?:\^(\d+))?", t):
        i = int(idx)
        if i < 1:
            raise ValueError(f"variable index must be positive in {s!r}")
        exps[i] = exps.get(i, 0) + int(e or 1)
    top = max(exps)
    if m is None:
        m = top
    elif top > m:
        raise ValueError(f"{s!r} uses x{top} but m = {m}")
    return tuple(exps.get(i, 0) for i in range(1, m + 1))


class Polynomial:
    """Homogeneous polynomial over F_2 in m variables."""

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: Iterable[Monomial] = ()):
        self.m = m
        acc: set = set()
        for t in terms:
            t = tuple(t)
            if len(t) != m:
                raise ValueError(f"monomial {t} has wrong variable count for m={m}")
            acc ^= {t}
        self.terms = frozenset(acc)
        if len({sum(t) for t in self.terms}) > 1:
            raise ValueError("polynomial is not homogeneous")

    @property
    def degree(self) -> int | None:
        for t in self.terms:
            return sum(t)
        return None

    def __iter__(self):
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __contains__(self, x) -> bool:
        return tuple(x) in self.terms

    def __add__(self, other: Polynomial) -> Polynomial:
        if isinstance(other, tuple):
            other = Polynomial(self.m, [other])
        if other.m != self.m:
            raise ValueError("variable count mismatch")
        return Polynomial(self.m, self.terms ^ other.terms)

    __radd__ = __add__

    def __mul__(self, other: Polynomial) -> Polynomial:
        if isinstance(other, tuple):
            other = Polynomial(self.m, [other])
        acc: set = set()
        for a in self.terms:
            for b in other.terms:
                acc ^= {tuple(i + j for i, j in zip(a, b))}
        return Polynomial(self.m, acc)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self.m == other.m and self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.m, self.terms))

    def sorted_terms(self) -> list[Monomial]:
        return sorted(self.terms, key=order_key, reverse=True)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Polynomial({self.m}, {format_poly(self)!r})"

    @classmethod
    def parse(cls, s: str, m: int) -> Polynomial:
        return parse_poly(s, m)


def format_poly(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    return " + ".join(format_monomial(t) for t in f.sorted_terms())


def parse_poly(s: str, m: int) -> Polynomial:
    """Parse a ``+``-separated sum of monomials; ``0`` is the zero polynomial."""
    body = s.strip()
    if body in ("", "0"):
        return Polynomial(m)
    terms = [parse_monomial(tok, m) for tok in _normalize(body).split("+") if tok.strip()]
    return Polynomial(m, terms)
