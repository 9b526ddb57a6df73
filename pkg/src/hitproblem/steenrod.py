"""Steenrod squares on F_2[x_1..x_m] and the hit subspaces they span.

Sq^k acts on a monomial by the Cartan formula with Sq^k(x^u) = C(u,k) x^{u+k};
C(u, k) is odd exactly when the binary digits of k are a subset of those of u.

Squares preserve the set of variables that occur in a monomial, so the span
of hit elements in degree n splits into one block per support set, and a
block only depends on the size of its support.  :class:`PositiveBlock` holds
the echelon for monomials with every exponent positive; :class:`HitSpace`
glues the blocks for all supports of an m-variable algebra.
"""

from __future__ import annotations

import logging
import os
import pickle
from array import array
from bisect import bisect_left
from itertools import combinations
from typing import Iterable

from .gf2core import BitVector, Echelon, Eliminator
from .monomials import (
    MONOMIAL_CAP,
    Monomial,
    Polynomial,
    _sorted_monomials,
    count_monomials,
    order_key,
    param_vector,
)

__all__ = [
    "sq",
    "sq_monomial",
    "PositiveBlock",
    "HitSpace",
    "hit_space",
    "positive_block",
    "is_hit",
    "equiv",
    "DegreeMismatch",
    "OutsideFiltration",
    "set_checkpoint",
]

log = logging.getLogger(__name__)

# (directory, rows between snapshots) for resumable block eliminations
_CHECKPOINT: tuple[str, int] | None = None


def set_checkpoint(directory: str | None, every: int = 50000) -> None:
    """Snapshot block eliminations to ``directory`` every ``every`` generators."""
    global _CHECKPOINT
    _CHECKPOINT = None if directory is None else (directory, every)


class DegreeMismatch(ValueError):
    pass


class OutsideFiltration(ValueError):
    """A term has weight above the filtration level of a weight relation."""


def _submasks_upto(u: int, cap: int) -> list[int]:
    out = []
    s = u
    while True:
        if s <= cap:
            out.append(s)
        if s == 0:
            return out
        s = (s - 1) & u


def sq_monomial(k: int, x: Monomial) -> list[Monomial]:
    """Terms of Sq^k(x); they are pairwise distinct so no cancellation occurs."""
    m = len(x)
    if k == 0:
        return [tuple(x)]
    if k > sum(x):
        return []
    suffix = [0] * (m + 1)
    for j in range(m - 1, -1, -1):
        suffix[j] = suffix[j + 1] + x[j]
    out = []
    acc = [0] * m

    def rec(j, rest):
        u = x[j]
        if j == m - 1:
            if rest & ~u == 0:
                acc[j] = u + rest
                out.append(tuple(acc))
            return
        after = suffix[j + 1]
        for s in _submasks_upto(u, rest):
            if rest - s <= after:
                acc[j] = u + s
                rec(j + 1, rest - s)

    rec(0, k)
    return out


def sq(k: int, f: Polynomial) -> Polynomial:
    acc: set = set()
    for t in f.terms:
        acc.symmetric_difference_update(sq_monomial(k, t))
    return Polynomial(f.m, acc)


def _squares(n_target: int, width: int, level: int | None, all_squares: bool) -> list[int]:
    """Squares Sq^k used as generators landing in degree n_target."""
    if all_squares:
        ks = list(range(1, n_target + 1))
        if level is not None:
            # A_r is generated by Sq^i, i <= 2^r; compositions of these beginning
            # with Sq^k for k <= 2^r span the same thing as the 2-power ones
            ks = [k for k in ks if k <= 1 << level]
        return ks
    ks = []
    i = 0
    while (1 << i) <= n_target and (level is None or i <= level):
        ks.append(1 << i)
        i += 1
    return ks


class PositiveBlock:
    """Hit relations among degree-n monomials in s variables, all exponents positive.

    ``mons`` is sorted in increasing order, so monomial ``mons[i]`` is bit ``i``
    of a row and the pivot of a row (its top bit) is its largest monomial.
    """

    def __init__(self, s: int, n: int, level: int | None = None, all_squares: bool = False):
        self.s = s
        self.n = n
        self.level = level
        self.all_squares = all_squares
        self.mons: list[Monomial] = _sorted_monomials(s, n, positive=True)[::-1]
        self.index = {x: i for i, x in enumerate(self.mons)}
        width = n.bit_length() + 1
        self._width = width
        self._keys = [order_key(x, width) for x in self.mons]
        self.elim = Eliminator()
        self.generators = 0
        self._build()
        self._admissible = None

    def _rows(self) -> Iterable[list[int]]:
        """Generator rows as lists of column indices."""
        index = self.index
        s, n = self.s, self.n
        for k in _squares(n, self._width, self.level, self.all_squares):
            src = n - k
            if src < s:
                continue
            for y in _sorted_monomials(s, src, positive=True):
                terms = sq_monomial(k, y)
                if terms:
                    yield [index[t] for t in terms]

    def _build(self) -> None:
        if not self.mons:
            return
        flat = array("l")
        starts = array("l", [0])
        tops = array("l")
        for idx in self._rows():
            flat.extend(idx)
            starts.append(len(flat))
            tops.append(max(idx))
        self.generators = len(tops)
        # larger leading monomials first keeps the working rows short early on
        order = sorted(range(len(tops)), key=tops.__getitem__, reverse=True)
        ckpt = self._checkpoint_path()
        start = self._resume(ckpt)
        add = self.elim.add
        for done, j in enumerate(order, 1):
            if done <= start:
                continue
            idx = flat[starts[j]:starts[j + 1]]
            buf = bytearray((tops[j] >> 3) + 1)
            for i in idx:
                buf[i >> 3] ^= 1 << (i & 7)
            add(int.from_bytes(buf, "little"))
            if done % 20000 == 0:
                log.info("block s=%d n=%d: %d/%d generators, rank %d",
                         self.s, self.n, done, len(order), len(self.elim))
            if ckpt and done % _CHECKPOINT[1] == 0 and done < len(order):
                self._snapshot(ckpt, done)
        if ckpt and os.path.exists(ckpt):
            os.remove(ckpt)
        log.debug("block s=%d n=%d level=%s: %d cols, rank %d",
                  self.s, self.n, self.level, len(self.mons), len(self.elim))

    def _checkpoint_path(self) -> str | None:
        if _CHECKPOINT is None:
            return None
        tag = f"s{self.s}-n{self.n}-r{self.level}-{'all' if self.all_squares else 'pow2'}"
        return os.path.join(_CHECKPOINT[0], f"block-{tag}.ckpt")

    def _resume(self, path: str | None) -> int:
        if not path or not os.path.exists(path):
            return 0
        try:
            with open(path, "rb") as fh:
                state = pickle.load(fh)
            if state["generators"] != self.generators or state["cols"] != len(self.mons):
                raise ValueError("shape mismatch")
        except Exception as exc:
            log.warning("ignoring unreadable checkpoint %s: %s", path, exc)
            return 0
        self.elim.rows = state["rows"]
        log.info("resumed block s=%d n=%d at %d/%d generators", self.s, self.n,
                 state["done"], self.generators)
        return state["done"]

    def _snapshot(self, path: str, done: int) -> None:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        tmp = path + ".tmp"
        with open(tmp, "wb") as fh:
            pickle.dump({"done": done, "generators": self.generators, "cols": len(self.mons),
                         "rows": self.elim.rows}, fh, protocol=pickle.HIGHEST_PROTOCOL)
        os.replace(tmp, path)

    @property
    def rank(self) -> int:
        return len(self.elim)

    @property
    def admissible(self) -> list[Monomial]:
        """Non-pivot monomials, largest first."""
        if self._admissible is None:
            piv = self.elim.rows
            self._admissible = [self.mons[i] for i in range(len(self.mons) - 1, -1, -1)
                                if i not in piv]
        return self._admissible

    def floor(self, w: tuple[int, ...]) -> int:
        """Number of block monomials of weight < w."""
        key = (tuple(w) + (0,) * (self._width - len(w)), ())
        return bisect_left(self._keys, key)

    def vector(self, terms: Iterable[Monomial]) -> int:
        v = 0
        for t in terms:
            v ^= 1 << self.index[t]
        return v

    def reduce(self, terms: Iterable[Monomial]) -> list[Monomial]:
        r = self.elim.reduce(self.vector(terms))
        out = []
        while r:
            p = r.bit_length() - 1
            out.append(self.mons[p])
            r ^= 1 << p
        return out

    def contains(self, terms: Iterable[Monomial], floor: int = 0) -> bool:
        return self.elim.contains(self.vector(terms), floor)


_BLOCKS: dict[tuple, PositiveBlock] = {}


def positive_block(s: int, n: int, level: int | None = None, all_squares: bool = False) -> PositiveBlock:
    key = (s, n, level, all_squares)
    b = _BLOCKS.get(key)
    if b is None:
        b = _BLOCKS[key] = PositiveBlock(s, n, level, all_squares)
    return b


def clear_block_cache() -> None:
    _BLOCKS.clear()


def _split_support(x: Monomial) -> tuple[tuple[int, ...], Monomial]:
    supp = tuple(i for i, e in enumerate(x) if e)
    return supp, tuple(x[i] for i in supp)


class _Blocks(dict):
    """Support-size -> PositiveBlock, each built on first use."""

    def __init__(self, sizes, n, r, all_squares):
        super().__init__()
        self.sizes = list(sizes)
        self._args = (n, r, all_squares)

    def __missing__(self, s):
        if s not in self.sizes:
            raise KeyError(s)
        b = positive_block(s, *self._args)
        self[s] = b
        return b

    def keys(self):
        return list(self.sizes)

    def values(self):
        return [self[s] for s in self.sizes]

    def items(self):
        return [(s, self[s]) for s in self.sizes]

    def __iter__(self):
        return iter(self.sizes)

    def __len__(self):
        return len(self.sizes)

    def __contains__(self, s):
        return s in self.sizes


class HitSpace:
    """The degree-n part of the hit subspace of P_m (optionally for A_r only)."""

    def __init__(self, m: int, n: int, r: int | None = None, all_squares: bool = False,
                 cap: int = MONOMIAL_CAP):
        if n < 0 or m < 1:
            raise ValueError("need m >= 1 and n >= 0")
        if count_monomials(m, n) > cap:
            raise OverflowError(f"{count_monomials(m, n)} columns exceed cap {cap}")
        self.m = m
        self.n = n
        self.r = r
        self.all_squares = all_squares
        self.blocks = _Blocks(range(1, min(m, n) + 1) if n > 0 else range(0), n, r, all_squares)
        self._echelon = None

    @property
    def rank(self) -> int:
        return sum(b.rank * _ncomb(self.m, s) for s, b in self.blocks.items())

    @property
    def generators_count(self) -> int:
        return sum(b.generators * _ncomb(self.m, s) for s, b in self.blocks.items())

    @property
    def dim(self) -> int:
        return count_monomials(self.m, self.n)

    def _grouped(self, f: Polynomial) -> dict:
        if f.m != self.m:
            raise ValueError("variable count mismatch")
        groups: dict = {}
        for t in f.terms:
            if sum(t) != self.n:
                raise DegreeMismatch(f"term of degree {sum(t)} in degree-{self.n} hit space")
            supp, y = _split_support(t)
            groups.setdefault(supp, []).append(y)
        return groups

    def reduce(self, f: Polynomial) -> Polynomial:
        """Normal form: the admissible monomials left after reduction."""
        out = []
        m = self.m
        for supp, ys in self._grouped(f).items():
            if not supp:
                out.extend([(0,) * m] * (len(ys) % 2))
                continue
            for y in self.blocks[len(supp)].reduce(ys):
                x = [0] * m
                for i, e in zip(supp, y):
                    x[i] = e
                out.append(tuple(x))
        return Polynomial(m, out)

    def contains(self, f: Polynomial, weight: tuple[int, ...] | None = None) -> bool:
        """Membership in the hit space, or in hit + P^{<weight} when given."""
        for supp, ys in self._grouped(f).items():
            if not supp:
                if len(ys) % 2:
                    return False
                continue
            b = self.blocks[len(supp)]
            floor = b.floor(weight) if weight is not None else 0
            if not b.contains(ys, floor):
                return False
        return True

    def admissible(self) -> list[Monomial]:
        """Admissible monomials of P_m in degree n, largest first."""
        m, n = self.m, self.n
        if n == 0:
            return [(0,) * m]
        out = []
        for s, b in self.blocks.items():
            for supp in combinations(range(m), s):
                for y in b.admissible:
                    x = [0] * m
                    for i, e in zip(supp, y):
                        x[i] = e
                    out.append(tuple(x))
        width = n.bit_length() + 1
        out.sort(key=lambda x: order_key(x, width), reverse=True)
        return out

    @property
    def echelon(self) -> Echelon:
        """Global fully reduced echelon over the descending monomial list."""
        if self._echelon is None:
            from .monomials import enumerate_monomials

            mons = enumerate_monomials(self.m, self.n)
            N = len(mons)
            col = {x: N - 1 - i for i, x in enumerate(mons)}  # internal bit position
            ech = Echelon(N)
            el = ech._elim
            m = self.m
            for s, b in self.blocks.items():
                for supp in combinations(range(m), s):
                    for v in b.elim.rows.values():
                        g = 0
                        while v:
                            p = v.bit_length() - 1
                            y = b.mons[p]
                            x = [0] * m
                            for i, e in zip(supp, y):
                                x[i] = e
                            g |= 1 << col[tuple(x)]
                            v ^= 1 << p
                        el.add(g)
            el.full_reduce()
            self._echelon = ech
        return self._echelon

    def coefficients(self, f: Polynomial) -> BitVector:
        from .monomials import enumerate_monomials

        mons = enumerate_monomials(self.m, self.n)
        pos = {x: i for i, x in enumerate(mons)}
        return BitVector.from_indices(len(mons), (pos[t] for t in f.terms))


def _ncomb(m: int, s: int) -> int:
    from math import comb

    return comb(m, s)


_SPACES: dict[tuple, HitSpace] = {}


def hit_space(m: int, n: int, r: int | None = None, all_squares: bool = False,
              cap: int = MONOMIAL_CAP) -> HitSpace:
    key = (m, n, r, all_squares)
    h = _SPACES.get(key)
    if h is None:
        h = _SPACES[key] = HitSpace(m, n, r, all_squares, cap)
    return h


def is_hit(f: Polynomial, r: int | None = None) -> bool:
    n = f.degree
    if n is None:
        return True
    if n < 1:
        return False
    return hit_space(f.m, n, r).contains(f)


def equiv(f: Polynomial, g: Polynomial, mode: str = "full",
          weight: tuple[int, ...] | None = None, r: int | None = None) -> bool:
    """f ~ g modulo hit elements, optionally also modulo P^{<weight}.

    ``mode`` is ``"full"``, ``"weight"`` or ``"level_weight"``; the last uses the
    hit space of the sub-algebra A_r.
    """
    if f.m != g.m:
        raise ValueError("variable count mismatch")
    df, dg = f.degree, g.degree
    if df is not None and dg is not None and df != dg:
        raise DegreeMismatch(f"degrees {df} and {dg} differ")
    n = df if df is not None else dg
    if mode == "full":
        if weight is not None or r is not None:
            raise ValueError("full mode takes no weight or level")
    elif mode in ("weight", "level_weight"):
        if weight is None:
            raise ValueError(f"{mode} mode needs a weight vector")
        weight = tuple(weight)
        if mode == "level_weight" and r is None:
            raise ValueError("level_weight mode needs a level r")
        if mode == "weight" and r is not None:
            raise ValueError("weight mode takes no level")
        from .monomials import param_degree

        if n is not None and param_degree(weight) != n:
            raise DegreeMismatch(f"weight {weight} has degree {param_degree(weight)}, not {n}")
        w = weight
        for t in f.terms | g.terms:
            pv = param_vector(t)
            if order_key_weight(pv) > order_key_weight(w):
                raise OutsideFiltration(f"term {t} has weight {pv} above {w}")
    else:
        raise ValueError(f"unknown mode {mode!r}")
    h = f + g
    if not h:
        return True
    if n == 0:
        return False
    return hit_space(f.m, n, r).contains(h, weight)


def order_key_weight(w: tuple[int, ...], width: int = 64) -> tuple[int, ...]:
    return tuple(w) + (0,) * (width - len(w))
