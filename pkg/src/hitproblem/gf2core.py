"""Linear algebra over GF(2) on bit-packed rows.

Rows are Python ints used as bitsets.  The public types wrap them with an
explicit column count; the engine modules talk to :class:`Eliminator`
directly, where the pivot of a row is simply its highest set bit.
"""

from __future__ import annotations

from typing import Iterable, Sequence

__all__ = [
    "BitVector",
    "Echelon",
    "Eliminator",
    "echelonize",
    "reduce",
    "kernel",
    "rank",
]

WORD = 64


class BitVector:
    """A GF(2) vector of fixed length; bit ``i`` is column ``i``."""

    __slots__ = ("length", "bits")

    def __init__(self, length: int, bits: int = 0):
        if length < 0:
            raise ValueError("length must be non-negative")
        if bits < 0 or bits >> length:
            raise ValueError("bits set beyond length")
        self.length = length
        self.bits = bits

    @classmethod
    def from_indices(cls, length: int, indices: Iterable[int]) -> BitVector:
        bits = 0
        for i in indices:
            if not 0 <= i < length:
                raise IndexError(i)
            bits ^= 1 << i
        return cls(length, bits)

    @classmethod
    def from_str(cls, s: str) -> BitVector:
        """``"110"`` has columns 0 and 1 set."""
        return cls(len(s), int(s[::-1], 2) if s else 0)

    @property
    def words(self) -> list[int]:
        n = (self.length + WORD - 1) // WORD
        mask = (1 << WORD) - 1
        return [(self.bits >> (WORD * i)) & mask for i in range(n)]

    def indices(self) -> list[int]:
        out = []
        b = self.bits
        while b:
            low = b & -b
            out.append(low.bit_length() - 1)
            b ^= low
        return out

    def __getitem__(self, i: int) -> int:
        return (self.bits >> i) & 1

    def __xor__(self, other: BitVector) -> BitVector:
        if other.length != self.length:
            raise ValueError("length mismatch")
        return BitVector(self.length, self.bits ^ other.bits)

    def __bool__(self) -> bool:
        return self.bits != 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self.length == other.length and self.bits == other.bits

    def __hash__(self) -> int:
        return hash((self.length, self.bits))

    def __str__(self) -> str:
        return "".join(str(self[i]) for i in range(self.length))

    def __repr__(self) -> str:
        return f"BitVector({str(self)!r})"


class Eliminator:
    """Incremental echelon on raw ints; the pivot of a row is its top bit.

    Rows are kept head-reduced (distinct top bits); :meth:`full_reduce`
    clears every pivot column from the other rows.
    """

    __slots__ = ("rows",)

    def __init__(self):
        self.rows: dict[int, int] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def add(self, v: int) -> bool:
        """Insert ``v``; return True if it enlarged the span."""
        rows = self.rows
        while v:
            p = v.bit_length() - 1
            r = rows.get(p)
            if r is None:
                rows[p] = v
                return True
            v ^= r
        return False

    def reduce(self, v: int, floor: int = 0) -> int:
        """Residual of ``v`` with no set bit in a pivot column ``>= floor``.

        Bits below ``floor`` are returned as they stand after elimination.
        """
        rows = self.rows
        out = 0
        while v:
            p = v.bit_length() - 1
            if p < floor:
                return out | v
            r = rows.get(p)
            if r is None:
                top = 1 << p
                out |= top
                v ^= top
            else:
                v ^= r
        return out

    def contains(self, v: int, floor: int = 0) -> bool:
        """True if ``v`` lies in the span plus the columns below ``floor``."""
        rows = self.rows
        while v:
            p = v.bit_length() - 1
            if p < floor:
                return True
            r = rows.get(p)
            if r is None:
                return False
            v ^= r
        return True

    def full_reduce(self) -> None:
        rows = self.rows
        for p in sorted(rows):
            top = 1 << p
            rows[p] = top | self.reduce(rows[p] ^ top)

    def count_at_least(self, floor: int) -> int:
        return sum(1 for p in self.rows if p >= floor)


class Echelon:
    """Fully reduced echelon form of a row span under a column priority order.

    ``pivots`` lists pivot columns in priority order and ``rows[i]`` is the
    row whose leading column (first set bit under the order) is
    ``pivots[i]``.
    """

    def __init__(self, length: int, order: Sequence[int] | None = None):
        self.length = length
        self.order = list(range(length)) if order is None else list(order)
        if sorted(self.order) != list(range(length)):
            raise ValueError("pivot_order must be a permutation of the columns")
        self._identity = order is None or self.order == list(range(length))
        self._pos = {c: i for i, c in enumerate(self.order)}
        self._elim = Eliminator()

    # column bitset <-> internal bitset whose top bit is the first column
    def _to_internal(self, v: int) -> int:
        n = self.length
        if self._identity:
            return int(format(v, f"0{n}b")[::-1], 2) if n else 0
        out = 0
        pos = self._pos
        while v:
            low = v & -v
            out |= 1 << (n - 1 - pos[low.bit_length() - 1])
            v ^= low
        return out

    def _to_external(self, v: int) -> int:
        n = self.length
        if self._identity:
            return int(format(v, f"0{n}b")[::-1], 2) if n else 0
        out = 0
        order = self.order
        while v:
            low = v & -v
            out |= 1 << order[n - 1 - (low.bit_length() - 1)]
            v ^= low
        return out

    def _check(self, v: BitVector) -> None:
        if v.length != self.length:
            raise ValueError(f"length mismatch: {v.length} != {self.length}")

    def add(self, v: BitVector) -> bool:
        self._check(v)
        return self._elim.add(self._to_internal(v.bits))

    @property
    def rank(self) -> int:
        return len(self._elim)

    @property
    def pivots(self) -> list[int]:
        n = self.length
        return [self.order[n - 1 - p] for p in sorted(self._elim.rows, reverse=True)]

    @property
    def rows(self) -> list[BitVector]:
        el = self._elim
        return [
            BitVector(self.length, self._to_external(el.rows[p]))
            for p in sorted(el.rows, reverse=True)
        ]

    def reduce(self, v: BitVector) -> BitVector:
        self._check(v)
        r = self._elim.reduce(self._to_internal(v.bits))
        return BitVector(self.length, self._to_external(r))


def echelonize(
    rows: Iterable[BitVector],
    pivot_order: Sequence[int] | None = None,
    length: int | None = None,
) -> Echelon:
    """Fully reduced echelon of the span of ``rows``.

    ``pivot_order`` lists the columns by priority (default 0, 1, ...).
    ``length`` is only needed when ``rows`` may be empty.
    """
    it = iter(rows)
    first = next(it, None)
    if first is None:
        n = length if length is not None else (len(pivot_order) if pivot_order else 0)
        return Echelon(n, pivot_order)
    if length is not None and first.length != length:
        raise ValueError("length mismatch")
    ech = Echelon(first.length, pivot_order)
    ech.add(first)
    for v in it:
        ech.add(v)
    ech._elim.full_reduce()
    return ech


def reduce(ech: Echelon, v: BitVector) -> BitVector:
    return ech.reduce(v)


def rank(rows: Iterable[BitVector]) -> int:
    el = Eliminator()
    n = None
    for v in rows:
        if n is None:
            n = v.length
        elif v.length != n:
            raise ValueError("length mismatch")
        el.add(v.bits)
    return len(el)


def kernel(mat: Sequence[BitVector], ncols: int | None = None) -> list[BitVector]:
    """Basis of ``{x : row . x = 0 for every row}``."""
    if ncols is None:
        if not mat:
            raise ValueError("ncols required for an empty matrix")
        ncols = mat[0].length
    el = Eliminator()
    for v in mat:
        if v.length != ncols:
            raise ValueError("shape mismatch")
        el.add(v.bits)
    el.full_reduce()
    pivots = sorted(el.rows)
    pset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pset:
            continue
        x = 1 << f
        for p in pivots:
            if p > f and (el.rows[p] >> f) & 1:
                x |= 1 << p
        basis.append(BitVector(ncols, x))
    return basis
