"""Finite unstable modules over the Steenrod algebra, small enough to compare by hand.

A module is a graded F_2 vector space with Sq^k matrices between degrees.
A matrix from degree d to degree d + k is a list of row bitmasks: row i has
bit j set when the image of basis vector j has coordinate i.
"""

from __future__ import annotations

from itertools import product

__all__ = ["FiniteAModule", "cp_quotient", "sphere_wedge", "modules_isomorphic", "ISO_CAP"]

ISO_CAP = 3


def _mat_mul(a: list[int], b: list[int], inner: int) -> list[int]:
    # (a * b) with a: r x inner, b: inner x c, both as row bitmasks
    out = []
    for row in a:
        acc = 0
        for i in range(inner):
            if row >> i & 1:
                acc ^= b[i]
        out.append(acc)
    return out


def _invertible(mat: list[int], n: int) -> bool:
    rows = list(mat)
    rank = 0
    for bit in range(n):
        piv = next((i for i in range(rank, n) if rows[i] >> bit & 1), None)
        if piv is None:
            return False
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(n):
            if i != rank and rows[i] >> bit & 1:
                rows[i] ^= rows[rank]
        rank += 1
    return True


def _gl(n: int) -> list[list[int]]:
    return [list(rows) for rows in product(range(1 << n), repeat=n) if _invertible(list(rows), n)]


class FiniteAModule:
    def __init__(self, dims: dict[int, int], sq_maps: dict[tuple[int, int], list[int]] | None = None):
        self.dims = {d: k for d, k in dims.items() if k > 0}
        self.sq_maps: dict[tuple[int, int], list[int]] = {}
        for (k, d), mat in (sq_maps or {}).items():
            self.set_sq(k, d, mat)

    def dim(self, d: int) -> int:
        return self.dims.get(d, 0)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def set_sq(self, k: int, d: int, mat: list[int]) -> None:
        src, tgt = self.dim(d), self.dim(d + k)
        if k == 0:
            if mat != [1 << i for i in range(src)]:
                raise ValueError("Sq^0 must be the identity")
            return
        if k < 0:
            raise ValueError("negative square")
        if len(mat) != tgt or any(r >> src for r in mat):
            raise ValueError(f"Sq^{k} on degree {d} must be a {tgt}x{src} matrix")
        if d < k and any(mat):
            raise ValueError(f"Sq^{k} must vanish on degree {d} < {k}")
        if any(mat):
            self.sq_maps[(k, d)] = list(mat)

    def sq(self, k: int, d: int) -> list[int]:
        if k == 0:
            return [1 << i for i in range(self.dim(d))]
        return self.sq_maps.get((k, d), [0] * self.dim(d + k))

    def apply(self, k: int, d: int, v: int) -> int:
        """Image of the coordinate bitmask v in degree d under Sq^k."""
        out = 0
        for i, row in enumerate(self.sq(k, d)):
            if bin(row & v).count("1") & 1:
                out |= 1 << i
        return out

    def pairs(self):
        """Every (k, d) with k > 0 where Sq^k: H^d -> H^{d+k} has nonzero source and target."""
        return [(e - d, d) for d in sorted(self.dims) for e in sorted(self.dims) if e > d]

    def __repr__(self) -> str:
        return f"FiniteAModule(dims={dict(sorted(self.dims.items()))}, sq={sorted(self.sq_maps)})"


def cp_quotient(n: int) -> FiniteAModule:
    """Cohomology of CP^n / CP^{n-2}: classes in degrees 0, 2n-2, 2n; Sq^2 a = (n-1) b."""
    if n < 3:
        raise ValueError("CP^n / CP^(n-2) needs n >= 3")
    m = FiniteAModule({0: 1, 2 * n - 2: 1, 2 * n: 1})
    if (n - 1) % 2:
        m.set_sq(2, 2 * n - 2, [1])
    return m


def sphere_wedge(degrees) -> FiniteAModule:
    dims = {0: 1}
    for d in degrees:
        if d <= 0:
            raise ValueError("sphere dimensions must be positive")
        dims[d] = dims.get(d, 0) + 1
    return FiniteAModule(dims)


def modules_isomorphic(a: FiniteAModule, b: FiniteAModule, cap: int = ISO_CAP) -> bool:
    """Search for degreewise invertible maps f with f Sq^k = Sq^k f."""
    if a.dims != b.dims:
        return False
    big = [d for d, k in a.dims.items() if k > cap]
    if big:
        raise ValueError(f"degree {big[0]} has dimension {a.dims[big[0]]} > cap {cap}")
    degs = sorted(a.dims)
    pairs = sorted(set(a.pairs()))
    gl = {k: _gl(k) for k in set(a.dims.values())}
    chosen: dict[int, list[int]] = {}

    def ok(d: int) -> bool:
        # every square whose two ends are now both assigned must commute
        for k, s in pairs:
            t = s + k
            if d not in (s, t) or s not in chosen or t not in chosen:
                continue
            lhs = _mat_mul(chosen[t], a.sq(k, s), a.dim(t))
            rhs = _mat_mul(b.sq(k, s), chosen[s], a.dim(s))
            if lhs != rhs:
                return False
        return True

    def search(i: int) -> bool:
        if i == len(degs):
            return True
        d = degs[i]
        for f in gl[a.dims[d]]:
            chosen[d] = f
            if ok(d) and search(i + 1):
                return True
        del chosen[d]
        return False

    return search(0)
