"""Representations of the oriented n-cycle bounded by J^d over F_p.

A ``QuiverRep`` stores one vector space per vertex of Z/nZ and one matrix
per arrow ``alpha_j : X_j -> X_{j+1}``.  Representations may also carry an
integer *lift* for each basis vector (its vertex on the universal cover, the
infinite line); arrows must then raise lifts by exactly one.  Lifts are only
needed by the derived-category code and are propagated by ``tensor`` and
``direct_sum`` whenever both inputs have them.

Decomposition into the uniserial modules M(i, j) uses the rank function
r(j, t) = rank(alpha_{j+t-1} ... alpha_j): over a serial algebra the
multiset of summands is determined by it.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import exactlinalg as la
from .hopfalgebra import AlgebraParams

__all__ = [
    "Uniserial",
    "QuiverRep",
    "make_uniserial",
    "zero_rep",
    "tensor",
    "tensor_blocks",
    "tensor_maps",
    "direct_sum",
    "rank_function",
    "rank_function_of_classes",
    "decompose",
    "is_morphism",
    "format_classes",
]


class Uniserial(NamedTuple):
    """The class of M(length, top): P_top / rad^length P_top."""

    length: int
    top: int

    def __str__(self):
        return f"M({self.length},{self.top})"


@dataclass(frozen=True, eq=False)
class QuiverRep:
    params: AlgebraParams
    dims: tuple[int, ...]
    arrows: tuple[np.ndarray, ...]
    lifts: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        n, p = self.params.n, self.params.p
        if len(self.dims) != n or len(self.arrows) != n:
            raise ValueError(f"expected {n} vertex spaces and {n} arrows")
        frozen = []
        for v, a in enumerate(self.arrows):
            a = np.asarray(a, dtype=np.int64) % p
            want = (self.dims[(v + 1) % n], self.dims[v])
            if a.shape != want:
                raise ValueError(f"arrow {v} has shape {a.shape}, expected {want}")
            a.setflags(write=False)
            frozen.append(a)
        object.__setattr__(self, "dims", tuple(int(k) for k in self.dims))
        object.__setattr__(self, "arrows", tuple(frozen))
        if self.lifts is not None:
            lifts = tuple(tuple(int(x) for x in lv) for lv in self.lifts)
            for v, lv in enumerate(lifts):
                if len(lv) != self.dims[v] or any(x % n != v for x in lv):
                    raise ValueError(f"bad lifts at vertex {v}")
            for v, a in enumerate(frozen):
                rows, cols = np.nonzero(a)
                src, dst = lifts[v], lifts[(v + 1) % n]
                if any(dst[r] != src[c] + 1 for r, c in zip(rows, cols)):
                    raise ValueError(f"arrow {v} does not raise lifts by one")
            object.__setattr__(self, "lifts", lifts)

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def composite(self, j: int, t: int) -> np.ndarray:
        """Matrix of the path of t arrows starting at vertex j."""
        n, p = self.params.n, self.params.p
        j %= n
        out = la.identity(self.dims[j])
        for s in range(t):
            out = la.matmul(self.arrows[(j + s) % n], out, p)
        return out

    def __repr__(self):
        return f"QuiverRep({self.params}, dims={self.dims})"


def zero_rep(params: AlgebraParams, lifted: bool = True) -> QuiverRep:
    n = params.n
    return QuiverRep(
        params,
        (0,) * n,
        tuple(la.zeros(0, 0) for _ in range(n)),
        ((),) * n if lifted else None,
    )


def make_uniserial(params: AlgebraParams, length: int, top: int, lift: int | None = None) -> QuiverRep:
    """M(length, top) with basis v^0, ..., v^{length-1}; v^k sits at vertex
    top + k and alpha sends v^k to v^{k+1} (and the last one to 0).

    ``lift`` is the integer lift of the top vertex (defaults to ``top``).
    """
    n, d = params.n, params.d
    if not 1 <= length <= d:
        raise ValueError(f"length {length} outside [1, {d}]")
    top_lift = top if lift is None else lift
    if top_lift % n != top % n:
        raise ValueError("lift does not lie over the top vertex")
    verts = [(top + k) % n for k in range(length)]
    dims = [0] * n
    position = {}  # basis index k -> (vertex, index within vertex)
    lifts = [[] for _ in range(n)]
    for k, v in enumerate(verts):
        position[k] = (v, dims[v])
        dims[v] += 1
        lifts[v].append(top_lift + k)
    arrows = [la.zeros(dims[(v + 1) % n], dims[v]) for v in range(n)]
    for k in range(length - 1):
        v, src = position[k]
        _, dst = position[k + 1]
        arrows[v][dst, src] = 1
    return QuiverRep(params, tuple(dims), tuple(arrows), tuple(tuple(lv) for lv in lifts))


def _check_same(x: QuiverRep, y: QuiverRep):
    if x.params != y.params:
        raise ValueError(f"parameter mismatch: {x.params} vs {y.params}")


def tensor_blocks(x: QuiverRep, y: QuiverRep) -> list[list[tuple[int, int, int, int]]]:
    """For each vertex l of X (x) Y, the blocks (l1, l2, offset, size) with
    l1 + l2 = l, ordered by l1."""
    n = x.params.n
    out = []
    for l in range(n):
        blocks, off = [], 0
        for l1 in range(n):
            l2 = (l - l1) % n
            size = x.dims[l1] * y.dims[l2]
            if size:
                blocks.append((l1, l2, off, size))
                off += size
        out.append(blocks)
    return out


def tensor(x: QuiverRep, y: QuiverRep) -> QuiverRep:
    """The Hopf tensor product: alpha acts as alpha (x) 1 + 1 (x) alpha."""
    _check_same(x, y)
    n = x.params.n
    blocks = tensor_blocks(x, y)
    dims = [sum(b[3] for b in bl) for bl in blocks]
    index = [{(l1, l2): off for l1, l2, off, _ in bl} for bl in blocks]
    arrows = []
    for l in range(n):
        tgt = (l + 1) % n
        a = la.zeros(dims[tgt], dims[l])
        for l1, l2, off, size in blocks[l]:
            dx, dy = x.dims[l1], y.dims[l2]
            left = np.kron(x.arrows[l1], la.identity(dy))
            key = ((l1 + 1) % n, l2)
            if left.size and key in index[tgt]:
                o = index[tgt][key]
                a[o:o + left.shape[0], off:off + size] += left
            right = np.kron(la.identity(dx), y.arrows[l2])
            key = (l1, (l2 + 1) % n)
            if right.size and key in index[tgt]:
                o = index[tgt][key]
                a[o:o + right.shape[0], off:off + size] += right
        arrows.append(a)
    lifts = None
    if x.lifts is not None and y.lifts is not None:
        lifts = tuple(
            tuple(a + b for l1, l2, _, _ in blocks[l] for a in x.lifts[l1] for b in y.lifts[l2])
            for l in range(n)
        )
    return QuiverRep(x.params, tuple(dims), tuple(arrows), lifts)


def tensor_maps(f, x: QuiverRep, x2: QuiverRep, g, y: QuiverRep, y2: QuiverRep) -> list[np.ndarray]:
    """Per-vertex matrices of f (x) g : X (x) Y -> X2 (x) Y2, where f and g are
    given as lists of per-vertex matrices."""
    n, p = x.params.n, x.params.p
    src, dst = tensor_blocks(x, y), tensor_blocks(x2, y2)
    out = []
    for l in range(n):
        rows = sum(b[3] for b in dst[l])
        cols = sum(b[3] for b in src[l])
        m = la.zeros(rows, cols)
        where = {(l1, l2): off for l1, l2, off, _ in dst[l]}
        for l1, l2, off, size in src[l]:
            if (l1, l2) not in where:
                continue
            block = np.kron(f[l1], g[l2])
            o = where[(l1, l2)]
            m[o:o + block.shape[0], off:off + size] = block
        out.append(m % p)
    return out


def direct_sum(x: QuiverRep, y: QuiverRep) -> QuiverRep:
    _check_same(x, y)
    n = x.params.n
    dims = tuple(a + b for a, b in zip(x.dims, y.dims))
    arrows = []
    for v in range(n):
        a = la.zeros(dims[(v + 1) % n], dims[v])
        ax, ay = x.arrows[v], y.arrows[v]
        a[: ax.shape[0], : ax.shape[1]] = ax
        a[ax.shape[0]:, ax.shape[1]:] = ay
        arrows.append(a)
    lifts = None
    if x.lifts is not None and y.lifts is not None:
        lifts = tuple(a + b for a, b in zip(x.lifts, y.lifts))
    return QuiverRep(x.params, dims, tuple(arrows), lifts)


def rank_function(x: QuiverRep) -> np.ndarray:
    """Table r[j, t] = rank of the path of t arrows from vertex j, t = 0..d.

    Raises ValueError if some path of length d acts nonzero (J^d != 0).
    """
    n, p, d = x.params.n, x.params.p, x.params.d
    r = np.zeros((n, d + 1), dtype=np.int64)
    for j in range(n):
        r[j, 0] = x.dims[j]
        comp = la.identity(x.dims[j])
        for t in range(1, d + 1):
            if r[j, t - 1] == 0:
                break
            comp = la.matmul(x.arrows[(j + t - 1) % n], comp, p)
            r[j, t] = la.rank(comp, p)
        if r[j, d]:
            raise ValueError(f"nilpotency violated: path of length {d} from vertex {j} is nonzero")
    return r


def rank_function_of_classes(params: AlgebraParams, classes) -> np.ndarray:
    """Rank function of a direct sum of uniserials, computed combinatorially."""
    n, d = params.n, params.d
    r = np.zeros((n, d + 1), dtype=np.int64)
    items = classes.items() if hasattr(classes, "items") else ((c, 1) for c in classes)
    for (length, top), mult in items:
        for k in range(length):
            v = (top + k) % n
            for t in range(0, length - k):
                r[v, t] += mult
    return r


def decompose(x: QuiverRep) -> Counter:
    """Krull-Schmidt decomposition into uniserials, as Counter{Uniserial: mult}."""
    n, d = x.params.n, x.params.d
    r = rank_function(x)

    def rk(j, t):
        return int(r[j % n, t]) if t <= d else 0

    out = Counter()
    for j in range(n):
        for length in range(1, d + 1):
            mult = rk(j, length - 1) - rk(j, length) - rk(j - 1, length) + rk(j - 1, length + 1)
            if mult < 0:
                raise ArithmeticError("negative multiplicity; representation is inconsistent")
            if mult:
                out[Uniserial(length, j)] = mult
    return out


def is_morphism(f, x: QuiverRep, y: QuiverRep) -> bool:
    """Whether per-vertex matrices f commute with the arrow actions."""
    n, p = x.params.n, x.params.p
    for v in range(n):
        w = (v + 1) % n
        lhs = la.matmul(f[w], x.arrows[v], p)
        rhs = la.matmul(y.arrows[v], f[v], p)
        if not np.array_equal(lhs, rhs):
            return False
    return True


def format_classes(classes) -> str:
    """'M(13,0) + M(9,1) + ...' with multiplicities as '2*M(i,j)'."""
    parts = []
    for c in sorted(classes, key=lambda c: (-c.length, c.top)):
        mult = classes[c]
        parts.append(f"{mult}*{c}" if mult != 1 else str(c))
    return " + ".join(parts) if parts else "0"
