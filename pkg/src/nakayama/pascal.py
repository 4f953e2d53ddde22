"""Pascal-triangle construction of indecomposable submodules of
M(i,0) (x) M(i',0).

Row r of the triangle holds the coefficients of a vector in degree r of the
tensor product; the entry in column c multiplies v^a (x) v^b with
a = (r - c) / 2 and b = (r + c) / 2.  Applying the arrow gives the next row
by the Pascal rule, with positions whose left exponent reaches i (or right
exponent reaches i') removed because those basis vectors are zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import exactlinalg as la
from .hopfalgebra import AlgebraParams
from .modcat import QuiverRep, is_morphism, make_uniserial, tensor, tensor_blocks

__all__ = [
    "PascalSeed",
    "PascalTriangle",
    "RealizedModule",
    "build_triangle",
    "render",
    "realize_module",
    "witness_seeds",
]


@dataclass(frozen=True)
class PascalSeed:
    i: int
    i2: int
    l: int
    u: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(int(x) for x in self.u))
        if self.i < 1 or self.i2 < 1:
            raise ValueError("factor lengths must be positive")
        if not 0 <= self.l <= min(self.i, self.i2):
            raise ValueError(f"need 0 <= l <= min(i, i') = {min(self.i, self.i2)}, got l={self.l}")
        if len(self.u) != self.l + 1:
            raise ValueError(f"U must have l+1 = {self.l + 1} entries, got {len(self.u)}")

    def live(self, r: int, c: int) -> bool:
        a, b = (r - c) // 2, (r + c) // 2
        return 0 <= a < self.i and 0 <= b < self.i2


@dataclass(frozen=True)
class PascalTriangle:
    """Rows 0..last of the triangle.  ``rows[r][k]`` is the entry in column
    c = -r + 2k, or None where the position is dead (truncated)."""

    seed: PascalSeed
    p: int
    rows: tuple[tuple[int | None, ...], ...]

    def entry(self, r: int, c: int) -> int:
        if r < 0 or r >= len(self.rows) or abs(c) > r or (r + c) % 2:
            return 0
        x = self.rows[r][(c + r) // 2]
        return 0 if x is None else x

    def nonzero_rows(self) -> list[int]:
        return [r for r, row in enumerate(self.rows) if any(row_entry for row_entry in row if row_entry)]


def _get(rows, r: int, c: int) -> int:
    if abs(c) > r:
        return 0
    x = rows[r][(c + r) // 2]
    return 0 if x is None else x


def build_triangle(seed: PascalSeed, p: int) -> PascalTriangle:
    rows: list[tuple[int | None, ...]] = []
    last = seed.i + seed.i2 - 2
    for r in range(last + 1):
        row = []
        for c in range(-r, r + 1, 2):
            if not seed.live(r, c):
                row.append(None)
            elif r < seed.l:
                row.append(0)
            elif r == seed.l:
                row.append(seed.u[(c + r) // 2] % p)
            else:
                row.append((_get(rows, r - 1, c - 1) + _get(rows, r - 1, c + 1)) % p)
        rows.append(tuple(row))
        if r >= seed.l and not any(x for x in row if x):
            break
    return PascalTriangle(seed, p, tuple(rows))


def render(tri: PascalTriangle) -> str:
    """Aligned text grid; dead positions show as a middle dot."""
    nrows = len(tri.rows)
    width = max([len(str(x)) for row in tri.rows for x in row if x is not None] + [1])
    span = nrows - 1
    lines = []
    for r, row in enumerate(tri.rows):
        cells = [" " * width] * (2 * span + 1)
        for k, x in enumerate(row):
            c = -r + 2 * k
            cells[c + span] = ("·" if x is None else str(x)).rjust(width)
        lines.append(f"{r:>3} | " + " ".join(cells).rstrip())
    return "\n".join(lines)


@dataclass(frozen=True)
class RealizedModule:
    triangle: PascalTriangle
    module: QuiverRep
    ambient: QuiverRep
    embedding: tuple[np.ndarray, ...]


def realize_module(params: AlgebraParams, seed: PascalSeed) -> RealizedModule:
    """The submodule generated by row l of the triangle, with its embedding
    into M(i,0) (x) M(i',0).  Raises if the seed is zero or the embedding
    fails to commute with the arrows."""
    n, p = params.n, params.p
    if not any(x % p for x in seed.u):
        raise ValueError("zero seed")
    if max(seed.i, seed.i2) > params.d:
        raise ValueError(f"factor length exceeds d={params.d}")
    tri = build_triangle(seed, p)
    left, right = make_uniserial(params, seed.i, 0), make_uniserial(params, seed.i2, 0)
    ambient = tensor(left, right)
    offsets = [{(l1, l2): off for l1, l2, off, _ in bl} for bl in tensor_blocks(left, right)]

    live_rows = [r for r in range(seed.l, len(tri.rows)) if any(x for x in tri.rows[r] if x)]
    if not live_rows:
        raise ValueError("zero seed")
    dims = [0] * n
    slot = {}
    columns: list[list[np.ndarray]] = [[] for _ in range(n)]
    for r in live_rows:
        v = r % n
        vec = la.zeros(ambient.dims[v], 1)[:, 0]
        for k, x in enumerate(tri.rows[r]):
            if x:
                c = -r + 2 * k
                a, b = (r - c) // 2, (r + c) // 2
                vec[offsets[v][(a % n, b % n)]] = x
        slot[r] = (v, dims[v])
        dims[v] += 1
        columns[v].append(vec)
    embedding = tuple(
        np.stack(columns[v], axis=1) if columns[v] else la.zeros(ambient.dims[v], 0) for v in range(n)
    )
    arrows = [la.zeros(dims[(v + 1) % n], dims[v]) for v in range(n)]
    for r in live_rows:
        if r + 1 in slot:
            v, src = slot[r]
            _, dst = slot[r + 1]
            arrows[v][dst, src] = 1
    module = QuiverRep(params, tuple(dims), tuple(arrows))
    if not is_morphism(embedding, module, ambient):
        raise ArithmeticError("triangle rows do not span a submodule")
    return RealizedModule(tri, module, ambient, embedding)


def witness_seeds(p: int, k: int) -> list[PascalSeed]:
    """Seeds M_0..M_p splitting M(p+1,0) (x) M(kp+1,0) into uniserials when
    k is not 0 or -1 mod p (p odd).

    Rows 0 <= l < p: a centred 1 for even l, a centred pair (-k, 1) for odd l.
    Row p needs (k, -1, 1, -1, ..., -1) instead: a centred pair there does not
    generate a module of the right length.
    """
    seeds = []
    for l in range(p):
        u = [0] * (l + 1)
        if l % 2 == 0:
            u[l // 2] = 1
        else:
            u[(l - 1) // 2] = -k
            u[(l + 1) // 2] = 1
        seeds.append(PascalSeed(p + 1, k * p + 1, l, tuple(u)))
    last = (k,) + tuple((-1) ** j for j in range(1, p + 1))
    seeds.append(PascalSeed(p + 1, k * p + 1, p, last))
    return seeds
