"""The representation ring r(KZ_n/J^d) and its Z-graded shift ring.

Class products are computed from the base products [M(i,0)][M(i',0)]
only: tensoring with M(1,1) rotates every summand by one vertex, so
[M(i,j)][M(i',j')] is the base product with all tops shifted by j + j'.
Base products are cached per parameter set.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from itertools import product
from math import comb
from typing import Iterable, Mapping

from .hopfalgebra import AlgebraParams
from .modcat import Uniserial, decompose, make_uniserial, tensor
from .polynomial import IntPoly

__all__ = [
    "GreenElement",
    "ShiftGreenElement",
    "base_product",
    "class_product",
    "precompute_base_products",
    "multiply",
    "generator_classes",
    "express_in_generators",
    "phi",
    "structure_constant_table",
    "shift_multiply",
    "worker_count",
]

_BASE: dict[tuple[AlgebraParams, int, int], dict[Uniserial, int]] = {}


def worker_count() -> int:
    """Process count from GREENRING_THREADS (default 1)."""
    try:
        return max(1, int(os.environ.get("GREENRING_THREADS", "1")))
    except ValueError:
        return 1


def _compute_base(args) -> dict[Uniserial, int]:
    params, i, i2 = args
    return dict(decompose(tensor(make_uniserial(params, i, 0), make_uniserial(params, i2, 0))))


def base_product(params: AlgebraParams, i: int, i2: int) -> dict[Uniserial, int]:
    """Decomposition of M(i,0) (x) M(i',0)."""
    key = (params, i, i2)
    if key not in _BASE:
        _BASE[key] = _compute_base(key)
    return _BASE[key]


def precompute_base_products(params: AlgebraParams, workers: int | None = None) -> None:
    """Fill the base-product cache for all pairs, optionally in parallel."""
    workers = worker_count() if workers is None else workers
    d = params.d
    todo = [(params, i, i2) for i in range(1, d + 1) for i2 in range(1, d + 1) if (params, i, i2) not in _BASE]
    if workers > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_compute_base, todo, chunksize=8))
    else:
        results = [_compute_base(t) for t in todo]
    for key, res in zip(todo, results):
        _BASE[key] = res


def class_product(params: AlgebraParams, a: Uniserial, b: Uniserial) -> dict[Uniserial, int]:
    n = params.n
    shift = a.top + b.top
    base = base_product(params, a.length, b.length)
    return {Uniserial(c.length, (c.top + shift) % n): k for c, k in base.items()}


class GreenElement:
    """A Z-linear combination of classes [M(i,j)]."""

    __slots__ = ("params", "coeffs")

    def __init__(self, params: AlgebraParams, coeffs: Mapping | Iterable = ()):
        self.params = params
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        clean: dict[Uniserial, int] = {}
        for c, k in items:
            c = Uniserial(int(c[0]), int(c[1]) % params.n)
            if not 1 <= c.length <= params.d:
                raise ValueError(f"class {c} out of range")
            clean[c] = clean.get(c, 0) + int(k)
        self.coeffs = {c: k for c, k in clean.items() if k}

    @classmethod
    def of(cls, params: AlgebraParams, length: int, top: int = 0) -> GreenElement:
        return cls(params, {Uniserial(length, top): 1})

    @classmethod
    def one(cls, params: AlgebraParams) -> GreenElement:
        return cls.of(params, 1, 0)

    @classmethod
    def zero(cls, params: AlgebraParams) -> GreenElement:
        return cls(params)

    def _same(self, other: GreenElement):
        if self.params != other.params:
            raise ValueError(f"parameter mismatch: {self.params} vs {other.params}")

    def __add__(self, other: GreenElement) -> GreenElement:
        self._same(other)
        out = dict(self.coeffs)
        for c, k in other.coeffs.items():
            out[c] = out.get(c, 0) + k
        return GreenElement(self.params, out)

    def __neg__(self) -> GreenElement:
        return GreenElement(self.params, {c: -k for c, k in self.coeffs.items()})

    def __sub__(self, other: GreenElement) -> GreenElement:
        return self + (-other)

    def scale(self, k: int) -> GreenElement:
        return GreenElement(self.params, {c: k * v for c, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> GreenElement:
        out = GreenElement.one(self.params)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, GreenElement):
            return NotImplemented
        return self.params == other.params and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.params, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_nonnegative(self) -> bool:
        return all(k > 0 for k in self.coeffs.values())

    def dimension(self) -> int:
        return sum(c.length * k for c, k in self.coeffs.items())

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for c in sorted(self.coeffs, key=lambda c: (-c.length, c.top)):
            k = self.coeffs[c]
            body = str(c) if abs(k) == 1 else f"{abs(k)}*{c}"
            parts.append(("-" if k < 0 else "+") + body)
        s = " ".join(parts)
        return s[1:] if s.startswith("+") else s

    def __repr__(self):
        return f"GreenElement({self})"


def multiply(a: GreenElement, b: GreenElement) -> GreenElement:
    a._same(b)
    params = a.params
    out: dict[Uniserial, int] = {}
    for ca, ka in a.coeffs.items():
        for cb, kb in b.coeffs.items():
            for c, k in class_product(params, ca, cb).items():
                out[c] = out.get(c, 0) + ka * kb * k
    return GreenElement(params, out)


def generator_classes(params: AlgebraParams) -> tuple[Uniserial, ...]:
    """Images of y, z, w_1, ..., w_{m-1}."""
    p, m = params.p, params.m
    return (Uniserial(1, 1), Uniserial(2, 0)) + tuple(Uniserial(p**l + 1, 0) for l in range(1, m))


_EXPR: dict[tuple[AlgebraParams, int], IntPoly] = {}


def _split_point(u: int, p: int) -> int:
    for w in range(1, u - 1):
        if comb(u - 1, w) % p:
            return w
    raise ArithmeticError(f"no admissible split for u={u}")


def _expr_top0(params: AlgebraParams, u: int) -> IntPoly:
    key = (params, u)
    if key in _EXPR:
        return _EXPR[key]
    p, m = params.p, params.m
    nv = m + 1
    gens = IntPoly.gens(nv)
    if u == 1:
        out = IntPoly.const(nv, 1)
    elif u == 2:
        out = gens[1]
    elif any(u - 1 == p**l for l in range(1, m)):
        l = next(l for l in range(1, m) if u - 1 == p**l)
        out = gens[1 + l]
    else:
        w = _split_point(u, p)
        summands = dict(base_product(params, u - w, w + 1))
        if summands.get(Uniserial(u, 0)) != 1:
            raise ArithmeticError(f"M({u},0) is not a simple summand of M({u - w},0)(x)M({w + 1},0)")
        del summands[Uniserial(u, 0)]
        out = _expr_top0(params, u - w) * _expr_top0(params, w + 1)
        for c, k in summands.items():
            out = out - k * express_in_generators(params, c)
    _EXPR[key] = out
    return out


def express_in_generators(params: AlgebraParams, c: Uniserial) -> IntPoly:
    """A polynomial f in y, z, w_1.. with phi(f) = [c]."""
    c = Uniserial(*c)
    if not 1 <= c.length <= params.d:
        raise ValueError(f"length {c.length} outside [1, {params.d}]")
    f = _expr_top0(params, c.length)
    top = c.top % params.n
    return f * IntPoly.var(params.m + 1, 0, top) if top else f


_PHI_MEMO: dict[AlgebraParams, dict[tuple[int, ...], GreenElement]] = {}


def _monomial_value(params: AlgebraParams, e: tuple[int, ...]) -> GreenElement:
    memo = _PHI_MEMO.setdefault(params, {})
    if e in memo:
        return memo[e]
    if not any(e):
        out = GreenElement.one(params)
    else:
        k = max(i for i, x in enumerate(e) if x)
        lower = e[:k] + (e[k] - 1,) + e[k + 1:]
        gen = GreenElement(params, {generator_classes(params)[k]: 1})
        out = multiply(_monomial_value(params, lower), gen)
    memo[e] = out
    return out


def phi(params: AlgebraParams, poly: IntPoly) -> GreenElement:
    """Evaluate y, z, w_l at [M(1,1)], [M(2,0)], [M(p^l+1,0)]."""
    if poly.nvars != params.m + 1:
        raise ValueError(f"polynomial has {poly.nvars} variables, expected {params.m + 1}")
    out: dict[Uniserial, int] = {}
    for e in sorted(poly.terms):
        k = poly.terms[e]
        for c, v in _monomial_value(params, e).coeffs.items():
            out[c] = out.get(c, 0) + k * v
    return GreenElement(params, out)


def structure_constant_table(params: AlgebraParams) -> dict[tuple[Uniserial, Uniserial], dict[Uniserial, int]]:
    """All products [M(i,j)][M(i',j')], keyed by the ordered pair of classes."""
    precompute_base_products(params)
    classes = [Uniserial(i, j) for i in range(1, params.d + 1) for j in range(params.n)]
    return {(a, b): class_product(params, a, b) for a, b in product(classes, classes)}


class ShiftGreenElement:
    """A Z-linear combination of shifted stalk classes [M(i,j)[s]]."""

    __slots__ = ("params", "coeffs")

    def __init__(self, params: AlgebraParams, coeffs: Mapping | Iterable = ()):
        self.params = params
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        clean: dict[tuple[Uniserial, int], int] = {}
        for (c, s), k in items:
            key = (Uniserial(int(c[0]), int(c[1]) % params.n), int(s))
            clean[key] = clean.get(key, 0) + int(k)
        self.coeffs = {key: k for key, k in clean.items() if k}

    @classmethod
    def of(cls, params: AlgebraParams, length: int, top: int, shift: int) -> ShiftGreenElement:
        return cls(params, {(Uniserial(length, top), shift): 1})

    def degrees(self) -> set[int]:
        return {s for _, s in self.coeffs}

    def __eq__(self, other):
        if not isinstance(other, ShiftGreenElement):
            return NotImplemented
        return self.params == other.params and self.coeffs == other.coeffs

    def __mul__(self, other):
        return shift_multiply(self, other)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for c, s in sorted(self.coeffs, key=lambda t: (t[1], -t[0].length, t[0].top)):
            k = self.coeffs[(c, s)]
            body = f"{c}[{s}]" if abs(k) == 1 else f"{abs(k)}*{c}[{s}]"
            parts.append(("-" if k < 0 else "+") + body)
        s = " ".join(parts)
        return s[1:] if s.startswith("+") else s


def shift_multiply(a: ShiftGreenElement, b: ShiftGreenElement) -> ShiftGreenElement:
    if a.params != b.params:
        raise ValueError("parameter mismatch")
    out: dict[tuple[Uniserial, int], int] = {}
    for (ca, sa), ka in a.coeffs.items():
        for (cb, sb), kb in b.coeffs.items():
            for c, k in class_product(a.params, ca, cb).items():
                key = (c, sa + sb)
                out[key] = out.get(key, 0) + ka * kb * k
    return ShiftGreenElement(a.params, out)
