"""The truncated cycle algebra KZ_n/J^d and its Hopf structure.

The comultiplication on the path algebra of the oriented n-cycle is

    Delta(v_h)     = sum_{g1+g2=h} v_g1 (x) v_g2
    Delta(alpha_h) = sum_{g1+g2=h} (alpha_g1 (x) v_g2 + v_g1 (x) alpha_g2)

with indices in Z/nZ.  J^d is a Hopf ideal exactly when every binomial
coefficient C(d, i), 0 < i < d, vanishes mod p, i.e. when d is a power of p.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .exactlinalg import is_prime

__all__ = [
    "AlgebraParams",
    "HopfValidity",
    "validate_hopf",
    "prime_power_exponent",
    "comultiplication_support",
    "counit",
    "antipode",
]


def prime_power_exponent(d: int, p: int) -> int | None:
    """Return m with d == p**m (m >= 1), or None."""
    m = 0
    while d > 1 and d % p == 0:
        d //= p
        m += 1
    return m if d == 1 and m > 0 else None


@dataclass(frozen=True)
class HopfValidity:
    valid: bool
    diagnostic: str

    def __bool__(self):
        return self.valid


def validate_hopf(n: int, d: int, p: int) -> HopfValidity:
    """Decide whether KZ_n/J^d is a Hopf algebra over characteristic p."""
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if n < 1:
        raise ValueError(f"n={n} must be at least 1")
    if d < 2:
        raise ValueError(f"d={d} must be at least 2")
    for i in range(1, d):
        c = comb(d, i)
        if c % p:
            return HopfValidity(False, f"C({d},{i})={c}≡{c % p} mod {p}")
    if d > n:
        return HopfValidity(False, f"d > n ({d} > {n})")
    return HopfValidity(True, f"d={d}={p}^{prime_power_exponent(d, p)} <= n={n}")


@dataclass(frozen=True)
class AlgebraParams:
    """The algebra KZ_n/J^d with d = p^m over F_p."""

    n: int
    p: int
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"m={self.m} must be positive")
        check = validate_hopf(self.n, self.p**self.m, self.p)
        if not check:
            raise ValueError(f"KZ_{self.n}/J^{self.d} is not a Hopf algebra: {check.diagnostic}")

    @property
    def d(self) -> int:
        return self.p**self.m

    @property
    def num_indecomposables(self) -> int:
        return self.n * self.d

    def vertex(self, k: int) -> int:
        return k % self.n

    def __str__(self):
        return f"KZ_{self.n}/J^{self.d} over F_{self.p}"


def _parse_tag(tag) -> tuple[str, int]:
    if isinstance(tag, str):
        kind, _, idx = tag.partition("_")
        tag = (kind, int(idx))
    kind, idx = tag
    if kind not in ("v", "alpha"):
        raise ValueError(f"unknown basis tag {tag!r}")
    return kind, int(idx)


def comultiplication_support(n: int, tag) -> list[tuple[tuple[str, int], tuple[str, int]]]:
    """Tensor pairs occurring in Delta of a vertex or arrow.

    ``tag`` is ``("v", k)`` or ``("alpha", k)`` (or the strings ``"v_k"``,
    ``"alpha_k"``).  All coefficients are 1.
    """
    kind, h = _parse_tag(tag)
    h %= n
    if kind == "v":
        return [(("v", g), ("v", (h - g) % n)) for g in range(n)]
    return [(("alpha", g), ("v", (h - g) % n)) for g in range(n)] + [
        (("v", g), ("alpha", (h - g) % n)) for g in range(n)
    ]


def counit(n: int, tag) -> int:
    kind, h = _parse_tag(tag)
    return int(kind == "v" and h % n == 0)


def antipode(n: int, tag) -> tuple[int, tuple[str, int]]:
    """S as (sign, tag): S(v_h) = v_{-h}, S(alpha_h) = -alpha_{-h-1}."""
    kind, h = _parse_tag(tag)
    if kind == "v":
        return 1, ("v", (-h) % n)
    return -1, ("alpha", (-h - 1) % n)
