"""Polynomial presentation r(KZ_n/J^d) = Z[y, z, w_1..w_{m-1}] / (g_0, ..., g_m).

The generators have leading terms y^n, z^p, w_1^p, ..., w_{m-1}^p under
lex order with w_{m-1} > ... > w_1 > z > y.  These are pairwise coprime
pure powers with coefficient 1, so the g_i form a Groebner basis over Z and
the standard monomials y^i z^j w^l (i < n, j < p, l_k < p) give a Z-basis
of the quotient.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from .greenring import (
    GreenElement,
    base_product,
    express_in_generators,
    phi,
)
from .hopfalgebra import AlgebraParams
from .modcat import Uniserial
from .polynomial import IntPoly, parse_poly, variable_names

__all__ = [
    "IntPoly",
    "parse_poly",
    "Relation",
    "Presentation",
    "chebyshev_g",
    "build_presentation",
    "monomial_basis",
    "reduce",
    "CheckResult",
    "VerificationReport",
    "verify_presentation",
]


def chebyshev_g(k: int, a1: IntPoly, a2: IntPoly) -> IntPoly:
    """a_k for a_t = z a_{t-1} - y a_{t-2} with the given a_1, a_2."""
    if k < 1:
        raise ValueError("k must be at least 1")
    y, z = IntPoly.gens(a1.nvars)[:2]
    prev, cur = a1, a2
    if k == 1:
        return a1
    for _ in range(k - 2):
        prev, cur = cur, z * cur - y * prev
    return cur


@dataclass(frozen=True)
class Relation:
    name: str
    poly: IntPoly
    factors: tuple[IntPoly, ...] = ()

    def __str__(self):
        if len(self.factors) <= 1:
            return str(self.poly)
        return "*".join(f"({f})" if len(f.terms) > 1 else str(f) for f in self.factors)


@dataclass(frozen=True)
class Presentation:
    params: AlgebraParams
    relations: tuple[Relation, ...]

    @property
    def nvars(self) -> int:
        return self.params.m + 1

    @property
    def variables(self) -> tuple[str, ...]:
        return variable_names(self.nvars)

    def __str__(self):
        return f"Z[{','.join(self.variables)}]/({', '.join(str(r) for r in self.relations)})"

    def to_json(self) -> dict:
        return {
            "n": self.params.n,
            "p": self.params.p,
            "m": self.params.m,
            "vars": list(self.variables),
            "generators": [{"name": r.name, "text": str(r), **r.poly.to_json()} for r in self.relations],
        }


def build_presentation(params: AlgebraParams) -> Presentation:
    n, p, m = params.n, params.p, params.m
    nv = m + 1
    gens = IntPoly.gens(nv)
    y, z = gens[0], gens[1]
    one = IntPoly.const(nv, 1)
    g0 = y**n - 1
    rels = [Relation("g0", g0, (g0,))]
    lin = z - y - one
    cheb = chebyshev_g(p, one, z)
    rels.append(Relation("g1", lin * cheb, (lin, cheb)))
    for l in range(1, m):
        u = (p - 1) * p**l + 1
        w = gens[1 + l]
        g = w * express_in_generators(params, Uniserial(u, 0))
        for c, k in base_product(params, p**l + 1, u).items():
            g = g - k * express_in_generators(params, c)
        rels.append(Relation(f"g{l + 1}", g))
    return Presentation(params, tuple(rels))


def expected_leading_exponents(params: AlgebraParams) -> list[tuple[int, ...]]:
    nv = params.m + 1
    out = []
    for k in range(nv):
        e = [0] * nv
        e[k] = params.n if k == 0 else params.p
        out.append(tuple(e))
    return out


def monomial_basis(pres: Presentation) -> list[tuple[int, ...]]:
    n, p, m = pres.params.n, pres.params.p, pres.params.m
    ranges = [range(n), range(p)] + [range(p)] * (m - 1)
    return [tuple(e) for e in product(*ranges)]


def reduce(poly: IntPoly, pres: Presentation) -> IntPoly:
    """Normal form modulo the relations (requires the pure-power leading terms).

    Variables are eliminated from the highest one down: g_{l+1} involves only
    y, z, w_1..w_l, so reducing w_l never reintroduces a higher w.
    """
    nv = pres.nvars
    for k in range(nv - 1, -1, -1):
        rel = pres.relations[k].poly
        lead, coeff = rel.leading_term()
        if coeff != 1 or sum(1 for x in lead if x) != 1 or lead[k] == 0:
            raise ValueError(f"relation {pres.relations[k].name} does not have a monic pure-power leading term")
        bound = lead[k]
        tail = {e: -c for e, c in rel.terms.items() if e != lead}
        terms = dict(poly.terms)
        while True:
            high = [e for e in terms if e[k] >= bound]
            if not high:
                break
            for e in high:
                c = terms.pop(e, 0)
                if not c:
                    continue
                base = e[:k] + (e[k] - bound,) + e[k + 1:]
                for te, tc in tail.items():
                    ne = tuple(a + b for a, b in zip(base, te))
                    v = terms.get(ne, 0) + c * tc
                    if v:
                        terms[ne] = v
                    else:
                        terms.pop(ne, None)
        poly = IntPoly(nv, terms)
    return poly


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CheckResult, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.ok]

    def __str__(self):
        return "\n".join(f"[{'ok' if c.ok else 'FAIL'}] {c.name}: {c.detail}" for c in self.checks)

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in self.checks]}


def verify_presentation(pres: Presentation, samples: int = 50, seed: int = 0) -> VerificationReport:
    """Check (a) phi(g_i) = 0, (b) leading terms, (c) |B| = nd,
    (d) products of sampled basis monomials reduce into span(B) compatibly
    with phi, (e) every class [M(u,r)] is the image of a polynomial."""
    params = pres.params
    checks = []

    bad = [r.name for r in pres.relations if not phi(params, r.poly).is_zero()]
    checks.append(CheckResult("phi(g_i) = 0", not bad, f"nonzero: {', '.join(bad)}" if bad else f"{len(pres.relations)} relations"))

    expected = expected_leading_exponents(params)
    lead_bad = []
    for r, e in zip(pres.relations, expected):
        lt = r.poly.leading_term() if not r.poly.is_zero() else (None, 0)
        if lt != (e, 1):
            lead_bad.append(f"{r.name}: got {r.poly.monomial_str(lt[0]) if lt[0] else '0'}, want {r.poly.monomial_str(e)}")
    if len(pres.relations) != len(expected):
        lead_bad.append(f"{len(pres.relations)} relations, want {len(expected)}")
    checks.append(CheckResult("leading terms", not lead_bad, "; ".join(lead_bad) or "y^n, z^p, w_l^p"))

    basis = monomial_basis(pres)
    nd = params.num_indecomposables
    checks.append(CheckResult("|B| = nd", len(basis) == nd, f"|B|={len(basis)}, nd={nd}"))

    rng = random.Random(seed)
    closure_bad = ""
    if not lead_bad:
        bset = set(basis)
        for _ in range(samples):
            b1, b2 = rng.choice(basis), rng.choice(basis)
            m1, m2 = IntPoly(pres.nvars, {b1: 1}), IntPoly(pres.nvars, {b2: 1})
            red = reduce(m1 * m2, pres)
            if not set(red.terms) <= bset:
                closure_bad = f"{m1}*{m2} reduces outside B"
                break
            if phi(params, red) != phi(params, m1) * phi(params, m2):
                closure_bad = f"phi({m1}*{m2}) differs after reduction"
                break
    else:
        closure_bad = "skipped: leading terms wrong"
    checks.append(CheckResult("product closure", not closure_bad, closure_bad or f"{samples} sampled products"))

    surj_bad = ""
    for u in range(1, params.d + 1):
        for r in range(params.n):
            if phi(params, express_in_generators(params, Uniserial(u, r))) != GreenElement.of(params, u, r):
                surj_bad = f"M({u},{r}) has no verified preimage"
                break
        if surj_bad:
            break
    checks.append(CheckResult("surjectivity", not surj_bad, surj_bad or f"all {nd} classes hit"))
    return VerificationReport(tuple(checks))
