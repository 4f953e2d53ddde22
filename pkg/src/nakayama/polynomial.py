"""Sparse multivariate integer polynomials in y, z, w_1, ..., w_{m-1}.

Exponent vectors are ordered (y, z, w_1, ..., w_{m-1}).  The monomial order
is lexicographic with w_{m-1} > ... > w_1 > z > y, so comparing two
monomials means comparing their reversed exponent vectors.
"""

from __future__ import annotations

from functools import reduce
from typing import Iterable, Mapping

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication,
    parse_expr,
    standard_transformations,
)

__all__ = ["IntPoly", "variable_names", "parse_poly"]


def variable_names(nvars: int) -> tuple[str, ...]:
    return ("y", "z") + tuple(f"w{k}" for k in range(1, nvars - 1))


def _lex_key(exps: tuple[int, ...]) -> tuple[int, ...]:
    return exps[::-1]


class IntPoly:
    """Immutable polynomial; ``terms`` maps exponent tuples to nonzero ints."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], int] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[tuple[int, ...], int] = {}
        for e, c in items:
            e = tuple(int(x) for x in e)
            if len(e) != nvars or min(e, default=0) < 0:
                raise ValueError(f"bad exponent vector {e} for {nvars} variables")
            clean[e] = clean.get(e, 0) + int(c)
        self.nvars = nvars
        self.terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    @classmethod
    def const(cls, nvars: int, c: int) -> IntPoly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, k: int, power: int = 1) -> IntPoly:
        e = [0] * nvars
        e[k] = power
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def gens(cls, nvars: int) -> tuple[IntPoly, ...]:
        return tuple(cls.var(nvars, k) for k in range(nvars))

    def _coerce(self, other) -> IntPoly:
        if isinstance(other, IntPoly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, int):
            return IntPoly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return IntPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return IntPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        return reduce(lambda a, b: a * b, [self] * k, IntPoly.const(self.nvars, 1))

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms in decreasing lex order."""
        return sorted(self.terms.items(), key=lambda t: _lex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[tuple[int, ...], int]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.sorted_terms()[0]

    def degree_in(self, k: int) -> int:
        return max((e[k] for e in self.terms), default=0)

    def evaluate(self, values) -> int:
        total = 0
        for e, c in self.terms.items():
            term = c
            for v, x in zip(values, e):
                term *= v**x
            total += term
        return total

    def monomial_str(self, e: tuple[int, ...]) -> str:
        names = variable_names(self.nvars)
        parts = []
        for name, x in zip(names, e):
            if x == 1:
                parts.append(name)
            elif x > 1:
                parts.append(f"{name}^{x}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for k, (e, c) in enumerate(self.sorted_terms()):
            mono = self.monomial_str(e)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if k == 0:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(f"+{body}" if c > 0 else f"-{body}")
        return "".join(out)

    def __repr__(self):
        return f"IntPoly({self})"

    def to_json(self) -> dict:
        return {
            "terms": [{"coeffs": c, "exps": list(e)} for e, c in self.sorted_terms()],
        }


_TRANSFORMS = standard_transformations + (implicit_multiplication, convert_xor)


def parse_poly(text: str, nvars: int) -> IntPoly:
    """Parse text such as ``(w1-y)(w1+y-z-y*z)`` or ``y^10-1``.

    Products may be written with ``*`` or by juxtaposition of parenthesised
    factors; multi-letter products like ``yz`` must be written ``y*z``.
    """
    names = variable_names(nvars)
    symbols = {name: sympy.Symbol(name) for name in names}
    expr = parse_expr(text.replace("_", ""), local_dict=symbols, transformations=_TRANSFORMS)
    stray = expr.free_symbols - set(symbols.values())
    if stray:
        raise ValueError(f"unknown variables {sorted(map(str, stray))}")
    poly = sympy.Poly(sympy.expand(expr), *[symbols[n] for n in names], domain="ZZ")
    return IntPoly(nvars, {tuple(e): int(c) for e, c in poly.terms()})
