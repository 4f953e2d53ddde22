"""Bounded complexes over KZ_n/J^2 and their homotopy-category decomposition.

Chain convention: d_k maps degree k to degree k-1, and the shift X[s] has
X[s]_k = X_{k-s} with differentials multiplied by (-1)^s.

Every module built here carries integer lifts (vertices of the universal
cover).  The string complex P(i,j) has P_a in degree a with lift a for
j <= a <= i; its differentials send the top of P_{a+1} onto the socle of P_a.
Lifts make homotopy-category bookkeeping unambiguous: a summand P with top
lift L sitting in degree k lies on the diagonal c = k - L, and P(i,j)[c] is
exactly the chain of such summands with lifts j..i on diagonal c.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import exactlinalg as la
from .hopfalgebra import AlgebraParams
from .modcat import (
    QuiverRep,
    Uniserial,
    decompose,
    direct_sum,
    is_morphism,
    make_uniserial,
    tensor,
    tensor_maps,
    zero_rep,
)

__all__ = [
    "StringClass",
    "BoundedComplex",
    "DerivedDecomposition",
    "zero_maps",
    "identity_maps",
    "stalk",
    "string_complex",
    "shift",
    "direct_sum_complex",
    "mapping_cone",
    "tensor_total",
    "homology",
    "decompose_complex",
    "reassemble",
    "string_tensor",
    "homology_table",
    "predicted_cases",
    "classify",
    "ScanRecord",
    "conjecture_scan",
]


class StringClass(NamedTuple):
    """P(i, j)[shift]: P_a in degree a + shift for j <= a <= i."""

    i: int
    j: int
    shift: int

    def __str__(self):
        return f"P({self.i},{self.j})[{self.shift}]"

    @property
    def length(self) -> int:
        return self.i - self.j + 1


def zero_maps(x: QuiverRep, y: QuiverRep) -> tuple[np.ndarray, ...]:
    return tuple(la.zeros(y.dims[v], x.dims[v]) for v in range(x.params.n))


def identity_maps(x: QuiverRep) -> tuple[np.ndarray, ...]:
    return tuple(la.identity(k) for k in x.dims)


@dataclass(frozen=True, eq=False)
class BoundedComplex:
    """Terms in degrees lo .. lo+len(terms)-1; ``diffs[k]`` is the map from
    degree lo+k+1 to degree lo+k, as per-vertex matrices."""

    params: AlgebraParams
    lo: int
    terms: tuple[QuiverRep, ...]
    diffs: tuple[tuple[np.ndarray, ...], ...]

    def __post_init__(self):
        p = self.params.p
        if len(self.diffs) != max(len(self.terms) - 1, 0):
            raise ValueError("need one differential between consecutive terms")
        fixed = []
        for k, d in enumerate(self.diffs):
            src, tgt = self.terms[k + 1], self.terms[k]
            mats = []
            for v, m in enumerate(d):
                m = np.asarray(m, dtype=np.int64) % p
                if m.shape != (tgt.dims[v], src.dims[v]):
                    raise ValueError(f"differential from degree {self.lo + k + 1} has bad shape at vertex {v}")
                m.setflags(write=False)
                mats.append(m)
            fixed.append(tuple(mats))
        object.__setattr__(self, "diffs", tuple(fixed))

    @property
    def hi(self) -> int:
        return self.lo + len(self.terms) - 1

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def term(self, k: int) -> QuiverRep:
        if self.lo <= k <= self.hi:
            return self.terms[k - self.lo]
        return zero_rep(self.params)

    def diff(self, k: int) -> tuple[np.ndarray, ...]:
        """d_k : term(k) -> term(k-1)."""
        if self.lo < k <= self.hi:
            return self.diffs[k - self.lo - 1]
        return zero_maps(self.term(k), self.term(k - 1))

    def is_valid(self) -> bool:
        """d o d = 0 and every differential is a module map."""
        p, n = self.params.p, self.params.n
        for k in self.degrees():
            if not is_morphism(self.diff(k), self.term(k), self.term(k - 1)):
                return False
            for v in range(n):
                if np.any(la.matmul(self.diff(k - 1)[v], self.diff(k)[v], p)):
                    return False
        return True

    def projective_count(self) -> int:
        return sum(t.dim for t in self.terms) // self.params.d

    def __repr__(self):
        return f"BoundedComplex(degrees {self.lo}..{self.hi}, dims={[t.dim for t in self.terms]})"


def _require_d2(params: AlgebraParams):
    if params.d != 2:
        raise ValueError(f"derived computations need d = 2, got d = {params.d}")


def _lift_identification(x: QuiverRep, y: QuiverRep) -> tuple[np.ndarray, ...]:
    """Per-vertex 0/1 matrices sending each basis vector to the basis vector
    of y with the same lift."""
    maps = []
    for v in range(x.params.n):
        m = la.zeros(y.dims[v], x.dims[v])
        for c, lc in enumerate(x.lifts[v]):
            for r, lr in enumerate(y.lifts[v]):
                if lr == lc:
                    m[r, c] = 1
        maps.append(m)
    return tuple(maps)


def stalk(x: QuiverRep, degree: int = 0) -> BoundedComplex:
    return BoundedComplex(x.params, degree, (x,), ())


def string_complex(params: AlgebraParams, i: int, j: int, shift_by: int = 0) -> BoundedComplex:
    """P(i, j)[shift]: projectives P_a (lift a) in degrees j..i, then shifted."""
    _require_d2(params)
    if j > i:
        raise ValueError(f"string complex needs j <= i, got ({i}, {j})")
    n = params.n
    terms = tuple(make_uniserial(params, 2, a % n, lift=a) for a in range(j, i + 1))
    diffs = tuple(_lift_identification(terms[k + 1], terms[k]) for k in range(len(terms) - 1))
    return shift(BoundedComplex(params, j, terms, diffs), shift_by)


def shift(c: BoundedComplex, s: int) -> BoundedComplex:
    if s == 0:
        return c
    sign = -1 if s % 2 else 1
    diffs = tuple(tuple(sign * m for m in d) for d in c.diffs)
    return BoundedComplex(c.params, c.lo + s, c.terms, diffs)


def _block_maps(pieces_src, pieces_tgt, n, blocks) -> tuple[np.ndarray, ...]:
    """Assemble per-vertex matrices between direct sums from a dict
    {(src_index, tgt_index): per-vertex maps}."""
    src_off = [np.cumsum([0] + [r.dims[v] for r in pieces_src]) for v in range(n)]
    tgt_off = [np.cumsum([0] + [r.dims[v] for r in pieces_tgt]) for v in range(n)]
    out = []
    for v in range(n):
        m = la.zeros(int(tgt_off[v][-1]), int(src_off[v][-1]))
        for (s, t), maps in blocks.items():
            block = maps[v]
            if block.size:
                m[tgt_off[v][t]:tgt_off[v][t + 1], src_off[v][s]:src_off[v][s + 1]] += block
        out.append(m)
    return tuple(out)


def _sum_reps(params: AlgebraParams, pieces: list[QuiverRep]) -> QuiverRep:
    out = zero_rep(params)
    for r in pieces:
        out = direct_sum(out, r)
    return out


def _from_degree_map(params, degree_terms: dict[int, QuiverRep], degree_diffs) -> BoundedComplex:
    if not degree_terms:
        return BoundedComplex(params, 0, (), ())
    lo, hi = min(degree_terms), max(degree_terms)
    terms = tuple(degree_terms.get(k, zero_rep(params)) for k in range(lo, hi + 1))
    diffs = []
    for k in range(lo + 1, hi + 1):
        diffs.append(degree_diffs.get(k, zero_maps(terms[k - lo], terms[k - lo - 1])))
    return BoundedComplex(params, lo, terms, tuple(diffs))


def direct_sum_complex(a: BoundedComplex, b: BoundedComplex) -> BoundedComplex:
    if a.params != b.params:
        raise ValueError("parameter mismatch")
    params, n = a.params, a.params.n
    degs = sorted(set(a.degrees()) | set(b.degrees()))
    if not a.terms:
        return b
    if not b.terms:
        return a
    terms = {k: direct_sum(a.term(k), b.term(k)) for k in degs}
    diffs = {}
    for k in degs:
        if k - 1 in terms:
            diffs[k] = _block_maps(
                [a.term(k), b.term(k)], [a.term(k - 1), b.term(k - 1)], n, {(0, 0): a.diff(k), (1, 1): b.diff(k)}
            )
    return _from_degree_map(params, terms, diffs)


def mapping_cone(f, x: BoundedComplex, y: BoundedComplex) -> BoundedComplex:
    """Cone(f)_k = X_{k-1} (+) Y_k with d = [[-d_X, 0], [f, d_Y]]; ``f`` maps
    degree k to per-vertex matrices X_k -> Y_k."""
    params, n, p = x.params, x.params.n, x.params.p
    degs = sorted(set(range(x.lo + 1, x.hi + 2)) | set(y.degrees()))
    terms = {k: direct_sum(x.term(k - 1), y.term(k)) for k in degs}
    diffs = {}
    for k in degs:
        if k - 1 not in terms:
            continue
        blocks = {
            (0, 0): tuple((-m) % p for m in x.diff(k - 1)),
            (1, 1): y.diff(k),
        }
        fk = f.get(k - 1) if isinstance(f, dict) else None
        if fk is not None:
            blocks[(0, 1)] = fk
        diffs[k] = _block_maps([x.term(k - 1), y.term(k)], [x.term(k - 2), y.term(k - 1)], n, blocks)
    return _from_degree_map(params, terms, diffs)


def tensor_total(x: BoundedComplex, y: BoundedComplex) -> BoundedComplex:
    """Tot_k = (+)_i X_i (x) Y_{k-i}, blocks by ascending i; differential
    d_X (x) 1 + (-1)^i 1 (x) d_Y."""
    if x.params != y.params:
        raise ValueError("parameter mismatch")
    params, n, p = x.params, x.params.n, x.params.p
    if not x.terms or not y.terms:
        return BoundedComplex(params, 0, (), ())
    pieces: dict[int, list[int]] = {}
    for k in range(x.lo + y.lo, x.hi + y.hi + 1):
        pieces[k] = [i for i in x.degrees() if y.lo <= k - i <= y.hi]
    reps = {k: [tensor(x.term(i), y.term(k - i)) for i in idx] for k, idx in pieces.items()}
    terms = {k: _sum_reps(params, reps[k]) for k in pieces}
    diffs = {}
    for k in pieces:
        if k - 1 not in pieces:
            continue
        tgt_index = {i: t for t, i in enumerate(pieces[k - 1])}
        blocks = {}
        for s, i in enumerate(pieces[k]):
            xi, yj = x.term(i), y.term(k - i)
            if i - 1 in tgt_index:
                blocks[(s, tgt_index[i - 1])] = tensor_maps(
                    x.diff(i), xi, x.term(i - 1), identity_maps(yj), yj, yj
                )
            if i in tgt_index:
                sign = -1 if i % 2 else 1
                maps = tensor_maps(identity_maps(xi), xi, xi, y.diff(k - i), yj, y.term(k - i - 1))
                blocks[(s, tgt_index[i])] = tuple((sign * m) % p for m in maps)
        diffs[k] = _block_maps(reps[k], reps[k - 1], n, blocks)
    return _from_degree_map(params, terms, diffs)


def homology(c: BoundedComplex) -> dict[int, Counter]:
    """Degree -> decomposition of H_k = ker d_k / im d_{k+1} (zero degrees omitted)."""
    params, n, p = c.params, c.params.n, c.params.p
    out = {}
    for k in c.degrees():
        t = c.term(k)
        dk, dk1 = c.diff(k), c.diff(k + 1)
        bases, comps = [], []
        for v in range(n):
            z = la.kernel_basis(dk[v], p)
            b = la.image_basis(dk1[v], p)
            comp = la.extend_basis(b, z, p)
            bases.append(np.hstack([b, comp]))
            comps.append((b.shape[1], comp))
        dims = tuple(comp.shape[1] for _, comp in comps)
        if not any(dims):
            continue
        arrows = []
        for v in range(n):
            w = (v + 1) % n
            nb, comp = comps[v]
            img = la.matmul(t.arrows[v], comp, p)
            coords = la.solve(bases[w], img, p)
            arrows.append(coords[comps[w][0]:, :])
        h = QuiverRep(params, dims, tuple(arrows))
        out[k] = decompose(h)
    return out


@dataclass
class DerivedDecomposition:
    summands: Counter = field(default_factory=Counter)
    contractibles_removed: int = 0

    def sorted_summands(self) -> list[StringClass]:
        out = []
        for s in sorted(self.summands, key=lambda s: (s.j + s.shift, s.i + s.shift, s.shift)):
            out.extend([s] * self.summands[s])
        return out

    def __str__(self):
        parts = [str(s) for s in self.sorted_summands()]
        return " + ".join(parts) if parts else "0"


class _Summand(NamedTuple):
    degree: int
    lift: int


def _projective_tops(t: QuiverRep, degree: int):
    """Tops of a projective term: a list of (lift, vertex, vector) and the
    new basis (tops and socles) per vertex."""
    params, n, p = t.params, t.params.n, t.params.p
    tops = []
    for v in range(n):
        u = (v - 1) % n
        for lift in sorted(set(t.lifts[v])):
            rows = [r for r, l in enumerate(t.lifts[v]) if l == lift]
            cols = [c for c, l in enumerate(t.lifts[u]) if l == lift - 1]
            sub = la.zeros(t.dims[v], len(rows))
            sub[rows, range(len(rows))] = 1
            img = la.image_basis(t.arrows[u][:, cols], p) if cols else la.zeros(t.dims[v], 0)
            for vec in la.extend_basis(img, sub, p).T:
                tops.append((lift, v, vec.copy()))
    count = len(tops)
    if 2 * count != t.dim:
        raise ValueError(f"non-projective term in degree {degree}")
    basis_cols: list[list[np.ndarray]] = [[] for _ in range(n)]
    index = {}  # (vertex, column) -> (summand number, is_socle)
    for num, (lift, v, vec) in enumerate(tops):
        index[(v, len(basis_cols[v]))] = (num, False)
        basis_cols[v].append(vec)
    for num, (lift, v, vec) in enumerate(tops):
        w = (v + 1) % n
        soc = la.matmul(t.arrows[v], vec.reshape(-1, 1), p)[:, 0]
        index[(w, len(basis_cols[w]))] = (num, True)
        basis_cols[w].append(soc)
    bases = []
    for v in range(n):
        b = np.stack(basis_cols[v], axis=1) if basis_cols[v] else la.zeros(t.dims[v], 0)
        if la.rank(b, p) != t.dims[v]:
            raise ValueError(f"non-projective term in degree {degree}")
        bases.append(b)
    return tops, bases, index


def _scalar_form(c: BoundedComplex):
    """Summands per degree and scalar differential matrices D_k[y, x]."""
    p, n = c.params.p, c.params.n
    summ: dict[int, list[_Summand]] = {}
    data = {}
    for k in c.degrees():
        tops, bases, index = _projective_tops(c.term(k), k)
        summ[k] = [_Summand(k, lift) for lift, _, _ in tops]
        data[k] = (tops, bases, index)
    mats = {}
    for k in c.degrees():
        if k - 1 not in data:
            continue
        tops, _, _ = data[k]
        _, tbases, tindex = data[k - 1]
        tgt_tops = data[k - 1][0]
        m = la.zeros(len(tgt_tops), len(tops))
        d = c.diff(k)
        for x, (lift, v, vec) in enumerate(tops):
            image = la.matmul(d[v], vec.reshape(-1, 1), p)
            coords = la.solve(tbases[v], image, p)[:, 0]
            for col, val in enumerate(coords):
                if not val:
                    continue
                y, socle = tindex[(v, col)]
                ylift = tgt_tops[y][0]
                # top of P_y: identity type; socle of P_y: radical type
                if (not socle and ylift != lift) or (socle and ylift != lift - 1):
                    raise ArithmeticError("differential does not preserve lifts")
                m[y, x] = val
        mats[k] = m
    return summ, mats


def _mask(mat: np.ndarray, src: list[_Summand], tgt: list[_Summand]) -> np.ndarray:
    out = mat.copy()
    for y, ty in enumerate(tgt):
        for x, sx in enumerate(src):
            if sx.lift - ty.lift not in (0, 1):
                out[y, x] = 0
    return out


def decompose_complex(c: BoundedComplex) -> DerivedDecomposition:
    """Split off contractible pairs P -> P, then read the remaining radical
    differential as interval modules along each diagonal."""
    _require_d2(c.params)
    p = c.params.p
    summ, mats = _scalar_form(c)
    removed = 0
    for k in sorted(mats):
        while True:
            m, src, tgt = mats[k], summ[k], summ[k - 1]
            pivot = next(
                ((y, x) for y in range(m.shape[0]) for x in range(m.shape[1])
                 if m[y, x] and src[x].lift == tgt[y].lift),
                None,
            )
            if pivot is None:
                break
            y, x = pivot
            inv = pow(int(m[y, x]), -1, p)
            update = np.outer(m[:, x], m[y, :]) * inv
            m = _mask((m - update) % p, src, tgt)
            keep_r = [r for r in range(m.shape[0]) if r != y]
            keep_c = [q for q in range(m.shape[1]) if q != x]
            mats[k] = m[np.ix_(keep_r, keep_c)]
            summ[k] = [s for q, s in enumerate(src) if q != x]
            summ[k - 1] = [s for r, s in enumerate(tgt) if r != y]
            if k + 1 in mats:
                mats[k + 1] = np.delete(mats[k + 1], x, axis=0)
            if k - 1 in mats:
                mats[k - 1] = np.delete(mats[k - 1], y, axis=1)
            removed += 1

    out = DerivedDecomposition(Counter(), removed)
    diagonals = sorted({s.degree - s.lift for ss in summ.values() for s in ss})
    for diag in diagonals:
        idx = {k: [q for q, s in enumerate(ss) if s.degree - s.lift == diag] for k, ss in summ.items()}
        degs = sorted(k for k in idx if idx[k])
        if not degs:
            continue

        def block(k):
            return mats[k][np.ix_(idx[k - 1], idx[k])] if k in mats else la.zeros(len(idx.get(k - 1, [])), len(idx[k]))

        def rk(a, b):
            # rank of the composite from degree a down to degree b (a >= b)
            if b > a or a not in idx or b not in idx or not idx[a] or not idx[b]:
                return 0
            comp = la.identity(len(idx[a]))
            for k in range(a, b, -1):
                comp = la.matmul(block(k), comp, p)
            return la.rank(comp, p)

        for a in degs:
            for b in degs:
                if b > a:
                    continue
                mult = rk(a, b) - rk(a + 1, b) - rk(a, b - 1) + rk(a + 1, b - 1)
                if mult < 0:
                    raise ArithmeticError("negative interval multiplicity")
                if mult:
                    out.summands[StringClass(a - diag, b - diag, diag)] += mult
    return out


def reassemble(params: AlgebraParams, dec: DerivedDecomposition) -> BoundedComplex:
    out = BoundedComplex(params, 0, (), ())
    for s in dec.sorted_summands():
        out = direct_sum_complex(out, string_complex(params, s.i, s.j, s.shift))
    return out


def string_tensor(params: AlgebraParams, j2: int, s2: int, j: int, s: int) -> BoundedComplex:
    """P(j'+s'-1, j') (x) P(j+s-1, j)."""
    return tensor_total(string_complex(params, j2 + s2 - 1, j2), string_complex(params, j + s - 1, j))


def homology_table(n: int, j2: int, s2: int, j: int, s: int) -> dict[int, Counter]:
    """Closed-form homology of P(j'+s'-1,j') (x) P(j+s-1,j) for 1 <= s' <= s.

    S_k = M(1,k), P_k = M(2,k).  For s = s' = 1 both projectives sit in
    degree j + j'.
    """
    if not 1 <= s2 <= s:
        raise ValueError("need 1 <= s' <= s")
    big_j = j + j2
    out: dict[int, Counter] = {}

    def put(m, length, top):
        out.setdefault(m, Counter())[Uniserial(length, top % n)] += 1

    if s2 != 1:
        put(big_j + s + s2 - 2, 1, big_j + s + s2)
        put(big_j + s - 1, 1, big_j + s)
        put(big_j + s2 - 1, 1, big_j + s2)
        put(big_j, 1, big_j)
    elif s != 1:
        put(big_j + s - 1, 2, big_j + s)
        put(big_j, 2, big_j)
    else:
        put(big_j, 2, big_j + 1)
        put(big_j, 2, big_j)
    return out


def predicted_cases(j2: int, s2: int, j: int, s: int) -> dict[str, Counter]:
    """Candidate decompositions of P(j'+s'-1,j') (x) P(j+s-1,j), s' <= s."""
    big_j = j + j2
    if s2 == 1:
        return {"s'=1": Counter([StringClass(big_j, big_j, 0), StringClass(big_j + s, big_j + s, -1)])}
    if s2 == s:
        return {"s=s'": Counter([StringClass(big_j + s - 1, big_j, 0), StringClass(big_j + 2 * s - 1, big_j + s, -1)])}
    return {
        "2": Counter([StringClass(big_j + s2 - 1, big_j, 0), StringClass(big_j + s + s2 - 1, big_j + s, -1)]),
        "3": Counter([StringClass(big_j + s - 1, big_j, 0), StringClass(big_j + s + s2 - 1, big_j + s2, -1)]),
        "4": Counter([StringClass(big_j + s + s2 - 1, big_j, 0), StringClass(big_j + s - 1, big_j + s2, -1)]),
    }


def classify(dec: DerivedDecomposition, j2: int, s2: int, j: int, s: int) -> list[str]:
    """Names of the predicted cases equal to the computed decomposition."""
    return [name for name, want in predicted_cases(j2, s2, j, s).items() if +dec.summands == want]


class ScanRecord(NamedTuple):
    n: int
    j: int
    j_prime: int
    s: int
    s_prime: int
    case: str | None
    summands: tuple[tuple[int, int, int], ...]
    homology_ok: bool
    table_ok: bool
    count_ok: bool

    @property
    def stalk_simple(self) -> bool:
        """A summand whose only homology is a simple in one degree with no
        projective terms.  String complexes always have projective terms, so
        this can only fire on a malformed decomposition."""
        return any(i < j for i, j, _ in self.summands)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "j": self.j,
            "j_prime": self.j_prime,
            "s": self.s,
            "s_prime": self.s_prime,
            "case": int(self.case) if self.case and self.case.isdigit() else self.case,
            "summands": [list(t) for t in self.summands],
            "homology_ok": self.homology_ok,
            "table_ok": self.table_ok,
            "count_ok": self.count_ok,
        }


def _scan_one(args) -> ScanRecord:
    n, j2, s2, j, s = args
    params = AlgebraParams(n, 2, 1)
    c = string_tensor(params, j2, s2, j, s)
    dec = decompose_complex(c)
    h = homology(c)
    h_ok = homology(reassemble(params, dec)) == h
    t_ok = h == homology_table(n, j2, s2, j, s)
    cases = classify(dec, j2, s2, j, s)
    case = cases[0] if len(cases) == 1 else None
    summ = tuple((x.i, x.j, x.shift) for x in dec.sorted_summands())
    count = sum(x.length for x in dec.sorted_summands()) + 2 * dec.contractibles_removed
    return ScanRecord(n, j, j2, s, s2, case, summ, h_ok, t_ok, count == c.projective_count())


def conjecture_scan(
    ns, s_prime_range, s_range, workers: int = 1, strict: bool = True
) -> list[ScanRecord]:
    """Decompose P(j'+s'-1,j') (x) P(j+s-1,j) for every n, s' < s in the given
    ranges (s' >= 2) and every j, j' in [0, n).  With ``strict=False`` the
    families s' = 1 and s' = s are included too.  Records are in
    lexicographic order of (n, j, j', s, s')."""
    keys = []
    for n in ns:
        for s2 in s_prime_range:
            for s in s_range:
                ok = 1 < s2 < s if strict else 1 <= s2 <= s
                if ok:
                    keys.extend((n, j, j2, s, s2) for j in range(n) for j2 in range(n))
    tasks = [(n, j2, s2, j, s) for n, j, j2, s, s2 in sorted(keys)]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_scan_one, tasks, chunksize=4))
    return [_scan_one(t) for t in tasks]
