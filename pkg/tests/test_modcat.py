import random
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nakayama import exactlinalg as la
from nakayama.hopfalgebra import AlgebraParams
from nakayama.modcat import (
    QuiverRep,
    Uniserial,
    decompose,
    direct_sum,
    format_classes,
    is_morphism,
    make_uniserial,
    rank_function,
    rank_function_of_classes,
    tensor,
    zero_rep,
)


def _socle_dims(x):
    """dim of the kernel of the outgoing arrow at each vertex."""
    p = x.params.p
    return [la.kernel_basis(x.arrows[v], p).shape[1] for v in range(x.params.n)]


def _top_dims(x):
    n, p = x.params.n, x.params.p
    return [x.dims[v] - la.rank(x.arrows[(v - 1) % n], p) for v in range(n)]


def _class_socles(params, classes):
    out = [0] * params.n
    for c, k in classes.items():
        out[(c.top + c.length - 1) % params.n] += k
    return out


def _class_tops(params, classes):
    out = [0] * params.n
    for c, k in classes.items():
        out[c.top % params.n] += k
    return out


def _scramble(x, rng):
    """Same module in a random per-vertex basis (lifts dropped)."""
    n, p = x.params.n, x.params.p
    gs = []
    for v in range(n):
        while True:
            g = rng.integers(0, p, size=(x.dims[v], x.dims[v]))
            if la.rank(g, p) == x.dims[v]:
                break
        gs.append(g)
    arrows = [la.matmul(la.matmul(gs[(v + 1) % n], x.arrows[v], p), la.inverse(gs[v], p), p) for v in range(n)]
    return QuiverRep(x.params, x.dims, tuple(arrows))


def test_uniserial_shape():
    params = AlgebraParams(4, 2, 2)
    m = make_uniserial(params, 3, 3)
    assert m.dims == (1, 1, 0, 1)
    assert decompose(m) == Counter({Uniserial(3, 3): 1})
    assert m.lifts == ((4,), (5,), (), (3,))
    with pytest.raises(ValueError):
        make_uniserial(params, 5, 0)


def test_bad_reps_rejected():
    params = AlgebraParams(2, 2, 1)
    with pytest.raises(ValueError):
        QuiverRep(params, (1, 1), (la.zeros(2, 1), la.zeros(1, 1)))
    m = make_uniserial(params, 2, 0)
    with pytest.raises(ValueError):
        QuiverRep(params, m.dims, m.arrows, ((1,), (0,)))


def test_nilpotency_check():
    params = AlgebraParams(2, 2, 1)
    x = QuiverRep(params, (1, 1), (np.ones((1, 1)), np.ones((1, 1))))
    with pytest.raises(ValueError, match="nilpotency"):
        rank_function(x)


@pytest.mark.parametrize("n,p,m", [(4, 2, 2), (9, 3, 2), (5, 5, 1)])
def test_tensor_dimension_and_oracles(n, p, m):
    params = AlgebraParams(n, p, m)
    d = params.d
    for i in range(1, d + 1):
        for j in range(n):
            for i2 in range(1, d + 1):
                x = tensor(make_uniserial(params, i, j), make_uniserial(params, i2, 0))
                assert x.dim == i * i2
                classes = decompose(x)
                assert sum(c.length * k for c, k in classes.items()) == i * i2
                assert _socle_dims(x) == _class_socles(params, classes)
                assert _top_dims(x) == _class_tops(params, classes)


def test_simple_rotates_top():
    # tensoring with a simple rotates the top
    params = AlgebraParams(6, 3, 1)
    for i in range(1, 4):
        for j in range(6):
            for k in range(6):
                got = decompose(tensor(make_uniserial(params, i, j), make_uniserial(params, 1, k)))
                assert got == Counter({Uniserial(i, (j + k) % 6): 1})


def test_rank_function_round_trip():
    params = AlgebraParams(6, 3, 1)
    rng = random.Random(5)
    for _ in range(50):
        classes = Counter(Uniserial(rng.randint(1, 3), rng.randrange(6)) for _ in range(rng.randint(1, 5)))
        x = zero_rep(params)
        for c, k in classes.items():
            for _ in range(k):
                x = direct_sum(x, make_uniserial(params, *c))
        r = rank_function(x)
        assert np.array_equal(r, rank_function_of_classes(params, classes))
        assert decompose(x) == classes


def test_scrambled_basis():
    params = AlgebraParams(5, 2, 2)
    rng = np.random.default_rng(11)
    x = direct_sum(make_uniserial(params, 4, 1), direct_sum(make_uniserial(params, 2, 1), make_uniserial(params, 3, 4)))
    y = _scramble(x, rng)
    assert decompose(y) == decompose(x)


def test_is_morphism():
    params = AlgebraParams(3, 3, 1)
    x, y = make_uniserial(params, 2, 1), make_uniserial(params, 3, 0)
    # inclusion of M(2,1) as the radical of M(3,0)
    f = [la.zeros(y.dims[v], x.dims[v]) for v in range(3)]
    f[1][0, 0] = 1
    f[2][0, 0] = 1
    assert is_morphism(f, x, y)
    f[2][0, 0] = 2
    assert not is_morphism(f, x, y)


def test_format_classes():
    c = Counter({Uniserial(1, 1): 2, Uniserial(3, 0): 1})
    assert format_classes(c) == "M(3,0) + 2*M(1,1)"
    assert format_classes(Counter()) == "0"


classes_st = st.lists(st.tuples(st.integers(1, 4), st.integers(0, 4)), min_size=1, max_size=4)


@settings(max_examples=60, deadline=None)
@given(classes_st, classes_st)
def test_tensor_distributes_over_sums(a, b):
    params = AlgebraParams(5, 2, 2)

    def build(cs):
        x = zero_rep(params)
        for i, j in cs:
            x = direct_sum(x, make_uniserial(params, i, j))
        return x

    x, y = build(a), build(b)
    whole = decompose(tensor(x, y))
    parts = Counter()
    for i, j in a:
        for i2, j2 in b:
            parts += decompose(tensor(make_uniserial(params, i, j), make_uniserial(params, i2, j2)))
    assert whole == parts
    assert decompose(tensor(y, x)) == whole
