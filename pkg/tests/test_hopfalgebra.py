from math import comb

import pytest

from nakayama.hopfalgebra import (
    AlgebraParams,
    antipode,
    comultiplication_support,
    counit,
    prime_power_exponent,
    validate_hopf,
)


def _brute_valid(n, d, p):
    return d <= n and all(comb(d, i) % p == 0 for i in range(1, d))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_validity_matches_binomial_oracle(p):
    for n in range(1, 30):
        for d in range(2, 30):
            assert bool(validate_hopf(n, d, p)) == _brute_valid(n, d, p), (n, d, p)


def test_validity_is_prime_power():
    for p in (2, 3, 5):
        for d in range(2, 40):
            if validate_hopf(40, d, p):
                assert prime_power_exponent(d, p) is not None


def test_diagnostics():
    bad = validate_hopf(10, 6, 2)
    assert not bad and "C(6," in bad.diagnostic
    assert "d > n" in validate_hopf(10, 11, 11).diagnostic
    with pytest.raises(ValueError):
        validate_hopf(10, 4, 4)


def test_params():
    params = AlgebraParams(10, 2, 3)
    assert params.d == 8 and params.num_indecomposables == 80
    with pytest.raises(ValueError):
        AlgebraParams(10, 11, 1)
    with pytest.raises(ValueError):
        AlgebraParams(10, 2, 0)


def test_coalgebra_structure():
    n = 5
    for h in range(n):
        pairs = comultiplication_support(n, ("v", h))
        assert len(pairs) == n
        assert all((a[1] + b[1]) % n == h for a, b in pairs)
        arrows = comultiplication_support(n, f"alpha_{h}")
        assert len(arrows) == 2 * n
    assert counit(n, "v_0") == 1 and counit(n, "v_3") == 0 and counit(n, "alpha_0") == 0
    assert antipode(n, "v_2") == (1, ("v", 3))
    assert antipode(n, "alpha_1") == (-1, ("alpha", 3))
    # S is an involution up to sign on basis tags
    for h in range(n):
        s1, t1 = antipode(n, ("alpha", h))
        s2, t2 = antipode(n, t1)
        assert s1 * s2 == 1 and t2 == ("alpha", h)
