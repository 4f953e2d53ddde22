import pytest

from nakayama.greenring import phi
from nakayama.hopfalgebra import AlgebraParams
from nakayama.polynomial import IntPoly, parse_poly
from nakayama.presentation import (
    Presentation,
    Relation,
    build_presentation,
    monomial_basis,
    reduce,
    verify_presentation,
)

PRINTED_G1 = {
    2: "(z-y-1)*z",
    3: "(z-y-1)*(z^2-y)",
    5: "(z-y-1)*(z^4-3*y*z^2+y^2)",
    7: "(z-y-1)*(z^6-5*y*z^4+6*y^2*z^2-y^3)",
}


def test_parse_poly():
    assert str(parse_poly("(w1-y)(w1+y-z-y*z)", 3)) == "w1^2-y*z*w1-z*w1+y^2*z+y*z-y^2"
    assert parse_poly("y^10 - 1", 2) == IntPoly.var(2, 0, 10) - 1
    with pytest.raises(ValueError):
        parse_poly("x+1", 2)


def test_polynomial_arithmetic():
    y, z = IntPoly.gens(2)
    f = (z - y - 1) * z
    assert str(f) == "z^2-y*z-z"
    assert f.leading_term() == ((0, 2), 1)
    assert f.evaluate((2, 3)) == 0
    assert (f - f).is_zero() and f**0 == 1
    assert f.to_json() == {"terms": [{"coeffs": 1, "exps": [0, 2]}, {"coeffs": -1, "exps": [1, 1]}, {"coeffs": -1, "exps": [0, 1]}]}


@pytest.mark.parametrize("p", sorted(PRINTED_G1))
def test_degree_one_presentations(p):
    pres = build_presentation(AlgebraParams(10, p, 1))
    assert str(pres) == f"Z[y,z]/(y^10-1, {PRINTED_G1[p]})"
    assert str(pres.relations[1].poly) == str(parse_poly(PRINTED_G1[p], 2))


@pytest.mark.parametrize("n,p,m", [(10, 2, 2), (9, 3, 2), (8, 2, 3)])
def test_verification_passes(n, p, m):
    pres = build_presentation(AlgebraParams(n, p, m))
    report = verify_presentation(pres, samples=30, seed=2)
    assert report.ok, str(report)
    assert len(monomial_basis(pres)) == n * p**m


def test_reduce():
    pres = build_presentation(AlgebraParams(10, 2, 2))
    for rel in pres.relations:
        assert reduce(rel.poly, pres).is_zero()
    y, z, w = IntPoly.gens(3)
    f = w**3 * z**2 * y**12 + 5
    red = reduce(f, pres)
    assert reduce(red, pres) == red
    assert all(e[0] < 10 and e[1] < 2 and e[2] < 2 for e in red.terms)
    params = pres.params
    assert phi(params, red) == phi(params, f)


def test_fault_injection():
    params = AlgebraParams(10, 2, 1)
    good = build_presentation(params)
    y = IntPoly.var(2, 0)
    bad_g0 = y**11 - 1
    bad = Presentation(params, (Relation("g0", bad_g0),) + good.relations[1:])
    report = verify_presentation(bad)
    assert not report.ok
    names = {c.name for c in report.failures()}
    assert "phi(g_i) = 0" in names
    assert "leading terms" in names


def test_json_shape():
    doc = build_presentation(AlgebraParams(10, 2, 2)).to_json()
    assert doc["vars"] == ["y", "z", "w1"]
    assert [g["name"] for g in doc["generators"]] == ["g0", "g1", "g2"]
    assert all({"coeffs", "exps"} <= set(t) for g in doc["generators"] for t in g["terms"])
