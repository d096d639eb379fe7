import cmath
import math

import pytest

import planefn


def unit_square():
    return planefn.PlaneSet.region([0, 1, 1 + 1j, 1j])


def test_gallery_round_trip():
    assert "bad-arc" in planefn.gallery_names()
    s = planefn.gallery("dented-square", 6, r="sqrt", s="4^-n")
    again = planefn.load_set(s.to_json())
    assert again.to_json() == s.to_json()
    assert len(s.witnesses) == 6
    assert s.focus == 0
    assert "<svg" in s.to_svg()


def test_geodesic_on_square():
    sq = unit_square()
    g = planefn.geodesic(sq, 0, 1 + 1j)
    assert g["length"] == pytest.approx(math.sqrt(2), rel=1e-15)
    assert planefn.geodesic_length(sq, 0.25, 0.75 + 0.5j) == pytest.approx(abs(0.5 + 0.5j))
    with pytest.raises(planefn.DomainError):
        planefn.geodesic_length(sq, 0, 2 + 2j)


def test_unreachable_point():
    s = planefn.load_set({"arcs": [[[0, 0], [1, 0]]], "isolated": [[3, 0]]})
    with pytest.raises(planefn.UnreachableError):
        planefn.geodesic_length(s, 0.5, 3)


def test_u_shape_against_raster():
    u = planefn.PlaneSet.region([0, 3, 3 + 3j, 2 + 3j, 2 + 1j, 1 + 1j, 1 + 3j, 3j])
    d = planefn.geodesic_length(u, 0.5 + 2.5j, 2.5 + 2.5j)
    assert d == pytest.approx(2 * abs(0.5 + 2.5j - (1 + 1j)) + 1, rel=1e-12)
    o = planefn.raster_geodesic(u, 0.5 + 2.5j, 2.5 + 2.5j, 1 / 256)
    assert abs(d - o) / o < 0.01


def test_ftc_and_branch_cut():
    z = planefn.FunctionExpr.z()
    f = planefn.FunctionExpr.polynomial([1, 2j, 0, 3])
    path = planefn.PolyPath([0, 1 + 1j, -1 + 0.5j])
    rep = planefn.ftc_check(f, f.derivative(), path)
    assert rep["pass"]
    assert planefn.path_integral(z, planefn.PolyPath([0, 1])) == pytest.approx(0.5)
    fi = planefn.FunctionExpr.ppow(z, 1j)
    assert fi(1j) == pytest.approx(cmath.exp(1j * cmath.log(1j)))
    with pytest.raises(planefn.DomainError):
        planefn.path_integral(fi, planefn.PolyPath([-1 + 1j, -1 - 1j]))


def test_cantor_values():
    assert planefn.cantor_function(1 / 3) == pytest.approx(0.5)
    assert planefn.cantor_function(0.25) == pytest.approx(1 / 3)


def test_zpow_bound_below_direct_quotient():
    z, w = -1 + 0.01j, -1 - 0.01j
    assert 0 < planefn.zpow_bound(z, w) <= planefn.zpow_direct_quotient(z, w)
    with pytest.raises(planefn.PreconditionError):
        planefn.zpow_bound(1 + 1j, -1 - 1j)


def test_completeness_reports():
    rsa = planefn.gallery("rsa-disc", 100)
    assert planefn.completeness_report(rsa, [1])["verdict"] == "incomplete-certified"
    assert planefn.completeness_report(unit_square(), [0])["verdict"] == "no-divergence-found"


def test_suite_runs():
    assert "thm32" in planefn.suite_names()
    res = planefn.run_suite("thm32")
    assert res["pass"]
    assert all(row["pass"] for row in res["rows"])
    with pytest.raises(planefn.ParameterError):
        planefn.run_suite("nope")
