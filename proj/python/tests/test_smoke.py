import math

import pytest

import bergman_radial as br


def test_area_measure_is_identity():
    eta = br.parse_measure("poly([0, 1])")
    for n in range(0, 20):
        assert br.gamma(eta, n) == pytest.approx(1.0, abs=1e-12)
    assert br.beta_direct(eta, 0.7).real == pytest.approx(1.0, abs=1e-8)


def test_dirac_routes_agree():
    eta = br.RadialMeasure(br.Primitive.dirac(0.5))
    assert br.gamma(eta, 3).real == pytest.approx(8 * 0.5**6, rel=1e-13)
    direct = br.beta_direct(eta, 0.5)
    assert direct.real == pytest.approx(4896 / 3375, rel=1e-12)
    assert br.beta_series(eta, 0.5) == pytest.approx(direct, abs=1e-10)
    assert br.beta_via_averages(eta, 0.5) == pytest.approx(direct, abs=1e-8)


def test_measure_arithmetic_is_linear():
    a = br.parse_measure("jacobi(1, 0)")
    b = br.parse_measure("dirac(0.3)")
    combo = a + (2 - 1j) * b
    assert br.gamma(combo, 5) == pytest.approx(br.gamma(a, 5) + (2 - 1j) * br.gamma(b, 5), abs=1e-14)


def test_parse_error_carries_position():
    with pytest.raises(br.ParseError, match=r"1:7:"):
        br.parse_measure("dirac(1.0)")
    assert isinstance(br.ParseError("x"), ValueError)


def test_domain_errors_map_to_value_error():
    with pytest.raises(ValueError):
        br.kappa(br.parse_measure("poly([1])"), 1.0)


def test_gram_matrix_is_diagonal():
    eta = br.parse_measure("jacobi(2, 1)")
    a = br.gram_matrix(eta, 8)
    assert a.shape == (8, 8)
    for j in range(8):
        for k in range(8):
            expected = br.gamma(eta, j) if j == k else 0.0
            assert abs(a[j, k] - expected) < 1e-12


def test_kernel_helpers():
    m, value = br.m_of_s(0.75)
    assert m == 2 and value == pytest.approx(1701 / 4096, rel=1e-14)
    numeric, closed = br.circle_kernel_integral(0.5, 1024)
    assert numeric == pytest.approx(closed, rel=1e-12)
    assert br.lip_kernel_integral(1) == pytest.approx(16 / 27, rel=1e-14)
    assert br.d_log(0, 1) == pytest.approx(math.log(2))


def test_singular_measure_is_unbounded():
    report = br.carleson_verdict(br.parse_measure("jacobi(-0.5, 0)"))
    assert report["verdict"] == "unbounded"
