"""Series arithmetic, circle functions, and the Schwarzian derivative."""

import numpy as np
import pytest

from weldkdv.errors import SingularDerivative
from weldkdv.series import CircleFunction, Series, schwarzian, schwarzian_at


def test_series_mul_and_reciprocal():
    f = Series([1.0, 2.0, 3.0, 4.0], 0)
    g = f * f.reciprocal()
    assert abs(g.coeff(0) - 1.0) < 1e-14
    for j in range(1, 4):
        assert abs(g.coeff(j)) < 1e-13


def test_series_laurent_structure():
    f = Series([2.0, 0.0, 1.0], -1)  # 2/z + z
    assert f.coeff(-1) == 2.0
    assert f.coeff(1) == 1.0
    d = f.differentiate()
    assert abs(d.coeff(-2) + 2.0) < 1e-15
    assert abs(d.coeff(0) - 1.0) < 1e-15
    val = complex(f(2.0))
    assert abs(val - (1.0 + 2.0)) < 1e-14


def test_schwarzian_of_identity_is_zero():
    s = schwarzian(Series([0.0, 1.0], 0), order=8)
    assert np.max(np.abs(s.coeffs)) < 1e-14


def test_schwarzian_of_moebius_is_zero():
    # (az + b)/(cz + d) expanded as a power series about 0
    a, b, c, d = 2.0 + 1.0j, 0.3, -0.2 + 0.1j, 1.0
    z = Series(np.concatenate(([0.0, 1.0], np.zeros(18))), 0)
    f = z.compose_moebius(a, b, c, d)
    s = schwarzian(f, order=10)
    assert np.max(np.abs(s.coeffs)) < 1e-10


def test_schwarzian_of_square():
    # f = z^2: direct differentiation gives -3/(2 z^2)
    s = schwarzian(Series([0.0, 0.0, 1.0], 0), order=8)
    for z0 in [2.0, 2.0j, 1.5 - 1.0j]:
        ref = -1.5 / z0 ** 2
        assert abs(complex(s(z0)) - ref) < 1e-12


def test_schwarzian_singular_derivative():
    with pytest.raises(SingularDerivative):
        schwarzian(Series([5.0], 0), order=4)  # constant: f' = 0


def test_schwarzian_moebius_invariance_random_polynomial():
    rng = np.random.default_rng(11)
    coeffs = np.concatenate(([0.1, 1.0], 0.05 * rng.standard_normal(4)))
    f = Series(np.concatenate((coeffs, np.zeros(14))), 0)
    s_f = schwarzian(f, order=8)
    t_f = f.compose_moebius(1.3, 0.2 + 0.1j, 0.05, 0.9)
    s_tf = schwarzian(t_f, order=8)
    diff = s_f - s_tf
    assert np.max(np.abs(diff.coeffs)) < 1e-9


def test_schwarzian_chain_rule_on_samples():
    # S(phi o psi) = (S(phi) o psi) psi'^2 + S(psi) at sample points
    rng = np.random.default_rng(5)
    phi = np.concatenate(([0.0, 1.0], 0.02 * rng.standard_normal(3)))
    psi = np.concatenate(([0.0, 1.0], 0.03 * rng.standard_normal(3)))

    def pval(c, z):
        return sum(ci * z ** i for i, ci in enumerate(c))

    def pder(c, z, k=1):
        c2 = np.array(c)
        for _ in range(k):
            c2 = c2[1:] * np.arange(1, c2.size)
        return pval(c2, z)

    def s_at(c, z):
        f1, f2, f3 = pder(c, z, 1), pder(c, z, 2), pder(c, z, 3)
        return f3 / f1 - 1.5 * (f2 / f1) ** 2

    def comp_s_at(z):
        return s_at(phi, pval(psi, z)) * pder(psi, z) ** 2 + s_at(psi, z)

    for z0 in [0.1, 0.2 - 0.1j, -0.15 + 0.05j]:
        s_num = schwarzian_at(lambda z: pval(phi, pval(psi, z)), z0, radius=0.05)
        assert abs(s_num - comp_s_at(z0)) < 1e-8


def test_circle_function_parseval():
    rng = np.random.default_rng(3)
    c = rng.standard_normal(9) + 1j * rng.standard_normal(9)
    f = CircleFunction(c)
    x = np.linspace(0, 2 * np.pi, 4096, endpoint=False)
    vals = f(x)
    quad = np.sqrt(np.mean(np.abs(vals) ** 2))
    assert abs(quad - f.l2_norm()) < 1e-12


def test_circle_function_membership_and_real():
    f = CircleFunction.from_dict({0: 1.0, 1: 2.0, 3: -1.0j}, 4)
    assert f.in_h_plus()
    assert not f.in_h_minus()
    g = CircleFunction.from_dict({-2: 0.5}, 3)
    assert g.in_h_minus()
    h = CircleFunction.from_dict({1: 1.0 + 1.0j, -1: 1.0 - 1.0j, 0: 2.0}, 2)
    assert h.is_real()


def test_circle_function_product_and_derivative():
    f = CircleFunction.from_dict({1: 1.0}, 2)
    g = CircleFunction.from_dict({2: 3.0}, 3)
    p = f.product(g)
    assert abs(p.coeff(3) - 3.0) < 1e-15
    d = f.derivative()
    assert abs(d.coeff(1) - 1j) < 1e-15
    zd = g.z_derivative()
    assert abs(zd.coeff(1) - 6.0) < 1e-15


def test_circle_function_samples_roundtrip():
    rng = np.random.default_rng(9)
    c = rng.standard_normal(7) + 1j * rng.standard_normal(7)
    f = CircleFunction(c)
    g = CircleFunction.from_samples(f.sample(32), n_modes=3)
    assert np.max(np.abs(f.coeffs - g.coeffs)) < 1e-12


def test_circle_function_json_roundtrip():
    f = CircleFunction.from_dict({-1: 1.0j, 2: 0.5}, 2)
    g = CircleFunction.from_json_dict(f.to_json_dict())
    assert np.max(np.abs(f.coeffs - g.coeffs)) < 1e-15
