import numpy as np
import pytest

from weldkdv.errors import InverseUndefined, NonMonotone
from weldkdv.series import CircleFunction
from weldkdv.wp import (
    QuadraticDifferential,
    TangentVector,
    identify_cotangent_tangent,
    identify_tangent_cotangent,
    quasisymmetry_constant,
    wp_inner_quadratic,
    wp_norm,
)


def test_wp_norm_of_z_squared():
    # single monomial a_2 = 1: norm sqrt(2 * 3) = sqrt(6)
    f = CircleFunction.from_dict({2: 1.0}, 3)
    assert abs(wp_norm(f) - np.sqrt(6.0)) < 1e-14


def test_wp_norm_basis_orthonormality():
    assert abs(wp_norm(TangentVector.single_mode(2, 1.0)) - 1.0) < 1e-15
    v = TangentVector(np.array([1.0, 1.0]))  # e2 + e3
    assert abs(wp_norm(v) - np.sqrt(2.0)) < 1e-15


def test_identification_weights():
    q2 = identify_tangent_cotangent(TangentVector.single_mode(2, 1.0))
    assert abs(q2.b.coeff(0) - 2.0 * np.sqrt(3.0)) < 1e-12  # sqrt(12)
    q3 = identify_tangent_cotangent(TangentVector.single_mode(3, 1.0, k_max=3))
    assert abs(q3.b.coeff(1) - np.sqrt(48.0)) < 1e-12


def test_identification_roundtrip():
    rng = np.random.default_rng(2)
    t = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    v = TangentVector(t)
    w = identify_cotangent_tangent(identify_tangent_cotangent(v))
    assert np.max(np.abs(w.t - v.t)) < 1e-12


def test_identification_inverse_undefined():
    q = QuadraticDifferential(CircleFunction.from_dict({-1: 1.0}, 2))
    with pytest.raises(InverseUndefined):
        identify_cotangent_tangent(q)


def test_wp_inner_quadratic_monomials():
    # |z^n|^2 -> 1/(2(n+1)(n+2)(n+3))
    one = np.array([1.0])
    z1 = np.array([0.0, 1.0])
    assert abs(wp_inner_quadratic(z1, z1) - 1.0 / 48.0) < 1e-15
    assert abs(wp_inner_quadratic(one, one) - 1.0 / 12.0) < 1e-15
    z2 = np.array([0.0, 0.0, 1.0])
    assert abs(wp_inner_quadratic(z1, z2)) < 1e-15


def test_wp_norm_matches_paired_inner_product():
    # the pairing is unitary: |v|_wp^2 == <A v, A v> with constant exactly 1
    for k in range(2, 9):
        v = TangentVector.single_mode(k, 1.0, k_max=10)
        q = identify_tangent_cotangent(v)
        coeffs = q.b.coeffs[q.b.n_modes :]
        inner = wp_inner_quadratic(coeffs, coeffs).real
        assert abs(wp_norm(v) ** 2 - inner) < 1e-12


def test_quasisymmetry_identity_and_affine():
    assert abs(quasisymmetry_constant(lambda x: x) - 1.0) < 1e-12
    assert abs(quasisymmetry_constant(lambda x: 2.0 * x) - 1.0) < 1e-12


def test_quasisymmetry_sine_perturbation():
    # grid max for h(x) = x + 0.1 sin x; analytic supremum 1.1563 at
    # t* ~ 2.33 (stationary point of (t + 0.1(1-cos t))/(t - 0.1(1-cos t)))
    val = quasisymmetry_constant(lambda x: x + 0.1 * np.sin(x))
    assert 1.0 < val < 1.5
    assert abs(val - 1.15634) < 5e-3


def test_quasisymmetry_nonmonotone_raises():
    with pytest.raises(NonMonotone):
        quasisymmetry_constant(lambda x: x + 2.0 * np.sin(x))
