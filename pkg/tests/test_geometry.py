import numpy as np
import pytest

from weldkdv.errors import NotHermitian, NotOrthonormal, ZeroDirection
from weldkdv.geometry import (
    GrTangent,
    arclength_reparam,
    block_As,
    cartan_potential_hessian,
    cartan_quadratic_coefficient,
    curvature_component,
    geodesic_point,
    gr_inner,
    sectional_curvature,
    tangent_norm_along,
    wedge2_trace,
)


def rank1(n=4, i=0, j=0, v=1.0):
    m = np.zeros((n, n), dtype=complex)
    m[i, j] = v
    return GrTangent(m)


def test_gr_inner_basics():
    a = rank1(4, 0, 1, 1.0)
    assert abs(gr_inner(a, a) - 1.0) < 1e-14
    b = rank1(4, 2, 3, 1.0)
    assert abs(gr_inner(a, b)) < 1e-14


def test_gr_inner_unitary_invariance():
    rng = np.random.default_rng(4)
    n = 5
    x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    y = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q1, _ = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    q2, _ = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    a, b = GrTangent(x), GrTangent(y)
    au, bu = GrTangent(q2 @ x @ q1), GrTangent(q2 @ y @ q1)
    assert abs(gr_inner(a, b) - gr_inner(au, bu)) < 1e-10


def test_wedge2_trace_values():
    assert abs(wedge2_trace(np.diag([1.0, 0.0])) - 0.0) < 1e-15
    assert abs(wedge2_trace(np.diag([0.5, 0.5])) - 0.25) < 1e-15
    assert abs(wedge2_trace(np.diag([1 / 3, 1 / 3, 1 / 3])) - 1 / 3) < 1e-15
    with pytest.raises(NotHermitian):
        wedge2_trace(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_sectional_curvature_exact_cases():
    assert abs(sectional_curvature(rank1()) + 2.0) < 1e-12
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = 1 / np.sqrt(2)
    m[1, 1] = 1 / np.sqrt(2)
    assert abs(sectional_curvature(GrTangent(m)) + 7.0 / 4.0) < 1e-12
    with pytest.raises(ZeroDirection):
        sectional_curvature(GrTangent(np.zeros((3, 3))))


def test_sectional_curvature_equal_modes_approach():
    for m in (2, 3, 5, 8):
        d = np.zeros((m, m), dtype=complex)
        np.fill_diagonal(d, 1.0 / np.sqrt(m))
        k = sectional_curvature(GrTangent(d))
        assert abs(k - (-2.0 + (m - 1) / (2.0 * m))) < 1e-12
        assert k < -1.5


def test_sectional_curvature_random_sweep():
    rng = np.random.default_rng(7)
    for n in (8, 16):
        for _ in range(40):
            x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            k = sectional_curvature(GrTangent(x))
            assert k < -1.5


def test_curvature_component_cases():
    n = 6
    basis = [rank1(n, 0, 0), rank1(n, 1, 1), rank1(n, 2, 2), rank1(n, 3, 3)]
    # fully diagonal with rank-1 psi: -2
    assert abs(curvature_component(0, 0, 0, 0, basis) + 2.0) < 1e-14
    # all distinct indices, disjoint supports: 0
    assert abs(curvature_component(0, 1, 2, 3, basis)) < 1e-14
    # pair symmetry on random orthonormal quadruples
    rng = np.random.default_rng(1)
    mats = []
    raw = [rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)) for _ in range(4)]
    flat = np.array([m.ravel() for m in raw]).T
    q, _ = np.linalg.qr(flat)
    basis2 = [GrTangent(q[:, i].reshape(n, n)) for i in range(4)]
    r1 = curvature_component(0, 1, 2, 3, basis2)
    r2 = curvature_component(2, 3, 0, 1, basis2)
    assert abs(r1 - r2) < 1e-10
    with pytest.raises(NotOrthonormal):
        curvature_component(0, 1, 0, 1, [basis[0], GrTangent(2.0 * basis[1].psi)])


def test_cartan_hessian_identity_at_zero():
    basis = [rank1(4, 0, 0), rank1(4, 1, 1)]
    h = cartan_potential_hessian(np.zeros(2, dtype=complex), basis)
    assert np.max(np.abs(h - np.eye(2))) < 1e-8


def test_cartan_hessian_rank1_growth():
    basis = [rank1(3, 0, 0)]
    t = np.array([0.01 + 0.0j])
    h = cartan_potential_hessian(t, basis)
    # expansion: 1 + 2 |t|^2 since the wedge trace vanishes for rank 1
    assert abs(h[0, 0].real - (1.0 + 2.0 * 1e-4)) < 1e-6


def test_cartan_reproduces_curvature():
    n = 4
    basis = [rank1(n, 0, 0), rank1(n, 1, 0, 1.0)]
    for idx in [(0, 0, 0, 0), (0, 0, 1, 1), (0, 1, 1, 0)]:
        i, j, k, l = idx
        r_fd = cartan_quadratic_coefficient(i, j, k, l, basis, h=0.05)
        r_exact = curvature_component(i, j, k, l, basis)
        assert abs(r_fd - (-r_exact)) < 1e-3, idx


def test_block_As_identity_and_intertwining():
    rng = np.random.default_rng(3)
    n = 5
    p = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    psi = GrTangent(p / np.linalg.norm(p))
    for s in [0.0, 0.7, 1.3 - 0.4j]:
        frame = block_As(psi, s)
        assert frame.identity_defect() < 1e-10
        ss = s * np.conj(s)
        lhs = np.linalg.inv(np.eye(n) + ss * psi.psi.conj().T @ psi.psi) @ psi.psi.conj().T
        rhs = psi.psi.conj().T @ np.linalg.inv(np.eye(n) + ss * psi.psi @ psi.psi.conj().T)
        assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_block_As_rank1_scalar_reduction():
    psi = rank1(3, 0, 0)
    frame = block_As(psi, 1.0)
    # on the singular direction the inverse block is 1/(1+|s|^2)
    assert abs(frame.a_inv[0, 0] - 0.5) < 1e-14


def test_geodesic_point_scaling():
    psi = rank1(3, 0, 1, 1.0)
    g1 = geodesic_point(psi, 0.3)
    g2 = geodesic_point(psi, 0.6)
    assert np.max(np.abs(2.0 * g1.w - g2.w)) < 1e-15


def test_tangent_norm_is_one():
    rng = np.random.default_rng(12)
    n = 6
    # rank 1 and rank 2 directions
    dirs = []
    m1 = np.zeros((n, n), dtype=complex)
    m1[0, 0] = 1.0
    dirs.append(m1)
    m2 = np.zeros((n, n), dtype=complex)
    m2[0, 0] = 1 / np.sqrt(2)
    m2[1, 2] = 1j / np.sqrt(2)
    dirs.append(m2)
    for m in dirs:
        psi = GrTangent(m)
        for s in [0.0, 0.5, 1.0 + 0.7j, 2.0, -1.4j]:
            for theta in [0.0, 0.9, 2.4]:
                v = tangent_norm_along(psi, s, theta)
                assert abs(v - 1.0) < 1e-8, (s, theta)


def test_arclength_reparam_linear():
    psi = rank1(4, 0, 0)
    rows = arclength_reparam(psi, 1.0, 0.125)
    ts = np.array([r.t for r in rows])
    ss = np.array([r.s for r in rows])
    assert np.max(np.abs(ss.real - ts)) < 1e-8
    assert all(abs(r.speed - 1.0) < 1e-6 for r in rows)
    assert all(rows[i].s.real < rows[i + 1].s.real for i in range(len(rows) - 1))
    # Siegel determinant positive strictly inside the model disc
    for r in rows:
        if abs(r.s) < 1.0:
            assert r.siegel_det > 0
