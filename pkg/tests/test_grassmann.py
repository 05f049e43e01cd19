import numpy as np
import pytest

from weldkdv.diffeo import DiffeoOfCircle
from weldkdv.disc import BeltramiCoefficient
from weldkdv.grassmann import (
    GraphOperator,
    composition_matrix,
    composition_operator_blocks,
    decay_exponent_fit,
    graph_from_mu,
    hs_norm,
    right_translate,
    siegel_check,
)
from weldkdv.moebius import disc_automorphism
from weldkdv.series import CircleFunction


def test_graph_zero_mu():
    g = graph_from_mu(BeltramiCoefficient(np.array([0.0])), 6)
    assert g.frobenius() == 0.0


def test_graph_single_mode_leading_entry():
    eps = 1e-3
    g = graph_from_mu(BeltramiCoefficient.from_tangent(np.array([eps])), 6, cap=40)
    lead = eps / (3.0 * np.sqrt(6.0))
    assert abs(g.entry(1, 1) - lead) < 20 * eps ** 2
    assert np.max(np.abs(g.w[:, 0])) == 0.0


def test_graph_column_zero_and_workers():
    mu = BeltramiCoefficient.from_tangent(np.array([0.05, 0.02]))
    g1 = graph_from_mu(mu, 8, cap=60, workers=1)
    g2 = graph_from_mu(mu, 8, cap=60, workers=4)
    assert np.max(np.abs(g1.w - g2.w)) < 1e-15


def test_hs_norm_values():
    z = GraphOperator(np.zeros((4, 4), dtype=complex))
    f, tail, c = hs_norm(z)
    assert f == 0.0 and c == 0.0
    m = np.zeros((4, 4), dtype=complex)
    m[0, 1] = 0.3
    f, tail, c = hs_norm(GraphOperator(m))
    assert abs(f - 0.3) < 1e-15


def test_decay_fit_is_steep():
    mu = BeltramiCoefficient.from_tangent(0.1 * np.array([1.0, 0.6, 0.3, 0.1]))
    g = graph_from_mu(mu, 12, cap=100)
    slope = decay_exponent_fit(g)
    assert slope < -1.0  # at least 1/(nj)-type decay on the computed window


def test_composition_rotation_diagonal():
    alpha = 0.7
    dev = CircleFunction.from_dict({0: alpha}, 1)
    rot = DiffeoOfCircle.from_deviation(dev, n_grid=256)
    n = 6
    _, _, r = composition_operator_blocks(rot, n)
    full = r.full()
    # R f = f o phi: z^k -> e^{i k alpha} z^k
    ks_plus = list(range(0, n))
    for idx, k in enumerate(ks_plus):
        assert abs(full[idx, idx] - np.exp(1j * k * alpha)) < 1e-10
    b_norm, c_norm = r.offdiag_norms()
    assert b_norm < 1e-10 and c_norm < 1e-10


def test_composition_identity():
    ident = DiffeoOfCircle.identity(256)
    _, _, r = composition_operator_blocks(ident, 5)
    assert np.max(np.abs(r.full() - np.eye(10))) < 1e-10


def test_composition_blocks_gl_res_surrogate():
    dev = CircleFunction.from_dict({1: 0.05 - 0.02j, -1: 0.05 + 0.02j, 2: 0.01, -2: 0.01}, 2)
    phi = DiffeoOfCircle.from_deviation(dev)
    norms = []
    for n in (8, 16, 32):
        _, _, r = composition_operator_blocks(phi, n)
        b, c = r.offdiag_norms()
        norms.append(np.hypot(b, c))
        # commutator identity ||[R, J]||^2 = 4(|b|^2 + |c|^2)
        assert abs(r.commutator_with_J_norm() - 2 * np.hypot(b, c)) < 1e-10
    assert abs(norms[2] - norms[1]) < 0.05 * norms[1]


def test_right_translate_identity():
    mu = BeltramiCoefficient.from_tangent(np.array([0.05]))
    g = graph_from_mu(mu, 6, cap=60)
    ident = DiffeoOfCircle.identity(512)
    g2 = right_translate(g, ident)
    assert np.max(np.abs(g2.w - g.w)) < 1e-10


def test_right_translate_moebius_stabilizes_base():
    m = disc_automorphism(0.1 + 0.05j)
    phi = DiffeoOfCircle.from_moebius(m)
    zero = GraphOperator(np.zeros((6, 6), dtype=complex))
    g2 = right_translate(zero, phi)
    assert g2.frobenius() < 1e-8


def test_siegel_check():
    ok, det = siegel_check(GraphOperator(np.zeros((3, 3), dtype=complex)))
    assert ok and abs(det - 1.0) < 1e-14
    m = np.zeros((3, 3), dtype=complex)
    m[0, 0] = 0.5
    ok, det = siegel_check(GraphOperator(m))
    assert ok and abs(det - 0.75) < 1e-14
    m[0, 0] = 1.2
    ok, det = siegel_check(GraphOperator(m))
    assert not ok
