import numpy as np
import pytest

from weldkdv.errors import DegenerateTriple
from weldkdv.moebius import INF, MoebiusTransform, disc_automorphism, moebius_fixing_triple


def test_identity_triples():
    m = moebius_fixing_triple([-1, -1j, 1], [-1, -1j, 1])
    for z in [-1, -1j, 1, 0.3 + 0.2j]:
        assert abs(m(z) - z) < 1e-12


def test_zero_one_inf_identity():
    m = moebius_fixing_triple([0, 1, INF], [0, 1, INF])
    for z in [0.5, 2.0, -3.0 + 1.0j]:
        assert abs(m(z) - z) < 1e-12


def test_cyclic_triple_checked_on_fourth_point():
    # (-1, -i, 1) -> (-i, 1, -1); the image of a fourth point is pinned by
    # cross-ratio preservation, the oracle for the three-point solve.
    # (z -> iz fails here: it sends 1 to i, not to -1.)
    m = moebius_fixing_triple([-1, -1j, 1], [-1j, 1, -1])

    def cross_ratio(z, a, b, c):
        return (z - a) * (b - c) / ((z - c) * (b - a))

    for z in [0.5 + 0.1j, np.exp(0.7j), -0.3 - 0.4j]:
        lhs = cross_ratio(m(z), -1j, 1, -1)
        rhs = cross_ratio(z, -1, -1j, 1)
        assert abs(lhs - rhs) < 1e-12
    # and it is a circle-preserving map (all six points lie on S^1)
    assert m.preserves_unit_disc() or abs(abs(m(np.exp(0.3j))) - 1) < 1e-12


def test_interpolation_property():
    ps = [0.3, -1.2 + 0.5j, 2.0j]
    qs = [1.0, -0.7j, 0.4 + 0.4j]
    m = moebius_fixing_triple(ps, qs)
    for p, q in zip(ps, qs):
        assert abs(m(p) - q) < 1e-12
    assert abs(m.det() - 1.0) < 1e-12


def test_degenerate_triple_raises():
    with pytest.raises(DegenerateTriple):
        moebius_fixing_triple([1, 1, 2], [0, 1, 2])
    with pytest.raises(DegenerateTriple):
        moebius_fixing_triple([INF, INF, 2], [0, 1, 2])


def test_compose_and_inverse():
    m1 = moebius_fixing_triple([0, 1, INF], [1j, 2.0, 0.5])
    m2 = m1.inverse()
    comp = m2.compose(m1)
    for z in [0.2, 1.5 - 0.3j]:
        assert abs(comp(z) - z) < 1e-12
    assert abs(comp.det() - 1.0) < 1e-12


def test_disc_automorphism_preserves_disc():
    m = disc_automorphism(0.3 - 0.2j, phase=0.4)
    assert m.preserves_unit_disc()


def test_infinity_handling():
    m = moebius_fixing_triple([0, 1, 2], [0, 1, INF])
    v = m(2.0)
    assert not np.isfinite(v.real) or abs(v) > 1e12
