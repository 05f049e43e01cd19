"""Quadrature oracles against the closed-form transforms."""

import numpy as np
import pytest

from weldkdv.disc import MonomialField, beurling_transform_T, cauchy_transform_P
from weldkdv.errors import SingularityTooClose
from weldkdv.oracles import quadrature_oracle_P, quadrature_oracle_T

SAMPLE_POINTS = [
    0.5,
    -0.3 + 0.4j,
    0.1 - 0.6j,
    0.85,
    0.2 + 0.2j,
    -0.7,
    0.45j,
    -0.1 - 0.85j,
    0.62 + 0.31j,
    -0.52 + 0.5j,
    2.0,
    1.3 + 0.4j,
    -1.8 + 0.4j,
    2.5j,
    -0.9 - 1.4j,
    3.0,
    1.25,
    -2.2 - 0.3j,
    1.1 + 1.1j,
    0.3 - 1.5j,
]


def test_oracle_constants():
    h = MonomialField.monomial(0, 0, 1.0)
    assert abs(quadrature_oracle_P(h, 0.5) - 0.5) < 1e-8
    assert abs(quadrature_oracle_P(h, 2.0) - 0.5) < 1e-8
    zero = MonomialField.zero(2)
    assert abs(quadrature_oracle_P(zero, 0.3)) < 1e-14


def test_oracle_guard_band():
    h = MonomialField.monomial(0, 0, 1.0)
    with pytest.raises(SingularityTooClose):
        quadrature_oracle_P(h, 1.0001)
    with pytest.raises(SingularityTooClose):
        quadrature_oracle_T(h, 0.999)


def test_closed_form_P_matches_oracle_all_low_monomials():
    for m in range(4):
        for n in range(4 - m):
            h = MonomialField.monomial(m, n, 1.0)
            p = cauchy_transform_P(h)
            for zeta in SAMPLE_POINTS[:8]:
                ref = quadrature_oracle_P(h, zeta)
                val = complex(p(np.array([complex(zeta)]))[0])
                assert abs(val - ref) < 1e-6, (m, n, zeta)


def test_closed_form_T_matches_oracle_sample():
    for m, n in [(0, 0), (1, 0), (0, 1), (2, 1), (1, 2)]:
        h = MonomialField.monomial(m, n, 1.0)
        t = beurling_transform_T(h)
        for zeta in [0.4, -0.2 + 0.5j, 2.0, 1.4 - 0.8j]:
            ref = quadrature_oracle_T(h, zeta)
            val = complex(t(np.array([complex(zeta)]))[0])
            assert abs(val - ref) < 1e-6, (m, n, zeta)
