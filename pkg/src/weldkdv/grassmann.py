"""Truncated graph operators, composition operators, and right translation.

A subspace close to the span of {z^n, n >= 0} is stored as the matrix W of
the operator sending z^n to its negative-frequency tail: rows are indexed by
j = 1..N (basis z^{-j}), columns by n = 0..N-1 (basis z^n).  Column 0 is
identically zero.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .diffeo import DiffeoOfCircle
from .disc import BeltramiCoefficient, boundary_v_n
from .errors import GraphTransversalityLost, NonDiffeomorphism


@dataclass(frozen=True)
class GraphOperator:
    """Matrix W[j-1, n] = <v^(n), z^{-j}> of a graph over the plus subspace."""

    w: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.w, dtype=complex)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError("graph matrix must be square")
        object.__setattr__(self, "w", w)

    @property
    def n(self) -> int:
        return self.w.shape[0]

    def entry(self, j: int, n: int) -> complex:
        """<v^(n), z^{-j}> with j >= 1, n >= 0."""
        return complex(self.w[j - 1, n])

    def frobenius(self) -> float:
        return float(np.linalg.norm(self.w))

    def to_json_dict(self) -> dict:
        return {
            "rows": "z^{-j}, j = 1..N",
            "cols": "z^n, n = 0..N-1",
            "N": self.n,
            "re": self.w.real.tolist(),
            "im": self.w.imag.tolist(),
        }


@dataclass(frozen=True)
class BlockOperator:
    """Blocks of an operator on H_+ (+) H_- in the Fourier basis.

    a: H+ -> H+, b: H- -> H+, c: H+ -> H-, d: H- -> H-.
    H+ columns/rows are ordered n = 0..N-1; H- ones j = 1..N (i.e. z^{-j}).
    """

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray

    @property
    def n(self) -> int:
        return self.a.shape[0]

    def full(self) -> np.ndarray:
        return np.block([[self.a, self.b], [self.c, self.d]])

    def offdiag_norms(self) -> tuple[float, float]:
        return float(np.linalg.norm(self.b)), float(np.linalg.norm(self.c))

    def commutator_with_J_norm(self) -> float:
        """||[A, J]|| where J = diag(+1 on H+, -1 on H-); equals 2 sqrt(|b|^2+|c|^2)."""
        n = self.n
        j = np.diag(np.concatenate((np.ones(n), -np.ones(n))))
        m = self.full()
        return float(np.linalg.norm(m @ j - j @ m))


def graph_from_mu(
    mu: BeltramiCoefficient,
    n: int,
    tol: float = 1e-12,
    cap: int = 96,
    workers: int = 1,
) -> GraphOperator:
    """Assemble W[j][m] = <v^(m), z^{-j}> for m = 1..n-1, j = 1..n.

    Column 0 is zero by definition.  Columns are independent and may be
    computed on a thread pool.
    """
    w = np.zeros((n, n), dtype=complex)

    def column(m: int) -> np.ndarray:
        v = boundary_v_n(mu, m, tol=tol, cap=cap, n_modes=n)
        return np.array([v.coeff(-j) for j in range(1, n + 1)])

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            cols = list(pool.map(column, range(1, n)))
    else:
        cols = [column(m) for m in range(1, n)]
    for m, col in zip(range(1, n), cols):
        w[:, m] = col
    return GraphOperator(w)


def hs_norm(g: GraphOperator, fit_floor: float = 1e-13) -> tuple[float, float, float]:
    """Frobenius norm plus a tail bound from the fitted C/(nj) entry decay.

    Returns (frobenius, tail_estimate, fitted_C).  The tail estimate bounds
    the Frobenius mass outside the truncation assuming |W[j][n]| <= C/(nj).
    """
    w = g.w
    n = g.n
    js = np.arange(1, n + 1)[:, None]
    ns = np.arange(0, n)[None, :]
    prods = np.abs(w) * js * np.where(ns == 0, 1, ns)
    c_fit = float(np.max(prods))
    # sum_{j or n beyond N} C^2/(n^2 j^2)
    zeta2 = np.pi ** 2 / 6.0
    head = float(np.sum(1.0 / np.arange(1, n + 1) ** 2.0))
    tail1d = zeta2 - head
    tail = c_fit ** 2 * (tail1d * zeta2 + head * tail1d)
    return g.frobenius(), float(np.sqrt(max(tail, 0.0))), c_fit


def decay_exponent_fit(g: GraphOperator, floor: float = 1e-13) -> float:
    """Least-squares slope of log|W| against log(n j); -2 means C/(n^2 j^2)-type decay."""
    w = np.abs(g.w)
    n = g.n
    js = np.arange(1, n + 1)[:, None] * np.ones((1, n))
    ns = np.ones((n, 1)) * np.arange(0, n)[None, :]
    mask = (w > floor) & (ns >= 1)
    if mask.sum() < 3:
        return 0.0
    x = np.log(js[mask] * ns[mask])
    y = np.log(w[mask])
    a = np.vstack([x, np.ones_like(x)]).T
    slope, _ = np.linalg.lstsq(a, y, rcond=None)[0]
    return float(slope)


def _circle_grid(n_pts: int) -> np.ndarray:
    return 2 * np.pi * np.arange(n_pts) / n_pts


def composition_matrix(phi: DiffeoOfCircle, n: int, oversample: int = 8) -> np.ndarray:
    """Matrix of f -> f o phi on modes k = -N..N-1 by Fourier quadrature."""
    if phi.min_derivative() <= 0:
        raise NonDiffeomorphism("phi' must be positive")
    m = oversample * 2 * n
    x = _circle_grid(m)
    psi = phi(x)
    modes = np.arange(-n, n)
    # column for mode k: samples e^{i k psi(x)}; row j: (1/m) sum e^{-i j x} ...
    cols = np.exp(1j * np.outer(psi, modes))
    proj = np.exp(-1j * np.outer(modes, x))
    return (proj @ cols) / m


def composition_operator_blocks(
    phi: DiffeoOfCircle, n: int, oversample: int = 8
) -> tuple[BlockOperator, BlockOperator, BlockOperator]:
    """Matrices of C_phi, M_phi and R_phi = M_phi C_phi in the Fourier basis.

    C_phi f = (f o phi) sqrt(phi'), M_phi g = g / sqrt(phi'), so that
    R_phi f = f o phi; the square root is taken with a continuous branch
    (log phi' = log psi' + i(psi(x) - x) is single-valued).
    """
    if phi.min_derivative() <= 0:
        raise NonDiffeomorphism("phi' must be positive")
    m = oversample * 2 * n
    x = _circle_grid(m)
    psi = phi(x)
    dpsi = phi.derivative(x)
    # phi'(z) along the circle in the z-variable: psi'(x) e^{i(psi - x)}
    log_dz = np.log(dpsi) + 1j * (psi - x)
    sqrt_dz = np.exp(0.5 * log_dz)

    modes = np.arange(-n, n)
    proj = np.exp(-1j * np.outer(modes, x)) / m

    cols_c = np.exp(1j * np.outer(psi, modes)) * sqrt_dz[:, None]
    c_mat = proj @ cols_c
    cols_m = np.exp(1j * np.outer(x, modes)) / sqrt_dz[:, None]
    m_mat = proj @ cols_m
    r_mat = m_mat @ c_mat

    def to_blocks(full: np.ndarray) -> BlockOperator:
        # modes ordering: index i corresponds to k = i - n
        plus = [k + n for k in range(0, n)]
        minus = [-j + n for j in range(1, n + 1)]
        a = full[np.ix_(plus, plus)]
        b = full[np.ix_(plus, minus)]
        c = full[np.ix_(minus, plus)]
        d = full[np.ix_(minus, minus)]
        return BlockOperator(a, b, c, d)

    return to_blocks(c_mat), to_blocks(m_mat), to_blocks(r_mat)


def right_translate(
    g: GraphOperator,
    phi: DiffeoOfCircle,
    oversample: int = 8,
    pad: int = 16,
    cond_limit: float = 1e8,
) -> GraphOperator:
    """Compose the spanning set {z^n + v^(n)} with phi and restore graph form.

    The composition matrix is built on a padded mode window to limit
    truncation leakage; the result is column-reduced so the plus-projection
    is the identity.  GraphTransversalityLost when that projection becomes
    numerically singular.
    """
    n = g.n
    nb = n + pad
    r = composition_matrix(phi, nb, oversample=oversample)

    # spanning vectors on the padded window: z^m + sum_j W[j,m] z^-j
    vecs = np.zeros((2 * nb, n), dtype=complex)
    for m in range(n):
        vecs[nb + m, m] = 1.0
        for j in range(1, n + 1):
            vecs[nb - j, m] = g.w[j - 1, m]
    img = r @ vecs

    plus = img[nb : 2 * nb, :]   # rows k = 0..nb-1
    minus = img[:nb, :]          # rows k = -nb..-1 (index i -> k = i - nb)

    p_top = plus[:n, :]
    if np.linalg.cond(p_top) > cond_limit:
        raise GraphTransversalityLost("plus-projection is numerically singular")
    # column reduce: new_w = minus_part * inv(plus_part), restricted to N modes
    sol = np.linalg.solve(p_top.T, minus.T).T  # minus @ inv(p_top)
    w_new = np.zeros((n, n), dtype=complex)
    for j in range(1, n + 1):
        w_new[j - 1, :] = sol[nb - j, :]
    if np.allclose(g.w[:, 0], 0):
        w_new[:, 0] = 0.0  # constants stay constants under composition
    return GraphOperator(w_new)


def siegel_check(g: GraphOperator) -> tuple[bool, float]:
    """det(I - W W*) at the truncation and its positivity."""
    n = g.n
    m = np.eye(n) - g.w @ g.w.conj().T
    det = float(np.linalg.det(m).real)
    return det > 0.0, det
