"""Invariant Kaehler geometry of the truncated Grassmannian.

Tangent vectors at the base point are Hilbert-Schmidt matrices psi mapping
the plus modes to the minus modes; the metric there is Tr(psi* chi).  The
curvature tensor is evaluated through wedge traces, cross-checked by finite
differences of the log-determinant potential, and the geodesics through the
base point are the graph lines s -> Graph(s psi) whose velocity is measured
with the block frames A_s.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    BasePointMismatch,
    NotHermitian,
    NotOrthonormal,
    NotPositiveDefinite,
    StepRejected,
    ZeroDirection,
)
from .grassmann import GraphOperator, siegel_check


@dataclass(frozen=True)
class GrTangent:
    """Direction matrix psi: plus modes -> minus modes, with optional base point."""

    psi: np.ndarray
    base: GraphOperator | None = None

    def __post_init__(self):
        object.__setattr__(self, "psi", np.asarray(self.psi, dtype=complex))

    @property
    def n(self) -> int:
        return self.psi.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.psi))

    def normalized(self) -> "GrTangent":
        nrm = self.norm()
        if nrm < 1e-300:
            raise ZeroDirection("cannot normalize the zero direction")
        return GrTangent(self.psi / nrm, self.base)


@dataclass(frozen=True)
class GeodesicSample:
    """One row of a geodesic table."""

    t: float
    s: complex
    speed: float
    siegel_det: float


def _same_base(a: GrTangent, b: GrTangent) -> None:
    ba = a.base.w if a.base is not None else None
    bb = b.base.w if b.base is not None else None
    if (ba is None) != (bb is None):
        raise BasePointMismatch("tangents live at different base points")
    if ba is not None and not np.allclose(ba, bb):
        raise BasePointMismatch("tangents live at different base points")


def gr_inner(a: GrTangent, b: GrTangent) -> complex:
    """Tr(psi* chi) at the base point; frame-conjugated at graph points.

    At a graph point the stored base W gives the frame A = A_s with s psi0
    = W, and the invariant pairing is Tr(X*(AA*)^{-1} Y (AA*)) on the full
    block embedding X = [[0,0],[psi,0]].
    """
    _same_base(a, b)
    if a.base is None or np.allclose(a.base.w, 0):
        return complex(np.trace(a.psi.conj().T @ b.psi))
    n = a.n
    blocks = block_As(GrTangent(a.base.w), 1.0)
    aa = blocks.a_full @ blocks.a_full.conj().T
    aa_inv = np.linalg.inv(aa)

    def embed(p: np.ndarray) -> np.ndarray:
        x = np.zeros((2 * n, 2 * n), dtype=complex)
        x[n:, :n] = p
        return x

    x, y = embed(a.psi), embed(b.psi)
    return complex(np.trace(x.conj().T @ aa_inv @ y @ aa))


def wedge2_trace(m: np.ndarray, tol: float = 1e-10) -> float:
    """((Tr m)^2 - Tr m^2)/2 for Hermitian positive semidefinite m."""
    m = np.asarray(m, dtype=complex)
    if np.max(np.abs(m - m.conj().T)) > tol * max(1.0, float(np.linalg.norm(m))):
        raise NotHermitian("matrix is not Hermitian within 1e-10")
    t1 = np.trace(m).real
    t2 = np.trace(m @ m).real
    return float((t1 * t1 - t2) / 2.0)


def wedge_trace_pair(a: np.ndarray, b: np.ndarray) -> complex:
    """Polarized wedge trace ((Tr a)(Tr b) - Tr(a b)) / 2."""
    return complex((np.trace(a) * np.trace(b) - np.trace(a @ b)) / 2.0)


def sectional_curvature(psi: GrTangent) -> float:
    """-2 + Tr(pp* wedge pp*) for the normalized direction; always below -3/2."""
    nrm = psi.norm()
    if nrm < 1e-300:
        raise ZeroDirection("sectional curvature of the zero direction")
    p = psi.psi / nrm
    return float(-2.0 + wedge2_trace(p @ p.conj().T))


def curvature_component(
    i: int, j: int, k: int, l: int, basis: list[GrTangent], tol: float = 1e-10
) -> complex:
    """Curvature tensor component over an orthonormal tangent basis.

    Diagonal pairs (i,j) == (k,l) use -2 delta_{ij} + Tr(pi pj* ^ pi pj*);
    otherwise -d_{ij} d_{kl} - d_{il} d_{kj} + Tr(pi pj* ^ pk pl*)
    + Tr(pi pl* ^ pk pj*).
    """
    for a in range(len(basis)):
        for b in range(a, len(basis)):
            g = complex(np.trace(basis[a].psi.conj().T @ basis[b].psi))
            expected = 1.0 if a == b else 0.0
            if abs(g - expected) > tol:
                raise NotOrthonormal(f"basis pair ({a},{b}) has inner {g}")
    pi, pj, pk, pl = (basis[m].psi for m in (i, j, k, l))
    mij = pi @ pj.conj().T
    if (i, j) == (k, l):
        return complex(-2.0 * (i == j) + wedge_trace_pair(mij, mij))
    mkl = pk @ pl.conj().T
    mil = pi @ pl.conj().T
    mkj = pk @ pj.conj().T
    return complex(
        -(i == j) * (k == l)
        - (i == l) * (k == j)
        + wedge_trace_pair(mij, mkl)
        + wedge_trace_pair(mil, mkj)
    )


def _log_det_potential(t: np.ndarray, basis: list[GrTangent]) -> float:
    phi = sum(ti * b.psi for ti, b in zip(t, basis))
    n = phi.shape[0]
    m = np.eye(n) - phi @ phi.conj().T
    sign, logdet = np.linalg.slogdet(m)
    if sign <= 0:
        raise NotPositiveDefinite("id - phi phi* is not positive definite")
    return float(logdet)


def cartan_potential_hessian(
    t: np.ndarray, basis: list[GrTangent], h: float = 1e-3, richardson: bool = True
) -> np.ndarray:
    """-d^2/dt_i dtbar_j of log det(id - phi_t phi_t*) by central differences.

    Wirtinger derivatives are assembled from real-coordinate stencils; one
    Richardson level halves the step.  At t = 0 the result is the identity.
    """
    t = np.asarray(t, dtype=complex)
    m = len(basis)

    def hess_at(step: float) -> np.ndarray:
        out = np.zeros((m, m), dtype=complex)

        def f(v: np.ndarray) -> float:
            return _log_det_potential(v, basis)

        for i in range(m):
            for j in range(m):
                def d2(di: np.ndarray, dj: np.ndarray) -> float:
                    return (
                        f(t + step * di + step * dj)
                        - f(t + step * di - step * dj)
                        - f(t - step * di + step * dj)
                        + f(t - step * di - step * dj)
                    ) / (4 * step * step)

                ei = np.zeros(m, dtype=complex); ei[i] = 1.0
                ej = np.zeros(m, dtype=complex); ej[j] = 1.0
                if i == j:
                    # mixed x/y terms cancel on the diagonal for smooth f
                    fxx = (f(t + 2 * step * ei) - 2 * f(t) + f(t - 2 * step * ei)) / (4 * step * step)
                    fyy = (f(t + 2j * step * ei) - 2 * f(t) + f(t - 2j * step * ei)) / (4 * step * step)
                    out[i, j] = 0.25 * (fxx + fyy)
                else:
                    dxx = d2(ei, ej)
                    dyy = d2(1j * ei, 1j * ej)
                    dxy = d2(ei, 1j * ej)
                    dyx = d2(1j * ei, ej)
                    out[i, j] = 0.25 * ((dxx + dyy) + 1j * (dxy - dyx))
        return -out

    if not richardson:
        return hess_at(h)
    h1 = hess_at(h)
    h2 = hess_at(h / 2)
    return (4.0 * h2 - h1) / 3.0


def cartan_quadratic_coefficient(
    i: int, j: int, k: int, l: int, basis: list[GrTangent], h: float = 0.05
) -> complex:
    """Coefficient r_{ij,kl} of t_k tbar_l in the Hessian entry (i,j) at 0.

    Extracted by differencing cartan_potential_hessian along the k/l
    coordinates, with one Richardson level on the outer step; Cartan's
    relation says this equals minus the curvature component.
    """
    m = len(basis)

    def hess_entry(t: np.ndarray) -> complex:
        return cartan_potential_hessian(t, basis, h=1e-3)[i, j]

    ek = np.zeros(m, dtype=complex); ek[k] = 1.0
    el = np.zeros(m, dtype=complex); el[l] = 1.0

    def coeff_at(step: float) -> complex:
        if k == l:
            h0 = hess_entry(np.zeros(m, complex))
            hxx = (hess_entry(2 * step * ek) - 2 * h0 + hess_entry(-2 * step * ek)) / (4 * step * step)
            hyy = (hess_entry(2j * step * ek) - 2 * h0 + hess_entry(-2j * step * ek)) / (4 * step * step)
            return 0.25 * (hxx + hyy)

        def d2(dk: np.ndarray, dl: np.ndarray) -> complex:
            return (
                hess_entry(step * dk + step * dl)
                - hess_entry(step * dk - step * dl)
                - hess_entry(-step * dk + step * dl)
                + hess_entry(-step * dk - step * dl)
            ) / (4 * step * step)

        dxx = d2(ek, el)
        dyy = d2(1j * ek, 1j * el)
        dxy = d2(ek, 1j * el)
        dyx = d2(1j * ek, el)
        return 0.25 * ((dxx + dyy) + 1j * (dxy - dyx))

    return (4.0 * coeff_at(h / 2) - coeff_at(h)) / 3.0


@dataclass(frozen=True)
class BlockFrame:
    """A_s = [[id, -sbar psi*], [s psi, id]] together with its inverse."""

    a_full: np.ndarray
    a_inv: np.ndarray

    def identity_defect(self) -> float:
        n = self.a_full.shape[0]
        return float(np.linalg.norm(self.a_full @ self.a_inv - np.eye(n)))


def block_As(psi: GrTangent, s: complex) -> BlockFrame:
    """Assemble A_s and its inverse from the intertwining identities."""
    p = psi.psi
    n = p.shape[0]
    s = complex(s)
    eye = np.eye(n)
    a = np.block([[eye, -np.conj(s) * p.conj().T], [s * p, eye]])
    inv_pp = np.linalg.inv(eye + (s * np.conj(s)) * (p.conj().T @ p))
    inv_ppstar = np.linalg.inv(eye + (s * np.conj(s)) * (p @ p.conj().T))
    a_inv = np.block(
        [[eye, np.conj(s) * p.conj().T], [-s * p, eye]]
    ) @ np.block(
        [[inv_pp, np.zeros((n, n))], [np.zeros((n, n)), inv_ppstar]]
    )
    return BlockFrame(a, a_inv)


def geodesic_point(psi: GrTangent, s: complex) -> GraphOperator:
    """The graph of s psi."""
    return GraphOperator(complex(s) * psi.psi)


def tangent_norm_along(psi: GrTangent, s: complex, theta: float = 0.0) -> float:
    """Velocity norm of t -> Graph((s + e^{i theta} t) psi) in the moving frame.

    Pulls the frame derivative Adot back with A_s^{-1} ... A_s restricted to
    the plus columns and takes its Frobenius norm; identically 1 for unit
    directions.
    """
    if psi.norm() < 1e-300:
        raise ZeroDirection("zero direction")
    p = psi.psi
    n = p.shape[0]
    frame = block_As(psi, s)
    e = np.exp(1j * theta)
    adot = np.block(
        [[np.zeros((n, n)), -np.conj(e) * p.conj().T], [e * p, np.zeros((n, n))]]
    )
    m = frame.a_inv @ adot @ frame.a_full
    return float(np.linalg.norm(m[:, :n]))


def arclength_reparam(
    psi: GrTangent,
    t_end: float,
    dt: float,
    theta: float = 0.0,
    speed_tol: float = 1e-6,
) -> list[GeodesicSample]:
    """Integrate ds/dt = 1/|dgamma/ds| along the ray s = s(t) e^{i theta}.

    The measured speed is re-verified at each accepted step; StepRejected if
    it leaves [1 - tol, 1 + tol] after refinement for a unit direction.
    """
    if abs(psi.norm() - 1.0) > 1e-9:
        psi = psi.normalized()
    rows: list[GeodesicSample] = []
    s = 0.0
    t = 0.0
    while t <= t_end + 1e-12:
        spd = tangent_norm_along(psi, s * np.exp(1j * theta), theta)
        if abs(spd - 1.0) > speed_tol:
            spd2 = tangent_norm_along(psi, s * np.exp(1j * theta), theta)
            if abs(spd2 - 1.0) > speed_tol:
                raise StepRejected(f"speed {spd2} deviates from 1 at s = {s}")
            spd = spd2
        point = geodesic_point(psi, s * np.exp(1j * theta))
        _, det = siegel_check(point)
        rows.append(GeodesicSample(t, s * np.exp(1j * theta), spd, det))
        # midpoint rule for ds/dt = 1/speed
        half = s + 0.5 * dt / spd
        spd_half = tangent_norm_along(psi, half * np.exp(1j * theta), theta)
        s = s + dt / spd_half
        t += dt
    return rows


def exp_identity(
    v,
    n_graph: int = 16,
    tol: float = 1e-12,
    cap: int = 96,
    theodorsen_grid: int = 1024,
):
    """Welding record and graph operator of the exponential direction v.

    Builds the structured coefficient from the tangent coordinates, welds
    it, and assembles the graph operator: both representations of the same
    point.  Returns (WeldingRecord, GraphOperator).
    """
    from .disc import BeltramiCoefficient
    from .grassmann import graph_from_mu
    from .welding import welding_map

    mu = BeltramiCoefficient.from_tangent(v)
    record = welding_map(mu, n_grid=theodorsen_grid, tol=tol, cap=cap)
    graph = graph_from_mu(mu, n_graph, tol=tol, cap=cap)
    return record, graph
