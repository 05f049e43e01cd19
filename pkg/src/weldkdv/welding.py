"""Quasiconformal welding: extension, normalized solves, sewing, recovery.

The forward direction starts from a structured Beltrami coefficient, solves
the plane problem exactly in the monomial algebra, normalizes with a Moebius
map fixing -1, -i, 1, maps the image curve with the Theodorsen iteration and
reads the welding homeomorphism off the boundary correspondences.  The
reverse direction extends a circle diffeomorphism into the disc with the
Beurling-Ahlfors formula (conjugated from the half plane), solves the
resulting dbar problem after projecting the sampled dilatation onto the
monomial algebra, and recovers the structured coefficient from the exterior
Laurent tail through a series Schwarzian.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .diffeo import DiffeoOfCircle
from .disc import (
    BeltramiCoefficient,
    MonomialField,
    PiecewiseField,
    beurling_transform_T,
    cauchy_transform_P,
    mu_multiply,
)
from .errors import (
    AssumptionViolated,
    BoundViolated,
    DegenerateJacobian,
    MoebiusDegenerate,
    NoConvergence,
    NonContractive,
    NonMonotone,
    WeldingInconsistent,
    WronskianCollapse,
)
from .moebius import MoebiusTransform, moebius_fixing_triple
from .series import CircleFunction, Series, schwarzian
from .theodorsen import TheodorsenMap, theodorsen_map

TRIPLE = (-1.0 + 0.0j, -1.0j, 1.0 + 0.0j)
TRIPLE_ANGLES = (np.pi, 1.5 * np.pi, 0.0)


# ---------------------------------------------------------------------------
# planar maps and the Beurling-Ahlfors extension
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlanarMap:
    """Complex map values on a structured grid (cartesian or polar)."""

    values: np.ndarray
    axis0: np.ndarray  # x (cartesian) or r (polar)
    axis1: np.ndarray  # y (cartesian) or theta (polar)
    kind: str = "cartesian"

    def jacobian_positive(self) -> bool:
        fx, fy = self._partials()
        jac = (np.conj(fx) * fy).imag  # |f_z|^2 - |f_zbar|^2 up to factor 2... sign proxy
        fz = 0.5 * (fx - 1j * fy)
        fzb = 0.5 * (fx + 1j * fy)
        return bool(np.all(np.abs(fz) ** 2 - np.abs(fzb) ** 2 > 0))

    def _partials(self):
        if self.kind != "cartesian":
            raise ValueError("partials implemented for cartesian grids")
        f = self.values
        dx = self.axis0[1] - self.axis0[0]
        dy = self.axis1[1] - self.axis1[0]
        fx = np.gradient(f, dx, axis=0)
        fy = np.gradient(f, dy, axis=1)
        return fx, fy


def beurling_ahlfors_extend(h, x_grid: np.ndarray, y_grid: np.ndarray, n_gl: int = 32) -> PlanarMap:
    """Half-plane extension of an increasing line map by the averaging formula.

    f(x+iy) = (1/2) int_0^1 (h(x+ty) + h(x-ty)) dt
              + i int_0^1 (h(x+ty) - h(x-ty)) dt,
    evaluated with fixed Gauss-Legendre quadrature; agrees with h at y = 0.
    """
    x_grid = np.asarray(x_grid, dtype=float)
    y_grid = np.asarray(y_grid, dtype=float)
    xs = np.linspace(x_grid[0] - 1, x_grid[-1] + 1, 7)
    if np.any(np.diff([h(v) for v in xs]) <= 0):
        raise NonMonotone("line map is not increasing on probe points")
    gx, gw = np.polynomial.legendre.leggauss(n_gl)
    t = 0.5 * (gx + 1.0)
    w = 0.5 * gw
    xx = x_grid[:, None, None]
    yy = y_grid[None, :, None]
    hp = h(xx + t[None, None, :] * yy)
    hm = h(xx - t[None, None, :] * yy)
    alpha = (hp * w).sum(axis=-1)
    beta = (hm * w).sum(axis=-1)
    vals = 0.5 * (alpha + beta) + 1j * (alpha - beta)
    on_axis = np.abs(yy[..., 0]) < 1e-300
    if np.any(on_axis):
        base = h(xx[..., 0] + 0.0 * yy[..., 0])
        vals = np.where(on_axis, base, vals)
    return PlanarMap(vals, x_grid, y_grid, "cartesian")


def ba_partials(h, x: np.ndarray, y: np.ndarray, n_gl: int = 32):
    """Exact first partials of the averaging extension from values of h only.

    With alpha(x,y) = int_0^1 h(x+ty) dt and beta likewise, integration by
    parts gives alpha_x = (h(x+y) - h(x))/y, alpha_y = (h(x+y) - alpha)/y,
    beta_x = (h(x) - h(x-y))/y, beta_y = (h(x-y) - beta)/y, so no numerical
    differentiation of h is ever needed.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    gx, gw = np.polynomial.legendre.leggauss(n_gl)
    t = 0.5 * (gx + 1.0)
    w = 0.5 * gw
    hp = (h(x[..., None] + t * y[..., None]) * w).sum(axis=-1)
    hm = (h(x[..., None] - t * y[..., None]) * w).sum(axis=-1)
    h_p = h(x + y)
    h_m = h(x - y)
    h_0 = h(x)
    alpha_x = (h_p - h_0) / y
    beta_x = (h_0 - h_m) / y
    alpha_y = (h_p - hp) / y
    beta_y = (hm - h_m) / y
    fx = 0.5 * (alpha_x + beta_x) + 1j * (alpha_x - beta_x)
    fy = 0.5 * (alpha_y + beta_y) + 1j * (alpha_y - beta_y)
    f = 0.5 * (hp + hm) + 1j * (hp - hm)
    return f, fx, fy


def complex_dilatation(planar: PlanarMap, floor: float = 1e-10):
    """mu = dbar F / d F by centered differences; returns (mu grid, sup |mu|).

    DegenerateJacobian where |dF| falls below the floor.
    """
    fx, fy = planar._partials()
    fz = 0.5 * (fx - 1j * fy)
    fzb = 0.5 * (fx + 1j * fy)
    if np.any(np.abs(fz) < floor):
        raise DegenerateJacobian("|dF| below 1e-10 on the grid")
    mu = fzb / fz
    return mu, float(np.max(np.abs(mu)))


# ---------------------------------------------------------------------------
# normalized Beltrami solve in the monomial algebra
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BeltramiSolution:
    """w = z + P(S) with a post-composed Moebius normalization."""

    raw: PiecewiseField
    moebius: MoebiusTransform
    residual: float

    def __call__(self, z):
        return self.moebius(self.raw(np.asarray(z, dtype=complex)))

    def boundary_values(self, n_pts: int = 2048) -> np.ndarray:
        x = 2 * np.pi * np.arange(n_pts) / n_pts
        return self.moebius(self.raw.outside(np.exp(1j * x)))

    def triple_defect(self) -> float:
        pts = np.asarray(TRIPLE, dtype=complex)
        vals = self.moebius(self.raw.outside(pts))
        return float(np.max(np.abs(vals - pts)))

    def sample_polar(self, n_r: int = 64, n_theta: int = 128, r_max: float = 2.0) -> PlanarMap:
        r = np.linspace(1e-3, r_max, n_r)
        th = 2 * np.pi * np.arange(n_theta) / n_theta
        z = r[:, None] * np.exp(1j * th)[None, :]
        return PlanarMap(self.moebius(self.raw(z)), r, th, "polar")


def _neumann_field(
    mu_field: MonomialField,
    sup_norm: float,
    n: int,
    tol: float,
    max_iter: int,
    cap: int | None = None,
) -> MonomialField:
    """Neumann sum mu sum_k (T mu)^k (n z^{n-1}) for a general monomial mu.

    The degree cap grows with the iteration (each term adds deg mu), so the
    dense tables stay as small as the convergence actually requires.
    """
    if sup_norm >= 1.0:
        raise NonContractive(f"sup |mu| = {sup_norm:.3f} >= 1")
    deg = max(1, mu_field.degree())
    hard_cap = cap if cap is not None else mu_field.cap + (max_iter + 1) * deg
    psi = MonomialField.monomial(n - 1, 0, float(n), cap=n - 1)
    total = MonomialField.zero(n - 1)
    for it in range(max_iter):
        step_cap = min(hard_cap, n - 1 + (it + 1) * deg)
        term = mu_field.product(psi, cap=step_cap)
        total = total + term
        if term.l2_norm() < tol:
            return total
        psi = beurling_transform_T(term, cap=step_cap).inside
    raise NoConvergence(f"field Neumann series did not reach tol={tol}")


def beltrami_solve_normalized(
    mu: BeltramiCoefficient,
    tol: float = 1e-12,
    max_iter: int = 200,
    cap: int = 96,
) -> BeltramiSolution:
    """Solve dbar w = mu dz w with w(z) ~ z at infinity, then fix -1, -i, 1.

    The Moebius normalization is applied by post-composition; the Beltrami
    residual is invariant under it and is reported from the exact monomial
    computation.
    """
    from .disc import solution_w_n

    w, residual = solution_w_n(mu, 1, tol=tol, max_iter=max_iter, cap=cap)
    pts = np.asarray(TRIPLE, dtype=complex)
    images = w.outside(pts)
    if (
        min(
            abs(images[0] - images[1]),
            abs(images[1] - images[2]),
            abs(images[0] - images[2]),
        )
        < 1e-12
    ):
        raise MoebiusDegenerate("image triple nearly collides")
    m = moebius_fixing_triple(list(images), list(TRIPLE))
    return BeltramiSolution(w, m, residual)


# ---------------------------------------------------------------------------
# Riemann map and the welding record
# ---------------------------------------------------------------------------


def riemann_map_theodorsen(
    curve_values: np.ndarray,
    n_grid: int = 1024,
    normalize: str = "origin",
    tol: float = 1e-13,
):
    """Conformal map onto the curve interior.

    normalize="origin": F(0) = 0, F'(0) > 0 (the raw Theodorsen map).
    normalize="triple": returns (F, tau) with f0 = F o tau fixing -1, -i, 1;
    the curve must pass through those three points.
    """
    tmap = theodorsen_map(curve_values, n_grid=n_grid, tol=tol)
    if normalize == "origin":
        return tmap
    if normalize != "triple":
        raise ValueError("normalize must be 'origin' or 'triple'")
    phis = [float(tmap.inverse_boundary_angle(np.array([a]))[0]) for a in TRIPLE_ANGLES]
    targets = [np.exp(1j * p) for p in phis]
    tau = moebius_fixing_triple(list(TRIPLE), targets)
    if not tau.preserves_unit_disc(tol=1e-6):
        raise MoebiusDegenerate("triple normalization left the disc")
    return tmap, tau


@dataclass(frozen=True)
class WeldingRecord:
    """Boundary traces of the sewing pair and the welding homeomorphism."""

    f0_trace: CircleFunction
    finf_trace: CircleFunction
    sigma: DiffeoOfCircle
    diagnostics: dict = field(default_factory=dict)

    def export_rows(self, n_pts: int = 256):
        """Rows (theta, f0(theta), finf(theta), sigma(theta)) for CSV export."""
        x = 2 * np.pi * np.arange(n_pts) / n_pts
        f0 = self.f0_trace(x)
        fi = self.finf_trace(x)
        sg = self.sigma(x)
        return [
            (float(t), complex(a), complex(b), float(s))
            for t, a, b, s in zip(x, f0, fi, sg)
        ]


def _sigma_from_maps(
    sol: BeltramiSolution, tmap: TheodorsenMap, tau: MoebiusTransform, n_sigma: int
) -> DiffeoOfCircle:
    x = 2 * np.pi * np.arange(n_sigma) / n_sigma
    curve = sol.moebius(sol.raw.outside(np.exp(1j * x)))
    theta_p = np.unwrap(np.angle(curve))
    phi = tmap.inverse_boundary_angle(theta_p)
    tau_inv = tau.inverse()
    y = np.unwrap(np.angle(tau_inv(np.exp(1j * phi))))
    y = y - 2 * np.pi * np.round((y[0] - x[0]) / (2 * np.pi))
    return DiffeoOfCircle.from_lift_samples(y)


def welding_map(
    mu: BeltramiCoefficient,
    n_grid: int = 1024,
    tol: float = 1e-12,
    cap: int = 96,
    max_iter: int = 200,
    consistency_tol: float = 1e-6,
) -> WeldingRecord:
    """Normalized sewing pair and welding homeomorphism of a coefficient.

    f_inf is the exterior restriction of the normalized plane solution, f_0
    the Theodorsen map of the image curve composed with the disc Moebius
    matching the triple, and sigma = f_0^{-1} o f_inf read off the boundary
    angle correspondences.
    """
    sol = beltrami_solve_normalized(mu, tol=tol, max_iter=max_iter, cap=cap)
    x = 2 * np.pi * np.arange(n_grid) / n_grid
    curve = sol.moebius(sol.raw.outside(np.exp(1j * x)))
    tmap, tau = riemann_map_theodorsen(curve, n_grid=n_grid, normalize="triple")
    sigma = _sigma_from_maps(sol, tmap, tau, n_sigma=n_grid)

    finf_trace = CircleFunction.from_samples(curve, n_modes=min(384, n_grid // 2 - 1))
    f0_vals = tmap(tau(np.exp(1j * x)))
    f0_trace = CircleFunction.from_samples(f0_vals, n_modes=min(384, n_grid // 2 - 1))

    # welding consistency: f0(e^{i sigma(x)}) == finf(e^{ix})
    sub = x[:: max(1, n_grid // 128)]
    lhs = tmap(tau(np.exp(1j * sigma(sub))))
    rhs = sol.moebius(sol.raw.outside(np.exp(1j * sub)))
    gap = float(np.max(np.abs(lhs - rhs)))
    if gap > consistency_tol:
        raise WeldingInconsistent(f"boundary traces disagree by {gap:.2e}")

    triple_err = max(
        sol.triple_defect(),
        float(max(abs(sigma(a) - a) for a in TRIPLE_ANGLES)),
    )
    diag = {
        "beltrami_residual": sol.residual,
        "welding_gap": gap,
        "triple_fix_error": triple_err,
        "theodorsen_iterations": tmap.iterations,
        "theodorsen_contraction": tmap.contraction,
        "sup_mu": mu.sup_norm,
    }
    return WeldingRecord(f0_trace, finf_trace, sigma, diag)


# ---------------------------------------------------------------------------
# reverse direction: coefficient from a circle diffeomorphism
# ---------------------------------------------------------------------------

_C_POLE_TOL = 1e-13


def _cayley_to_disc(zeta):
    return (zeta - 1j) / (zeta + 1j)


def _cayley_to_half_plane(z):
    return 1j * (1.0 + z) / (1.0 - z)


def line_map_from_diffeo(phi: DiffeoOfCircle):
    """Conjugate a normalized circle diffeomorphism to an increasing line map.

    Evaluation goes through the dense lift table so that the extension
    quadrature can hit millions of points cheaply.
    """
    lift = phi.fast_lift()

    def h(x):
        x = np.asarray(x, dtype=float)
        z = _cayley_to_disc(x)
        ang = np.angle(z)
        w = np.exp(1j * lift(ang))
        return _cayley_to_half_plane(w).real

    return h


def dilatation_on_disc_grid(
    phi: DiffeoOfCircle, n_r: int = 256, n_theta: int = 256, n_gl: int = 32
):
    """Sampled dilatation of the conjugated averaging extension on a polar grid.

    Returns (r nodes, theta nodes, kappa values, sup |kappa|).
    """
    h = line_map_from_diffeo(phi)
    i = np.arange(n_r)
    r = np.cos(np.pi * (2 * i + 1) / (4 * n_r))[::-1]  # Chebyshev-Gauss on (0,1)
    th = 2 * np.pi * np.arange(n_theta) / n_theta
    z = r[:, None] * np.exp(1j * th)[None, :]
    zeta = _cayley_to_half_plane(z)
    xs = zeta.real
    ys = zeta.imag
    _, fx, fy = ba_partials(h, xs, ys, n_gl=n_gl)
    fz = 0.5 * (fx - 1j * fy)
    fzb = 0.5 * (fx + 1j * fy)
    mu_half = fzb / fz
    dc = 2j / (1.0 - z) ** 2  # derivative of the half-plane Cayley map
    kappa = mu_half * np.conj(dc) / dc
    return r, th, kappa, float(np.max(np.abs(kappa)))


def project_polar_to_monomials(
    r: np.ndarray,
    th: np.ndarray,
    values: np.ndarray,
    max_mode: int = 24,
    radial_degree: int = 12,
    cap: int | None = None,
):
    """Least-squares projection of smooth polar samples onto the monomial algebra.

    Each angular mode k is fitted radially in the basis r^{|k|} T_q(2r^2-1)
    (the smoothness-forced structure at the origin), then converted to
    monomials z^m zbar^n with m - n = k.  Returns (field, sup residual).
    """
    n_r, n_theta = values.shape
    fhat = np.fft.fft(values, axis=1) / n_theta
    cap = cap if cap is not None else max_mode + 2 * radial_degree + 2
    terms = []
    fitted = np.zeros_like(values)
    u = 2.0 * r * r - 1.0
    chebs = np.polynomial.chebyshev.chebvander(u, radial_degree)  # (n_r, deg+1)
    for k in range(-max_mode, max_mode + 1):
        col = fhat[:, k % n_theta]
        if np.max(np.abs(col)) < 1e-14:
            continue
        design = (r ** abs(k))[:, None] * chebs
        coef, *_ = np.linalg.lstsq(design, col, rcond=None)
        fitted += np.outer(design @ coef, np.exp(1j * k * th))
        poly_u = np.polynomial.chebyshev.cheb2poly(coef)  # powers of u = 2r^2-1
        # convert to powers of r^2
        poly_r2 = np.zeros(radial_degree + 1, dtype=complex)
        for p, cp in enumerate(poly_u):
            if cp == 0:
                continue
            binom = np.polynomial.polynomial.polypow([-1.0, 2.0], p) if p else np.array([1.0])
            poly_r2[: binom.size] += cp * binom
        for q, aq in enumerate(poly_r2):
            if abs(aq) < 1e-15:
                continue
            if k >= 0:
                terms.append((k + q, q, aq))
            else:
                terms.append((q, q - k, aq))
    resid = float(np.max(np.abs(values - fitted)))
    return MonomialField.from_terms(terms, cap), resid


def mu_from_phi(
    phi: DiffeoOfCircle,
    n_r: int = 256,
    n_theta: int = 256,
    max_mode: int = 24,
    radial_degree: int = 12,
    tol: float = 1e-11,
    g_modes: int = 24,
):
    """Recover the structured coefficient of a normalized circle diffeomorphism.

    Extends phi to the disc, solves the normalized dbar problem with the
    extension's dilatation, and evaluates g = -(1/2) S[w(1/z)] from the
    exterior Laurent tail as a power series.  Returns (BeltramiCoefficient,
    diagnostics dict).
    """
    if not phi.is_normalized(tol=1e-7):
        raise AssumptionViolated("diffeomorphism must fix -1, -i, 1")
    r, th, kappa, sup_kappa = dilatation_on_disc_grid(phi, n_r=n_r, n_theta=n_theta)
    if sup_kappa >= 1.0:
        raise AssumptionViolated(f"sup |kappa| = {sup_kappa:.3f} >= 1")
    mu_field, fit_resid = project_polar_to_monomials(
        r, th, kappa, max_mode=max_mode, radial_degree=radial_degree
    )
    s = _neumann_field(mu_field, min(0.999, sup_kappa + fit_resid), 1, tol, 40)
    p = cauchy_transform_P(s, cap=s.cap + 1)
    tail = p.outside

    # G(z) = w(1/z) = 1/z + sum_j b_j z^j, holomorphic Schwarzian at 0
    n_b = min(64, -tail.val if tail.val < 0 else 1)
    g_series_coeffs = np.zeros(n_b + 2, dtype=complex)
    g_series_coeffs[0] = 1.0  # coefficient of z^{-1}
    for j in range(1, n_b + 1):
        g_series_coeffs[j + 1] = tail.coeff(-j)
    big = Series(g_series_coeffs, -1)
    s_g = schwarzian(big, order=g_modes + 4)
    # the z^{-2}, z^{-1} coefficients must cancel; report the leftover
    low = max(abs(s_g.coeff(-2)), abs(s_g.coeff(-1)))
    g_coeffs = np.array([-0.5 * s_g.coeff(p) for p in range(0, g_modes)], dtype=complex)
    recovered = BeltramiCoefficient(g_coeffs)
    nehari_value = 2.0 * recovered.sup_norm  # sup (1-|z|^2)^2 |S[f_inf](1/zbar)|
    diag = {
        "sup_kappa": sup_kappa,
        "fit_residual": fit_resid,
        "schwarzian_lowmode_leftover": low,
        "sup_g": float(np.max(np.abs(recovered.g_value(np.exp(1j * th))))),
        "nehari_value": nehari_value,
        "proposition_bound": 6.0 * sup_kappa,
    }
    return recovered, diag


# ---------------------------------------------------------------------------
# Ahlfors-Weill construction through the Schroedinger equation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AhlforsWeillMap:
    """Quasiconformal map built from two Schroedinger solutions."""

    varphi: Series
    c1: np.ndarray  # descending series of y1 ~ z
    c2: np.ndarray  # descending series of y2 ~ 1
    series_radius: float

    def _y_series(self, z, which: int):
        c = self.c1 if which == 1 else self.c2
        sigma = 1 if which == 1 else 0
        z = np.asarray(z, dtype=complex)
        y = np.zeros(z.shape, dtype=complex)
        dy = np.zeros(z.shape, dtype=complex)
        for p, cp in enumerate(c):
            y = y + cp * z ** (sigma - p)
            dy = dy + cp * (sigma - p) * z ** (sigma - p - 1)
        return y, dy

    def _y_ode(self, z, which: int):
        z = complex(z)
        z0 = self.series_radius * z / abs(z)
        y0, dy0 = self._y_series(np.array([z0]), which)

        def rhs(t, u):
            zz = z0 + t * (z - z0)
            phi = complex(self.varphi(zz))
            dz = z - z0
            return [dz * u[1], -0.5 * phi * u[0] * dz]

        sol = solve_ivp(
            rhs,
            (0.0, 1.0),
            [complex(y0[0]), complex(dy0[0])],
            method="RK45",
            rtol=1e-10,
            atol=1e-12,
        )
        return complex(sol.y[0, -1]), complex(sol.y[1, -1])

    def y(self, z, which: int):
        z = complex(z)
        if abs(z) >= self.series_radius:
            yv, dyv = self._y_series(np.array([z]), which)
            return complex(yv[0]), complex(dyv[0])
        return self._y_ode(z, which)

    def wronskian_defect(self, z) -> float:
        y1, d1 = self.y(z, 1)
        y2, d2 = self.y(z, 2)
        w = y1 * d2 - d1 * y2
        return abs(w + 1.0)

    def __call__(self, z):
        z = complex(z)
        if abs(z) > 1.0:
            y1, _ = self.y(z, 1)
            y2, _ = self.y(z, 2)
            if abs(y2) < 1e-14:
                return complex(np.inf, 0)
            return y1 / y2
        zr = 1.0 / np.conj(z) if z != 0 else complex(np.inf, 0)
        y1, d1 = self.y(zr, 1)
        y2, d2 = self.y(zr, 2)
        corr = z - zr
        num = y1 + corr * d1
        den = y2 + corr * d2
        if abs(den) < 1e-14:
            return complex(np.inf, 0)
        return num / den

    def schwarzian_defect(self, z, radius: float | None = None) -> float:
        """|S[F](z) - varphi(z)| at an exterior point, numerically."""
        from .series import schwarzian_at

        z = complex(z)
        rad = radius if radius is not None else 0.25 * (abs(z) - 1.0)
        s_num = schwarzian_at(lambda w: self(w), z, radius=rad, m=24)
        return abs(s_num - complex(self.varphi(z)))

    def dilatation_defect(self, z, h: float = 1e-4) -> float:
        """Interior check of mu against -(1/2)(1-|z|^2)^2 zbar^{-4} varphi(1/zbar)."""
        z = complex(z)
        fx = (self(z + h) - self(z - h)) / (2 * h)
        fy = (self(z + 1j * h) - self(z - 1j * h)) / (2 * h)
        fz = 0.5 * (fx - 1j * fy)
        fzb = 0.5 * (fx + 1j * fy)
        mu_num = fzb / fz
        zb = np.conj(z)
        mu_ref = -0.5 * (1 - abs(z) ** 2) ** 2 / zb ** 4 * complex(self.varphi(1.0 / zb))
        return abs(mu_num - mu_ref)


def ahlfors_weill_map(varphi: Series, series_radius: float = 2.5, n_series: int = 60) -> AhlforsWeillMap:
    """Assemble the quasiconformal map with Schwarzian varphi on the exterior.

    ``varphi`` must be holomorphic on |z| > 1 with (1-|z|^2)^2 |varphi| < 2
    there (checked on samples; BoundViolated otherwise).  Two solutions of
    y'' + varphi y / 2 = 0 are generated from their series at infinity and
    continued inward by adaptive stepping; the Wronskian is monitored.
    """
    if varphi.top > -3:
        raise BoundViolated("varphi must decay at least like z^-4 at infinity")
    rr = np.linspace(1.05, 6.0, 40)
    tt = np.linspace(0, 2 * np.pi, 17)[:-1]
    zz = rr[:, None] * np.exp(1j * tt)[None, :]
    vals = (1 - np.abs(zz) ** 2) ** 2 * np.abs(varphi(zz))
    if float(np.max(vals)) >= 2.0:
        raise BoundViolated("(1-|z|^2)^2 |varphi| reaches 2 on the exterior")

    def coeffs(sigma: int) -> np.ndarray:
        c = np.zeros(n_series, dtype=complex)
        c[0] = 1.0
        for q in range(2, n_series):
            acc = 0.0 + 0.0j
            for j in range(varphi.val, varphi.top):
                pj = varphi.coeff(j)
                if pj == 0:
                    continue
                idx = q + 2 + j  # c index p with p = q + 2 + j (j negative)
                if 0 <= idx < q:
                    acc += pj * c[idx]
            denom = (sigma - q) * (sigma - q - 1)
            c[q] = -0.5 * acc / denom
        return c

    aw = AhlforsWeillMap(varphi, coeffs(1), coeffs(0), series_radius)
    for z in [series_radius, series_radius * 1j, 1.2, -1.3j]:
        if aw.wronskian_defect(z) > 1e-6:
            raise WronskianCollapse("solutions lost independence")
    return aw
