"""Independent quadrature oracles for the disc transforms.

These never touch the closed-form monomial calculus.  For a target point
inside the disc the integration runs in polar coordinates centered at the
target, which removes the kernel singularity analytically (the Jacobian
cancels 1/|z - zeta|); the radial integrand is then a polynomial integrated
exactly by Gauss-Legendre while the angular integral of a smooth periodic
function is handled by the trapezoid rule.  Outside targets use plain polar
coordinates about the origin.
"""

from __future__ import annotations

import numpy as np

from .disc import MonomialField
from .errors import SingularityTooClose


def _ray_length(zeta: complex, phi: np.ndarray) -> np.ndarray:
    """Distance from an interior point to the unit circle along direction phi."""
    a = (np.conj(zeta) * np.exp(1j * phi)).real
    return -a + np.sqrt(1.0 - abs(zeta) ** 2 + a * a)


def _gl(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w  # on [0, 1]


def quadrature_oracle_P(
    h: MonomialField,
    zeta: complex,
    n_theta: int = 400,
    n_r: int = 400,
    guard: float = 0.02,
) -> complex:
    """-(1/pi) integral over the disc of h(z)/(z - zeta) dA by quadrature.

    Raises SingularityTooClose when |zeta| falls inside the guard band around
    the unit circle where neither polar scheme resolves the kernel.
    """
    zeta = complex(zeta)
    rho = abs(zeta)
    if 1.0 - guard < rho < 1.0 + 5 * guard:
        raise SingularityTooClose(f"|zeta| = {rho:.4f} is inside the guard band")
    deg = h.degree()
    if rho < 1.0:
        phi = 2 * np.pi * np.arange(n_theta) / n_theta
        rmax = _ray_length(zeta, phi)
        gx, gw = _gl(max(4, deg // 2 + 2))
        # z = zeta + t * rmax(phi) e^{i phi};  dA = t rmax^2 dt dphi; kernel 1/(z-zeta)
        t = gx[None, :]
        z = zeta + (rmax[:, None] * t) * np.exp(1j * phi)[:, None]
        vals = h(z)
        radial = (vals * gw[None, :]).sum(axis=1) * rmax
        ang = (radial * np.exp(-1j * phi)).sum() * (2 * np.pi / n_theta)
        return complex(-ang / np.pi)
    # outside: smooth integrand over the disc in origin-centered polar coords
    phi = 2 * np.pi * np.arange(n_theta) / n_theta
    gx, gw = _gl(min(n_r, 160))
    z = gx[:, None] * np.exp(1j * phi)[None, :]
    vals = h(z) / (z - zeta)
    integral = ((vals * gx[:, None]).sum(axis=1) * (2 * np.pi / n_theta) * gw).sum()
    return complex(-integral / np.pi)


def quadrature_oracle_T(
    h: MonomialField,
    zeta: complex,
    n_theta: int = 400,
    n_r: int = 400,
    guard: float = 0.02,
) -> complex:
    """Principal-value quadrature of -(1/pi) integral h(z)/(z - zeta)^2 dA.

    For interior targets the epsilon -> 0 limit is taken analytically: in
    target-centered polar coordinates the divergent log(eps) term carries the
    angular factor e^{-2 i phi} whose mean against the constant h(zeta)
    vanishes, leaving a log(rmax(phi)) boundary term plus a polynomial
    remainder integrated exactly.
    """
    zeta = complex(zeta)
    rho = abs(zeta)
    if 1.0 - guard < rho < 1.0 + 5 * guard:
        raise SingularityTooClose(f"|zeta| = {rho:.4f} is inside the guard band")
    if rho < 1.0:
        phi = 2 * np.pi * np.arange(n_theta) / n_theta
        rmax = _ray_length(zeta, phi)
        h0 = complex(h(np.array([zeta]))[0])
        # integral over r in (0, rmax] of [h(zeta + r e^{i phi}) - h0] / r dr:
        # the bracket vanishes linearly at r = 0, so (bracket / r) is a
        # polynomial in r; Gauss-Legendre is exact on it.
        deg = h.degree()
        gx, gw = _gl(max(4, deg // 2 + 3))
        t = gx[None, :]
        z = zeta + (rmax[:, None] * t) * np.exp(1j * phi)[:, None]
        vals = h(z) - h0
        # with r = t rmax the measure dr/r = dt/t, so rmax cancels here
        radial = (vals / t * gw[None, :]).sum(axis=1)
        log_term = h0 * np.log(rmax)
        ang = ((radial + log_term) * np.exp(-2j * phi)).sum() * (2 * np.pi / n_theta)
        return complex(-ang / np.pi)
    phi = 2 * np.pi * np.arange(n_theta) / n_theta
    gx, gw = _gl(min(n_r, 160))
    z = gx[:, None] * np.exp(1j * phi)[None, :]
    vals = h(z) / (z - zeta) ** 2
    integral = ((vals * gx[:, None]).sum(axis=1) * (2 * np.pi / n_theta) * gw).sum()
    return complex(-integral / np.pi)


def radial_integral(weight_power: int, r_power: int, n_nodes: int = 64) -> float:
    """Gauss-Legendre value of int_0^1 (1 - r^2)^weight_power r^r_power dr.

    Exact (to roundoff) whenever the integrand is a polynomial of degree
    below 2 n_nodes.
    """
    x, w = _gl(n_nodes)
    return float(np.sum(w * (1.0 - x * x) ** weight_power * x ** r_power))


def wp_radial_moment(n: int, n_nodes: int = 64) -> float:
    """Weighted-norm radial moment of z^n: (1/2) int_0^1 (1-r^2)^2 r^{2n+1} dr.

    The factor 1/2 is the metric normalization under which the mode weights
    n(n^2-1) and the pairing weights sqrt(2 n (n^2-1)) are mutually
    consistent; the closed form is 1/(2(n+1)(n+2)(n+3)).
    """
    return 0.5 * radial_integral(2, 2 * n + 1, n_nodes)
