"""FFT conjugation iteration for the Riemann map of a nearly circular domain.

For a Jordan curve that is star-shaped about the origin with polar graph
rho(theta), the boundary correspondence theta(phi) of the conformal map
F: D_0 -> interior with F(0) = 0, F'(0) > 0 satisfies

    theta(phi) = phi + K[log rho(theta(phi))](phi),

where K is the circle conjugation operator (Fourier multiplier -i sign k).
The fixed point is found by direct iteration, which contracts when
max |d log rho / d theta| < 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IterationDiverged, NotStarShaped
from .series import CircleFunction


def _conjugate_coeffs(fhat: np.ndarray) -> np.ndarray:
    """Conjugation multiplier on raw FFT coefficients (length n, numpy order)."""
    n = fhat.size
    k = np.fft.fftfreq(n, d=1.0 / n)
    return fhat * (-1j * np.sign(k))


@dataclass(frozen=True)
class TheodorsenMap:
    """Converged boundary correspondence plus the interior power series."""

    phi_grid: np.ndarray
    theta_of_phi: np.ndarray
    interior_coeffs: np.ndarray  # h_k of log(F(z)/z) = sum_{k>=0} h_k z^k
    iterations: int
    contraction: float

    @property
    def n_grid(self) -> int:
        return self.phi_grid.size

    def _deviation_modes(self):
        dev = self.theta_of_phi - self.phi_grid
        n = dev.size
        devhat = np.fft.fft(dev) / n
        k = np.fft.fftfreq(n, d=1.0 / n)
        keep = np.abs(k) < n // 2  # drop the ambiguous Nyquist mode
        return k[keep], devhat[keep]

    def boundary_angle(self, phi):
        """theta(phi) by trigonometric interpolation of the deviation."""
        phi = np.asarray(phi, dtype=float)
        k, c = self._deviation_modes()
        vals = np.exp(1j * np.outer(phi.ravel(), k)) @ c
        return phi + vals.real.reshape(phi.shape)

    def boundary_angle_derivative(self, phi):
        phi = np.asarray(phi, dtype=float)
        k, c = self._deviation_modes()
        vals = np.exp(1j * np.outer(phi.ravel(), k)) @ (1j * k * c)
        return 1.0 + vals.real.reshape(phi.shape)

    def inverse_boundary_angle(self, theta, tol: float = 1e-13):
        """Newton solve of theta(phi) = theta."""
        theta = np.asarray(theta, dtype=float)
        phi = theta.copy()
        for _ in range(80):
            f = self.boundary_angle(phi) - theta
            d = self.boundary_angle_derivative(phi)
            step = f / d
            phi = phi - step
            if np.max(np.abs(step)) < tol:
                return phi
        raise IterationDiverged("inverse boundary angle did not converge")

    def __call__(self, z):
        """F(z) = z exp(sum h_k z^k) on the closed disc."""
        z = np.asarray(z, dtype=complex)
        acc = np.zeros(z.shape, dtype=complex)
        for k in range(self.interior_coeffs.size - 1, -1, -1):
            acc = acc * z + self.interior_coeffs[k]
        return z * np.exp(acc)


def theodorsen_map(
    curve_values: np.ndarray,
    n_grid: int = 1024,
    tol: float = 1e-13,
    max_iter: int = 200,
) -> TheodorsenMap:
    """Conformal map of the disc onto the interior of a star-shaped curve.

    ``curve_values`` are samples of the Jordan curve on a uniform parameter
    grid (any orientation-preserving parametrization).  Raises NotStarShaped
    when the polar angle is not monotone or the contraction bound fails,
    IterationDiverged when the fixed point stalls.
    """
    gamma = np.asarray(curve_values, dtype=complex)
    if np.min(np.abs(gamma)) < 1e-12:
        raise NotStarShaped("curve passes through the origin")
    ang = np.unwrap(np.angle(gamma))
    logr = np.log(np.abs(gamma))

    # resample log rho on a uniform theta grid through the lift ang(x);
    # the lift construction also enforces a single positive winding
    from .diffeo import DiffeoOfCircle
    from .errors import NonMonotone

    m = gamma.size
    shift = ang[0]
    try:
        lift = DiffeoOfCircle.from_lift_samples(ang - shift)
    except NonMonotone as exc:
        raise NotStarShaped(f"polar angle is not strictly increasing: {exc}") from exc
    theta_u = 2 * np.pi * np.arange(n_grid) / n_grid
    x_at = lift.invert_at((theta_u - shift) % (2 * np.pi))
    logr_f = CircleFunction.from_samples(logr.astype(complex), n_modes=(m - 1) // 2)
    lam = logr_f(x_at).real
    lam_hat_small = CircleFunction.from_samples(lam.astype(complex), n_modes=min((n_grid - 1) // 2, m // 2))
    dlam = lam_hat_small.derivative()(theta_u).real
    contraction = float(np.max(np.abs(dlam)))
    if contraction >= 1.0:
        raise NotStarShaped(
            f"Theodorsen contraction fails: max |d log rho/d theta| = {contraction:.3f}"
        )

    phi = theta_u
    delta = np.zeros(n_grid)
    for it in range(1, max_iter + 1):
        lam_vals = lam_hat_small(phi + delta).real
        new_delta = np.real(np.fft.ifft(_conjugate_coeffs(np.fft.fft(lam_vals))))
        change = float(np.max(np.abs(new_delta - delta)))
        delta = new_delta
        if change < tol:
            break
    else:
        raise IterationDiverged(f"Theodorsen iteration stalled above tol={tol}")

    theta_of_phi = phi + delta
    u = lam_hat_small(theta_of_phi).real
    uhat = np.fft.fft(u) / n_grid
    n_keep = n_grid // 2
    h = np.zeros(n_keep, dtype=complex)
    h[0] = uhat[0]
    h[1:] = 2.0 * uhat[1:n_keep]
    return TheodorsenMap(phi, theta_of_phi, h, it, contraction)
