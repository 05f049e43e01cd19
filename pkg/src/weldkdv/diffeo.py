"""Orientation-preserving circle diffeomorphisms via periodic lifts.

A diffeomorphism is stored through its lift psi with psi(x + 2 pi) =
psi(x) + 2 pi: uniform samples of psi plus Fourier coefficients of the
periodic deviation psi(x) - x.  Evaluation, derivatives, composition and
inversion all go through the trigonometric representation, so they stay
spectrally accurate for smooth maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NonDiffeomorphism, NonMonotone
from .moebius import MoebiusTransform
from .series import CircleFunction

_TRIPLE = (np.pi, 1.5 * np.pi, 0.0)  # lifts of -1, -i, 1


@dataclass(frozen=True)
class DiffeoOfCircle:
    """Lift samples on a uniform grid plus the deviation's Fourier series."""

    samples: np.ndarray
    deviation: CircleFunction
    orientation: int = 1

    @staticmethod
    def from_lift_samples(values: np.ndarray) -> "DiffeoOfCircle":
        values = np.asarray(values, dtype=float)
        m = values.size
        x = 2 * np.pi * np.arange(m) / m
        dev = values - x
        devf = CircleFunction.from_samples(dev.astype(complex), n_modes=(m - 1) // 2)
        d = DiffeoOfCircle(values, devf)
        d._check_monotone()
        return d

    @staticmethod
    def from_deviation(dev: CircleFunction, n_grid: int = 1024) -> "DiffeoOfCircle":
        x = 2 * np.pi * np.arange(n_grid) / n_grid
        vals = x + dev(x).real
        d = DiffeoOfCircle(vals, dev)
        d._check_monotone()
        return d

    @staticmethod
    def identity(n_grid: int = 256) -> "DiffeoOfCircle":
        x = 2 * np.pi * np.arange(n_grid) / n_grid
        return DiffeoOfCircle(x, CircleFunction.zero(1))

    @staticmethod
    def from_moebius(m: MoebiusTransform, n_grid: int = 1024) -> "DiffeoOfCircle":
        """Boundary circle map of a disc-preserving Moebius transform."""
        if not m.preserves_unit_disc(tol=1e-8):
            raise NonDiffeomorphism("Moebius transform does not preserve the disc")
        x = 2 * np.pi * np.arange(n_grid) / n_grid
        w = m(np.exp(1j * x))
        psi = np.unwrap(np.angle(w))
        psi = psi - psi[0] + float(np.angle(w[0]))
        if psi[-1] < psi[0]:
            raise NonDiffeomorphism("orientation-reversing boundary map")
        return DiffeoOfCircle.from_lift_samples(psi)

    # -- structure ----------------------------------------------------------

    def _check_monotone(self):
        v = self.samples
        dv = np.diff(np.concatenate((v, [v[0] + 2 * np.pi])))
        if np.any(dv <= 0):
            raise NonMonotone("lift samples are not strictly increasing")

    @property
    def n_grid(self) -> int:
        return self.samples.size

    def __call__(self, x):
        """Lift value psi(x), quasiperiodic: psi(x + 2 pi k) = psi(x) + 2 pi k."""
        x = np.asarray(x, dtype=float)
        return x + self.deviation(x).real

    def derivative(self, x):
        x = np.asarray(x, dtype=float)
        return 1.0 + self.deviation.derivative()(x).real

    def circle_map(self, z):
        """Image of boundary points z = e^{ix}."""
        z = np.asarray(z, dtype=complex)
        x = np.angle(z)
        return np.exp(1j * self(x))

    def is_normalized(self, tol: float = 1e-9) -> bool:
        """Fixes -1, -i, 1 (lift angles pi, 3pi/2, 0)."""
        for a in _TRIPLE:
            d = (self(a) - a + np.pi) % (2 * np.pi) - np.pi
            if abs(d) > tol:
                return False
        return True

    def min_derivative(self, n: int = 2048) -> float:
        x = 2 * np.pi * np.arange(n) / n
        return float(np.min(self.derivative(x)))

    # -- group operations -----------------------------------------------------

    def compose(self, other: "DiffeoOfCircle") -> "DiffeoOfCircle":
        """(self o other)(x) = self(other(x))."""
        n = max(self.n_grid, other.n_grid)
        x = 2 * np.pi * np.arange(n) / n
        vals = self(other(x))
        return DiffeoOfCircle.from_lift_samples(vals)

    def inverse(self) -> "DiffeoOfCircle":
        """Newton inversion of the lift on a uniform grid."""
        n = self.n_grid
        y = 2 * np.pi * np.arange(n) / n
        x = y.copy()
        for _ in range(60):
            f = self(x) - y
            d = self.derivative(x)
            if np.any(d <= 0):
                raise NonDiffeomorphism("derivative vanished during inversion")
            step = f / d
            x = x - step
            if np.max(np.abs(step)) < 1e-14:
                break
        else:
            raise NonDiffeomorphism("lift inversion did not converge")
        return DiffeoOfCircle.from_lift_samples(x)

    def invert_at(self, y):
        """Pointwise Newton solve of self(x) = y."""
        y = np.asarray(y, dtype=float)
        x = y.copy()
        for _ in range(60):
            step = (self(x) - y) / self.derivative(x)
            x = x - step
            if np.max(np.abs(step)) < 1e-14:
                return x
        raise NonDiffeomorphism("pointwise inversion did not converge")

    def sup_distance_to_identity(self) -> float:
        n = max(self.n_grid, 2048)
        x = 2 * np.pi * np.arange(n) / n
        return float(np.max(np.abs(self(x) - x)))

    def fast_lift(self, n_table: int = 1 << 16):
        """Cheap vectorized lift evaluator backed by a dense deviation table.

        The deviation is sampled exactly on n_table points (zero-padded
        inverse FFT of its Fourier coefficients) and evaluated by linear
        interpolation, so huge point sets cost O(1) per point instead of a
        full trigonometric sum.
        """
        dev = self.deviation.sample(n_table).real
        table = np.concatenate((dev, dev[:1]))
        step = 2 * np.pi / n_table

        def lift(x):
            x = np.asarray(x, dtype=float)
            frac = np.mod(x, 2 * np.pi)
            return x + np.interp(frac, np.arange(n_table + 1) * step, table)

        return lift
