"""Truncated series arithmetic: Laurent series in z and Fourier series on S^1.

Two representations are used throughout the package:

* ``Series`` -- a finite window of Laurent coefficients c_j z^j for
  j = val .. val+len-1, with ordinary truncated arithmetic.  This is the
  arena for the Schwarzian derivative and for expansions at 0 or infinity.
* ``CircleFunction`` -- Fourier coefficients a_k, k in [-N, N], of a
  function on the unit circle evaluated at z = e^{ix}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InverseUndefined, SingularDerivative

_PRUNE = 1e-300


class Series:
    """Truncated Laurent series sum_j c[j - val] z^j.

    ``val`` may be negative (pole) or positive.  Arithmetic truncates the
    result so that only exponents below ``top`` (exclusive) are kept, where
    ``top`` is the smallest top exponent among the operands.
    """

    __slots__ = ("val", "coeffs")

    def __init__(self, coeffs, val: int = 0):
        c = np.asarray(coeffs, dtype=complex)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficients must be a non-empty 1-D array")
        self.coeffs = c
        self.val = int(val)

    # -- basic structure ---------------------------------------------------

    @property
    def top(self) -> int:
        """One past the largest represented exponent."""
        return self.val + self.coeffs.size

    def coeff(self, j: int) -> complex:
        if self.val <= j < self.top:
            return complex(self.coeffs[j - self.val])
        return 0.0 + 0.0j

    def trimmed(self, tol: float = 0.0) -> "Series":
        """Drop leading/trailing coefficients with |c| <= tol."""
        c = self.coeffs
        keep = np.where(np.abs(c) > tol)[0]
        if keep.size == 0:
            return Series([0.0], 0)
        lo, hi = keep[0], keep[-1]
        return Series(c[lo : hi + 1].copy(), self.val + lo)

    def __repr__(self) -> str:
        return f"Series(val={self.val}, n={self.coeffs.size})"

    # -- arithmetic ---------------------------------------------------------

    def _aligned(self, other: "Series"):
        lo = min(self.val, other.val)
        hi = min(self.top, other.top)
        if hi <= lo:
            raise ValueError("series windows do not overlap")
        a = np.zeros(hi - lo, dtype=complex)
        b = np.zeros(hi - lo, dtype=complex)
        sa = self.coeffs[: hi - self.val]
        sb = other.coeffs[: hi - other.val]
        a[self.val - lo : self.val - lo + sa.size] = sa
        b[other.val - lo : other.val - lo + sb.size] = sb
        return a, b, lo

    def __add__(self, other):
        if np.isscalar(other):
            return self.add_exact(Series([other], 0))
        a, b, lo = self._aligned(other)
        return Series(a + b, lo)

    def add_exact(self, other: "Series") -> "Series":
        """Union-window addition for series that are exact (no hidden tail)."""
        lo = min(self.val, other.val)
        hi = max(self.top, other.top)
        c = np.zeros(hi - lo, dtype=complex)
        c[self.val - lo : self.top - lo] += self.coeffs
        c[other.val - lo : other.top - lo] += other.coeffs
        return Series(c, lo)

    def __sub__(self, other):
        if np.isscalar(other):
            return self.add_exact(Series([-other], 0))
        a, b, lo = self._aligned(other)
        return Series(a - b, lo)

    def __mul__(self, other):
        if np.isscalar(other):
            return Series(self.coeffs * other, self.val)
        # keep the shortest guaranteed-correct window
        n = min(self.coeffs.size, other.coeffs.size)
        full = np.convolve(self.coeffs, other.coeffs)
        return Series(full[:n], self.val + other.val)

    __rmul__ = __mul__

    def reciprocal(self, n: int | None = None) -> "Series":
        """1/self, truncated to n coefficients; leading term must be nonzero."""
        if n is None:
            n = self.coeffs.size
        lead = self.coeffs[0]
        if abs(lead) < 1e-14:
            raise SingularDerivative("leading coefficient below 1e-14")
        c = self.coeffs[:n] / lead
        inv = np.zeros(n, dtype=complex)
        inv[0] = 1.0
        for j in range(1, n):
            upto = min(j, c.size - 1)
            inv[j] = -np.dot(c[1 : upto + 1], inv[j - upto : j][::-1])
        return Series(inv / lead, -self.val)

    def differentiate(self) -> "Series":
        """d/dz."""
        j = np.arange(self.val, self.top)
        c = self.coeffs * j
        if self.val == 0:
            if c.size == 1:
                return Series([0.0], 0)
            return Series(c[1:], 0)
        return Series(c, self.val - 1)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        j = np.arange(self.val, self.top)
        return (self.coeffs * z[..., None] ** j).sum(axis=-1)

    def compose_moebius(self, a: complex, b: complex, c: complex, d: complex) -> "Series":
        """(a*self + b) / (c*self + d), truncated to this window length."""
        num = self * a + b
        den = self * c + d
        return num * den.reciprocal()


def schwarzian(f: Series | list | np.ndarray, order: int = 16) -> Series:
    """Schwarzian derivative f'''/f' - (3/2)(f''/f')^2 as a truncated series.

    ``f`` is a power/Laurent series; the leading coefficient of f' must be
    nonzero (SingularDerivative otherwise).  The result window is truncated
    to ``order`` coefficients.
    """
    if not isinstance(f, Series):
        f = Series(f, 0)
    f = f.trimmed(0.0)
    fp = f.differentiate().trimmed(0.0)
    if fp.coeffs.size == 0 or abs(fp.coeffs[0]) < 1e-14:
        raise SingularDerivative("f' has leading coefficient below 1e-14")
    fpp = fp.differentiate()
    fppp = fpp.differentiate()
    n = max(4, min(order, fp.coeffs.size))
    inv = fp.reciprocal(n)
    r3 = fppp * inv
    r2 = fpp * inv
    out = r3 - (r2 * r2) * 1.5
    return out


def taylor_from_samples(fun, z0: complex, radius: float = 0.1, m: int = 32) -> np.ndarray:
    """Taylor coefficients of a holomorphic ``fun`` at z0 via circle samples.

    Returns c[0..m-1] with fun(z) ~ sum c_j (z-z0)^j; standard Cauchy-integral
    trick, spectrally accurate when fun is analytic on the sampling circle.
    """
    k = np.arange(m)
    zs = z0 + radius * np.exp(2j * np.pi * k / m)
    vals = np.asarray([fun(z) for z in zs], dtype=complex)
    c = np.fft.fft(vals) / m
    return c / radius ** k


def schwarzian_at(fun, z0: complex, radius: float = 0.1, m: int = 32) -> complex:
    """Numerical Schwarzian of a holomorphic function at a point."""
    c = taylor_from_samples(fun, z0, radius, m)
    if abs(c[1]) < 1e-14:
        raise SingularDerivative("f'(z0) below 1e-14")
    return complex(6 * c[3] / c[1] - 6 * (c[2] / c[1]) ** 2)


@dataclass(frozen=True)
class CircleFunction:
    """Fourier series sum_{k=-N..N} a_k e^{ikx} on the unit circle.

    coeffs has length 2N+1 ordered k = -N..N.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size % 2 != 1:
            raise ValueError("coeffs must have odd length (k = -N..N)")
        object.__setattr__(self, "coeffs", c)

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(n_modes: int) -> "CircleFunction":
        return CircleFunction(np.zeros(2 * n_modes + 1, dtype=complex))

    @staticmethod
    def from_dict(d: dict[int, complex], n_modes: int | None = None) -> "CircleFunction":
        if n_modes is None:
            n_modes = max(abs(k) for k in d) if d else 0
        c = np.zeros(2 * n_modes + 1, dtype=complex)
        for k, v in d.items():
            if abs(k) > n_modes:
                raise ValueError(f"mode {k} outside truncation {n_modes}")
            c[k + n_modes] = v
        return CircleFunction(c)

    @staticmethod
    def from_samples(values: np.ndarray, n_modes: int | None = None) -> "CircleFunction":
        """Fit from samples on the uniform grid x_j = 2 pi j / M."""
        values = np.asarray(values, dtype=complex)
        m = values.size
        fhat = np.fft.fft(values) / m
        if n_modes is None:
            n_modes = (m - 1) // 2
        n_modes = min(n_modes, (m - 1) // 2)
        c = np.zeros(2 * n_modes + 1, dtype=complex)
        for k in range(-n_modes, n_modes + 1):
            c[k + n_modes] = fhat[k % m]
        return CircleFunction(c)

    # -- structure ----------------------------------------------------------

    @property
    def n_modes(self) -> int:
        return (self.coeffs.size - 1) // 2

    def coeff(self, k: int) -> complex:
        n = self.n_modes
        if -n <= k <= n:
            return complex(self.coeffs[k + n])
        return 0.0 + 0.0j

    def modes(self) -> np.ndarray:
        n = self.n_modes
        return np.arange(-n, n + 1)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        k = self.modes()
        return (self.coeffs * np.exp(1j * np.outer(x, k))).sum(axis=-1).reshape(x.shape)

    def sample(self, m: int) -> np.ndarray:
        """Values on the uniform grid of m points (inverse FFT)."""
        fhat = np.zeros(m, dtype=complex)
        n = self.n_modes
        for k in range(-n, n + 1):
            fhat[k % m] += self.coeffs[k + n]
        return np.fft.ifft(fhat) * m

    # -- algebra -------------------------------------------------------------

    def __add__(self, other: "CircleFunction") -> "CircleFunction":
        n = max(self.n_modes, other.n_modes)
        c = np.zeros(2 * n + 1, dtype=complex)
        c[n - self.n_modes : n + self.n_modes + 1] += self.coeffs
        c[n - other.n_modes : n + other.n_modes + 1] += other.coeffs
        return CircleFunction(c)

    def __sub__(self, other: "CircleFunction") -> "CircleFunction":
        return self + (other * (-1.0))

    def __mul__(self, s):
        if np.isscalar(s):
            return CircleFunction(self.coeffs * s)
        return self.product(s)

    __rmul__ = __mul__

    def product(self, other: "CircleFunction", n_modes: int | None = None) -> "CircleFunction":
        """Exact coefficient convolution, truncated to n_modes."""
        full = np.convolve(self.coeffs, other.coeffs)
        n_full = self.n_modes + other.n_modes
        if n_modes is None:
            n_modes = n_full
        out = np.zeros(2 * n_modes + 1, dtype=complex)
        lo = max(-n_modes, -n_full)
        hi = min(n_modes, n_full)
        out[lo + n_modes : hi + n_modes + 1] = full[lo + n_full : hi + n_full + 1]
        return CircleFunction(out)

    def derivative(self, order: int = 1) -> "CircleFunction":
        """d/dx applied ``order`` times (multiplication by (ik)^order)."""
        k = self.modes()
        return CircleFunction(self.coeffs * (1j * k) ** order)

    def z_derivative(self) -> "CircleFunction":
        """d/dz of sum a_k z^k restricted to the circle: sum k a_k z^{k-1}."""
        n = self.n_modes
        k = self.modes()
        shifted = np.zeros(2 * n + 1, dtype=complex)
        shifted[:-1] = (self.coeffs * k)[1:]
        return CircleFunction(shifted)

    def conjugate(self) -> "CircleFunction":
        return CircleFunction(np.conj(self.coeffs[::-1]))

    # -- predicates and norms -------------------------------------------------

    def l2_norm(self) -> float:
        """L^2 norm for the normalized measure dx/(2 pi); equals the l2 coefficient norm."""
        return float(np.linalg.norm(self.coeffs))

    def is_real(self, tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.coeffs - np.conj(self.coeffs[::-1]))) <= tol * max(1.0, self.l2_norm()))

    def in_h_plus(self, tol: float = 0.0) -> bool:
        n = self.n_modes
        return bool(np.all(np.abs(self.coeffs[:n]) <= tol))

    def in_h_minus(self, tol: float = 0.0) -> bool:
        n = self.n_modes
        return bool(np.all(np.abs(self.coeffs[n:]) <= tol))

    def h_plus_part(self) -> "CircleFunction":
        c = self.coeffs.copy()
        c[: self.n_modes] = 0.0
        return CircleFunction(c)

    def h_minus_part(self) -> "CircleFunction":
        c = self.coeffs.copy()
        c[self.n_modes :] = 0.0
        return CircleFunction(c)

    # -- serialization ---------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "N": self.n_modes,
            "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs],
        }

    @staticmethod
    def from_json_dict(d: dict) -> "CircleFunction":
        c = np.array([complex(re, im) for re, im in d["coeffs"]])
        if c.size != 2 * d["N"] + 1:
            raise ValueError("inconsistent serialized CircleFunction")
        return CircleFunction(c)
