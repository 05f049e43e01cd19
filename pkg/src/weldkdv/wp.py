"""Weighted norms on circle functions and the tangent/cotangent pairing.

Tangent vectors at the base point are expanded over the orthonormal basis
e_k = z^k / sqrt(k(k^2-1)), k >= 2, so their weighted norm is the plain l2
norm of the coordinate vector t.  The pairing map A sends e_k to
sqrt(2 k (k^2-1)) z^{k-2} dz, a quadratic-differential profile on the circle.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InverseUndefined, NonMonotone
from .series import CircleFunction


def basis_weight(k: np.ndarray | int):
    """k(k^2 - 1) for the mode weights."""
    k = np.asarray(k, dtype=float)
    return k * (k * k - 1.0)


@dataclass(frozen=True)
class TangentVector:
    """Coordinates t_k, k = 2..K, over the orthonormal e_k basis."""

    t: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "t", np.asarray(self.t, dtype=complex))

    @staticmethod
    def single_mode(k: int, value: complex, k_max: int | None = None) -> "TangentVector":
        if k < 2:
            raise ValueError("tangent modes start at k = 2")
        k_max = k_max or k
        t = np.zeros(k_max - 1, dtype=complex)
        t[k - 2] = value
        return TangentVector(t)

    @property
    def k_max(self) -> int:
        return self.t.size + 1

    def ks(self) -> np.ndarray:
        return np.arange(2, self.k_max + 1)

    def norm(self) -> float:
        return float(np.linalg.norm(self.t))

    def monomial_coeffs(self) -> np.ndarray:
        """a_k of sum a_k z^k (k = 0..k_max), with a_k = t_k / sqrt(k(k^2-1))."""
        a = np.zeros(self.k_max + 1, dtype=complex)
        ks = self.ks()
        a[2:] = self.t / np.sqrt(basis_weight(ks))
        return a

    def to_circle_function(self, n_modes: int | None = None) -> CircleFunction:
        a = self.monomial_coeffs()
        n = n_modes or self.k_max
        c = np.zeros(2 * n + 1, dtype=complex)
        c[n : n + a.size] = a
        return CircleFunction(c)


@dataclass(frozen=True)
class QuadraticDifferential:
    """Profile b of b(x) dx^{(x)2} stored as a CircleFunction."""

    b: CircleFunction
    tag: str = field(default="b(x) dx^2")

    def is_real_profile(self, tol: float = 1e-12) -> bool:
        return self.b.is_real(tol)


def wp_norm(v: TangentVector | CircleFunction) -> float:
    """Weighted norm sqrt(sum_{n>=2} n(n^2-1) |a_n|^2).

    Accepts either tangent coordinates (returns the l2 norm of t) or an
    analytic circle function with monomial coefficients a_n.
    """
    if isinstance(v, TangentVector):
        return v.norm()
    n = v.n_modes
    ks = np.arange(2, n + 1)
    a = v.coeffs[v.n_modes + 2 :]
    return float(np.sqrt(np.sum(basis_weight(ks) * np.abs(a) ** 2)))


def identify_tangent_cotangent(v: TangentVector) -> QuadraticDifferential:
    """The pairing map on basis vectors: e_k -> sqrt(2k(k^2-1)) z^{k-2} dz."""
    ks = v.ks()
    q_coeffs = v.t * np.sqrt(2.0 * basis_weight(ks))
    n = v.k_max - 2
    c = np.zeros(2 * max(n, 1) + 1, dtype=complex)
    c[max(n, 1) : max(n, 1) + n + 1] = q_coeffs
    return QuadraticDifferential(CircleFunction(c))


def identify_cotangent_tangent(q: QuadraticDifferential | CircleFunction,
                               tol: float = 1e-10) -> TangentVector:
    """Inverse pairing; modes outside span{z^m dz : m >= 0} are rejected."""
    b = q.b if isinstance(q, QuadraticDifferential) else q
    n = b.n_modes
    neg = b.coeffs[:n]
    if np.any(np.abs(neg) > tol):
        raise InverseUndefined("quadratic differential has negative modes")
    a = b.coeffs[n:]
    ks = np.arange(2, a.size + 2)
    t = a / np.sqrt(2.0 * basis_weight(ks))
    return TangentVector(t)


def wp_inner_quadratic(f1: CircleFunction | np.ndarray, f2: CircleFunction | np.ndarray) -> complex:
    """Disc inner product of polynomial profiles with the (1-|z|^2)^2 weight.

    For f = sum_m f_m z^m this is sum_m f1_m conj(f2_m)/(2(m+1)(m+2)(m+3)),
    the exact radial integrals int_0^1 (1-r^2)^2 r^{2m+1} dr.
    """
    def poly_coeffs(f):
        if isinstance(f, CircleFunction):
            if np.any(np.abs(f.coeffs[: f.n_modes]) > 0):
                raise InverseUndefined("profile must be polynomial (modes >= 0)")
            return f.coeffs[f.n_modes :]
        return np.asarray(f, dtype=complex)

    a = poly_coeffs(f1)
    b = poly_coeffs(f2)
    n = min(a.size, b.size)
    m = np.arange(n, dtype=float)
    w = 1.0 / (2.0 * (m + 1) * (m + 2) * (m + 3))
    return complex(np.sum(a[:n] * np.conj(b[:n]) * w))


def quasisymmetry_constant(
    h,
    n_x: int = 256,
    n_t: int = 64,
    t_min: float = 1e-3,
    t_max: float = np.pi,
) -> float:
    """Grid estimate of the quasisymmetry constant of an increasing lift.

    ``h`` is a callable with h(x + 2 pi) = h(x) + 2 pi (or any strictly
    increasing lift); the result is the max over an (x, t) grid of
    max(ratio, 1/ratio) with ratio = (h(x+t)-h(x))/(h(x)-h(x-t)).
    Log-spaced t; a lower bound of the true supremum.
    """
    x = np.linspace(0.0, 2 * np.pi, n_x, endpoint=False)
    ts = np.geomspace(t_min, t_max, n_t)
    worst = 1.0
    hx = np.asarray([h(v) for v in x], dtype=float)
    for t in ts:
        hp = np.asarray([h(v + t) for v in x], dtype=float)
        hm = np.asarray([h(v - t) for v in x], dtype=float)
        num = hp - hx
        den = hx - hm
        if np.any(num <= 0) or np.any(den <= 0):
            raise NonMonotone("sampled increment is not positive")
        r = num / den
        worst = max(worst, float(np.max(r)), float(np.max(1.0 / r)))
    return worst
