"""Moebius transforms and the three-point interpolation solve."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateTriple, MoebiusDegenerate

INF = complex(np.inf, 0.0)


def _is_inf(p: complex) -> bool:
    return not np.isfinite(complex(p).real) or not np.isfinite(complex(p).imag)


@dataclass(frozen=True)
class MoebiusTransform:
    """z -> (a z + b)/(c z + d), stored with determinant normalized to 1."""

    a: complex
    b: complex
    c: complex
    d: complex

    @staticmethod
    def from_matrix(a, b, c, d) -> "MoebiusTransform":
        det = a * d - b * c
        if abs(det) < 1e-14:
            raise MoebiusDegenerate("matrix determinant below 1e-14")
        s = np.sqrt(complex(det))
        return MoebiusTransform(a / s, b / s, c / s, d / s)

    @staticmethod
    def identity() -> "MoebiusTransform":
        return MoebiusTransform(1.0 + 0j, 0j, 0j, 1.0 + 0j)

    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    def __call__(self, z):
        if np.isscalar(z) or np.asarray(z).ndim == 0:
            z = complex(z)
            if _is_inf(z):
                return self.a / self.c if abs(self.c) > 1e-300 else INF
            den = self.c * z + self.d
            if abs(den) < 1e-300:
                return INF
            return (self.a * z + self.b) / den
        z = np.asarray(z, dtype=complex)
        return (self.a * z + self.b) / (self.c * z + self.d)

    def inverse(self) -> "MoebiusTransform":
        return MoebiusTransform(self.d, -self.b, -self.c, self.a)

    def compose(self, other: "MoebiusTransform") -> "MoebiusTransform":
        """self after other: (self . other)(z) = self(other(z))."""
        m = self.matrix() @ other.matrix()
        return MoebiusTransform(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    def derivative(self, z) -> complex:
        den = self.c * np.asarray(z, dtype=complex) + self.d
        return self.det() / den ** 2

    def preserves_unit_disc(self, tol: float = 1e-9) -> bool:
        """True when the map sends S^1 to S^1 and 0 inside the disc."""
        zs = np.exp(1j * np.linspace(0.0, 2 * np.pi, 17)[:-1])
        on_circle = np.max(np.abs(np.abs(self(zs)) - 1.0)) < tol
        inside = abs(complex(self(0.0))) < 1.0
        return bool(on_circle and inside)


def _to_zero_one_inf(p1: complex, p2: complex, p3: complex) -> np.ndarray:
    """Matrix of the unique Moebius map sending (p1, p2, p3) -> (0, 1, inf)."""
    if _is_inf(p1):
        return np.array([[0.0, p2 - p3], [1.0, -p3]], dtype=complex)
    if _is_inf(p2):
        return np.array([[1.0, -p1], [1.0, -p3]], dtype=complex)
    if _is_inf(p3):
        return np.array([[1.0, -p1], [0.0, p2 - p1]], dtype=complex)
    return np.array(
        [[p2 - p3, -p1 * (p2 - p3)], [p2 - p1, -p3 * (p2 - p1)]], dtype=complex
    )


def moebius_fixing_triple(ps, qs) -> MoebiusTransform:
    """The unique Moebius map with p_i -> q_i for two triples of distinct points.

    Points may be ``inf`` (the point at infinity).
    """
    ps = [complex(p) for p in ps]
    qs = [complex(q) for q in qs]
    for trip in (ps, qs):
        for i in range(3):
            for j in range(i + 1, 3):
                same = (_is_inf(trip[i]) and _is_inf(trip[j])) or (
                    not _is_inf(trip[i])
                    and not _is_inf(trip[j])
                    and abs(trip[i] - trip[j]) < 1e-13
                )
                if same:
                    raise DegenerateTriple(f"repeated point in triple {trip}")
    mp = _to_zero_one_inf(*ps)
    mq = _to_zero_one_inf(*qs)
    m = np.linalg.inv(mq) @ mp
    return MoebiusTransform.from_matrix(m[0, 0], m[0, 1], m[1, 0], m[1, 1])


def disc_automorphism(b: complex, phase: float = 0.0) -> MoebiusTransform:
    """Unit-disc automorphism e^{i phase} (z + b)/(1 + conj(b) z), |b| < 1."""
    if abs(b) >= 1.0:
        raise MoebiusDegenerate("|b| must be < 1 for a disc automorphism")
    e = np.exp(1j * phase)
    return MoebiusTransform.from_matrix(e, e * b, np.conj(b), 1.0)
