"""Exact monomial calculus on the unit disc.

Fields are finite sums  sum c_{mn} z^m zbar^n  supported on the closed unit
disc and extended by zero outside.  On this algebra the solid Cauchy
transform P and its z-derivative T have exact closed forms per monomial, so
the Neumann series for the Beltrami solutions stays inside the algebra and
carries no discretization error; quadrature appears only in the oracles.

Closed forms per monomial z^m zbar^n (chi restricted to the disc):

    P:  inside  z^m zbar^{n+1}/(n+1) + A(z)
        outside B(z)
        with (A, B) = (0, z^{m-n-1}/(n+1))       if m-n-1 < 0
                      (-z^{m-n-1}/(n+1), 0)      otherwise
    T = d/dz P, applied term by term.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegreeOverflow, NoConvergence, NonContractive
from .series import CircleFunction, Series

PRUNE_TOL = 1e-15


class MonomialField:
    """Dense (m, n) coefficient table of sum c_{mn} z^m zbar^n with m + n <= cap."""

    __slots__ = ("c", "cap")

    def __init__(self, coeffs: np.ndarray, cap: int | None = None, prune: bool = True):
        c = np.asarray(coeffs, dtype=complex)
        if c.ndim != 2 or c.shape[0] != c.shape[1]:
            raise ValueError("coefficient table must be square")
        self.cap = cap if cap is not None else c.shape[0] - 1
        if c.shape[0] != self.cap + 1:
            k = min(c.shape[0], self.cap + 1)
            if c.shape[0] > k and np.any(np.abs(c[k:, :]) >= PRUNE_TOL) or (
                c.shape[1] > k and np.any(np.abs(c[:, k:]) >= PRUNE_TOL)
            ):
                raise DegreeOverflow("nonzero coefficients beyond requested cap")
            full = np.zeros((self.cap + 1, self.cap + 1), dtype=complex)
            full[:k, :k] = c[:k, :k]
            c = full
        if prune:
            c = np.where(np.abs(c) < PRUNE_TOL, 0.0, c)
        m, n = np.nonzero(c)
        if m.size and np.max(m + n) > self.cap:
            raise DegreeOverflow(
                f"monomial degree {int(np.max(m + n))} exceeds cap {self.cap}"
            )
        self.c = c

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(cap: int) -> "MonomialField":
        return MonomialField(np.zeros((cap + 1, cap + 1), dtype=complex), cap)

    @staticmethod
    def monomial(m: int, n: int, coeff: complex = 1.0, cap: int | None = None) -> "MonomialField":
        cap = cap if cap is not None else m + n
        if m + n > cap:
            raise DegreeOverflow(f"degree {m + n} exceeds cap {cap}")
        c = np.zeros((cap + 1, cap + 1), dtype=complex)
        c[m, n] = coeff
        return MonomialField(c, cap)

    @staticmethod
    def from_terms(terms, cap: int) -> "MonomialField":
        c = np.zeros((cap + 1, cap + 1), dtype=complex)
        for m, n, v in terms:
            if m + n > cap:
                raise DegreeOverflow(f"degree {m + n} exceeds cap {cap}")
            c[m, n] += v
        return MonomialField(c, cap)

    # -- structure -----------------------------------------------------------

    def terms(self):
        m, n = np.nonzero(self.c)
        return [(int(a), int(b), complex(self.c[a, b])) for a, b in zip(m, n)]

    def degree(self) -> int:
        m, n = np.nonzero(self.c)
        return int(np.max(m + n)) if m.size else 0

    def is_zero(self) -> bool:
        return not np.any(self.c)

    def with_cap(self, cap: int) -> "MonomialField":
        return MonomialField(self.c, cap)

    def __add__(self, other: "MonomialField") -> "MonomialField":
        cap = max(self.cap, other.cap)
        c = np.zeros((cap + 1, cap + 1), dtype=complex)
        c[: self.c.shape[0], : self.c.shape[1]] += self.c
        c[: other.c.shape[0], : other.c.shape[1]] += other.c
        return MonomialField(c, cap)

    def __sub__(self, other: "MonomialField") -> "MonomialField":
        return self + (other * (-1.0))

    def __mul__(self, s: complex) -> "MonomialField":
        return MonomialField(self.c * s, self.cap, prune=False)

    __rmul__ = __mul__

    def __call__(self, z):
        """Evaluate inside the closed disc (no support cutoff applied)."""
        z = np.asarray(z, dtype=complex)
        m, n = np.nonzero(self.c)
        vals = np.zeros(z.shape, dtype=complex)
        zb = np.conj(z)
        for a, b in zip(m, n):
            vals = vals + self.c[a, b] * z ** a * zb ** b
        return vals

    # -- calculus ------------------------------------------------------------

    def d_z(self) -> "MonomialField":
        """Wirtinger d/dz, exact."""
        out = np.zeros_like(self.c)
        mi = np.arange(1, self.c.shape[0])
        out[:-1, :] = self.c[1:, :] * mi[:, None]
        return MonomialField(out, self.cap, prune=False)

    def d_zbar(self) -> "MonomialField":
        """Wirtinger d/dzbar, exact."""
        out = np.zeros_like(self.c)
        ni = np.arange(1, self.c.shape[1])
        out[:, :-1] = self.c[:, 1:] * ni[None, :]
        return MonomialField(out, self.cap, prune=False)

    def product(self, other: "MonomialField", cap: int | None = None) -> "MonomialField":
        """Exact polynomial product; DegreeOverflow if the result exceeds cap."""
        if cap is None:
            cap = max(self.cap, other.cap)
        deg = self.degree() + other.degree()
        if not self.is_zero() and not other.is_zero() and deg > cap:
            raise DegreeOverflow(f"product degree {deg} exceeds cap {cap}")
        out = np.zeros((cap + 1, cap + 1), dtype=complex)
        small, big = (other, self) if _nnz(other.c) <= _nnz(self.c) else (self, other)
        bm = big.c.shape[0]
        for m, n, v in small.terms():
            rows = min(bm, cap + 1 - m)
            cols = min(bm, cap + 1 - n)
            out[m : m + rows, n : n + cols] += v * big.c[:rows, :cols]
        return MonomialField(out, cap)

    def boundary_trace(self, n_modes: int | None = None) -> CircleFunction:
        """Restriction to S^1 via zbar -> 1/z: mode k collects sum_{m-n=k} c_{mn}."""
        d = self.c.shape[0] - 1
        n = n_modes if n_modes is not None else d
        out = np.zeros(2 * n + 1, dtype=complex)
        m, q = np.nonzero(self.c)
        for a, b in zip(m, q):
            k = a - b
            if -n <= k <= n:
                out[k + n] += self.c[a, b]
        return CircleFunction(out)

    # -- norms (exact radial integrals) ----------------------------------------

    def l2_norm_sq(self) -> float:
        """Exact squared L^2(D_0) norm via closed-form monomial integrals.

        Terms with m - n = m' - n' interact; the radial integral gives
        pi / ((m + n + m' + n')/2 + 1).
        """
        total = 0.0
        groups: dict[int, list[tuple[int, int, complex]]] = {}
        for m, n, v in self.terms():
            groups.setdefault(m - n, []).append((m, n, v))
        for terms in groups.values():
            for m, n, v in terms:
                for mp, nq, w in terms:
                    a = (m + n + mp + nq) / 2.0
                    total += (v * np.conj(w)).real * np.pi / (a + 1.0)
        return float(total)

    def l2_norm(self) -> float:
        return float(np.sqrt(max(self.l2_norm_sq(), 0.0)))

    # -- serialization -----------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "D": self.cap,
            "terms": [
                [m, n, float(v.real), float(v.imag)] for m, n, v in self.terms()
            ],
        }

    @staticmethod
    def from_json_dict(d: dict) -> "MonomialField":
        return MonomialField.from_terms(
            [(m, n, complex(re, im)) for m, n, re, im in d["terms"]], d["D"]
        )


def _nnz(c: np.ndarray) -> int:
    return int(np.count_nonzero(c))


def laurent_l2_norm_sq_outside(tail: Series) -> float:
    """Exact squared L^2 norm over |z| > 1 of a decaying tail sum_{j>=2} b_j z^{-j}.

    The j = 1 mode is not square integrable outside; a nonzero coefficient
    there raises ValueError.
    """
    total = 0.0
    for j in range(tail.val, tail.top):
        v = tail.coeff(j)
        if v == 0:
            continue
        if j >= -1:
            raise ValueError("outside tail must decay faster than 1/z for an L2 norm")
        total += np.pi / (-j - 1) * abs(v) ** 2
    return float(total)


@dataclass(frozen=True)
class PiecewiseField:
    """A field given by a monomial table inside the disc and a Laurent series outside."""

    inside: MonomialField
    outside: Series

    def vanishes_at_infinity(self) -> bool:
        t = self.outside.trimmed(0.0)
        return t.top <= 0 or t.coeffs.size == 1 and t.coeffs[0] == 0

    def boundary_mismatch(self) -> float:
        """Sup-norm gap between the inside and outside boundary traces."""
        tr_in = self.inside.boundary_trace()
        n = max(tr_in.n_modes, abs(self.outside.val), abs(self.outside.top))
        diff = np.zeros(2 * n + 1, dtype=complex)
        diff[n - tr_in.n_modes : n + tr_in.n_modes + 1] = tr_in.coeffs
        for j in range(self.outside.val, self.outside.top):
            if -n <= j <= n:
                diff[j + n] -= self.outside.coeff(j)
        return float(np.sum(np.abs(diff)))

    def __add__(self, other: "PiecewiseField") -> "PiecewiseField":
        return PiecewiseField(
            self.inside + other.inside, self.outside.add_exact(other.outside)
        )

    def __mul__(self, s: complex) -> "PiecewiseField":
        return PiecewiseField(self.inside * s, self.outside * s)

    __rmul__ = __mul__

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        inside = np.abs(z) <= 1.0
        out = np.empty(z.shape, dtype=complex)
        if np.any(inside):
            out[inside] = self.inside(z[inside])
        if np.any(~inside):
            out[~inside] = self.outside(z[~inside])
        return out

    def full_plane_l2_norm(self) -> float:
        return float(
            np.sqrt(self.inside.l2_norm_sq() + laurent_l2_norm_sq_outside(self.outside))
        )


def _empty_tail() -> Series:
    return Series([0.0], -1)


def cauchy_transform_P(h: MonomialField, cap: int | None = None) -> PiecewiseField:
    """Solid Cauchy transform of a field supported on the disc, exact per monomial.

    Satisfies dbar(P h) = h inside, P h holomorphic outside with P h -> 0 at
    infinity, and matching boundary traces.
    """
    cap = cap if cap is not None else h.cap + 1
    if h.degree() + 1 > cap:
        raise DegreeOverflow(f"P output degree {h.degree() + 1} exceeds cap {cap}")
    inside = np.zeros((cap + 1, cap + 1), dtype=complex)
    tail_lo = -(h.c.shape[1] + 1)
    tail = np.zeros(-tail_lo, dtype=complex)  # exponents tail_lo .. -1
    for m, n, v in h.terms():
        inside[m, n + 1] += v / (n + 1)
        e = m - n - 1
        if e < 0:
            tail[e - tail_lo] += v / (n + 1)
        else:
            inside[e, 0] -= v / (n + 1)
    outside = Series(tail, tail_lo) if tail.size else _empty_tail()
    return PiecewiseField(MonomialField(inside, cap), outside.trimmed(0.0))


def beurling_transform_T(h: MonomialField, cap: int | None = None) -> PiecewiseField:
    """T h = d/dz (P h): inside part stays a monomial field, outside a Laurent tail."""
    p = cauchy_transform_P(h, cap=(cap if cap is not None else h.cap + 1))
    inside = p.inside.d_z()
    out = p.outside.differentiate().trimmed(0.0)
    cap_out = cap if cap is not None else h.cap
    return PiecewiseField(inside.with_cap(max(cap_out, inside.degree())), out)


def l2_norm_disc(h: MonomialField) -> float:
    """Exact L^2(D_0) norm of a monomial field."""
    return h.l2_norm()


@dataclass(frozen=True)
class BeltramiCoefficient:
    """Structured coefficient (1 - |z|^2)^2 g(zbar) with polynomial g.

    g is given by coefficients g_p of sum_p g_p zbar^p.  The expanded
    monomial table is cached; sup_norm is a grid estimate of the L^infinity
    norm over the closed disc (the weight (1-r^2)^2 peaks inside).
    """

    g_coeffs: np.ndarray
    sup_norm: float = field(default=0.0)

    def __post_init__(self):
        g = np.asarray(self.g_coeffs, dtype=complex)
        object.__setattr__(self, "g_coeffs", g)
        if self.sup_norm == 0.0:
            object.__setattr__(self, "sup_norm", self._estimate_sup())

    @staticmethod
    def from_tangent(t: "np.ndarray | object") -> "BeltramiCoefficient":
        """mu = (1-|z|^2)^2 sum_k t_k zbar^{k-2} / sqrt(k(k^2-1)) from t coords."""
        from .wp import TangentVector, basis_weight

        if not isinstance(t, TangentVector):
            t = TangentVector(np.asarray(t, dtype=complex))
        ks = t.ks()
        g = t.t / np.sqrt(basis_weight(ks))
        return BeltramiCoefficient(g)

    def _estimate_sup(self, n_r: int = 400, n_th: int = 128) -> float:
        if self.g_coeffs.size == 0 or not np.any(self.g_coeffs):
            return 0.0
        r = np.linspace(0.0, 1.0, n_r)
        th = np.linspace(0.0, 2 * np.pi, n_th, endpoint=False)
        zb = np.exp(-1j * th)[None, :] * r[:, None]
        g = np.zeros_like(zb)
        for p, gp in enumerate(self.g_coeffs):
            if gp != 0:
                g += gp * zb ** p
        w = (1.0 - r[:, None] ** 2) ** 2
        return float(np.max(np.abs(g) * w))

    def g_value(self, zbar):
        zbar = np.asarray(zbar, dtype=complex)
        out = np.zeros(zbar.shape, dtype=complex)
        for p, gp in enumerate(self.g_coeffs):
            if gp != 0:
                out = out + gp * zbar ** p
        return out

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        w = (1.0 - np.abs(z) ** 2) ** 2
        return np.where(np.abs(z) <= 1.0, w * self.g_value(np.conj(z)), 0.0)

    def field(self, cap: int | None = None) -> MonomialField:
        """Expanded monomial table of (1 - z zbar)^2 g(zbar)."""
        deg = self.degree()
        cap = cap if cap is not None else deg
        terms = []
        for p, gp in enumerate(self.g_coeffs):
            if gp == 0:
                continue
            terms.append((0, p, gp))
            terms.append((1, p + 1, -2.0 * gp))
            terms.append((2, p + 2, gp))
        return MonomialField.from_terms(terms, cap)

    def degree(self) -> int:
        nz = np.nonzero(self.g_coeffs)[0]
        return int(nz[-1]) + 4 if nz.size else 0

    def scaled(self, s: complex) -> "BeltramiCoefficient":
        return BeltramiCoefficient(self.g_coeffs * s)


def mu_multiply(mu: BeltramiCoefficient, h: MonomialField, cap: int | None = None) -> MonomialField:
    """Exact product mu * h in the monomial algebra."""
    if cap is None:
        cap = h.cap
    return mu.field(cap=mu.degree()).product(h, cap=cap)


def neumann_series(
    mu: BeltramiCoefficient,
    n: int,
    tol: float = 1e-12,
    max_iter: int = 200,
    cap: int = 32,
    return_monitor: bool = False,
):
    """mu * sum_k (T mu)^k (n z^{n-1}), truncated when the last term is below tol.

    The per-term L^2 norms are monitored; their ratios certify the geometric
    convergence promised by the sup-norm bound.  Raises NonContractive when
    ||mu||_inf >= 1, NoConvergence when max_iter is hit with a large term,
    and DegreeOverflow when the next term would exceed the degree cap.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if mu.sup_norm >= 1.0:
        raise NonContractive(f"sup |mu| = {mu.sup_norm:.3f} >= 1")
    psi = MonomialField.monomial(n - 1, 0, float(n), cap=cap)
    total = MonomialField.zero(cap)
    norms: list[float] = []
    if not np.any(mu.g_coeffs):
        return (total, norms) if return_monitor else total
    for _ in range(max_iter):
        term = mu_multiply(mu, psi, cap=cap)
        total = total + term
        t_norm = term.l2_norm()
        norms.append(t_norm)
        if t_norm < tol:
            return (total, norms) if return_monitor else total
        psi = beurling_transform_T(term, cap=cap).inside
    raise NoConvergence(
        f"Neumann series did not reach tol={tol} in {max_iter} iterations"
    )


def solution_w_n(
    mu: BeltramiCoefficient,
    n: int,
    tol: float = 1e-12,
    max_iter: int = 200,
    cap: int = 32,
):
    """The normalized solution w^(n) = z^n + P(neumann_series), with residual report.

    Returns (w, residual) where w is a PiecewiseField whose outside series
    includes the z^n part, and residual is the exact L^2(D_0) norm of
    dbar w - mu dz w (equal to the norm of the first omitted Neumann term).
    """
    if not np.any(mu.g_coeffs):
        w = PiecewiseField(
            MonomialField.monomial(n, 0, 1.0, cap=max(cap, n)),
            Series(np.array([1.0 + 0j]), n),
        )
        return w, 0.0
    s = neumann_series(mu, n, tol=tol, max_iter=max_iter, cap=cap)
    p = cauchy_transform_P(s, cap=cap + 1)
    inside = p.inside + MonomialField.monomial(n, 0, 1.0, cap=max(p.inside.cap, n))
    outside = p.outside.add_exact(Series(np.array([1.0 + 0j]), n))
    w = PiecewiseField(inside, outside)
    # dbar w = s exactly; dz w = n z^{n-1} + (T s) inside; residual is exact.
    dz_w = beurling_transform_T(s, cap=cap).inside + MonomialField.monomial(
        n - 1, 0, float(n), cap=cap
    )
    residual_field = s - mu_multiply(mu, dz_w, cap=cap + mu.degree())
    residual = residual_field.l2_norm()
    return w, residual


def boundary_v_n(
    mu: BeltramiCoefficient,
    n: int,
    tol: float = 1e-12,
    max_iter: int = 200,
    cap: int = 32,
    n_modes: int | None = None,
) -> CircleFunction:
    """Boundary trace of w^(n) - z^n; lies in the negative-frequency subspace."""
    if not np.any(mu.g_coeffs):
        return CircleFunction.zero(n_modes or max(n, 1))
    s = neumann_series(mu, n, tol=tol, max_iter=max_iter, cap=cap)
    p = cauchy_transform_P(s, cap=cap + 1)
    tail = p.outside
    n_out = n_modes if n_modes is not None else max(1, -tail.val)
    c = np.zeros(2 * n_out + 1, dtype=complex)
    for j in range(tail.val, min(tail.top, 0)):
        if -n_out <= j:
            c[j + n_out] = tail.coeff(j)
    return CircleFunction(c)
