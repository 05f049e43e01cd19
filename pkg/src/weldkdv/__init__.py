"""Numerical conformal welding, Grassmannian geometry, and periodic KdV.

The package follows one computational chain at desk scale:

1. structured Beltrami coefficients on the unit disc (``disc``),
2. exact Cauchy/Beurling transforms and Neumann-series solutions (``disc``,
   with quadrature cross-checks in ``oracles``),
3. conformal welding via a Theodorsen Riemann map (``welding``),
4. graph operators on a truncated Grassmannian (``grassmann``),
5. the invariant Kaehler geometry and its geodesics (``geometry``),
6. circle-algebra formulas and a spectral reference KdV solver (``kdv``).

Everything is verified by independent oracles; the CLI (``weldkdv``) exposes
batch runs that write delimited data plus rendered figures.
"""

__version__ = "0.1.0"
