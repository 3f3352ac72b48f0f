"""Special-function substrate: log-gamma, regularized incomplete gamma and its
inverse, the single Meijer-G kernel needed by the link CDFs, Gauss-Hermite
quadrature, and an adaptive Simpson integrator used as an independent oracle.

The regularized lower incomplete gamma P(a, x) follows the classic split:
power series for x < a + 1, continued fraction (modified Lentz) otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonConvergenceError

_EPS = 2.220446049250313e-16
_TINY = 1e-300


def ln_gamma(x: float) -> float:
    """Natural log of the complete gamma function, x > 0."""
    if x <= 0.0:
        raise ValueError(f"ln_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def _p_series(a: float, x: float) -> float:
    # P(a,x) = x^a e^{-x} / Gamma(a+1) * sum_{n>=0} x^n / ((a+1)...(a+n))
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(10000):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _q_contfrac(a: float, x: float) -> float:
    # Q(a,x) via the continued fraction, modified Lentz.
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, 10000):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return h * math.exp(-x + a * math.log(x) - math.lgamma(a))


def reg_lower_inc_gamma(a: float, x: float) -> float:
    """Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a)."""
    if a <= 0.0:
        raise ValueError(f"reg_lower_inc_gamma requires a > 0, got a={a}")
    if x < 0.0:
        raise ValueError(f"reg_lower_inc_gamma requires x >= 0, got x={x}")
    if x == 0.0:
        return 0.0
    if x < a + 1.0:
        return min(_p_series(a, x), 1.0)
    return min(max(1.0 - _q_contfrac(a, x), 0.0), 1.0)


def inv_reg_lower_inc_gamma(a: float, p: float) -> float:
    """Inverse of P(a, .): the x with P(a, x) = p, for p in (0, 1).

    Newton iteration on P with a bisection safeguard inside the bracket
    [0, a + 40*sqrt(a) + 40].
    """
    if a <= 0.0:
        raise ValueError(f"inv_reg_lower_inc_gamma requires a > 0, got a={a}")
    if not 0.0 < p < 1.0:
        raise ValueError(f"inv_reg_lower_inc_gamma requires 0 < p < 1, got p={p}")

    lo, hi = 0.0, a + 40.0 * math.sqrt(a) + 40.0
    # Wilson-Hilferty starting point, clipped into the bracket.
    g = 1.0 - 2.0 / (9.0 * a)
    z = _inv_norm_cdf(p)
    x = a * (g + z * math.sqrt(2.0 / (9.0 * a))) ** 3
    if not lo < x < hi:
        x = 0.5 * (lo + hi)
    lnga = math.lgamma(a)
    for _ in range(200):
        f = reg_lower_inc_gamma(a, x) - p
        if f > 0.0:
            hi = x
        else:
            lo = x
        if abs(f) < 1e-14 and hi - lo < 1e-12 * max(1.0, x):
            return x
        dfdx = math.exp((a - 1.0) * math.log(x) - x - lnga) if x > 0.0 else 0.0
        if dfdx > 0.0:
            step = f / dfdx
            xn = x - step
        else:
            xn = 0.5 * (lo + hi)
        if not lo < xn < hi:
            xn = 0.5 * (lo + hi)
        if abs(xn - x) < 1e-15 * max(1.0, x):
            return xn
        x = xn
    if abs(reg_lower_inc_gamma(a, x) - p) < 1e-10:
        return x
    raise NonConvergenceError(
        f"inv_reg_lower_inc_gamma(a={a}, p={p}) did not converge", best=x
    )


def _inv_norm_cdf(p: float) -> float:
    # Acklam rational approximation; only used as a Newton starting point.
    a = (-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
         1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00)
    b = (-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
         6.680131188771972e+01, -1.328068155288572e+01)
    c = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
         -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00)
    d = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
         3.754408661907416e+00)
    plow, phigh = 0.02425, 1 - 0.02425
    if p < plow:
        q = math.sqrt(-2.0 * math.log(p))
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) / \
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0)
    if p > phigh:
        return -_inv_norm_cdf(1.0 - p)
    q = p - 0.5
    r = q * q
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q / \
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0)


def meijer_g_cdf_kernel(z: float, mu: float) -> float:
    """G^{1,1}_{1,2}[z | 1; mu, 0], which reduces exactly to the lower
    incomplete gamma gamma(mu, z) = Gamma(mu) * P(mu, z)."""
    if mu <= 0.0:
        raise ValueError(f"meijer_g_cdf_kernel requires mu > 0, got {mu}")
    if z < 0.0:
        raise ValueError(f"meijer_g_cdf_kernel requires z >= 0, got {z}")
    return math.exp(ln_gamma(mu)) * reg_lower_inc_gamma(mu, z)


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights of a quadrature rule.

    For kind="hermite" the rule integrates f against exp(-u^2) on the whole
    real line; the weights sum to sqrt(pi).
    """

    nodes: np.ndarray
    weights: np.ndarray
    kind: str = "hermite"

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        if nodes.ndim != 1 or nodes.shape != weights.shape:
            raise ValueError("nodes and weights must be 1-D and equally long")
        if np.any(np.diff(nodes) <= 0):
            raise ValueError("nodes must be strictly increasing")
        if np.any(weights <= 0):
            raise ValueError("weights must be positive")


def _hermite_eval(n: int, z: float):
    """Orthonormal (physicists') Hermite polynomial H~_n(z) and its
    derivative, via the stable three-term recurrence."""
    p1 = math.pi ** -0.25
    p2 = 0.0
    for j in range(1, n + 1):
        p3 = p2
        p2 = p1
        p1 = z * math.sqrt(2.0 / j) * p2 - math.sqrt((j - 1.0) / j) * p3
    return p1, math.sqrt(2.0 * n) * p2


def hermite_rule(n: int) -> QuadratureRule:
    """Gauss-Hermite rule (weight exp(-u^2) on (-inf, inf)).

    Nodes start from the eigenvalues of the Jacobi matrix (Golub-Welsch) and
    are polished by Newton iteration on the orthonormal recurrence; weights
    come from the derivative at the polished root. The rule is exactly
    symmetric by construction.
    """
    # beyond ~n=300 the extreme weights underflow double precision
    if not 2 <= n <= 256:
        raise ValueError(f"hermite_rule supports 2 <= n <= 256, got {n}")
    from scipy.linalg import eigh_tridiagonal
    offdiag = np.sqrt(np.arange(1, n) / 2.0)
    guesses = eigh_tridiagonal(np.zeros(n), offdiag, eigvals_only=True)

    x = np.empty(n)
    w = np.empty(n)
    m = (n + 1) // 2
    for i in range(m):  # negative half; mirror for the positive half
        z = float(guesses[i])
        converged = False
        pp = 1.0
        for _ in range(100):
            p1, pp = _hermite_eval(n, z)
            dz = p1 / pp
            z -= dz
            if abs(dz) <= 1e-15 * max(1.0, abs(z)):
                converged = True
                break
        if not converged:
            raise NonConvergenceError(f"hermite_rule({n}): root {i} did not converge")
        if n % 2 == 1 and i == m - 1:
            z = 0.0
            _, pp = _hermite_eval(n, z)
        x[i] = z
        x[n - 1 - i] = -z
        w[i] = w[n - 1 - i] = 2.0 / (pp * pp)
    return QuadratureRule(nodes=x, weights=w, kind="hermite")


def adaptive_simpson(f, a: float, b: float, tol: float = 1e-10,
                     max_depth: int = 60) -> float:
    """Recursive adaptive Simpson integration of f over [a, b]."""
    fa, fb = f(a), f(b)
    mid = 0.5 * (a + b)
    fm = f(mid)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth)


def _simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    lm, rm = 0.5 * (a + m), 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if depth <= 0 or abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    return (_simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + _simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1))
