"""Special functions and distributions behind every p-value in the package.

The incomplete beta function carries the Student t and F distributions.
The studentized range distribution is evaluated by Gauss-Legendre quadrature
of its double-integral form and inverted by bracketed root finding.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.special import ndtr

from pacestat.errors import ConvergenceError, DomainError

__all__ = [
    "regularized_incomplete_beta",
    "normal_cdf",
    "student_t_cdf",
    "f_survival",
    "studentized_range_cdf",
    "studentized_range_quantile",
]

_CF_EPS = 1e-16
_CF_TINY = 1e-300
_CF_MAXIT = 20000

# Degrees of freedom above this are treated as infinite.
NU_INFINITE = 1e6


def _check_df(nu: float, name: str = "nu") -> None:
    if math.isnan(nu) or nu <= 0:
        raise DomainError(f"{name} must be positive, got {nu}")


def _beta_cf(a: float, b: float, x: float) -> float:
    # Modified Lentz evaluation of the continued fraction for I_x(a, b).
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _CF_TINY:
        d = _CF_TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAXIT + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return h
    raise ConvergenceError(f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")


def _betainc_pair(a: float, b: float, x: float, xc: float | None = None) -> tuple[float, float]:
    """Return ``(I_x(a,b), 1 - I_x(a,b))`` with both sides accurate in their tails.

    ``xc`` is ``1 - x`` when the caller can form it without cancellation.
    """
    if xc is None:
        xc = 1.0 - x
    if x == 0.0:
        return 0.0, 1.0
    if xc == 0.0:
        return 1.0, 0.0
    log_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log(xc)
    )
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        lower = front * _beta_cf(a, b, x) / a
        return lower, 1.0 - lower
    upper = front * _beta_cf(b, a, xc) / b
    return 1.0 - upper, upper


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta function I_x(a, b).

    Parameters
    ----------
    a, b : float
        Positive shape parameters.
    x : float
        Upper integration limit in [0, 1].

    Returns
    -------
    float
        Probability in [0, 1].

    Raises
    ------
    DomainError
        If ``a <= 0``, ``b <= 0`` or ``x`` is outside [0, 1].
    """
    if not (a > 0) or not (b > 0):
        raise DomainError(f"shape parameters must be positive, got a={a}, b={b}")
    if not (0.0 <= x <= 1.0):
        raise DomainError(f"x must lie in [0, 1], got {x}")
    lower, _ = _betainc_pair(float(a), float(b), float(x))
    return min(1.0, max(0.0, lower))


def normal_cdf(x):
    """Standard normal CDF; accepts scalars or arrays."""
    return ndtr(x)


def student_t_cdf(t: float, nu: float) -> float:
    """P(T <= t) for Student's t with ``nu`` degrees of freedom (non-integer allowed)."""
    _check_df(nu)
    if math.isnan(t):
        raise DomainError("t is NaN")
    if math.isinf(t):
        return 1.0 if t > 0 else 0.0
    if nu > NU_INFINITE:
        return float(ndtr(t))
    t2 = t * t
    # P(|T| > |t|) = I_x(nu/2, 1/2) with x = nu/(nu+t^2); 1 - x = t^2/(nu+t^2).
    tail_mass, _ = _betainc_pair(0.5 * nu, 0.5, nu / (nu + t2), t2 / (nu + t2))
    tail = 0.5 * tail_mass
    if t >= 0:
        return 1.0 - tail
    return tail


def f_survival(x: float, d1: float, d2: float) -> float:
    """P(F > x) for an F(d1, d2) variate."""
    _check_df(d1, "d1")
    _check_df(d2, "d2")
    if math.isnan(x) or x < 0:
        raise DomainError(f"F statistic must be nonnegative, got {x}")
    if x == 0:
        return 1.0
    if math.isinf(x):
        return 0.0
    # 1 - I_{d1 x/(d1 x + d2)}(d1/2, d2/2) == I_{d2/(d2 + d1 x)}(d2/2, d1/2)
    denom = d2 + d1 * x
    sf, _ = _betainc_pair(0.5 * d2, 0.5 * d1, d2 / denom, d1 * x / denom)
    return min(1.0, max(0.0, sf))


# --- studentized range -------------------------------------------------------

_GL_ORDER = 16
_Z_LO, _Z_HI = -8.0, 8.0
_QUAD_TOL = 1e-8
_MAX_LEVEL = 6
_LOG_DENSITY_FLOOR = math.log(1e-16)


@lru_cache(maxsize=None)
def _gl_reference(order: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(order)


def _composite(a: float, b: float, panels: int) -> tuple[np.ndarray, np.ndarray]:
    x0, w0 = _gl_reference(_GL_ORDER)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * x0[None, :]).ravel()
    weights = (half[:, None] * w0[None, :]).ravel()
    return nodes, weights


@lru_cache(maxsize=64)
def _inner_grid(panels: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    z, w = _composite(_Z_LO, _Z_HI, panels)
    return z, w * np.exp(-0.5 * z * z) / math.sqrt(2.0 * math.pi), ndtr(z)


def _range_prob_known_sd(w: np.ndarray, k: int, panels: int) -> np.ndarray:
    """P(range of k iid N(0,1) <= w), vectorised over ``w``."""
    z, zw, cdf_z = _inner_grid(panels)
    spread = cdf_z[None, :] - ndtr(z[None, :] - w[:, None])
    np.clip(spread, 0.0, 1.0, out=spread)
    return k * (spread ** (k - 1)) @ zw


def _log_scale_bounds(nu: float, q: float) -> tuple[float, float]:
    # Integration runs over t = log(s), s = chi_nu / sqrt(nu). Relative to the
    # mode at t = 0 the log density is nu*t - nu*(exp(2t) - 1)/2.
    def rel(t: float) -> float:
        return nu * t - 0.5 * nu * math.expm1(2.0 * t)

    def root(step: float) -> float:
        inner, outer = 0.0, step
        while rel(outer) > _LOG_DENSITY_FLOOR:
            inner, outer = outer, 2.0 * outer
        for _ in range(200):
            mid = 0.5 * (inner + outer)
            if rel(mid) > _LOG_DENSITY_FLOOR:
                inner = mid
            else:
                outer = mid
            if abs(outer - inner) < 1e-10:
                break
        return outer

    width = 1.0 / math.sqrt(nu)
    lo, hi = root(-width), root(width)
    # Below this the range probability itself is negligible (it scales like w^(k-1)).
    lo = max(lo, math.log(1e-13 / q))
    return lo, hi


def _log_scale_density(t: np.ndarray, nu: float) -> np.ndarray:
    log_c = 0.5 * nu * math.log(nu) - math.lgamma(0.5 * nu) - (0.5 * nu - 1.0) * math.log(2.0)
    return np.exp(log_c + nu * t - 0.5 * nu * np.exp(2.0 * t))


def _range_cdf_level(q: float, k: int, nu: float, level: int) -> float:
    panels = 2 ** (level + 2)
    if nu is None:
        return float(_range_prob_known_sd(np.array([q]), k, panels)[0])
    lo, hi = _log_scale_bounds(nu, q)
    if hi <= lo:
        return 0.0
    t, tw = _composite(lo, hi, panels)
    inner = _range_prob_known_sd(q * np.exp(t), k, panels)
    return float(np.dot(tw * _log_scale_density(t, nu), inner))


def studentized_range_cdf(q: float, k: int, nu: float = math.inf) -> float:
    """P(Q <= q) for the studentized range of ``k`` means with ``nu`` df.

    ``nu`` may be non-integer; values above ``NU_INFINITE`` (or ``math.inf``)
    use the known-variance distribution.
    """
    if int(k) != k or k < 2:
        raise DomainError(f"k must be an integer >= 2, got {k}")
    k = int(k)
    if math.isnan(nu) or nu <= 0:
        raise DomainError(f"nu must be positive, got {nu}")
    if math.isnan(q) or q < 0:
        raise DomainError(f"q must be nonnegative, got {q}")
    if q == 0:
        return 0.0
    if math.isinf(q):
        return 1.0
    nu_eff = None if nu > NU_INFINITE else float(nu)
    prev = _range_cdf_level(q, k, nu_eff, 0)
    for level in range(1, _MAX_LEVEL + 1):
        cur = _range_cdf_level(q, k, nu_eff, level)
        if abs(cur - prev) < _QUAD_TOL:
            return min(1.0, max(0.0, cur))
        prev = cur
    raise ConvergenceError(f"studentized range quadrature did not converge (q={q}, k={k}, nu={nu})")


def studentized_range_quantile(p: float, k: int, nu: float = math.inf, *, max_iter: int = 200) -> float:
    """Inverse of :func:`studentized_range_cdf` in ``q``.

    Bisection on [0, 100] narrows the bracket, then guarded secant steps
    finish the root. The bracket is widened if ``nu`` is so small that
    100 is not yet past ``p``.

    Raises
    ------
    DomainError
        If ``p`` is not strictly inside (0, 1).
    ConvergenceError
        If no root within tolerance is found in ``max_iter`` evaluations.
    """
    if math.isnan(p) or not (0.0 < p < 1.0):
        raise DomainError(f"p must lie in (0, 1), got {p}")

    def f(q: float) -> float:
        return studentized_range_cdf(q, k, nu) - p

    lo, f_lo = 0.0, -p
    hi = 100.0
    f_hi = f(hi)
    while f_hi < 0:
        if hi > 1e8:
            raise ConvergenceError(f"could not bracket quantile p={p}, k={k}, nu={nu}")
        lo, f_lo = hi, f_hi
        hi *= 10.0
        f_hi = f(hi)

    it = 0
    while hi - lo > 1.0 and it < max_iter:
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        it += 1
        if f_mid < 0:
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid

    x0, f0 = lo, f_lo
    x1, f1 = hi, f_hi
    last_width = hi - lo
    while it < max_iter:
        if f1 != f0:
            x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
        else:
            x2 = 0.5 * (lo + hi)
        if not (lo < x2 < hi):
            x2 = 0.5 * (lo + hi)
        f2 = f(x2)
        it += 1
        if abs(f2) <= 1e-12:
            return x2
        if f2 < 0:
            lo, f_lo = x2, f2
        else:
            hi, f_hi = x2, f2
        if hi - lo < 1e-12 * max(1.0, hi):
            return 0.5 * (lo + hi)
        width = hi - lo
        if width > 0.5 * last_width:
            # Secant stalled on one side of the bracket; force a bisection.
            mid = 0.5 * (lo + hi)
            f_mid = f(mid)
            it += 1
            if f_mid < 0:
                lo, f_lo = mid, f_mid
            else:
                hi, f_hi = mid, f_mid
            width = hi - lo
        last_width = width
        x0, f0, x1, f1 = x1, f1, x2, f2
    # cdf noise of the quadrature can stop the residual short of 1e-12;
    # accept the bracket midpoint if it is tight in probability.
    mid = 0.5 * (lo + hi)
    if abs(f(mid)) < 1e-7:
        return mid
    raise ConvergenceError(f"quantile search exhausted {max_iter} iterations (p={p}, k={k}, nu={nu})")
