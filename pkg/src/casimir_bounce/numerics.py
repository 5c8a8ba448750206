"""Deterministic numerical kernels: root finding, quadrature, ODE integration.

All three are small, self-contained and pure Python/numpy so that results are
bit-reproducible across runs.  Callers pass plain callables; the kernels never
hold state between calls.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AccuracyError, BracketError, ConvergenceError, DomainError

EPS = np.finfo(float).eps

SINGULARITY_FLAGS = ("none", "inv_sqrt_lo", "inv_sqrt_hi", "both")


# ---------------------------------------------------------------------------
# Root finding
# ---------------------------------------------------------------------------

def find_root(residual, lo, hi, rel_tol=1e-13, abs_tol=0.0, max_iter=200):
    """Return a root of ``residual`` inside the bracket ``[lo, hi]``.

    Brent's method: bisection safeguarded by secant / inverse quadratic
    steps.  Terminates once the enclosing bracket is narrower than
    ``abs_tol + rel_tol*|x|`` or the residual is exactly zero.

    Raises
    ------
    BracketError
        If ``residual(lo)`` and ``residual(hi)`` have the same sign.
    ConvergenceError
        If ``max_iter`` iterations do not reach the tolerance.
    """
    xpre, xcur = float(lo), float(hi)
    fpre, fcur = float(residual(xpre)), float(residual(xcur))
    if not (math.isfinite(fpre) and math.isfinite(fcur)):
        raise BracketError(f"residual not finite at bracket ends ({fpre}, {fcur})")
    if fpre == 0.0:
        return xpre
    if fcur == 0.0:
        return xcur
    if math.copysign(1.0, fpre) == math.copysign(1.0, fcur):
        raise BracketError(f"no sign change on [{lo}, {hi}]")

    xblk = fblk = spre = scur = 0.0
    for _ in range(max_iter):
        if fpre != 0.0 and fcur != 0.0 and (fpre < 0.0) != (fcur < 0.0):
            xblk, fblk = xpre, fpre
            spre = scur = xcur - xpre
        if abs(fblk) < abs(fcur):
            xpre, xcur, xblk = xcur, xblk, xcur
            fpre, fcur, fblk = fcur, fblk, fcur

        delta = 0.5 * (abs_tol + rel_tol * abs(xcur))
        sbis = 0.5 * (xblk - xcur)
        if fcur == 0.0 or abs(sbis) < delta:
            return xcur
        # adjacent floats: the bracket cannot shrink any further
        if xcur + sbis == xcur or abs(sbis) <= 2.0 * EPS * abs(xcur):
            return xcur

        if abs(spre) > delta and abs(fcur) < abs(fpre):
            if xpre == xblk:
                stry = -fcur * (xcur - xpre) / (fcur - fpre)
            else:
                dpre = (fpre - fcur) / (xpre - xcur)
                dblk = (fblk - fcur) / (xblk - xcur)
                stry = -fcur * (fblk * dblk - fpre * dpre) / (dblk * dpre * (fblk - fpre))
            if 2.0 * abs(stry) < min(abs(spre), 3.0 * abs(sbis) - delta):
                spre, scur = scur, stry
            else:
                spre = scur = sbis
        else:
            spre = scur = sbis

        xpre, fpre = xcur, fcur
        if abs(scur) > delta:
            xcur += scur
        else:
            xcur += delta if sbis > 0 else -delta
        fcur = float(residual(xcur))
        if not math.isfinite(fcur):
            raise ConvergenceError(f"residual became non-finite at x={xcur!r}")

    raise ConvergenceError(f"no convergence after {max_iter} iterations (x={xcur!r})")


# ---------------------------------------------------------------------------
# Quadrature
# ---------------------------------------------------------------------------

# Gauss-Kronrod 7/15 abscissae and weights on [-1, 1] (non-negative half).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KRONROD_W = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GAUSS_W = np.zeros(15)
_GAUSS_W[[1, 3, 5]] = _WG[:3]
_GAUSS_W[7] = _WG[3]
_GAUSS_W[[9, 11, 13]] = _WG[2::-1]


def _gk15(g, a, b):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    vals = np.array([g(mid + half * t) for t in _NODES], dtype=float)
    kron = half * float(_KRONROD_W @ vals)
    gauss = half * float(_GAUSS_W @ vals)
    if not math.isfinite(kron):
        raise DomainError(f"integrand not finite on [{a!r}, {b!r}]")
    return kron, abs(kron - gauss)


def _adaptive(g, a, b, rel_tol, abs_tol, max_intervals):
    value, err = _gk15(g, a, b)
    heap = [(-err, 0, a, b, value, err)]
    total, total_err = value, err
    counter = 1
    frozen = []  # values of intervals too narrow to split further
    frozen_err = 0.0
    while total_err > max(abs_tol, rel_tol * abs(total)):
        if counter >= max_intervals or not heap:
            raise AccuracyError(
                f"tolerance not met with {counter} intervals", total, total_err)
        _, _, lo, hi, v, e = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi or (hi - lo) < 64.0 * EPS * max(abs(lo), abs(hi)):
            frozen.append(v)
            frozen_err += e
            if frozen_err > max(abs_tol, rel_tol * abs(total)):
                raise AccuracyError("interval width reached round-off", total, total_err)
            continue
        v1, e1 = _gk15(g, lo, mid)
        v2, e2 = _gk15(g, mid, hi)
        total += v1 + v2 - v
        total_err += e1 + e2 - e
        heapq.heappush(heap, (-e1, counter, lo, mid, v1, e1))
        heapq.heappush(heap, (-e2, counter + 1, mid, hi, v2, e2))
        counter += 2
        # re-sum occasionally to stop drift in the running totals
        if counter % 256 == 1:
            total = math.fsum([item[4] for item in heap] + frozen)
            total_err = math.fsum(item[5] for item in heap) + frozen_err
    return math.fsum([item[4] for item in heap] + frozen)


def _check_integrable(f, endpoint, direction, width):
    probes = []
    for k in (2, 4, 6, 8):
        d = width * 10.0 ** (-k)
        fx = f(endpoint + direction * d)
        if not math.isfinite(fx):
            raise DomainError(f"integrand not finite near endpoint {endpoint!r}")
        probes.append(abs(fx) * math.sqrt(d))
    if probes[0] > 0.0 and probes[-1] > 100.0 * probes[0]:
        raise DomainError(
            f"singularity at {endpoint!r} is stronger than an inverse square root")


def integrate(f, lo, hi, singular="none", rel_tol=1e-10, abs_tol=0.0,
              max_intervals=4000, validate=True):
    """Integrate ``f`` over ``[lo, hi]`` with adaptive Gauss-Kronrod 7/15.

    ``singular`` flags inverse-square-root endpoint singularities.  A flagged
    endpoint is removed by the substitution ``x = lo + u**2`` (or
    ``x = hi - u**2``), which turns the integrand into a bounded function of
    ``u``.  With ``"both"`` the interval is split at its midpoint first.

    Raises ``AccuracyError`` (carrying ``estimate``) if the tolerance cannot be
    met within ``max_intervals`` subintervals.
    """
    if singular not in SINGULARITY_FLAGS:
        raise DomainError(f"unknown singularity flag {singular!r}")
    lo, hi = float(lo), float(hi)
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise DomainError("integration limits must be finite")
    if lo == hi:
        return 0.0
    if lo > hi:
        return -integrate(f, hi, lo, _swap_flag(singular), rel_tol, abs_tol,
                          max_intervals, validate)

    width = hi - lo
    if validate and singular in ("inv_sqrt_lo", "both"):
        _check_integrable(f, lo, 1.0, width)
    if validate and singular in ("inv_sqrt_hi", "both"):
        _check_integrable(f, hi, -1.0, width)

    if singular == "none":
        return _adaptive(f, lo, hi, rel_tol, abs_tol, max_intervals)
    if singular == "inv_sqrt_lo":
        return _adaptive(lambda u: 2.0 * u * f(lo + u * u), 0.0, math.sqrt(width),
                         rel_tol, abs_tol, max_intervals)
    if singular == "inv_sqrt_hi":
        return _adaptive(lambda u: 2.0 * u * f(hi - u * u), 0.0, math.sqrt(width),
                         rel_tol, abs_tol, max_intervals)
    mid = lo + 0.5 * width
    left = integrate(f, lo, mid, "inv_sqrt_lo", rel_tol, abs_tol, max_intervals, False)
    right = integrate(f, mid, hi, "inv_sqrt_hi", rel_tol, abs_tol, max_intervals, False)
    return left + right


def _swap_flag(flag):
    return {"inv_sqrt_lo": "inv_sqrt_hi", "inv_sqrt_hi": "inv_sqrt_lo"}.get(flag, flag)


# ---------------------------------------------------------------------------
# ODE integration (Dormand-Prince 5(4))
# ---------------------------------------------------------------------------

_C2, _C3, _C4, _C5 = 1 / 5, 3 / 10, 4 / 5, 8 / 9
_A21 = 1 / 5
_A31, _A32 = 3 / 40, 9 / 40
_A41, _A42, _A43 = 44 / 45, -56 / 15, 32 / 9
_A51, _A52, _A53, _A54 = 19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729
_A61, _A62, _A63, _A64, _A65 = 9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656
_B1, _B3, _B4, _B5, _B6 = 35 / 384, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84
_E1, _E3, _E4, _E5, _E6, _E7 = (71 / 57600, -71 / 16695, 71 / 1920, -17253 / 339200,
                                22 / 525, -1 / 40)


@dataclass
class OdeSolution:
    """Samples of an ODE solution.

    ``status`` is one of ``"success"``, ``"event"``, ``"step_underflow"`` or
    ``"max_steps"``; anything but the first two marks a partial solution.
    """

    x: np.ndarray
    y: np.ndarray
    status: str
    n_steps: int = 0
    n_rejected: int = 0
    nfev: int = 0
    message: str = field(default="")

    @property
    def complete(self):
        return self.status in ("success", "event")


def _dp_step(rhs, x, y, k1, h):
    # written out term by term so that it runs on plain floats or arrays alike
    k2 = rhs(x + _C2 * h, y + h * (_A21 * k1))
    k3 = rhs(x + _C3 * h, y + h * (_A31 * k1 + _A32 * k2))
    k4 = rhs(x + _C4 * h, y + h * (_A41 * k1 + _A42 * k2 + _A43 * k3))
    k5 = rhs(x + _C5 * h, y + h * (_A51 * k1 + _A52 * k2 + _A53 * k3 + _A54 * k4))
    k6 = rhs(x + h, y + h * (_A61 * k1 + _A62 * k2 + _A63 * k3 + _A64 * k4 + _A65 * k5))
    y_new = y + h * (_B1 * k1 + _B3 * k3 + _B4 * k4 + _B5 * k5 + _B6 * k6)
    k7 = rhs(x + h, y_new)
    err = h * (_E1 * k1 + _E3 * k3 + _E4 * k4 + _E5 * k5 + _E6 * k6 + _E7 * k7)
    return y_new, err, k7


def _scalar_norm(err, y, y_new, rel_tol, abs_tol):
    return abs(err) / (abs_tol + rel_tol * max(abs(y), abs(y_new)))


def _vector_norm(err, y, y_new, rel_tol, abs_tol):
    scale = abs_tol + rel_tol * np.maximum(np.abs(y), np.abs(y_new))
    return float(np.sqrt(np.mean((err / scale) ** 2)))


def ode_solve(rhs, y0, x0, x1, rel_tol=1e-10, abs_tol=1e-14, x_eval=None,
              event=None, h0=None, max_steps=200_000):
    """Integrate ``y' = rhs(x, y)`` from ``x0`` to ``x1``.

    Embedded Dormand-Prince 5(4) pair with local-extrapolation and per-step
    error control against ``abs_tol + rel_tol*|y|``; ``abs_tol`` may be given
    per component.  Integration may run in either direction.

    If ``x_eval`` is given, steps are clipped to land exactly on each of those
    points and only they are returned; otherwise every accepted step is
    returned (including ``x0``).

    ``event(x, y)`` is an optional scalar function; integration stops at its
    first sign change, located by bisection on the step length.
    """
    scalar = np.ndim(y0) == 0
    if scalar:
        y = float(y0)
        f_rhs = lambda xv, yv: float(rhs(xv, yv))  # noqa: E731
        norm = _scalar_norm
    else:
        y = np.array(y0, dtype=float)
        f_rhs = lambda xv, yv: np.asarray(rhs(xv, yv), dtype=float)  # noqa: E731
        norm = _vector_norm
    x0, x1 = float(x0), float(x1)
    direction = 1.0 if x1 >= x0 else -1.0

    if x_eval is not None:
        targets = [float(v) for v in x_eval]
        if any(direction * (b - a) < 0 for a, b in zip(targets, targets[1:])):
            raise DomainError("x_eval must be ordered in the integration direction")
        if targets and (direction * (targets[0] - x0) < 0 or direction * (targets[-1] - x1) > 0):
            raise DomainError("x_eval lies outside the integration interval")
    else:
        targets = None

    xs, ys = [], []

    def record(xv, yv):
        xs.append(xv)
        ys.append(yv if scalar else yv.copy())

    def finish(status, message=""):
        xa = np.array(xs, dtype=float)
        ya = np.array(ys, dtype=float)
        return OdeSolution(xa, ya, status, n_steps, n_rejected, nfev, message)

    n_steps = n_rejected = 0
    x = x0
    f = f_rhs(x, y)
    nfev = 1
    ti = 0
    if targets is None:
        record(x, y)
    else:
        while ti < len(targets) and targets[ti] == x:
            record(x, y)
            ti += 1
    if x0 == x1:
        return finish("success")

    ev0 = None
    if event is not None:
        ev0 = float(event(x, y))

    span = abs(x1 - x0)
    if h0 is None:
        d0 = norm(y, y, y, rel_tol, abs_tol)
        d1 = norm(f, y, y, rel_tol, abs_tol)
        ok = math.isfinite(d0) and math.isfinite(d1) and d0 > 1e-5 and d1 > 1e-5
        h = 0.01 * d0 / d1 if ok else 1e-6 * span
        h = min(h, span)
    else:
        h = abs(float(h0))

    while True:
        if n_steps >= max_steps:
            return finish("max_steps", f"exceeded {max_steps} steps")
        stop_at = x1 if targets is None or ti >= len(targets) else targets[ti]
        remaining = abs(stop_at - x)
        clipped = h >= remaining
        step = remaining if clipped else h
        if step < 16.0 * EPS * max(abs(x), 1e-300):
            return finish("step_underflow", f"step size underflow at x={x!r}")

        y_new, err, f_new = _dp_step(f_rhs, x, y, f, direction * step)
        nfev += 6
        err_norm = norm(err, y, y_new, rel_tol, abs_tol)
        if not math.isfinite(err_norm):
            err_norm = math.inf

        if err_norm > 1.0:
            n_rejected += 1
            factor = 0.2 if not math.isfinite(err_norm) else max(0.2, 0.9 * err_norm ** -0.2)
            h = step * factor
            continue

        x_new = stop_at if clipped else x + direction * step

        if event is not None:
            ev1 = float(event(x_new, y_new))
            if ev1 == 0.0 or (ev1 < 0.0) != (ev0 < 0.0):
                x_hit, y_hit = _locate_event(f_rhs, event, x, y, f, direction * step, ev0)
                nfev += 6 * 60
                n_steps += 1
                record(x_hit, y_hit)
                return finish("event")

        n_steps += 1
        x, y, f = x_new, y_new, f_new
        if targets is None:
            record(x, y)
        elif clipped:
            while ti < len(targets) and targets[ti] == x:
                record(x, y)
                ti += 1
        if clipped and stop_at == x1 and (targets is None or ti >= len(targets)):
            return finish("success")

        factor = 5.0 if err_norm == 0.0 else min(5.0, max(0.2, 0.9 * err_norm ** -0.2))
        h = step * factor if not clipped else max(h, step * factor)


def _locate_event(rhs, event, x, y, f, h, ev0):
    lo, hi = 0.0, h
    y_hi = None
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        y_mid, _, _ = _dp_step(rhs, x, y, f, mid)
        ev = float(event(x + mid, y_mid))
        if ev == 0.0 or (ev < 0.0) != (ev0 < 0.0):
            hi, y_hi = mid, y_mid
        else:
            lo = mid
        if abs(hi - lo) <= 4.0 * EPS * max(abs(x), abs(h)):
            break
    if y_hi is None:
        y_hi, _, _ = _dp_step(rhs, x, y, f, hi)
    return x + hi, y_hi
