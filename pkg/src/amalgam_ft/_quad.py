"""Quadrature helpers shared by the transform and asymptotic modules."""

from __future__ import annotations

import math
from typing import Callable, Iterable

import numpy as np
from scipy import integrate

from .errors import ConvergenceError

_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    if order not in _GL_CACHE:
        _GL_CACHE[order] = np.polynomial.legendre.leggauss(order)
    return _GL_CACHE[order]


def split_points(lo: float, hi: float, points: Iterable[float]) -> np.ndarray:
    pts = [p for p in points if lo < p < hi and np.isfinite(p)]
    return np.unique(np.concatenate([[lo, hi], np.asarray(pts, dtype=float)]))


def piecewise_quad(
    func: Callable[[float], float],
    edges: np.ndarray,
    tol: float,
    limit: int = 200,
) -> tuple[float, float]:
    """Sum of QUADPACK integrals between consecutive ``edges``.

    Interior integrable singularities (logarithms) must sit on edges; QAGS
    extrapolates towards them.
    """
    n = len(edges) - 1
    vals, errs = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        v, e = integrate.quad(func, a, b, epsabs=tol / (2 * n), epsrel=1e-12, limit=limit)
        vals.append(v)
        errs.append(e)
    return math.fsum(vals), math.fsum(errs)


def _panel_values(func, a: np.ndarray, b: np.ndarray, order: int, chunk: int = 1 << 14) -> np.ndarray:
    """Gauss-Legendre estimate of ``int |func|`` on each panel ``[a_i, b_i]``."""
    x, w = _gauss_legendre(order)
    out = np.empty(a.size)
    for i in range(0, a.size, chunk):
        lo, hi = a[i : i + chunk, None], b[i : i + chunk, None]
        half = 0.5 * (hi - lo)
        nodes = 0.5 * (lo + hi) + half * x
        vals = np.abs(func(nodes.ravel())).reshape(nodes.shape)
        out[i : i + chunk] = (half * vals * w).sum(axis=1)
    return out


def _sign_changes(func, edges: np.ndarray, iterations: int = 45) -> np.ndarray:
    """Roots of ``func`` bracketed by consecutive ``edges``, by vectorised bisection.

    ``|func|`` has a kink at every root; putting roots on panel edges keeps
    Gauss-Legendre at full order.
    """
    f = np.asarray(func(edges), dtype=float)
    idx = np.nonzero(f[:-1] * f[1:] < 0)[0]
    if idx.size == 0:
        return np.empty(0)
    a, b = edges[idx].copy(), edges[idx + 1].copy()
    fa = f[idx]
    for _ in range(iterations):
        mid = 0.5 * (a + b)
        fm = np.asarray(func(mid), dtype=float)
        left = fa * fm <= 0
        b = np.where(left, mid, b)
        a = np.where(left, a, mid)
        fa = np.where(left, fa, fm)
    return 0.5 * (a + b)


def abs_integral_composite(
    func: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    width: float,
    kinks: Iterable[float] = (),
    tol: float = 1e-8,
    order: int = 8,
    max_depth: int = 40,
) -> tuple[float, float]:
    """``int_lo^hi |func|`` by locally adaptive composite Gauss-Legendre.

    ``func`` must be vectorised.  The starting panels are at most ``width``
    wide, follow a geometric grid near ``lo`` (so slowly varying features at
    small abscissae are resolved), and always break at ``kinks`` and at sign
    changes of ``func`` detected on that grid.  A panel is accepted once the
    estimate on it and on its two halves agree to its share of ``tol``
    (proportional to its length); otherwise it is split.  Returns the sum and
    the summed panel discrepancies, which bound the error in practice.
    """
    if not hi > lo:
        return 0.0, 0.0
    n_uniform = int(math.ceil((hi - lo) / width))
    geo = np.geomspace(lo, hi, max(2, int(math.ceil(math.log(hi / lo) / math.log(1.1))))) if lo > 0 else []
    edges = split_points(lo, hi, np.concatenate([np.linspace(lo, hi, n_uniform + 1), geo, list(kinks)]))
    edges = np.union1d(edges, _sign_changes(func, edges))
    a, b = edges[:-1], edges[1:]
    coarse = _panel_values(func, a, b, order)
    density = tol / (hi - lo)
    vals, errs = [], []
    for _ in range(max_depth):
        mid = 0.5 * (a + b)
        left = _panel_values(func, a, mid, order)
        right = _panel_values(func, mid, b, order)
        fine = left + right
        est = np.abs(fine - coarse)
        ok = est <= density * (b - a)
        vals.extend(fine[ok])
        errs.extend(est[ok])
        bad = ~ok
        if not bad.any():
            return math.fsum(vals), math.fsum(errs)
        a, b = np.concatenate([a[bad], mid[bad]]), np.concatenate([mid[bad], b[bad]])
        coarse = np.concatenate([left[bad], right[bad]])
    raise ConvergenceError(
        f"adaptive quadrature did not reach tol={tol:g}: {a.size} panels unresolved at depth {max_depth}"
    )
