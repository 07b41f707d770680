"""Cosine and sine series with finitely supported coefficients.

Coefficients are turned into functions by linear interpolation,
``A(x) = a_n + (n - x) (a_n - a_{n+1})`` on ``[n, n+1]`` with ``a_0 = 0``, so
the Fourier-transform results apply to the series through the
integral/sum comparison for functions of bounded variation.
"""

from __future__ import annotations

import enum
import math

import numpy as np

from ._quad import abs_integral_composite
from .amalgam import CoefficientSequence, sequence_amalgam_norm
from .asymptotics import RemainderEstimate, _ratio
from .errors import PreconditionError
from .model import FunctionModel, total_variation
from .transforms import fourier_pair

__all__ = [
    "SeriesKind",
    "interpolate",
    "difference_sequence",
    "partial_sum",
    "partial_sums",
    "condsin_sum",
    "main_term_l1_prefix",
    "condsin_equivalence_ratio",
    "sine_asymptotic_check",
    "cosine_integrability_check",
    "trigub_discrepancy",
    "trigub_grid",
]


class SeriesKind(str, enum.Enum):
    COSINE = "cosine"
    SINE = "sine"


def _seq(c) -> CoefficientSequence:
    return c if isinstance(c, CoefficientSequence) else CoefficientSequence(c)


def interpolate(c: CoefficientSequence) -> FunctionModel:
    """Piecewise-linear ``A`` through ``(0, 0), (1, c_1), ..., (N, c_N), (N+1, 0)``."""
    c = _seq(c)
    N = len(c)
    return FunctionModel(np.arange(N + 2, dtype=float), np.concatenate([[0.0], c.entries, [0.0]]))


def difference_sequence(c: CoefficientSequence) -> CoefficientSequence:
    """``c_n - c_{n+1}`` for ``n = 1..N`` (with ``c_{N+1} = 0``)."""
    e = _seq(c).entries
    return CoefficientSequence(e - np.append(e[1:], 0.0))


def _trig(kind: SeriesKind | str):
    kind = SeriesKind(kind)
    return np.sin if kind is SeriesKind.SINE else np.cos


def _check_N(c: CoefficientSequence, N: int | None) -> int:
    if N is None:
        return len(c)
    if not 1 <= N <= len(c):
        raise ValueError(f"N must be in 1..{len(c)}, got {N}")
    return N


def partial_sum(c: CoefficientSequence, kind: SeriesKind | str, x: float, N: int | None = None) -> float:
    """``sum_{n<=N} c_n trig(n x)``, exactly rounded via :func:`math.fsum`.

    >>> partial_sum(CoefficientSequence([1.0]), "sine", math.pi / 2)
    1.0
    """
    c = _seq(c)
    N = _check_N(c, N)
    n = np.arange(1, N + 1, dtype=float)
    return math.fsum(c.entries[:N] * _trig(kind)(n * x))


def partial_sums(c: CoefficientSequence, kind: SeriesKind | str, xs, N: int | None = None) -> np.ndarray:
    """Vectorised partial sums with Neumaier-compensated accumulation over ``n``."""
    c = _seq(c)
    N = _check_N(c, N)
    xs = np.asarray(xs, dtype=float)
    trig = _trig(kind)
    s = np.zeros_like(xs)
    comp = np.zeros_like(xs)
    for n in range(1, N + 1):
        cn = c.entries[n - 1]
        if cn == 0.0:
            continue
        term = cn * trig(n * xs)
        t = s + term
        comp += np.where(np.abs(s) >= np.abs(term), (s - t) + term, (term - t) + s)
        s = t
    return s + comp


def condsin_sum(b: CoefficientSequence) -> float:
    """``sum |b_n| / n``, the extra condition needed for sine series."""
    e = _seq(b).entries
    return math.fsum(np.abs(e) / np.arange(1, e.size + 1))


def _abs_over_u(p: float, q: float, y0: float, y1: float) -> float:
    """Exact ``int_p^q |y(u)| / u du`` for ``y`` linear from ``y0`` to ``y1``, ``0 < p < q``."""

    def signed(p, q, y0, y1):
        if q <= p:  # crossing rounded onto an end
            return 0.0
        s = (y1 - y0) / (q - p)
        return (y0 - s * p) * math.log(q / p) + s * (q - p)

    if y0 * y1 < 0:
        z = p + (q - p) * y0 / (y0 - y1)
        return abs(signed(p, z, y0, 0.0)) + abs(signed(z, q, 0.0, y1))
    return abs(signed(p, q, y0, y1))


def main_term_l1_prefix(b: CoefficientSequence) -> np.ndarray:
    """``I_M = int_{1/2}^{M} |B(u)| / u du`` for ``M = 1..N``.

    Substituting ``u = pi/(2x)`` shows ``I_M`` is the integral of the
    main term ``|B(pi/(2x))| / x`` over ``[pi/(2M), pi]``.
    """
    e = _seq(b).entries
    out = np.empty(e.size)
    acc = [0.5 * abs(e[0])]  # B(u) = b_1 u on [1/2, 1]
    out[0] = acc[0]
    for n in range(1, e.size):
        acc.append(_abs_over_u(float(n), float(n + 1), e[n - 1], e[n]))
        out[n] = math.fsum(acc)
    return out


def condsin_equivalence_ratio(b: CoefficientSequence, N: int | None = None) -> tuple[float, float]:
    """Bracket ``[min_M, max_M]`` of ``I_M / sum_{n<=M} |b_n|/n`` over ``M = 1..N``.

    The integral of the main term over ``[pi/(2M), pi]`` and the partial
    condition sums are equivalent exactly when this bracket stays bounded
    away from 0 and infinity as ``N`` grows.
    """
    b = _seq(b)
    N = _check_N(b, N)
    e = b.entries[:N]
    sums = np.cumsum(np.abs(e) / np.arange(1, N + 1))
    if sums[-1] == 0.0:
        raise PreconditionError("sum |b_n|/n vanishes; ratio undefined")
    I = main_term_l1_prefix(CoefficientSequence(e))
    mask = sums > 0
    r = I[mask] / sums[mask]
    return float(r.min()), float(r.max())


def _series_width(N: int, grid: int, span: float) -> float:
    return min(span / grid, math.pi / (4.0 * N))


def sine_asymptotic_check(b: CoefficientSequence, grid: int = 64, tol: float = 1e-8) -> RemainderEstimate:
    """``int |Gamma|`` for ``sum b_n sin(nx) = B(pi/(2x))/x + Gamma(x)``.

    The window is ``[pi/(2N), pi]``: below it the main term samples ``B``
    beyond its interpolation range.  ``grid`` is the initial number of
    panels; panels are capped at an eighth of the shortest oscillation,
    broken at the kinks ``x = pi/(2n)`` and refined until successive
    estimates agree to ``tol``.  The reference norm is ``||Delta b||_{a_{1,2}}``.
    """
    if grid < 16:
        raise ValueError("grid must be at least 16")
    b = _seq(b)
    N = len(b)
    B = interpolate(b)
    x_lo = math.pi / (2 * N)
    ref = sequence_amalgam_norm(difference_sequence(b))
    if not np.any(b.entries):
        return RemainderEstimate((x_lo, math.pi), 0.0, ref, 0.0)

    def gamma(x):
        return partial_sums(b, SeriesKind.SINE, x) - B.evaluate(math.pi / (2.0 * x)) / x

    kinks = [math.pi / (2.0 * n) for n in range(1, N + 1)]
    val, _ = abs_integral_composite(gamma, x_lo, math.pi, _series_width(N, grid, math.pi - x_lo), kinks, tol)
    return RemainderEstimate((x_lo, math.pi), val, ref, _ratio(val, ref))


def cosine_integrability_check(a: CoefficientSequence, grid: int = 64, tol: float = 1e-8) -> RemainderEstimate:
    """``int_0^pi |sum a_n cos(nx)| dx`` against ``||Delta a||_{a_{1,2}}``."""
    if grid < 16:
        raise ValueError("grid must be at least 16")
    a = _seq(a)
    N = len(a)
    ref = sequence_amalgam_norm(difference_sequence(a))
    if not np.any(a.entries):
        return RemainderEstimate((0.0, math.pi), 0.0, ref, 0.0)
    val, _ = abs_integral_composite(
        lambda x: partial_sums(a, SeriesKind.COSINE, x), 0.0, math.pi, _series_width(N, grid, math.pi), (), tol
    )
    return RemainderEstimate((0.0, math.pi), val, ref, _ratio(val, ref))


def trigub_grid(grid: int, depth: int = 14) -> np.ndarray:
    """Uniform ``pi k / grid`` plus the geometric points ``pi / 2^j``, ``j <= depth``."""
    uniform = math.pi * np.arange(1, grid + 1) / grid
    geometric = math.pi / 2.0 ** np.arange(1, depth + 1)
    return np.unique(np.concatenate([uniform, geometric]))


def _normalized_samples(phi: FunctionModel, k: np.ndarray) -> np.ndarray:
    vals = phi.evaluate(k)
    t0, tK = phi.support
    # at a support-edge jump take the midpoint of the one-sided limits
    vals = np.where(k == t0, 0.5 * phi.values[0], vals)
    return np.where(k == tK, 0.5 * phi.values[-1], vals)


def trigub_discrepancy(phi: FunctionModel, grid: int = 256) -> tuple[float, float]:
    """``(sup_x |int phi e^{-ixt} dt - sum_k phi(k) e^{-ikx}|, total variation)``.

    ``phi`` is extended by zero to the line; the sup runs over
    :func:`trigub_grid`.  Samples at support-edge jumps use the midpoint
    value, the normalisation under which integer sampling and integration
    are compared for functions of bounded variation.
    """
    if grid < 64:
        raise ValueError("grid must be at least 64")
    tv = total_variation(phi)
    if phi.is_zero():
        return 0.0, tv
    xs = trigub_grid(grid)
    C, S = fourier_pair(phi, xs)
    t0, tK = phi.support
    k = np.arange(math.ceil(t0), math.floor(tK) + 1, dtype=float)
    samples = _normalized_samples(phi, k)
    phase = np.outer(xs, k)
    sum_re = np.cos(phase) @ samples
    sum_im = -(np.sin(phase) @ samples)
    defect = np.hypot(C - sum_re, -S - sum_im)
    return float(defect.max()), tv
