"""Compactly supported piecewise-linear functions on the half-line.

Every model is determined by a strictly increasing list of breakpoints
``t_0 < ... < t_K`` and is linear between consecutive breakpoints and zero
outside ``[t_0, t_K]``.  Two concrete flavours exist:

* :class:`FunctionModel` -- continuous inside its support, values given at the
  breakpoints (jumps only at the support edges);
* :class:`PiecewiseConstant` -- one value per interval, the shape of a
  derivative.

Both share the exact calculus of :class:`PiecewiseLinear` (absolute-value
integrals, sup norm, dilations), which is what the amalgam norms and the
transforms are built on.  Positions that must be located exactly (block
edges ``j * 2**m``, zero crossings) are handled as :class:`fractions.Fraction`
so that dyadic block enumeration stays exact at any scale.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from fractions import Fraction
from functools import cached_property
from typing import Callable, Sequence

import numpy as np
from scipy import integrate

from .errors import (
    LengthMismatchError,
    ModelError,
    NegativeBreakpointError,
    NonMonotoneBreakpointsError,
)

__all__ = [
    "PiecewiseLinear",
    "FunctionModel",
    "PiecewiseConstant",
    "make_piecewise_linear",
    "derivative",
    "total_variation",
    "abs_integral",
    "dilate",
    "sample_decaying",
]


def _validate_breakpoints(breakpoints) -> np.ndarray:
    t = np.asarray(breakpoints, dtype=float)
    if t.ndim != 1 or t.size < 2:
        raise LengthMismatchError("need at least two breakpoints")
    if not np.all(np.isfinite(t)):
        raise ModelError("breakpoints must be finite")
    if np.any(t < 0):
        raise NegativeBreakpointError(f"breakpoints must be non-negative, got min {t.min()!r}")
    if np.any(np.diff(t) <= 0):
        raise NonMonotoneBreakpointsError("breakpoints must be strictly increasing")
    return t


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


def _abs_linear(y0: float, y1: float, length: float) -> float:
    """Exact integral of ``|linear|`` over an interval with end values y0, y1."""
    if y0 * y1 >= 0.0:
        return 0.5 * length * (abs(y0) + abs(y1))
    return 0.5 * length * (y0 * y0 + y1 * y1) / (abs(y0) + abs(y1))


class PiecewiseLinear:
    """Common exact calculus for piecewise-linear, compactly supported functions.

    Interval ``k`` is ``[t_k, t_{k+1}]`` on which the function runs linearly
    from ``left[k]`` to ``right[k]``.  Subclasses decide how those arrays are
    built from user input.
    """

    def __init__(self, breakpoints, left, right):
        t = _validate_breakpoints(breakpoints)
        left = np.asarray(left, dtype=float)
        right = np.asarray(right, dtype=float)
        if left.shape != (t.size - 1,) or right.shape != (t.size - 1,):
            raise LengthMismatchError("one left/right value pair per interval is required")
        if not (np.all(np.isfinite(left)) and np.all(np.isfinite(right))):
            raise ModelError("values must be finite")
        self._t = _readonly(t)
        self._left = _readonly(left)
        self._right = _readonly(right)

    # -- basic geometry ----------------------------------------------------

    @property
    def breakpoints(self) -> np.ndarray:
        return self._t

    @property
    def left(self) -> np.ndarray:
        return self._left

    @property
    def right(self) -> np.ndarray:
        return self._right

    @property
    def support(self) -> tuple[float, float]:
        return float(self._t[0]), float(self._t[-1])

    @property
    def lengths(self) -> np.ndarray:
        return np.diff(self._t)

    @property
    def slopes(self) -> np.ndarray:
        return (self._right - self._left) / self.lengths

    def is_zero(self) -> bool:
        return not (np.any(self._left) or np.any(self._right))

    def sup_abs(self) -> float:
        return float(max(np.abs(self._left).max(), np.abs(self._right).max()))

    @cached_property
    def _tf(self) -> list[Fraction]:
        return [Fraction(float(x)) for x in self._t]

    def _local_value(self, k: int, x: Fraction) -> float:
        """Value of piece ``k``'s linear formula at the exact position ``x``."""
        dl = float(x - self._tf[k])
        dr = float(self._tf[k + 1] - x)
        slope = (self._right[k] - self._left[k]) / (self._t[k + 1] - self._t[k])
        if dl <= dr:
            return float(self._left[k] + slope * dl)
        return float(self._right[k] - slope * dr)

    def piece_index(self, x: Fraction) -> int:
        """Index of the interval ``[t_k, t_{k+1})`` containing ``x`` (clamped)."""
        k = bisect_right(self._tf, x) - 1
        return min(max(k, 0), len(self._tf) - 2)

    @cached_property
    def special_points(self) -> list[Fraction]:
        """Breakpoints together with interior zero crossings, as exact fractions."""
        pts = set(self._tf)
        for k in range(self._left.size):
            y0, y1 = self._left[k], self._right[k]
            if y0 * y1 < 0:
                f0 = Fraction(float(y0))
                f1 = Fraction(float(y1))
                pts.add(self._tf[k] + (self._tf[k + 1] - self._tf[k]) * f0 / (f0 - f1))
        return sorted(pts)

    # -- integrals ---------------------------------------------------------

    def abs_integral(self, a: float, b: float) -> float:
        """Exact ``int_a^b |g(t)| dt`` for ``0 <= a <= b``."""
        if a > b:
            raise ValueError(f"abs_integral needs a <= b, got a={a!r} > b={b!r}")
        return self.abs_integral_exact(Fraction(a), Fraction(b))

    def abs_integral_exact(self, a: Fraction, b: Fraction) -> float:
        tf = self._tf
        lo = max(a, tf[0])
        hi = min(b, tf[-1])
        if lo >= hi:
            return 0.0
        k0 = bisect_right(tf, lo) - 1
        k1 = bisect_left(tf, hi)
        parts = []
        for k in range(k0, k1):
            p = max(lo, tf[k])
            q = min(hi, tf[k + 1])
            if q <= p:
                continue
            parts.append(_abs_linear(self._local_value(k, p), self._local_value(k, q), float(q - p)))
        return math.fsum(parts)

    def l1_norm(self) -> float:
        return math.fsum(
            _abs_linear(y0, y1, L) for y0, y1, L in zip(self._left, self._right, self.lengths)
        )

    def integral(self) -> float:
        """Signed integral over the support."""
        return math.fsum(0.5 * (self._left + self._right) * self.lengths)

    def cumulative_abs(self, x) -> np.ndarray:
        """Vectorised ``int_0^x |g|``, evaluated in floating point.

        Independent of :meth:`abs_integral`: pieces are split at zero crossings
        and integrated with signed antiderivatives.
        """
        x = np.asarray(x, dtype=float)
        t, y0, y1 = [], [], []
        for k in range(self._left.size):
            a, b = self._t[k], self._t[k + 1]
            l, r = self._left[k], self._right[k]
            if l * r < 0:
                z = a + (b - a) * l / (l - r)
                t += [a, z]
                y0 += [l, 0.0]
                y1 += [0.0, r]
            else:
                t.append(a)
                y0.append(l)
                y1.append(r)
        t.append(self._t[-1])
        t = np.array(t)
        y0, y1 = np.array(y0), np.array(y1)
        L = np.diff(t)
        mass = 0.5 * L * (np.abs(y0) + np.abs(y1))
        cum = np.concatenate([[0.0], np.cumsum(mass)])
        idx = np.clip(np.searchsorted(t, x, side="right") - 1, 0, L.size - 1)
        d = np.clip(x - t[idx], 0.0, L[idx])
        # a crossing that rounds onto a breakpoint leaves a zero-length piece
        beta = np.divide(y1[idx] - y0[idx], L[idx], out=np.zeros(np.shape(d)), where=L[idx] > 0)
        sign = np.where(y0[idx] + y1[idx] >= 0, 1.0, -1.0)
        part = sign * (y0[idx] * d + 0.5 * beta * d * d)
        out = cum[idx] + part
        out = np.where(x <= t[0], 0.0, out)
        return np.where(x >= t[-1], cum[-1], out)

    # -- structural transforms --------------------------------------------

    def _rebuild(self, breakpoints, left, right) -> "PiecewiseLinear":
        raise NotImplementedError

    def scaled(self, lam: float) -> "PiecewiseLinear":
        return self._rebuild(self._t, lam * self._left, lam * self._right)

    def __mul__(self, lam: float) -> "PiecewiseLinear":
        return self.scaled(float(lam))

    __rmul__ = __mul__

    def __neg__(self) -> "PiecewiseLinear":
        return self.scaled(-1.0)

    def dilate(self, m: int) -> "PiecewiseLinear":
        """The dyadic dilate ``t -> 2**m * g(2**m * t)`` (built exactly)."""
        return self._rebuild(
            np.ldexp(self._t, -m), np.ldexp(self._left, m), np.ldexp(self._right, m)
        )

    def restrict(self, a: float, b: float = math.inf) -> "PiecewiseLinear":
        """``g * 1_[a, b]``; returns an all-zero model when the overlap is empty."""
        tf = self._tf
        lo = max(Fraction(a), tf[0])
        hi = tf[-1] if b == math.inf else min(Fraction(b), tf[-1])
        if lo >= hi:
            return self._rebuild(self._t, np.zeros_like(self._left), np.zeros_like(self._right))
        k0 = bisect_right(tf, lo) - 1
        k1 = bisect_left(tf, hi)
        bps, left, right = [], [], []
        for k in range(k0, k1):
            p = max(lo, tf[k])
            q = min(hi, tf[k + 1])
            bps.append(float(p))
            left.append(self._local_value(k, p))
            right.append(self._local_value(k, q))
        bps.append(float(hi))
        return self._rebuild(bps, left, right)

    def to_dict(self) -> dict:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_dict()!r})"


class FunctionModel(PiecewiseLinear):
    """Continuous piecewise-linear function, zero outside ``[t_0, t_K]``.

    Jumps are only possible at the support edges (``values[0] != 0`` or
    ``values[-1] != 0``), which is how indicator functions are represented.
    """

    def __init__(self, breakpoints: Sequence[float], values: Sequence[float]):
        b = np.asarray(breakpoints, dtype=float)
        v = np.asarray(values, dtype=float)
        if b.ndim != 1 or v.ndim != 1 or b.size != v.size:
            raise LengthMismatchError(
                f"breakpoints and values must have equal length, got {b.size} and {v.size}"
            )
        super().__init__(b, v[:-1], v[1:])
        self._v = _readonly(v)

    @property
    def values(self) -> np.ndarray:
        return self._v

    def _rebuild(self, breakpoints, left, right) -> "FunctionModel":
        left = np.asarray(left, dtype=float)
        right = np.asarray(right, dtype=float)
        return FunctionModel(breakpoints, np.append(left, right[-1:]))

    def __call__(self, t):
        return self.evaluate(t)

    def evaluate(self, t):
        t_arr = np.asarray(t, dtype=float)
        out = np.interp(t_arr, self._t, self._v)
        out = np.where((t_arr < self._t[0]) | (t_arr > self._t[-1]), 0.0, out)
        return float(out) if np.ndim(t) == 0 else out

    def has_jump(self) -> bool:
        """True if the model jumps on the open half-line ``(0, inf)``.

        A nonzero value at ``t_0 = 0`` is not a jump there: the model is
        simply continuous from the right at the origin.
        """
        return bool(self._v[-1] != 0 or (self._v[0] != 0 and self._t[0] > 0))

    def __add__(self, other: "FunctionModel") -> "FunctionModel":
        if not isinstance(other, FunctionModel):
            return NotImplemented
        t = np.union1d(self._t, other._t)
        for g in (self, other):
            for edge, val in ((g._t[0], g._v[0]), (g._t[-1], g._v[-1])):
                if val != 0 and t[0] < edge < t[-1]:
                    raise ModelError("sum would carry an interior jump")
        return FunctionModel(t, self.evaluate(t) + other.evaluate(t))

    def to_dict(self) -> dict:
        return {"breakpoints": self._t.tolist(), "values": self._v.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "FunctionModel":
        try:
            return make_piecewise_linear(data["breakpoints"], data["values"])
        except (KeyError, TypeError) as exc:
            raise ModelError(f"expected {{'breakpoints': [...], 'values': [...]}}: {exc}") from exc


class PiecewiseConstant(PiecewiseLinear):
    """One constant value per interval; the derivative of a :class:`FunctionModel`."""

    def __init__(self, breakpoints: Sequence[float], slopes: Sequence[float]):
        s = np.asarray(slopes, dtype=float)
        super().__init__(breakpoints, s, s)

    @property
    def values(self) -> np.ndarray:
        return self._left

    def _rebuild(self, breakpoints, left, right) -> "PiecewiseConstant":
        return PiecewiseConstant(breakpoints, left)

    def __call__(self, t):
        return self.evaluate(t)

    def evaluate(self, t):
        """Right-continuous evaluation; zero outside ``[t_0, t_K)``."""
        t_arr = np.asarray(t, dtype=float)
        idx = np.clip(np.searchsorted(self._t, t_arr, side="right") - 1, 0, self._left.size - 1)
        out = np.where((t_arr < self._t[0]) | (t_arr >= self._t[-1]), 0.0, self._left[idx])
        return float(out) if np.ndim(t) == 0 else out

    def to_dict(self) -> dict:
        return {"breakpoints": self._t.tolist(), "slopes": self._left.tolist()}


def make_piecewise_linear(breakpoints: Sequence[float], values: Sequence[float]) -> FunctionModel:
    """Validate and build a :class:`FunctionModel`.

    >>> make_piecewise_linear([0, 1], [1, 0]).evaluate(0.25)
    0.75
    """
    if len(breakpoints) != len(values):
        raise LengthMismatchError(
            f"breakpoints and values must have equal length, got {len(breakpoints)} and {len(values)}"
        )
    return FunctionModel(breakpoints, values)


def derivative(f: FunctionModel) -> PiecewiseConstant:
    """Slope on each interval.  Boundary jumps of ``f`` are not represented."""
    return PiecewiseConstant(f.breakpoints, f.slopes)


def total_variation(f: FunctionModel) -> float:
    """Variation on the whole line, counting jumps from and to zero at the support edges."""
    return math.fsum(np.abs(f.slopes) * f.lengths) + abs(f.values[0]) + abs(f.values[-1])


def abs_integral(f: PiecewiseLinear, a: float, b: float) -> float:
    return f.abs_integral(a, b)


def dilate(g: PiecewiseLinear, m: int) -> PiecewiseLinear:
    return g.dilate(m)


def sample_decaying(
    func: Callable[[np.ndarray], np.ndarray], T: float, num: int = 1025
) -> tuple[FunctionModel, float]:
    """Linear interpolant of a decaying function on ``[0, T]`` plus its dropped tail.

    Returns ``(model, tail)`` where ``tail = int_T^inf |func|``; the caller
    decides whether the tail is small enough for its purpose.
    """
    if T <= 0:
        raise ValueError("truncation point must be positive")
    t = np.linspace(0.0, T, num)
    model = FunctionModel(t, np.asarray(func(t), dtype=float))
    tail, _ = integrate.quad(lambda s: abs(float(func(np.asarray(s)))), T, np.inf, limit=200)
    return model, tail
