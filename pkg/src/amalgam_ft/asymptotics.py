"""Main term / remainder decomposition of the cosine and sine transforms.

For ``f`` continuous on the half-line, vanishing at infinity, with ``f'`` in
A_{1,2}:

    f_gamma^(x) = (1/x) f(pi / (2x)) sin(pi gamma / 2) + Gamma(x),

where ``||Gamma||_1`` is controlled by ``||f'||_{A_{1,2}}``.  The remainder is
defined by subtraction, so any bounded factor in front of it is absorbed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._quad import abs_integral_composite
from .amalgam import function_amalgam_norm, scale_norm
from .errors import PreconditionError
from .model import FunctionModel, PiecewiseLinear, derivative
from .transforms import fourier_pair, fourier_transform

__all__ = [
    "DecompositionSample",
    "RemainderEstimate",
    "main_term",
    "decompose",
    "decompose_grid",
    "remainder",
    "remainder_l1",
    "fubini_sides",
    "fubini_identity_defect",
    "bale_check",
    "tail_reduction_sum",
    "tail_reduction_defect",
]


@dataclass(frozen=True)
class DecompositionSample:
    x: float
    transform_value: float
    main_term: float
    remainder: float
    gamma: int

    def to_row(self) -> list[float]:
        return [self.x, self.transform_value, self.main_term, self.remainder]


@dataclass(frozen=True)
class RemainderEstimate:
    """``int_window |Gamma|`` against a reference norm.

    ``ratio`` is ``inf`` when the reference norm vanishes but the integral
    does not, and ``0`` when both vanish.
    """

    window: tuple[float, float]
    l1_value: float
    f_prime_norm: float
    ratio: float

    def to_dict(self) -> dict:
        return {
            "window": list(self.window),
            "l1_value": self.l1_value,
            "f_prime_norm": self.f_prime_norm,
            "ratio": self.ratio,
        }


def _ratio(num: float, den: float) -> float:
    if den > 0:
        return num / den
    return math.inf if num > 0 else 0.0


def _check_gamma(gamma: int) -> int:
    if gamma not in (0, 1):
        raise ValueError(f"gamma must be 0 or 1, got {gamma!r}")
    return gamma


def _require_continuous(f: FunctionModel) -> None:
    if f.has_jump():
        raise PreconditionError(
            "the decomposition needs f locally absolutely continuous on (0, inf); "
            "this model jumps at a support edge"
        )


def main_term(f: FunctionModel, gamma: int, x):
    """``(1/x) f(pi/(2x)) sin(pi gamma/2)``; identically zero for the cosine case."""
    _check_gamma(gamma)
    xa = np.asarray(x, dtype=float)
    if np.any(xa <= 0):
        raise ValueError("x must be positive")
    if gamma == 0:
        out = np.zeros_like(xa)
    else:
        out = f.evaluate(math.pi / (2.0 * xa)) / xa
    return float(out) if np.ndim(x) == 0 else out


def remainder(f: FunctionModel, gamma: int, x):
    """Vectorised ``Gamma(x) = f_gamma^(x) - main_term(x)``."""
    return fourier_transform(f, gamma, x) - main_term(f, gamma, x)


def decompose(f: FunctionModel, gamma: int, x: float) -> DecompositionSample:
    _require_continuous(f)
    value = float(fourier_transform(f, gamma, x))
    main = float(main_term(f, gamma, x))
    return DecompositionSample(float(x), value, main, value - main, gamma)


def decompose_grid(f: FunctionModel, gamma: int, xs) -> list[DecompositionSample]:
    _require_continuous(f)
    xs = np.asarray(xs, dtype=float)
    values = fourier_transform(f, gamma, xs)
    mains = main_term(f, gamma, xs)
    return [
        DecompositionSample(float(x), float(v), float(m), float(v - m), gamma)
        for x, v, m in zip(xs, values, mains)
    ]


def _oscillation_width(g: PiecewiseLinear) -> float:
    # a quarter of the shortest period 2 pi / t_K present in the transform
    return math.pi / (2.0 * max(g.support[1], 1e-300))


def remainder_l1(
    f: FunctionModel,
    gamma: int,
    x_lo: float,
    x_hi: float,
    tol: float = 1e-7,
    norm_tol: float = 1e-10,
) -> RemainderEstimate:
    """``int_{x_lo}^{x_hi} |Gamma(x)| dx`` and its ratio to ``||f'||_{A_{1,2}}``."""
    _check_gamma(gamma)
    if not 0 < x_lo < x_hi:
        raise ValueError("need 0 < x_lo < x_hi")
    _require_continuous(f)
    fp_norm = function_amalgam_norm(derivative(f), tol=norm_tol).value
    if f.is_zero():
        return RemainderEstimate((x_lo, x_hi), 0.0, fp_norm, 0.0)
    kinks = [math.pi / (2.0 * b) for b in f.breakpoints if b > 0]
    val, _ = abs_integral_composite(
        lambda x: remainder(f, gamma, x), x_lo, x_hi, _oscillation_width(f), kinks, tol
    )
    return RemainderEstimate((x_lo, x_hi), val, fp_norm, _ratio(val, fp_norm))


def fubini_sides(f: FunctionModel) -> tuple[float, float]:
    """Both sides of ``int_0^inf int_0^{pi/(2x)} s|f'(s)| ds dx = (pi/2) int|f'|``.

    The left side is reduced in closed form: with ``F(u) = int_0^u s|f'|``
    and ``u = pi/(2x)`` it equals ``(pi/2) int_0^inf F(u) / u^2 du``, and
    ``F`` is piecewise quadratic.  No integration order is swapped.
    """
    t = f.breakpoints
    c = np.abs(f.slopes)
    parts = []
    F = 0.0
    for k in range(c.size):
        a, b = float(t[k]), float(t[k + 1])
        if a > 0:
            parts.append((F - 0.5 * c[k] * a * a) * (1.0 / a - 1.0 / b))
        parts.append(0.5 * c[k] * (b - a))
        F += 0.5 * c[k] * (b * b - a * a)
    parts.append(F / float(t[-1]))
    lhs = 0.5 * math.pi * math.fsum(parts)
    rhs = 0.5 * math.pi * math.fsum(c * np.diff(t))
    return lhs, rhs


def fubini_identity_defect(f: FunctionModel) -> float:
    lhs, rhs = fubini_sides(f)
    return abs(lhs - rhs)


def bale_check(g: PiecewiseLinear, m: int, tol: float = 1e-9) -> tuple[float, float]:
    """Both sides of the dyadic-block Fourier estimate at scale ``m``.

    ``lhs = int_{2^m}^{2^{m+1}} (1/x) |int_{2^-m}^inf g(t) e^{-ixt} dt| dx``
    (inner integral exact, outer by composite quadrature) and
    ``rhs = S_{-m}(g)``, the l^2 norm of the block masses at scale ``2^-m``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    rhs = scale_norm(g, -m)
    cut = g.restrict(math.ldexp(1.0, -m))
    if cut.is_zero():
        return 0.0, rhs
    lo, hi = math.ldexp(1.0, m), math.ldexp(1.0, m + 1)

    def integrand(x):
        C, S = fourier_pair(cut, x)
        return np.hypot(C, S) / x

    lhs, _ = abs_integral_composite(integrand, lo, hi, _oscillation_width(cut), (), tol)
    return lhs, rhs


def _inner_sine(fp: PiecewiseLinear, gamma: int, x: np.ndarray, lo: float, hi: np.ndarray) -> np.ndarray:
    """Oriented ``int_lo^hi f'(t) sin(xt - pi gamma/2) dt`` for piecewise-constant ``f'``."""
    phase = 0.5 * math.pi * gamma
    t, c = fp.breakpoints, fp.left
    out = np.zeros_like(x)
    for k in range(c.size):
        a, b = t[k], t[k + 1]
        p = np.clip(lo, a, b)
        q = np.clip(hi, a, b)
        # cos(xp - phase) - cos(xq - phase), written as a product of sines
        out += c[k] * 2.0 * np.sin(0.5 * x * (p + q) - phase) * np.sin(0.5 * x * (q - p)) / x
    return out


def tail_reduction_sum(f: FunctionModel, gamma: int, tol: float = 1e-9) -> float:
    """``sum_m int_{2^m}^{2^{m+1}} (1/x) |int_{2^-m}^{pi/(2x)} f'(t) sin(xt - pi gamma/2) dt| dx``.

    For ``x`` in the ``m``-th dyadic interval both inner limits lie in
    ``[pi/4, pi/2] 2^-m``, so only scales with that band meeting the support
    contribute.  When ``t_0 = 0`` infinitely many do; each is at most
    ``ln 2 sup|f'| (pi/2) 2^-m``, and summation stops once that geometric
    tail drops below ``tol``.
    """
    _check_gamma(gamma)
    fp = derivative(f)
    if fp.is_zero():
        return 0.0
    t0, tK = fp.support
    m_min = math.floor(-math.log2(tK / (0.25 * math.pi))) - 1
    sup = fp.sup_abs()
    if t0 > 0:
        m_max = math.ceil(-math.log2(t0 / (0.5 * math.pi))) + 1
    else:
        m_max = m_min
        while math.log(2) * sup * 0.5 * math.pi * 2.0 ** -m_max >= tol:
            m_max += 1
    kinks_t = list(fp.breakpoints)
    parts = []
    for m in range(m_min, m_max + 1):
        lo, hi = math.ldexp(1.0, m), math.ldexp(1.0, m + 1)
        start = math.ldexp(1.0, -m)
        # the inner integral flips orientation where pi/(2x) crosses 2^-m
        kinks = [math.pi / (2.0 * b) for b in kinks_t if b > 0] + [0.5 * math.pi * lo]
        val, _ = abs_integral_composite(
            lambda x: _inner_sine(fp, gamma, x, start, math.pi / (2.0 * x)) / x,
            lo,
            hi,
            # only t <= (pi/2) 2^-m is active at this scale
            math.pi / (4.0 * min(tK, 0.5 * math.pi * start)),
            kinks,
            tol / (m_max - m_min + 1),
        )
        parts.append(val)
    return math.fsum(parts)


def tail_reduction_defect(f: FunctionModel, gamma: int, tol: float = 1e-9) -> float:
    """``L - int|f'|`` for the sum above; non-positive up to quadrature slack."""
    fp = derivative(f)
    return tail_reduction_sum(f, gamma, tol) - fp.l1_norm()
