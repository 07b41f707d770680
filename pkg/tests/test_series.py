import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, special

from amalgam_ft import (
    CoefficientSequence,
    FunctionModel,
    PreconditionError,
    SeriesKind,
    condsin_equivalence_ratio,
    condsin_sum,
    difference_sequence,
    interpolate,
    partial_sum,
    partial_sums,
    sine_asymptotic_check,
    total_variation,
    trigub_discrepancy,
)
from amalgam_ft.series import main_term_l1_prefix, trigub_grid

from conftest import sequences

E1 = CoefficientSequence([1.0])


def test_interpolate_examples():
    A = interpolate(E1)
    assert A.evaluate([0.5, 1.0, 1.5]).tolist() == [0.5, 1.0, 0.5]
    assert interpolate(CoefficientSequence([0.0, 0.0])).is_zero()
    assert interpolate(CoefficientSequence([1.0, 1.0])).evaluate(1.5) == 1.0


def test_difference_examples():
    assert difference_sequence(E1).entries.tolist() == [1.0]
    assert difference_sequence(CoefficientSequence([1.0, 1.0])).entries.tolist() == [0.0, 1.0]
    assert difference_sequence(CoefficientSequence(np.ones(6))).entries.tolist() == [0, 0, 0, 0, 0, 1]


@settings(max_examples=50, deadline=None)
@given(sequences())
def test_interpolate_hits_the_coefficients(c):
    n = np.arange(1, len(c) + 1, dtype=float)
    assert np.array_equal(interpolate(c).evaluate(n), c.entries)


@settings(max_examples=50, deadline=None)
@given(sequences())
def test_interpolant_variation(c):
    expect = math.fsum(np.abs(difference_sequence(c).entries)) + abs(c.entries[0])
    assert total_variation(interpolate(c)) == pytest.approx(expect, rel=1e-13, abs=1e-15)


def test_partial_sum_examples():
    assert partial_sum(E1, SeriesKind.SINE, math.pi / 2) == 1.0
    assert partial_sum(E1, "cosine", 0.0) == 1.0
    assert partial_sum(CoefficientSequence([0.3, -2.0, 1.0]), "sine", 0.0) == 0.0
    with pytest.raises(ValueError):
        partial_sum(E1, "sine", 1.0, N=2)


@settings(max_examples=30, deadline=None)
@given(sequences(), st.sampled_from(list(SeriesKind)))
def test_vectorised_sums_match_scalar(c, kind):
    xs = np.linspace(0, math.pi, 17)
    direct = [partial_sum(c, kind, x) for x in xs]
    assert np.allclose(partial_sums(c, kind, xs), direct, atol=1e-13)


def test_condsin_examples():
    assert condsin_sum(E1) == 1.0
    assert condsin_sum(CoefficientSequence([0.0, 0.0])) == 0.0
    s = condsin_sum(CoefficientSequence.from_dict({"gen": "power", "p": 2, "N": 200}))
    zeta3 = special.zeta(3)
    assert zeta3 - 1 / (2 * 200**2) < s < zeta3


# -- the main term integral --------------------------------------------------------


@settings(max_examples=20, deadline=None)
@given(sequences(max_len=12))
def test_main_term_prefix_matches_quad(b):
    B = interpolate(b)
    I = main_term_l1_prefix(b)
    for M in range(1, len(b) + 1):
        pts = [float(p) for p in B.special_points if 0.5 < p < M]
        ref = sum(
            integrate.quad(lambda u: abs(B.evaluate(u)) / u, a, c, epsabs=1e-14)[0]
            for a, c in zip([0.5] + pts, pts + [float(M)])
        )
        assert I[M - 1] == pytest.approx(ref, abs=1e-11)


def test_main_term_prefix_is_the_x_integral():
    b = CoefficientSequence([1.0, -0.5, 0.75, 0.2])
    B = interpolate(b)
    kinks = [math.pi / (2 * n) for n in range(1, 5)]
    ref = integrate.quad(lambda x: abs(B.evaluate(math.pi / (2 * x))) / x, math.pi / 8, math.pi, points=kinks, limit=200)[0]
    assert main_term_l1_prefix(b)[-1] == pytest.approx(ref, abs=1e-10)


def test_condsin_ratio_examples():
    lo, hi = condsin_equivalence_ratio(CoefficientSequence([1.0, 0.0]), 2)
    assert 0.25 <= lo <= hi <= 4
    with pytest.raises(PreconditionError):
        condsin_equivalence_ratio(CoefficientSequence([0.0, 0.0]))


def test_condsin_ratio_stable_under_doubling():
    brackets = []
    for N in (250, 500, 1000, 2000):
        b = CoefficientSequence.from_dict({"gen": "power", "p": 1, "N": N})
        brackets.append(condsin_equivalence_ratio(b))
    for (l1, h1), (l2, h2) in zip(brackets, brackets[1:]):
        assert abs(l2 / l1 - 1) <= 0.10 and abs(h2 / h1 - 1) <= 0.10


@settings(max_examples=30, deadline=None)
@given(sequences(), st.floats(0.1, 10))
def test_condsin_ratio_homogeneous(b, lam):
    if not np.any(b.entries):
        return
    lo, hi = condsin_equivalence_ratio(b)
    l2, h2 = condsin_equivalence_ratio(b.scaled(lam))
    assert (l2, h2) == pytest.approx((lo, hi), rel=1e-12)


# -- sine asymptotic ---------------------------------------------------------------


def test_sine_check_examples():
    est = sine_asymptotic_check(E1)
    assert math.isfinite(est.ratio) and est.window == (math.pi / 2, math.pi)
    z = sine_asymptotic_check(CoefficientSequence([0.0, 0.0, 0.0]))
    assert z.l1_value == 0.0
    with pytest.raises(ValueError):
        sine_asymptotic_check(E1, grid=15)


def test_sine_check_matches_quad():
    b = CoefficientSequence([1.0, -0.5, 0.25, 0.6, -0.1])
    B = interpolate(b)
    N = len(b)

    def gamma(x):
        return math.fsum(b.entries * np.sin(np.arange(1, N + 1) * x)) - B.evaluate(math.pi / (2 * x)) / x

    kinks = [math.pi / (2 * n) for n in range(1, N)]
    ref = integrate.quad(lambda x: abs(gamma(x)), math.pi / (2 * N), math.pi, points=kinks, limit=500, epsabs=1e-12)[0]
    assert sine_asymptotic_check(b, tol=1e-10).l1_value == pytest.approx(ref, abs=1e-8)


def test_sine_check_homogeneous():
    b = CoefficientSequence([1.0, 0.5, -0.25, 0.1, 0.3, 0.2])
    assert sine_asymptotic_check(b.scaled(2.0)).ratio == pytest.approx(sine_asymptotic_check(b).ratio, rel=1e-6)


# -- Trigub discrepancy -------------------------------------------------------------


def direct_trigub(phi, xs):
    """QUADPACK cos/sin-weighted integrals and an explicit integer sum."""
    t = phi.breakpoints
    out = []
    for x in xs:
        re = im = 0.0
        for k in range(t.size - 1):
            lin = lambda s, k=k: phi.left[k] + phi.slopes[k] * (s - t[k])
            re += integrate.quad(lin, t[k], t[k + 1], weight="cos", wvar=x)[0]
            im -= integrate.quad(lin, t[k], t[k + 1], weight="sin", wvar=x)[0]
        ks = np.arange(math.ceil(t[0]), math.floor(t[-1]) + 1)
        vals = phi.evaluate(ks.astype(float))
        vals = np.where(ks == t[0], 0.5 * phi.values[0], vals)
        vals = np.where(ks == t[-1], 0.5 * phi.values[-1], vals)
        out.append(abs(complex(re, im) - np.sum(vals * np.exp(-1j * ks * x))))
    return max(out)


@pytest.mark.parametrize(
    "phi",
    [
        FunctionModel([0.0, 1.0, 2.0], [0.0, 1.0, 0.0]),
        FunctionModel([0.0, 1.0], [1.0, 0.0]),
        FunctionModel([0.5, 2.0, 3.7], [1.0, -1.0, 0.5]),
    ],
)
def test_trigub_matches_direct(phi):
    sup, tv = trigub_discrepancy(phi, grid=64)
    assert sup == pytest.approx(direct_trigub(phi, trigub_grid(64)), abs=1e-10)
    assert tv == total_variation(phi)


def test_trigub_examples(tent):
    assert trigub_discrepancy(FunctionModel([0, 1], [0, 0])) == (0.0, 0.0)
    sup, tv = trigub_discrepancy(tent)
    assert tv == 2.0 and sup / tv < 1.0
    s2, t2 = trigub_discrepancy(tent.scaled(-3.0))
    assert (s2, t2) == pytest.approx((3 * sup, 3 * tv), rel=1e-12)
    with pytest.raises(ValueError):
        trigub_discrepancy(tent, grid=63)


def test_trigub_grid_reaches_small_x():
    g = trigub_grid(64)
    assert g.min() == pytest.approx(math.pi / 2**14) and g.max() == math.pi
    assert np.all(np.diff(g) > 0)
