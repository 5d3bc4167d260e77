import numpy as np
import pytest
from numpy.testing import assert_allclose

from tailmes import (
    EXAMPLE1,
    EXAMPLE2,
    ArgumentError,
    QuadratureSettings,
    asymptotic_sigma2,
    joint_survival,
    limit_constant,
    marginal_quantile,
    marginal_survival,
    replicate_rng,
    sample_model,
    true_theta_p,
)

# independently derived closed forms for the two survival functions
def survival_x_example1(x):
    return x ** (-10.0 / 3.0) + x ** (-5.0 / 2.0) - x ** (-35.0 / 6.0)


def survival_x_example2(x):
    return 0.5 * (x ** (-10.0 / 3.0) + x ** (-5.0 / 2.0))


def test_marginal_survival_closed_forms():
    for x in (1.0, 1.7, 3.0, 10.0, 250.0):
        assert_allclose(marginal_survival(EXAMPLE1, "x", x), survival_x_example1(x), rtol=1e-13)
        assert_allclose(marginal_survival(EXAMPLE1, "y", x), survival_x_example1(x), rtol=1e-13)
        assert_allclose(marginal_survival(EXAMPLE2, "x", x), survival_x_example2(x), rtol=1e-13)
    assert marginal_survival(EXAMPLE1, "x", 0.5) == 1.0
    with pytest.raises(ArgumentError):
        marginal_survival(EXAMPLE1, "z", 2.0)


def test_quantile_inverts_survival():
    for spec in (EXAMPLE1, EXAMPLE2):
        for margin in ("x", "y"):
            for p in (0.5, 0.1, 1e-2, 1e-4, 1e-6):
                q = marginal_quantile(spec, margin, 1.0 - p)
                assert_allclose(marginal_survival(spec, margin, q), p, rtol=1e-7)


def test_quantile_edge_cases():
    assert marginal_quantile(EXAMPLE1, "x", 0.0) == 1.0
    grid = [marginal_quantile(EXAMPLE1, "y", q) for q in (0.1, 0.5, 0.9, 0.999)]
    assert np.all(np.diff(grid) > 0)
    with pytest.raises(ArgumentError):
        marginal_quantile(EXAMPLE1, "x", 1.0)
    with pytest.raises(ArgumentError):
        marginal_quantile(EXAMPLE1, "x", -0.01)


def test_joint_survival_frozen_values():
    # example1 at (10, 1): 1 - F_X(10) - F_Y(1) + F_1(1) F_2(10) F_3(1) = S_X(10)
    assert_allclose(joint_survival(EXAMPLE1, 10.0, 1.0), 3.6249687442620355e-3, rtol=1e-12)
    assert_allclose(joint_survival(EXAMPLE2, 10.0, 10.0), 2.370794416806389e-4, rtol=1e-12)


def test_joint_survival_bounds_and_monotonicity():
    for spec in (EXAMPLE1, EXAMPLE2):
        for x in (1.0, 2.0, 5.0, 20.0):
            for y in (1.0, 3.0, 10.0):
                j = joint_survival(spec, x, y)
                sx = marginal_survival(spec, "x", x)
                sy = marginal_survival(spec, "y", y)
                assert 0.0 <= j <= min(sx, sy) + 1e-15
                assert j >= sx + sy - 1.0 - 1e-15
        grid = [joint_survival(spec, x, 2.0) for x in (1.0, 2.0, 4.0, 8.0)]
        assert np.all(np.diff(grid) < 0)


def test_joint_survival_against_monte_carlo():
    s = sample_model(EXAMPLE2, 400000, replicate_rng(8, 0))
    mc = np.mean((s.x > 3.0) & (s.y > 3.0))
    assert_allclose(mc, joint_survival(EXAMPLE2, 3.0, 3.0), rtol=0.1)


# values frozen from a 40-digit arbitrary-precision evaluation of the
# same integrals; the quadrature must match them, not the other way round
FROZEN_THETA = {
    ("example1", 2e-3): 3.6252317495,
    ("example1", 2e-4): 4.1781950487,
    ("example1", 2e-5): 4.7056816638,
    ("example1", 1e-3): 3.7972061266,
    ("example2", 2e-3): 3.2571313455,
    ("example2", 2e-4): 3.8102853817,
    ("example2", 2e-5): 4.3324293837,
}


def test_true_theta_frozen_values():
    for (name, p), value in FROZEN_THETA.items():
        spec = EXAMPLE1 if name == "example1" else EXAMPLE2
        assert_allclose(true_theta_p(spec, p), value, rtol=1e-7)


def test_true_theta_deep_tail():
    # the integral here is only ~5e-6, so this leans on the survival
    # functions keeping full relative accuracy far into the tail
    assert_allclose(true_theta_p(EXAMPLE1, 1e-6), 5.4250502759, rtol=1e-7)
    assert_allclose(true_theta_p(EXAMPLE2, 1e-6), 5.0327329669, rtol=1e-7)


def test_true_theta_at_p_one_is_the_mean():
    assert_allclose(true_theta_p(EXAMPLE1, 1.0), 1.8883415435139574, rtol=1e-9)
    assert_allclose(true_theta_p(EXAMPLE2, 1.0), 65.0 / 42.0, rtol=1e-9)


def test_true_theta_increases_as_p_shrinks():
    for spec in (EXAMPLE1, EXAMPLE2):
        values = [true_theta_p(spec, p) for p in (0.5, 0.1, 1e-2, 1e-3, 1e-4)]
        assert np.all(np.diff(values) > 0)


def test_true_theta_against_monte_carlo():
    s = sample_model(EXAMPLE1, 10**6, replicate_rng(3, 0))
    q = marginal_quantile(EXAMPLE1, "y", 0.99)
    mc = float(np.mean(s.x[s.y > q]))
    assert_allclose(mc, true_theta_p(EXAMPLE1, 0.01), rtol=0.03)


def test_true_theta_validation():
    with pytest.raises(ArgumentError):
        true_theta_p(EXAMPLE1, 0.0)
    with pytest.raises(ArgumentError):
        true_theta_p(EXAMPLE1, 1.5)


def test_scaled_joint_tail_reaches_its_limit():
    # t * P(X > U_x(t/x), Y > U_y(t/y)) ** eta -> scale * min(x,y)^(1/eta):
    # evaluated directly at t = 1e10, where the residual terms are tiny
    t = 1e10
    for spec in (EXAMPLE1, EXAMPLE2):
        d = spec.tail_limit_scale
        values = {}
        for x, y in ((1.0, 1.0), (2.0, 1.0), (1.0, 2.0), (3.0, 3.0)):
            ux = marginal_quantile(spec, "x", 1.0 - x / t)
            uy = marginal_quantile(spec, "y", 1.0 - y / t)
            values[(x, y)] = t ** (1.0 / spec.eta) * joint_survival(spec, ux, uy)
        for (x, y), v in values.items():
            assert_allclose(v, d * min(x, y) ** (1.0 / spec.eta), rtol=5e-3)
        # homogeneity: the three min=1 points agree with each other tightly
        assert_allclose(values[(2.0, 1.0)], values[(1.0, 1.0)], rtol=1e-3)
        assert_allclose(values[(1.0, 2.0)], values[(1.0, 1.0)], rtol=1e-3)


def test_limit_constants_frozen():
    assert_allclose(limit_constant(EXAMPLE1), 10.0 / 7.0, rtol=1e-13)
    assert_allclose(limit_constant(EXAMPLE2), 1.7998872141355331, rtol=1e-13)
    assert_allclose(asymptotic_sigma2(EXAMPLE1), 0.49, rtol=1e-13)
    assert_allclose(asymptotic_sigma2(EXAMPLE2), 0.3086806572242439, rtol=1e-13)


def test_sigma2_scales_inversely_with_squared_limit():
    for spec in (EXAMPLE1, EXAMPLE2):
        assert_allclose(asymptotic_sigma2(spec), limit_constant(spec) ** -2, rtol=1e-14)
    # both examples share eta and gamma1, so sigma2 * d^2 must coincide
    assert_allclose(
        asymptotic_sigma2(EXAMPLE2) * EXAMPLE2.tail_limit_scale**2,
        asymptotic_sigma2(EXAMPLE1) * EXAMPLE1.tail_limit_scale**2,
        rtol=1e-13,
    )


def test_quadrature_settings_validation():
    with pytest.raises(ArgumentError):
        QuadratureSettings(rel_tol=0.0)
    with pytest.raises(ArgumentError):
        QuadratureSettings(truncation_quantile=1.0)
    with pytest.raises(ArgumentError):
        QuadratureSettings(max_subdivisions=0)


def test_tighter_settings_agree():
    loose = QuadratureSettings(rel_tol=1e-6, abs_tol=1e-10)
    assert_allclose(
        true_theta_p(EXAMPLE1, 2e-3, loose), true_theta_p(EXAMPLE1, 2e-3), rtol=1e-5
    )
