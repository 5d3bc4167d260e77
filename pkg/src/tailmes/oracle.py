"""Semi-analytic ground truth for the built-in models.

For both benchmark models the joint survival function P(X > x, Y > y)
has an exact closed form, which makes three reference quantities
computable to quadrature accuracy:

  * marginal quantiles U(1/p) by bisection on the monotone CDF,
  * the true MES theta_p = (1/p) * integral_0^inf P(X > x, Y > q_y) dx
    with q_y the 1-p quantile of Y,
  * the tail-limit constant and the asymptotic variance of the
    extrapolated estimator, both in closed form from
    c(x, y) = d * min(x, y)**(1/eta).

These are the yardsticks the simulation harness divides by.
"""

from dataclasses import dataclass

from scipy.integrate import quad

from .errors import ArgumentError, NumericError
from .models import ModelSpec

_BISECTION_CAP = 200


@dataclass(frozen=True)
class QuadratureSettings:
    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    truncation_quantile: float = 1.0 - 1e-12
    max_subdivisions: int = 200

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ArgumentError("tolerances must be > 0")
        if not 0.0 < self.truncation_quantile < 1.0:
            raise ArgumentError("truncation_quantile must lie in (0, 1)")
        if self.max_subdivisions < 1:
            raise ArgumentError("max_subdivisions must be >= 1")


DEFAULT_SETTINGS = QuadratureSettings()


def _pareto_sf(z: float, gamma: float) -> float:
    return 1.0 if z <= 1.0 else z ** (-1.0 / gamma)


def _pareto_cdf(z: float, gamma: float) -> float:
    return 0.0 if z <= 1.0 else 1.0 - z ** (-1.0 / gamma)


def marginal_survival(spec: ModelSpec, margin: str, v: float) -> float:
    """Exact P(X > v) (margin="x") or P(Y > v) (margin="y")."""
    m = _check_margin(margin)
    g1 = spec.gamma_z1
    gm = spec.gamma_z2 if m == "x" else spec.gamma_z3
    if spec.variant == "example1":
        # max of independent Pareto factors: S = 1 - F_Z1 * F_Zm, expanded
        # into survival terms so the deep tail keeps full relative accuracy
        a, b = _pareto_sf(v, g1), _pareto_sf(v, gm)
        return a + b - a * b
    w = spec.bernoulli_p
    return w * _pareto_sf(v, g1) + (1.0 - w) * _pareto_sf(v, gm)


def joint_survival(spec: ModelSpec, x: float, y: float) -> float:
    """Exact P(X > x, Y > y); nonincreasing in each argument."""
    g1, g2, g3 = spec.gamma_z1, spec.gamma_z2, spec.gamma_z3
    if spec.variant == "example1":
        # inclusion-exclusion on the common factor Z1, rearranged into a
        # sum of nonnegative survival products: with a = S_Z1(x),
        # b = S_Z2(x), c = S_Z1(y), d = S_Z3(y) and y <= x,
        #   P = 1 - F_X(x) - F_Y(y) + F_Z1(x^y) F_Z2(x) F_Z3(y)
        #     = a + b * (c + d - c*d - a),
        # which avoids the cancellation of the direct 1 - . - . + . form
        # (absolute error ~1e-16 there swamps tail values ~1e-13)
        a, b = _pareto_sf(x, g1), _pareto_sf(x, g2)
        c, d = _pareto_sf(y, g1), _pareto_sf(y, g3)
        if y <= x:
            return a + b * (c + d - c * d - a)
        return c + d * (a + b - a * b - c)
    w = spec.bernoulli_p
    return w * _pareto_sf(max(x, y), g1) + (1.0 - w) * _pareto_sf(x, g2) * _pareto_sf(y, g3)


def _check_margin(margin: str) -> str:
    m = str(margin).lower()
    if m not in ("x", "y"):
        raise ArgumentError(f"margin must be 'x' or 'y', got {margin!r}")
    return m


def marginal_quantile(spec: ModelSpec, margin: str, q: float,
                      settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """Value v with F_margin(v) = q, by bracketing plus bisection.

    Solves on the survival scale, S(v) = 1 - q, which keeps the target
    representable when q is within rounding distance of 1. q = 0 maps to
    the support endpoint 1. Deliberately one generic monotone-inversion
    code path for every margin and model; capped at 200 bisections.
    """
    m = _check_margin(margin)
    if not 0.0 <= q < 1.0:
        raise ArgumentError(f"q must lie in [0, 1), got {q}")
    if q == 0.0:
        return 1.0
    target = 1.0 - q  # survival level, in (0, 1]
    lo, hi = 1.0, 2.0
    grow = 0
    while marginal_survival(spec, m, hi) > target:
        lo, hi = hi, hi * 2.0
        grow += 1
        if grow > 1100:
            raise NumericError("quantile bracket grew without bound",
                               {"margin": m, "q": q})
    for _ in range(_BISECTION_CAP):
        mid = 0.5 * (lo + hi)
        if marginal_survival(spec, m, mid) > target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= settings.rel_tol * lo:
            break
    return 0.5 * (lo + hi)


def _tail_majorant_scale(spec: ModelSpec) -> float:
    # S_X(x) <= scale * x**(-1/gamma1) for x >= 1: the example1 margin is a
    # sum of two Pareto survival terms minus a positive product, the
    # example2 margin is a convex combination.
    return 2.0 if spec.variant == "example1" else 1.0


def _quad_checked(f, a: float, b: float, pts, settings: QuadratureSettings,
                  context: str) -> float:
    kwargs = dict(epsabs=settings.abs_tol, epsrel=settings.rel_tol,
                  limit=settings.max_subdivisions, full_output=1)
    out = quad(f, a, b, points=pts, **kwargs)
    value, abserr = out[0], out[1]
    if len(out) >= 4:  # quadpack appended a warning message
        tolerated = max(settings.abs_tol, settings.rel_tol * abs(value)) * 10.0
        if abserr > tolerated:
            raise NumericError(
                f"quadrature failed to converge while {context}: {out[3]}",
                {"value": value, "abserr": abserr, "interval": (a, b)})
    return value


def true_theta_p(spec: ModelSpec, p: float,
                 settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """True theta_p = E[X | Y > Q_Y(1-p)] by adaptive quadrature.

    Integrates the exact joint survival in x at the fixed threshold
    q_y, splitting at the integrand kinks (the support endpoint 1 and
    q_y) and truncating at the X quantile of truncation_quantile; the
    tail beyond the cut is bounded by the analytic power-law majorant
    scale * x**(-1/gamma1), and the cut is pushed outward until that
    bound is negligible against the accumulated integral.
    """
    if not 0.0 < p <= 1.0:
        raise ArgumentError(f"p must lie in (0, 1], got {p}")
    q_y = marginal_quantile(spec, "y", 1.0 - p, settings)
    gamma1 = spec.gamma1
    scale = _tail_majorant_scale(spec)
    inv_g = 1.0 / gamma1

    def integrand(x: float) -> float:
        return joint_survival(spec, x, q_y)

    def tail_bound(c: float) -> float:
        # integral_c^inf scale * x**(-1/gamma1) dx, finite since gamma1 < 1
        return scale * c ** (1.0 - inv_g) / (inv_g - 1.0)

    cut = max(2.0 * q_y, marginal_quantile(spec, "x", settings.truncation_quantile, settings))
    pts = sorted({1.0, q_y})
    total = _quad_checked(integrand, 0.0, cut, pts, settings, f"integrating theta_p at p={p}")
    extensions = 0
    while tail_bound(cut) > max(settings.abs_tol, 0.5 * settings.rel_tol * total):
        nxt = 2.0 * cut
        total += _quad_checked(integrand, cut, nxt, None, settings,
                               f"extending theta_p tail at p={p}")
        cut = nxt
        extensions += 1
        if extensions > 80:
            raise NumericError("tail extension did not terminate",
                               {"p": p, "cut": cut, "bound": tail_bound(cut)})
    return total / p


def limit_constant(spec: ModelSpec) -> float:
    """Limit of theta_{1/t} / (t**(1 - 1/eta) * U_1(t)) as t -> inf.

    Equals integral_0^inf c(u**(-1/gamma1), 1) du with
    c(x, y) = d * min(x, y)**(1/eta); splitting at u = 1 gives
    d * (1 + eta*gamma1/(1 - eta*gamma1)) = d / (1 - eta*gamma1).
    """
    d = spec.tail_limit_scale
    return d / (1.0 - spec.eta * spec.gamma1)


def asymptotic_sigma2(spec: ModelSpec) -> float:
    """Asymptotic variance of the normalized relative estimation error.

    The defining Stieltjes integral integral_0^inf c(x, 1) d(x**(-gamma1))
    evaluates in closed form for c(x, 1) = d * min(x, 1)**(1/eta):

      -gamma1 * d * [ integral_0^1 x**(1/eta - gamma1 - 1) dx
                      + integral_1^inf x**(-gamma1 - 1) dx ]
      = -d / (1 - eta*gamma1),

    and the variance is the inverse square of that integral.
    """
    d = spec.tail_limit_scale
    integral = -d / (1.0 - spec.eta * spec.gamma1)
    return integral ** (-2.0)
