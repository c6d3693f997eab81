import math

import pytest

from genfrac.config import QuadConfig
from genfrac.errors import (
    DomainError,
    HypothesisError,
    InvalidArgumentError,
    QuadratureError,
)
from genfrac.expr import constant
from genfrac.integral import (
    check_D_of_I,
    check_I_of_D,
    check_linearity_properties,
    check_one_sign,
    i_alpha,
    integral_mean_value,
    integration_by_parts_residual,
    require_converged,
    weighted_integral,
)
from genfrac.kernel import Kernel, kernel_order_antiderivative

from .utils import PRESETS, cfg, exponential, identity, parametrize_id, square, tree

quad = cfg.quad


@pytest.mark.parametrize(
    "f, kernel, alpha, a, b, expected, substituted",
    (
        ("1", identity, 0.5, 0.0, 4.0, 4.0, True),
        ("1", identity, 1.0, 0.0, 2.0, 2.0, False),
        ("1", square, 0.5, 0.0, 3.0, 6.0, True),
        ("1", identity, 0.5, 1.0, 4.0, 2.0, False),
        ("x", identity, 1.0, 0.0, 3.0, 4.5, False),
        ("exp(-x)", exponential, 1.0, 0.0, 2.0, 2.0, False),
    ),
    ids=parametrize_id,
)
def test_i_alpha(
    f: str,
    kernel: Kernel,
    alpha: float,
    a: float,
    b: float,
    expected: float,
    substituted: bool,
) -> None:
    result = i_alpha(tree(f), kernel, alpha, a, b, quad)
    assert result.converged
    assert result.substituted is substituted
    assert result.value == pytest.approx(expected, rel=1e-9)


@pytest.mark.parametrize("alpha", (0.25, 0.5, 0.75))
def test_singular_weight_is_substituted(alpha: float) -> None:
    result = i_alpha(tree("1"), identity, alpha, 0.0, 2.0, quad)
    assert result.substituted
    assert result.value == pytest.approx(2.0**alpha / alpha, rel=1e-9)


def test_forced_substitution_agrees() -> None:
    f = tree("cos(x)")
    plain = i_alpha(f, square, 0.5, 1.0, 3.0, quad)
    forced = i_alpha(f, square, 0.5, 1.0, 3.0, QuadConfig(endpoint_singularity=True))
    assert not plain.substituted
    assert forced.substituted
    assert forced.value == pytest.approx(plain.value, rel=1e-9)


def test_swapped_bounds_flip_the_sign() -> None:
    f = tree("x^2")
    forward = weighted_integral(f, identity, 0.5, 1.0, 3.0, quad)
    backward = weighted_integral(f, identity, 0.5, 3.0, 1.0, quad)
    assert backward.value == -forward.value


def test_i_alpha_invalid_intervals() -> None:
    with pytest.raises(InvalidArgumentError):
        i_alpha(tree("1"), identity, 0.5, 2.0, 1.0, quad)
    with pytest.raises(DomainError):
        i_alpha(tree("1"), identity, 0.5, -1.0, 1.0, quad)


def test_divergent_integral() -> None:
    result = i_alpha(tree("1/x"), identity, 1.0, 0.0, 1.0, quad)
    assert result.diverged
    with pytest.raises(QuadratureError, match="diverges"):
        require_converged(result, "integ")


@pytest.mark.parametrize("kernel", PRESETS, ids=parametrize_id)
@pytest.mark.parametrize("alpha", (0.5, 1.0))
def test_integral_inverts_the_derivative(kernel: Kernel, alpha: float) -> None:
    f = tree("x*sin(x)")
    for t in (1.0, 2.0):
        assert check_D_of_I(f, kernel, alpha, 0.5, t, cfg) <= 1e-6
        assert check_I_of_D(f, kernel, alpha, 0.5, t, cfg) <= 1e-7


def test_I_of_D_from_a_vanishing_kernel() -> None:
    # k(0) = 0 and alpha < 1: the integral is computed in u = k^alpha / alpha.
    assert check_I_of_D(tree("sin(x)"), identity, 0.5, 0.0, 2.0, cfg) <= 1e-7


def test_D_of_I_needs_t_right_of_a() -> None:
    with pytest.raises(InvalidArgumentError):
        check_D_of_I(tree("x"), identity, 0.5, 1.0, 1.0, cfg)


@pytest.mark.parametrize("kernel", (identity, square), ids=parametrize_id)
def test_integration_by_parts(kernel: Kernel) -> None:
    residual = integration_by_parts_residual(
        tree("x^2"), tree("sin(x)"), kernel, 0.5, 0.5, 2.5, cfg
    )
    assert residual <= 1e-7


@pytest.mark.parametrize(
    "f, alpha, a, b, xi, x0",
    (
        ("x^2", 1.0, 0.0, 3.0, 3.0, math.sqrt(3.0)),
        ("x", 1.0, 0.0, 2.0, 1.0, 1.0),
        ("x^2", 0.5, 0.0, 3.0, 1.8, math.sqrt(1.8)),
    ),
)
def test_integral_mean_value(
    f: str, alpha: float, a: float, b: float, xi: float, x0: float
) -> None:
    witness = integral_mean_value(tree(f), constant(1.0), identity, alpha, a, b, cfg)
    assert witness.xi_value == pytest.approx(xi, rel=1e-9)
    assert witness.x0 == pytest.approx(x0, rel=1e-9)
    assert witness.lower_bound <= witness.xi_value <= witness.upper_bound
    assert witness.bracketed


def test_integral_mean_value_with_weight() -> None:
    f = tree("sin(x)")
    witness = integral_mean_value(f, tree("x"), identity, 0.75, 0.5, 2.5, cfg)
    assert 0.5 < witness.x0 < 2.5
    assert witness.residual <= 1e-10


def test_integral_mean_value_hypothesis() -> None:
    with pytest.raises(HypothesisError, match="changes sign"):
        integral_mean_value(tree("x"), tree("x - 1"), identity, 1.0, 0.0, 3.0, cfg)


@pytest.mark.parametrize(
    "g, sign",
    (("1 + x^2", 1), ("-exp(x)", -1)),
)
def test_check_one_sign(g: str, sign: int) -> None:
    assert check_one_sign(tree(g), 0.0, 2.0, 64) == sign


def test_check_one_sign_of_zero() -> None:
    with pytest.raises(HypothesisError, match="vanishes"):
        check_one_sign(tree("0"), 0.0, 2.0, 64)


def test_integral_properties() -> None:
    residuals = check_linearity_properties(
        tree("x^2"), tree("sin(x)"), identity, 0.5, 0.5, 2.5, 1.5, 2.5, cfg
    )
    assert len(residuals.items()) == 7
    assert residuals.max_residual <= 1e-9


def test_integral_properties_of_a_constant() -> None:
    residuals = check_linearity_properties(
        tree("1"), tree("x"), identity, 1.0, 0.0, 0.5, 0.25, -2.0, cfg
    )
    assert residuals.reversed_value == pytest.approx(-0.5, rel=1e-12)
    assert residuals.zero_width == 0.0
    assert residuals.nonnegativity == 0.0
    assert residuals.triangle == 0.0


def test_integral_properties_need_an_interior_split() -> None:
    with pytest.raises(InvalidArgumentError):
        check_linearity_properties(
            tree("1"), tree("x"), identity, 1.0, 0.0, 1.0, 1.0, 2.0, cfg
        )


def test_D_of_I_only_samples_up_to_t() -> None:
    # sqrt(2 - x) is undefined right of t = 2.
    f = tree("sqrt(2 - x)")
    assert check_D_of_I(f, identity, 0.5, 1.0, 2.0, cfg) == 0.0
    assert check_D_of_I(f, identity, 0.5, 1.0, 1.5, cfg) <= 1e-12


@pytest.mark.parametrize("kernel", (identity, square), ids=parametrize_id)
@pytest.mark.parametrize("alpha", (0.25, 0.5, 0.75))
def test_substitution_matches_direct_quadrature_plus_tail(
    kernel: Kernel, alpha: float
) -> None:
    delta, b = 1e-3, 2.0
    f = tree("1")
    substituted = i_alpha(f, kernel, alpha, 0.0, b, quad)
    direct = i_alpha(f, kernel, alpha, delta, b, quad, substitution=False)
    assert substituted.substituted
    assert not direct.substituted
    tail = kernel_order_antiderivative(kernel, alpha, delta)
    assert substituted.value == pytest.approx(direct.value + tail, abs=1e-6)
