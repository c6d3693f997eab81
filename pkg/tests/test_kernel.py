import math

import pytest

from genfrac.constants import EXPONENTIAL_VALIDITY_FLOOR
from genfrac.errors import (
    DomainError,
    ExpressionSyntaxError,
    InvalidArgumentError,
    KernelDegenerateError,
    KernelValidationError,
)
from genfrac.kernel import (
    Kernel,
    chebyshev_nodes,
    ensure_admissible,
    kernel_order_antiderivative,
    make_preset_kernel,
    parse_kernel,
    validate_kernel,
)

from .utils import (
    PRESETS,
    central_difference,
    exponential,
    identity,
    log_shift,
    parametrize_id,
    square,
)


@pytest.mark.parametrize(
    "kernel, t, value, derivative",
    (
        (identity, 3.0, 3.0, 1.0),
        (square, 2.0, 4.0, 4.0),
        (exponential, 0.0, 1.0, 1.0),
        (log_shift, 1.0, math.log(2.0), 0.5),
    ),
    ids=parametrize_id,
)
def test_preset_values(
    kernel: Kernel, t: float, value: float, derivative: float
) -> None:
    assert kernel.value(t) == pytest.approx(value, rel=1e-15)
    assert kernel.derivative(t) == pytest.approx(derivative, rel=1e-15)


@pytest.mark.parametrize(
    "kernel, name, start",
    (
        (identity, "identity", 0.0),
        (square, "power:2", 0.0),
        (exponential, "exp", EXPONENTIAL_VALIDITY_FLOOR),
        (log_shift, "log1p", 0.0),
    ),
    ids=parametrize_id,
)
def test_preset_names(kernel: Kernel, name: str, start: float) -> None:
    assert kernel.name == name
    assert kernel.validity_start == start


def test_expression_kernel() -> None:
    kernel = parse_kernel("x^3 + 1", 0.5)
    assert kernel.preset is None
    assert kernel.validity_start == 0.5
    assert kernel.derivative(1.0) == pytest.approx(3.0)


def test_exponential_floor_is_configurable() -> None:
    assert make_preset_kernel("exp", exp_floor=-5.0).validity_start == -5.0
    assert parse_kernel("exp", exp_floor=-10.0).validity_start == -10.0
    assert parse_kernel("identity", exp_floor=-10.0).validity_start == 0.0


@pytest.mark.parametrize(
    "spec, exception",
    (
        ("power:abc", InvalidArgumentError),
        ("power:-1", InvalidArgumentError),
        ("power:0", InvalidArgumentError),
        ("power:inf", InvalidArgumentError),
        ("identity:3", ExpressionSyntaxError),
        ("sin(", ExpressionSyntaxError),
    ),
)
def test_parse_kernel_error(spec: str, exception: type[Exception]) -> None:
    with pytest.raises(exception):
        parse_kernel(spec)


def test_unknown_preset() -> None:
    with pytest.raises(InvalidArgumentError, match="unknown kernel preset"):
        make_preset_kernel("gamma")


def test_chebyshev_nodes_lie_inside() -> None:
    nodes = chebyshev_nodes(0.0, 1.0, 16).tolist()
    assert nodes == sorted(nodes)
    assert all(0.0 < node < 1.0 for node in nodes)


@pytest.mark.parametrize(
    "kernel, interval, passed",
    (
        (identity, (1.0, 2.0), True),
        # k(a) == 0 is allowed, the left end is never sampled.
        (identity, (0.0, 1.0), True),
        (square, (0.1, 5.0), True),
        (log_shift, (0.0, 10.0), True),
        (parse_kernel("sin(x)"), (1.0, 4.0), False),
        (parse_kernel("ln(x)"), (0.0, 1.0), False),
        (parse_kernel("-x"), (1.0, 2.0), False),
    ),
    ids=parametrize_id,
)
def test_validate_kernel(
    kernel: Kernel, interval: tuple[float, float], passed: bool
) -> None:
    report = validate_kernel(kernel, interval)
    assert report.passed is passed
    assert report.samples == 65


def test_validate_kernel_reports_evaluation_errors() -> None:
    report = validate_kernel(parse_kernel("sqrt(x - 1)"), (0.0, 2.0))
    assert not report.passed
    assert report.violations[0].reason.startswith("evaluation error")
    assert all(violation.t < 1.0 for violation in report.violations)


@pytest.mark.parametrize(
    "interval, samples",
    (((1.0, 2.0), 15), ((2.0, 2.0), 64), ((2.0, 1.0), 64)),
)
def test_validate_kernel_invalid_arguments(
    interval: tuple[float, float], samples: int
) -> None:
    with pytest.raises(InvalidArgumentError):
        validate_kernel(identity, interval, samples)


@pytest.mark.parametrize(
    "kernel, alpha, t, expected",
    (
        (identity, 0.5, 4.0, 2.0),
        (identity, 1.0, 7.0, 1.0),
        (square, 0.5, 2.0, 0.5),
        (exponential, 0.5, 0.0, 1.0),
    ),
    ids=parametrize_id,
)
def test_scale(kernel: Kernel, alpha: float, t: float, expected: float) -> None:
    assert kernel.scale(alpha, t) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize(
    "kernel, t",
    ((parse_kernel("x - 1"), 0.0), (parse_kernel("3"), 1.0), (square, 0.0)),
    ids=parametrize_id,
)
def test_scale_degenerate(kernel: Kernel, t: float) -> None:
    with pytest.raises(KernelDegenerateError):
        kernel.scale(0.5, t)


def test_weight() -> None:
    assert identity.weight(0.5, 4.0) == pytest.approx(0.5)
    assert identity.weight(1.0, 0.0) == 1.0
    with pytest.raises(KernelDegenerateError):
        identity.weight(0.5, 0.0)


@pytest.mark.parametrize(
    "kernel, alpha, t, expected",
    (
        (identity, 1.0, 5.0, 5.0),
        (identity, 0.5, 4.0, 4.0),
        (square, 0.5, 3.0, 6.0),
    ),
    ids=parametrize_id,
)
def test_kernel_order_antiderivative(
    kernel: Kernel, alpha: float, t: float, expected: float
) -> None:
    assert kernel_order_antiderivative(kernel, alpha, t) == pytest.approx(expected)


def test_kernel_order_antiderivative_of_negative_kernel() -> None:
    with pytest.raises(DomainError):
        kernel_order_antiderivative(parse_kernel("x - 1"), 0.5, 0.0)


@pytest.mark.parametrize("kernel", PRESETS, ids=parametrize_id)
def test_presets_pass_validation(kernel: Kernel) -> None:
    report = validate_kernel(kernel, (kernel.validity_start, 5.0), samples=256)
    assert report.passed, report.violations
    assert report.samples == 257


@pytest.mark.parametrize("kernel", PRESETS, ids=parametrize_id)
@pytest.mark.parametrize("t", (0.5, 1.0, 2.0, 3.0))
def test_symbolic_kernel_derivative(kernel: Kernel, t: float) -> None:
    assert kernel.derivative(t) == pytest.approx(
        central_difference(kernel.k, t), rel=1e-8
    )


@pytest.mark.parametrize("kernel", PRESETS, ids=parametrize_id)
@pytest.mark.parametrize("alpha", (0.25, 0.5, 1.0))
def test_kernel_order_antiderivative_differentiates_to_weight(
    kernel: Kernel, alpha: float
) -> None:
    for t in (0.5, 1.0, 2.0, 3.0):
        slope = central_difference(
            lambda x: kernel_order_antiderivative(kernel, alpha, x), t
        )
        assert slope == pytest.approx(kernel.weight(alpha, t), rel=1e-7)


def test_ensure_admissible() -> None:
    ensure_admissible(identity, 0.0, 1.0)
    # A degenerate interval is not checked.
    ensure_admissible(parse_kernel("sin(x)"), 4.0, 4.0)
    with pytest.raises(KernelValidationError, match="is not admissible on"):
        ensure_admissible(parse_kernel("sin(x)"), 1.0, 4.0)
