import pytest

from genfrac.derivative import d_alpha_closed
from genfrac.errors import DomainError, InvalidArgumentError
from genfrac.kernel import Kernel
from genfrac.prior import (
    PriorDefinition,
    katugampola_displacement_gap,
    prior_displacement,
    prior_limit,
)

from .utils import cfg, identity, log_shift, parametrize_id, square, tree


@pytest.mark.parametrize("alpha", (0.25, 0.5, 1.0))
@pytest.mark.parametrize("t", (0.3, 1.0, 2.5, 7.0))
def test_displacement_gap_is_exactly_zero(alpha: float, t: float) -> None:
    for eps in (1e-2, 1e-5, 3.7e-9):
        assert katugampola_displacement_gap(identity, alpha, t, eps) == 0.0


@pytest.mark.parametrize(
    "definition", (PriorDefinition.KHALIL, PriorDefinition.KATUGAMPOLA)
)
@pytest.mark.parametrize("f", ("x^2", "sin(x)", "exp(2*x)"))
def test_identity_kernel_reduces_to_earlier_definitions(
    definition: str, f: str
) -> None:
    t, alpha = 1.5, 0.5
    closed = d_alpha_closed(tree(f), identity, alpha, t)
    estimate = prior_limit(tree(f), definition, alpha, t, cfg.numeric)
    assert estimate.converged
    assert estimate.value == pytest.approx(closed, rel=1e-6)


@pytest.mark.parametrize("kernel", (identity, square, log_shift), ids=parametrize_id)
def test_almeida_limit_is_scaled_by_the_kernel_derivative(kernel: Kernel) -> None:
    t, alpha = 1.25, 0.75
    f = tree("ln(1+x)")
    expected = kernel.derivative(t) * d_alpha_closed(f, kernel, alpha, t)
    estimate = prior_limit(f, PriorDefinition.ALMEIDA, alpha, t, cfg.numeric, kernel)
    assert estimate.converged
    assert estimate.value == pytest.approx(expected, rel=1e-6)


@pytest.mark.parametrize(
    "definition, t, kernel, exception",
    (
        ("grunwald", 1.0, None, InvalidArgumentError),
        (PriorDefinition.ALMEIDA, 1.0, None, InvalidArgumentError),
        (PriorDefinition.KHALIL, 0.0, None, DomainError),
        (PriorDefinition.KATUGAMPOLA, -1.0, None, DomainError),
    ),
)
def test_prior_displacement_errors(
    definition: str, t: float, kernel: None, exception: type[Exception]
) -> None:
    with pytest.raises(exception):
        prior_displacement(definition, 0.5, t, kernel)


def test_khalil_displacement() -> None:
    displaced = prior_displacement(PriorDefinition.KHALIL, 0.5, 4.0)
    assert displaced(0.1) == pytest.approx(4.0 + 0.1 * 2.0)
