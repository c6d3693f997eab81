import math

import pytest

from genfrac.derivative import (
    FracOrder,
    d_alpha_at_start,
    d_alpha_closed,
    d_alpha_limit,
    generalized_displacement,
    order_value,
    special_table,
)
from genfrac.errors import DomainError, DomainEscapeError, InvalidArgumentError
from genfrac.kernel import Kernel

from .utils import (
    FIXTURES,
    PRESETS,
    cfg,
    exponential,
    identity,
    parametrize_id,
    square,
    tree,
)


@pytest.mark.parametrize("alpha", (0.0, -0.5, 1.5, math.nan, math.inf))
def test_invalid_order(alpha: float) -> None:
    with pytest.raises(InvalidArgumentError):
        FracOrder(alpha)


def test_order_value() -> None:
    assert order_value(1) == 1.0
    assert order_value(FracOrder(0.25)) == 0.25


@pytest.mark.parametrize(
    "f, kernel, alpha, t, expected",
    (
        ("x^2", identity, 1.0, 3.0, 6.0),
        ("5", identity, 0.5, 2.0, 0.0),
        ("x^2", square, 0.5, 2.0, 2.0),
        ("sin(x)", identity, 0.5, 4.0, 2.0 * math.cos(4.0)),
        ("exp(x)", exponential, 0.5, 1.0, math.exp(0.5)),
    ),
    ids=parametrize_id,
)
def test_closed_form(
    f: str, kernel: Kernel, alpha: float, t: float, expected: float
) -> None:
    assert d_alpha_closed(tree(f), kernel, alpha, t) == pytest.approx(
        expected, rel=1e-14, abs=1e-15
    )


def test_closed_form_left_of_the_validity_start() -> None:
    with pytest.raises(DomainError):
        d_alpha_closed(tree("x^2"), identity, 0.5, 0.0)


@pytest.mark.parametrize(
    "f, kernel, alpha, t, expected",
    (
        ("x^2", identity, 1.0, 3.0, 6.0),
        ("sin(x)", identity, 1.0, 1.0, math.cos(1.0)),
        ("exp(x)", identity, 1.0, 4.0, math.exp(4.0)),
        ("x^3", square, 0.5, 1.5, 0.5 * 3 * 1.5**2),
    ),
    ids=parametrize_id,
)
def test_limit_definition(
    f: str, kernel: Kernel, alpha: float, t: float, expected: float
) -> None:
    estimate = d_alpha_limit(tree(f), kernel, alpha, t, cfg.numeric)
    assert estimate.converged
    assert estimate.value == pytest.approx(expected, rel=1e-6)
    assert estimate.steps_used[0] == cfg.numeric.eps0


@pytest.mark.parametrize("kernel", PRESETS, ids=parametrize_id)
@pytest.mark.parametrize("f", FIXTURES)
@pytest.mark.parametrize("alpha", (0.25, 0.5, 0.75, 1.0))
def test_limit_agrees_with_closed_form(f: str, kernel: Kernel, alpha: float) -> None:
    for t in (0.75, 1.5, 2.25):
        closed = d_alpha_closed(tree(f), kernel, alpha, t)
        estimate = d_alpha_limit(tree(f), kernel, alpha, t, cfg.numeric)
        assert estimate.converged
        assert abs(estimate.value - closed) <= 1e-6 * (1 + abs(closed))


def test_limit_agrees_with_closed_form_on_the_full_grid() -> None:
    alphas = [round(0.1 * j, 1) for j in range(1, 11)]
    points = (0.5, 1.0, 1.5, 2.0, 2.5)
    cases = agreeing = 0
    for kernel in PRESETS:
        for f in FIXTURES:
            for alpha in alphas:
                for t in points:
                    closed = d_alpha_closed(tree(f), kernel, alpha, t)
                    estimate = d_alpha_limit(tree(f), kernel, alpha, t, cfg.numeric)
                    error = abs(estimate.value - closed)
                    cases += 1
                    if estimate.converged and error <= 1e-6 * (1 + abs(closed)):
                        agreeing += 1
    assert cases == 1200
    assert agreeing >= 0.99 * cases


def test_limit_escaping_the_domain() -> None:
    # Every displaced point lies right of 1, where sqrt(1 - x) is undefined.
    with pytest.raises(DomainEscapeError):
        d_alpha_limit(tree("sqrt(1 - x)"), identity, 1.0, 1.0, cfg.numeric)


def test_generalized_displacement() -> None:
    t, alpha, eps = 2.0, 0.5, 1e-3
    expected = t + t * math.expm1(eps * t**-alpha)
    assert generalized_displacement(identity, alpha, t, eps) == expected


@pytest.mark.parametrize(
    "f, kernel, alpha, expected",
    (
        ("x", identity, 1.0, 1.0),
        ("x^2", identity, 0.5, 0.0),
        ("x^2 / 2", square, 1.0, 0.5),
        ("sin(x)", square, 0.5, 0.5),
    ),
    ids=parametrize_id,
)
def test_limit_at_the_validity_start(
    f: str, kernel: Kernel, alpha: float, expected: float
) -> None:
    estimate = d_alpha_at_start(tree(f), kernel, alpha, cfg.numeric)
    assert estimate.converged
    assert not estimate.diverged
    assert estimate.value == pytest.approx(expected, abs=1e-8)


def test_diverging_limit_at_the_validity_start() -> None:
    # k'(t) = 2t vanishes at 0, so D f(t) = 1 / 2t grows without bound.
    estimate = d_alpha_at_start(tree("x"), square, 1.0, cfg.numeric)
    assert estimate.diverged
    assert not estimate.converged


def test_special_table_at_the_validity_start() -> None:
    rows = {row.label: row for row in special_table(1.0, identity, 0.0)}
    assert list(rows) == ["constant", "exp", "sin", "cos", "log", "power"]
    assert rows["constant"].closed_value == 0.0
    assert rows["sin"].closed_value == 1.0
    assert rows["exp"].closed_value == 1.0
    assert rows["log"].closed_value is None
    assert rows["log"].error is not None


def test_special_table_with_parameters() -> None:
    rows = {row.label: row for row in special_table(0.5, identity, 1.0, a=2.0)}
    assert rows["exp"].closed_value == pytest.approx(14.778112, rel=1e-7)
    assert rows["power"].closed_value == pytest.approx(2.0 * math.log(2.0))
    assert rows["log"].closed_value == pytest.approx(1.0 / math.log(2.0))


@pytest.mark.parametrize("alpha", (0.5, 1.0))
def test_special_table_matches_the_closed_form(alpha: float) -> None:
    for row in special_table(alpha, square, 1.5, a=0.5, b=2.0):
        closed = d_alpha_closed(tree(row.expression), square, alpha, 1.5)
        assert row.closed_value == pytest.approx(closed, rel=1e-12, abs=1e-15)


def test_special_table_left_of_the_validity_start() -> None:
    rows = special_table(0.5, identity, -1.0)
    assert rows[0].closed_value == 0.0
    assert all(row.closed_value is None for row in rows[1:])
