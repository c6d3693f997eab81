import math
from pathlib import Path

import pytest

from genfrac.config import (
    NumericConfig,
    QuadConfig,
    RootConfig,
    SuiteConfig,
    build_suite_config,
    load_config_file,
    parse_overrides,
)
from genfrac.constants import Orientation
from genfrac.errors import InvalidArgumentError

DATA_DIRPATH = Path(__file__).parent / "data"


def test_defaults() -> None:
    config = SuiteConfig()
    assert config.numeric.eps0 == 1e-2
    assert config.numeric.exp_floor == -25.0
    assert config.numeric.step_ratio == 0.5
    assert config.quad.max_subdivisions == 4096
    assert config.orientation == Orientation.CONSISTENT
    assert config.tolerance == 1e-8


def test_parse_overrides() -> None:
    overrides = parse_overrides(
        "numeric.tol_rel = 1e-10  # tighter\n\n"
        "quad.endpoint_singularity = true\n"
        "suite.orientation = paper\n"
    )
    assert overrides == {
        "numeric": {"tol_rel": 1e-10},
        "quad": {"endpoint_singularity": True},
        "suite": {"orientation": "paper"},
    }


@pytest.mark.parametrize(
    "text, message",
    (
        ("tol_rel = 1e-10", "unknown configuration key"),
        ("numeric.tolerance = 1", "unknown configuration key"),
        ("plot.width = 3", "unknown configuration key"),
        ("suite.numeric = 3", "unknown configuration key"),
        ("numeric.max_steps = many", "invalid value"),
        ("quad.endpoint_singularity = maybe", "invalid value"),
        ("numeric.eps0", "expected `key = value`"),
    ),
)
def test_parse_overrides_error(text: str, message: str) -> None:
    with pytest.raises(InvalidArgumentError, match=message):
        parse_overrides(text)


def test_load_config_file() -> None:
    config = load_config_file(DATA_DIRPATH / "config.txt")
    assert config.numeric.tol_rel == 1e-10
    assert config.numeric.richardson_depth == 4
    assert config.numeric.eps0 == 1e-2
    assert config.numeric.exp_floor == -20.0
    assert config.quad.max_subdivisions == 512
    assert config.quad.endpoint_singularity is True
    assert config.root.scan_intervals == 64
    assert config.orientation == Orientation.PAPER
    assert config.points_per_interval == 3


def test_load_missing_config_file() -> None:
    with pytest.raises(InvalidArgumentError, match="cannot read"):
        load_config_file(DATA_DIRPATH / "missing.txt")


def test_build_suite_config_keeps_the_base() -> None:
    base = build_suite_config({"root": {"xtol": 1e-10}})
    config = build_suite_config({"suite": {"tolerance": 1e-6}}, base)
    assert config.root.xtol == 1e-10
    assert config.tolerance == 1e-6


@pytest.mark.parametrize(
    "factory, kwargs",
    (
        (NumericConfig, {"step_ratio": 1.0}),
        (NumericConfig, {"eps0": 0.0}),
        (NumericConfig, {"max_steps": 3}),
        (NumericConfig, {"boundary_offset_min": 1.0}),
        (NumericConfig, {"exp_floor": -40.0}),
        (NumericConfig, {"exp_floor": math.nan}),
        (QuadConfig, {"max_subdivisions": 4}),
        (QuadConfig, {"min_panel_fraction": 1.0}),
        (RootConfig, {"scan_intervals": 1}),
        (RootConfig, {"match_tol": -1.0}),
        (SuiteConfig, {"orientation": "sideways"}),
        (SuiteConfig, {"points_per_interval": 0}),
        (SuiteConfig, {"limit_tolerance": 0.0}),
    ),
)
def test_invalid_config(factory: type, kwargs: dict[str, object]) -> None:
    with pytest.raises(InvalidArgumentError):
        factory(**kwargs)
