import pathlib

import pytest

from formulations import FormulationConfig
import networks

FIXTURES_DIR = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> pathlib.Path:
    return FIXTURES_DIR


@pytest.fixture
def two_bus():
    return networks.two_bus()


@pytest.fixture
def congested_triangle():
    return networks.congested_triangle()


@pytest.fixture
def two_tie_triangle():
    return networks.two_tie_triangle()


@pytest.fixture
def voltage_trap():
    return networks.voltage_trap()


@pytest.fixture
def free_switching() -> FormulationConfig:
    """Switching options without the minimum-degree constraint."""
    return FormulationConfig(anti_islanding=False)
