from pathlib import Path

import pytest
from click.testing import CliRunner
from hypothesis import HealthCheck, settings

GOLDEN = Path(__file__).parent / "golden"

# Example cost grows with the drawn truncation order.
settings.register_profile("qschwarz", deadline=None, max_examples=100, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("qschwarz")


@pytest.fixture
def golden_dir() -> Path:
    return GOLDEN


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner(mix_stderr=False)
