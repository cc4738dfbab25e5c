import numpy as np
import pytest

from windcast import ForecastConfig, backtest, make_diurnal_corpus

DAY_SECONDS = 144 * 600.0


@pytest.fixture(scope="session")
def corpus120():
    return make_diurnal_corpus(120, 42)


@pytest.fixture(scope="session")
def report120(corpus120):
    """Partitioned vs simple AR over the last four days of the corpus."""
    targets = [corpus120.origin + d * DAY_SECONDS for d in range(116, 120)]
    return backtest(corpus120, targets, ForecastConfig(),
                    ["partitioned-ar", "simple-ar"])
