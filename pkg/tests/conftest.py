import sys
from pathlib import Path

import pytest

from secrecy_outage import SystemConfig

# lets test modules import the sibling oracles module when run from anywhere
sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def base_cfg() -> SystemConfig:
    """Two transmitters at 10 dB with the path and gain mix used throughout."""
    return SystemConfig(K=2, zeta=0.9, r_th=1.0, snr=10.0, M=6, N=4, a=0.5, b=0.2)


@pytest.fixture
def single_cfg() -> SystemConfig:
    return SystemConfig(K=1, zeta=0.9, r_th=1.0, snr=10.0, M=6, N=4, a=0.5, b=0.2)
