import numpy as np
import pytest

from sqbf.config import SystemConfig, TrainingType


def ref_cfg(T=500, training=TrainingType.CLOSED, **kw):
    """M=8, P=15 dB, f=0.1, alpha=0.3: the reference scenario used throughout."""
    params = dict(M=8, T=T, P_dB=15.0, f=0.1, alpha=0.3, training=training)
    params.update(kw)
    return SystemConfig.from_db(**params)


@pytest.fixture
def cfg():
    return ref_cfg()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
