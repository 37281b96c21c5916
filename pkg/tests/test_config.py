import math

import pytest

from sqbf.config import (InvalidConfig, Strategy, SystemConfig, TrainingType, db_to_linear,
                         linear_to_db)


def test_db_roundtrip():
    assert db_to_linear(15.0) == pytest.approx(31.6227766016838, rel=1e-14)
    assert linear_to_db(db_to_linear(-7.5)) == pytest.approx(-7.5, abs=1e-12)


def test_from_db_and_derived():
    cfg = SystemConfig.from_db(8, 500, 15, 0.1, 0.3, "open", P_SI=1.0)
    assert cfg.training is TrainingType.OPEN
    assert cfg.P_dB == pytest.approx(15.0)
    assert cfg.fP_eff == pytest.approx(0.1 * db_to_linear(15) / 2)
    assert cfg.theta == pytest.approx(56 / 500)


@pytest.mark.parametrize("kw", [
    dict(M=1), dict(M=2.5), dict(T=7), dict(P=0.0), dict(P=-1.0), dict(f=0.0), dict(f=1.01),
    dict(alpha=-0.1), dict(P_SI=-1e-3), dict(P=math.nan), dict(training="duplex"),
])
def test_invalid_configs_rejected(kw):
    params = dict(M=8, T=500, P=10.0, f=0.1)
    params.update(kw)
    with pytest.raises(InvalidConfig):
        SystemConfig(**params)


def test_replace_revalidates():
    cfg = SystemConfig(M=4, T=40, P=10.0, f=1.0)
    assert cfg.replace(T=80).T == 80
    with pytest.raises(InvalidConfig):
        cfg.replace(T=3)


def test_enums_accept_strings():
    assert Strategy("hf") is Strategy.HF
    assert SystemConfig(M=2, T=2, P=1.0, f=1.0, training="closed").training is TrainingType.CLOSED
