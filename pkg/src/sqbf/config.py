"""Scenario parameters shared by every module."""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from enum import Enum


class InvalidConfig(ValueError):
    """Raised when a scenario violates the model's parameter ranges."""


class TrainingType(str, Enum):
    CLOSED = "closed"
    OPEN = "open"


class Strategy(str, Enum):
    SQBF = "sqbf"
    HF = "hf"
    GENIE = "genie"


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def linear_to_db(x: float) -> float:
    return 10.0 * math.log10(x)


@dataclass(frozen=True)
class SystemConfig:
    """One downlink scenario.

    Parameters
    ----------
    M : int
        Base-station antennas, equal to the number of single-antenna users.
    T : int
        Symbols per block shared by uplink training and downlink data.
    P : float
        Downlink transmit SNR (linear).
    f : float
        User training power as a fraction of ``P``; training SNR is ``f * P``.
    alpha : float
        Inter-node interference gain; a receiving user sees ``alpha * f * P``
        from a concurrently training user.
    training : TrainingType
        Closed loop (quantized feedback) or open loop (uplink pilots).
    P_SI : float
        Residual self-interference power at the base station, in units of
        the noise floor. Only the uplink training SNR is affected.
    """

    M: int
    T: int
    P: float
    f: float
    alpha: float = 0.0
    training: TrainingType = TrainingType.CLOSED
    P_SI: float = 0.0

    def __post_init__(self):
        try:
            object.__setattr__(self, "training", TrainingType(self.training))
        except ValueError:
            raise InvalidConfig(f"training must be 'closed' or 'open', got {self.training!r}") from None
        if int(self.M) != self.M or self.M < 2:
            raise InvalidConfig(f"M must be an integer >= 2, got {self.M}")
        if int(self.T) != self.T or self.T < self.M:
            raise InvalidConfig(f"T must be an integer >= M={self.M}, got {self.T}")
        if not (self.P > 0 and math.isfinite(self.P)):
            raise InvalidConfig(f"P must be positive and finite, got {self.P}")
        if not (0 < self.f <= 1):
            raise InvalidConfig(f"f must lie in (0, 1], got {self.f}")
        if not (self.alpha >= 0 and math.isfinite(self.alpha)):
            raise InvalidConfig(f"alpha must be >= 0, got {self.alpha}")
        if not (self.P_SI >= 0):
            raise InvalidConfig(f"P_SI must be >= 0, got {self.P_SI}")
        object.__setattr__(self, "M", int(self.M))
        object.__setattr__(self, "T", int(self.T))

    @classmethod
    def from_db(cls, M, T, P_dB, f, alpha=0.0, training=TrainingType.CLOSED, P_SI=0.0):
        return cls(M=M, T=T, P=db_to_linear(P_dB), f=f, alpha=alpha,
                   training=training, P_SI=P_SI)

    @property
    def P_dB(self) -> float:
        return linear_to_db(self.P)

    @property
    def fP_eff(self) -> float:
        """Effective uplink training SNR after residual self-interference."""
        return self.f * self.P / (1.0 + self.P_SI)

    @property
    def theta(self) -> float:
        """Normalized training burden M(M-1)/T."""
        return self.M * (self.M - 1) / self.T

    def replace(self, **changes) -> "SystemConfig":
        return dataclasses.replace(self, **changes)
