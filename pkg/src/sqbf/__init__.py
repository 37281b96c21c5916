"""Sequential beamforming for multiuser MIMO with a full-duplex base station."""
from .config import InvalidConfig, Strategy, SystemConfig, TrainingType

__all__ = ["InvalidConfig", "Strategy", "SystemConfig", "TrainingType"]
__version__ = "0.1.0"
