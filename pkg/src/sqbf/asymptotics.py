"""High-SNR multiplexing gain as a function of the training power exponent.

Training power is ``P**zeta`` and ``theta = M(M-1)/T``. The full-duplex
fraction ``(M-1)/2M`` is taken as 1/2 throughout, as in the large-M analysis.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import Strategy, SystemConfig, TrainingType


@dataclass(frozen=True)
class AsymptoticConfig:
    theta: float
    zeta: float

    def __post_init__(self):
        if not self.theta > 0:
            raise ValueError(f"theta must be positive, got {self.theta}")
        if not self.zeta >= 0:
            raise ValueError(f"zeta must be nonnegative, got {self.zeta}")


@dataclass(frozen=True)
class MultiplexingGainPoint:
    zeta: float
    r: float
    regime: str


# strategy keys accepted by mg_curve
MG_STRATEGIES = ("sqbf_cl_no_ini", "hf_cl", "sqbf_cl", "sqbf_op", "hf_op")


def mg_rate_tr_limit(zeta: float, theta: float, ttr_frac: float) -> float:
    """Pre-log of the closed-loop rate while another user trains."""
    if not 0 <= ttr_frac <= 1:
        raise ValueError(f"ttr_frac must lie in [0, 1], got {ttr_frac}")
    return max(min(zeta / theta * ttr_frac, 1.0 - zeta), 0.0)


def mg_data_limit_open(zeta: float) -> float:
    """Pre-log of the open-loop rate after training; independent of T_tr."""
    return max(1.0 - zeta, 0.0)


def mg_sqbf_cl_no_ini(zeta: float, theta: float) -> MultiplexingGainPoint:
    if zeta < theta:
        return MultiplexingGainPoint(zeta, zeta / (2.0 * theta), "linear")
    if math.isinf(zeta):
        return MultiplexingGainPoint(zeta, 1.0, "saturated")
    return MultiplexingGainPoint(zeta, 1.0 - theta / (2.0 * zeta), "saturated")


def mg_hf_cl(zeta: float, theta: float) -> MultiplexingGainPoint:
    if zeta < 2.0 * theta:
        return MultiplexingGainPoint(zeta, zeta / (4.0 * theta), "linear")
    if math.isinf(zeta):
        return MultiplexingGainPoint(zeta, 1.0, "saturated")
    return MultiplexingGainPoint(zeta, 1.0 - theta / zeta, "saturated")


def sqbf_cl_thresholds(theta: float) -> tuple:
    """Return ``(lower, upper, ini_knee)`` for the three closed-loop regimes.

    ``lower = 3θ/(2+3θ)``, ``ini_knee = 3θ/(2-θ)`` and
    ``upper = min(1, max(lower, ini_knee))``.
    """
    lower = 3.0 * theta / (2.0 + 3.0 * theta)
    denom = 2.0 - theta
    knee = 3.0 * theta / denom if denom != 0 else math.inf
    upper = min(1.0, max(lower, knee))
    return lower, upper, knee


def r_sqbf_cl_ini(zeta: float, theta: float) -> float:
    """Multiplexing gain when inter-node interference limits the training phase."""
    _, _, knee = sqbf_cl_thresholds(theta)
    if zeta < knee:
        if zeta == 0:
            return 0.0
        return ((2.0 - theta) * zeta + theta) ** 2 / (16.0 * zeta * theta)
    return 1.0 - theta / 2.0 - theta / (2.0 * zeta)


def mg_sqbf_cl(zeta: float, theta: float) -> MultiplexingGainPoint:
    """Closed-loop sequential beamforming with inter-node interference.

    Three regimes, evaluated verbatim (no smoothing at the switches):
    interference-free below ``3θ/(2+3θ)``, inter-node limited up to
    ``min(1, max(3θ/(2+3θ), 3θ/(2-θ)))``, and equal to half duplex beyond.
    """
    if not zeta > 0:
        if zeta == 0:
            return MultiplexingGainPoint(0.0, 0.0, "no_ini")
        raise ValueError(f"zeta must be nonnegative, got {zeta}")
    lower, upper, knee = sqbf_cl_thresholds(theta)
    if zeta <= lower:
        return MultiplexingGainPoint(zeta, mg_sqbf_cl_no_ini(zeta, theta).r, "no_ini")
    if zeta < upper:
        label = "ini_quadratic" if zeta < knee else "ini_saturated"
        return MultiplexingGainPoint(zeta, r_sqbf_cl_ini(zeta, theta), label)
    return MultiplexingGainPoint(zeta, mg_hf_cl(zeta, theta).r, "half_duplex")


def mg_open(zeta: float) -> MultiplexingGainPoint:
    """Open loop, either strategy: the gain equals the training power exponent.

    Capped at 1, the full pre-log of the genie system, for ``zeta > 1``.
    """
    if zeta < 0:
        raise ValueError(f"zeta must be nonnegative, got {zeta}")
    if zeta > 1:
        return MultiplexingGainPoint(zeta, 1.0, "saturated")
    return MultiplexingGainPoint(zeta, zeta, "training_power")


def mg_point(strategy: str, zeta: float, theta: float) -> MultiplexingGainPoint:
    if strategy == "sqbf_cl_no_ini":
        return mg_sqbf_cl_no_ini(zeta, theta)
    if strategy == "hf_cl":
        return mg_hf_cl(zeta, theta)
    if strategy == "sqbf_cl":
        return mg_sqbf_cl(zeta, theta)
    if strategy in ("sqbf_op", "hf_op"):
        return mg_open(zeta)
    raise ValueError(f"unknown strategy {strategy!r}; expected one of {MG_STRATEGIES}")


def mg_curve(strategy: str, theta: float, zeta_grid) -> list:
    return [mg_point(strategy, float(z), theta) for z in zeta_grid]


def mg_empirical(strategy, base: SystemConfig, zeta: float, P_dB_list) -> float:
    """Estimate the multiplexing gain from finite-SNR optimized bounds.

    For each SNR the training power is set to ``P**zeta`` (``f = P**(zeta-1)``),
    the bound is maximized over ``T_tr``, and the least-squares slope of the
    spectral efficiency (bits/s/Hz) against ``log2 P`` is returned.
    """
    from .optimizer import exact_opt_ttr

    P_dB = np.asarray(P_dB_list, dtype=float)
    if P_dB.ndim != 1 or len(P_dB) < 3 or np.any(np.diff(P_dB) <= 0):
        raise ValueError("P_dB_list needs at least 3 strictly increasing values")
    ratios = np.diff(P_dB)
    if not np.allclose(ratios, ratios[0]):
        raise ValueError("P_dB_list must be geometric in linear SNR (evenly spaced in dB)")
    if not 0 <= zeta <= 1:
        raise ValueError(f"zeta must lie in [0, 1] so that f <= 1, got {zeta}")
    P = 10.0 ** (P_dB / 10.0)
    se = []
    for p in P:
        cfg = base.replace(P=float(p), f=float(p ** (zeta - 1.0)))
        se.append(exact_opt_ttr(cfg, strategy).se_at_opt)
    slope, _ = np.polyfit(np.log2(P), np.asarray(se), 1)
    return float(slope)


def mg_theory(strategy, training, zeta: float, theta: float) -> float:
    """Theoretical multiplexing gain for a (strategy, training) pair."""
    key = f"{Strategy(strategy).value}_{'cl' if TrainingType(training) is TrainingType.CLOSED else 'op'}"
    return mg_point(key, zeta, theta).r
