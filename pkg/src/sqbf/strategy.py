"""Spectral efficiency of sequential beamforming and its half-duplex baseline."""
from __future__ import annotations

from dataclasses import dataclass

from .config import Strategy, SystemConfig
from .rates import rate_data_lower_bound, rate_tr_lower_bound, rate_zf


@dataclass(frozen=True)
class SeBreakdown:
    """Per-user spectral efficiency split into training and post-training parts."""

    se_total: float
    se_training_phase: float
    se_halfduplex_phase: float
    T_tr: float
    strategy: Strategy


def full_duplex_fraction(M: int) -> float:
    """Average share of the training time a user spends receiving data."""
    return (M - 1) / (2 * M)


def se_sqbf_bound(cfg: SystemConfig, T_tr: float) -> SeBreakdown:
    """Lower bound on the sequential-beamforming spectral efficiency.

    ``((M-1)/2M) (T_tr/T) R_tr + (1 - T_tr/T) R_data`` with both rates
    replaced by their clamped lower bounds.
    """
    frac = T_tr / cfg.T
    training = full_duplex_fraction(cfg.M) * frac * rate_tr_lower_bound(cfg, T_tr)
    data = (1.0 - frac) * rate_data_lower_bound(cfg, T_tr)
    return SeBreakdown(training + data, training, data, T_tr, Strategy.SQBF)


def se_hf(cfg: SystemConfig, T_tr: float) -> SeBreakdown:
    """Half-duplex counterpart: no data until all CSI has been collected."""
    data = (1.0 - T_tr / cfg.T) * rate_data_lower_bound(cfg, T_tr)
    return SeBreakdown(data, 0.0, data, T_tr, Strategy.HF)


def se_genie(cfg: SystemConfig) -> float:
    """Perfect CSI at no cost: every symbol carries ``R_zf``."""
    return rate_zf(cfg.M, cfg.P)


def se_bound(cfg: SystemConfig, T_tr: float, strategy: Strategy) -> SeBreakdown:
    strategy = Strategy(strategy)
    if strategy is Strategy.SQBF:
        return se_sqbf_bound(cfg, T_tr)
    if strategy is Strategy.HF:
        return se_hf(cfg, T_tr)
    R = se_genie(cfg)
    return SeBreakdown(R, 0.0, R, 0.0, Strategy.GENIE)


def se_improvement(cfg: SystemConfig, opt_sqbf_se: float, opt_hf_se: float) -> float:
    """Percent gain of sequential beamforming over half duplex."""
    if opt_hf_se == 0:
        raise ZeroDivisionError("half-duplex spectral efficiency is zero")
    return 100.0 * (opt_sqbf_se - opt_hf_se) / opt_hf_se
