"""Closed-form rate quantities for training-based zero-forcing.

Every rate returned here is in bits/s/Hz. Lower bounds are clamped at zero.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass

from .config import SystemConfig, TrainingType
from .special import expe1

LN2 = math.log(2.0)


@functools.lru_cache(maxsize=4096)
def rate_zf(M: int, P: float) -> float:
    """Per-user ergodic rate of zero-forcing with perfect CSI.

    With ``M`` users on ``M`` antennas the effective gain is exponential
    with unit mean, so the rate is ``E[log2(1 + (P/M) X)]``, which has the
    closed form ``exp(M/P) E1(M/P) / ln 2``.
    """
    if P <= 0:
        raise ValueError(f"P must be positive, got {P}")
    return expe1(M / P) / LN2


def p_ibi(training: TrainingType, T_tr: float, M: int, f: float, P: float,
          P_SI: float = 0.0) -> float:
    """Inter-beam interference power left by ``T_tr`` training symbols.

    Closed loop: ``P (1 + fP')^(-T_tr / (M (M-1)))``.
    Open loop: ``(P/M) (M-1) / (1 + (T_tr/M) fP')``.
    Here ``fP' = fP / (1 + P_SI)``.
    """
    if T_tr < 0:
        raise ValueError(f"T_tr must be >= 0, got {T_tr}")
    fp = f * P / (1.0 + P_SI)
    if TrainingType(training) is TrainingType.CLOSED:
        return P * (1.0 + fp) ** (-T_tr / (M * (M - 1)))
    return (P / M) * (M - 1) / (1.0 + (T_tr / M) * fp)


def delta_r_ini(M: int, P: float, f: float, alpha: float) -> float:
    """Rate loss from inter-node interference once inter-beam leakage is gone.

    ``log2((1 + a f P) / (1 + a f P / (1 + P/M)))``; bounded by
    ``log2(1 + P/M)`` as ``alpha`` grows.
    """
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    ini = alpha * f * P
    if math.isinf(ini):
        return math.log2(1.0 + P / M)
    return math.log2((1.0 + ini) / (1.0 + ini / (1.0 + P / M)))


def _check_ttr(cfg: SystemConfig, T_tr: float):
    if not (0 <= T_tr <= cfg.T):
        raise ValueError(f"T_tr must lie in [0, T={cfg.T}], got {T_tr}")


def _p_ibi_cfg(cfg: SystemConfig, T_tr: float) -> float:
    return p_ibi(cfg.training, T_tr, cfg.M, cfg.f, cfg.P, cfg.P_SI)


def rate_tr_lower_bound(cfg: SystemConfig, T_tr: float) -> float:
    """Lower bound on a receiving user's rate while another user trains."""
    _check_ttr(cfg, T_tr)
    ini = cfg.alpha * cfg.f * cfg.P
    gap = math.log2((1.0 + _p_ibi_cfg(cfg, T_tr) + ini)
                    / (1.0 + ini / (1.0 + cfg.P / cfg.M)))
    return max(0.0, rate_zf(cfg.M, cfg.P) - gap)


def rate_data_lower_bound(cfg: SystemConfig, T_tr: float) -> float:
    """Lower bound on the per-user rate after training (no inter-node term)."""
    _check_ttr(cfg, T_tr)
    return max(0.0, rate_zf(cfg.M, cfg.P) - math.log2(1.0 + _p_ibi_cfg(cfg, T_tr)))


def delta_r_csir(M: int, P: float, T_DL: float, P_DL: float, base: float = 2.0) -> float:
    """Upper bound on the loss from imperfect CSI at the receivers.

    ``log(1 + (P/M) / (1 + (T_DL/M) P_DL))`` in the requested log ``base``.
    Diagnostic only: the simulator assumes users know their channels.
    """
    if T_DL < 0 or P_DL < 0:
        raise ValueError("T_DL and P_DL must be nonnegative")
    if math.isinf(P_DL) and T_DL > 0:
        return 0.0
    return math.log1p((P / M) / (1.0 + (T_DL / M) * P_DL)) / math.log(base)


@dataclass(frozen=True)
class RateBounds:
    R_zf: float
    P_ibi: float
    dR_ini: float
    R_tr_lb: float
    R_data_lb: float


def rate_bounds(cfg: SystemConfig, T_tr: float) -> RateBounds:
    return RateBounds(
        R_zf=rate_zf(cfg.M, cfg.P),
        P_ibi=_p_ibi_cfg(cfg, T_tr),
        dR_ini=delta_r_ini(cfg.M, cfg.P, cfg.f, cfg.alpha),
        R_tr_lb=rate_tr_lower_bound(cfg, T_tr),
        R_data_lb=rate_data_lower_bound(cfg, T_tr),
    )
