"""Training-duration optimization.

Two routes to the optimal number of training symbols: the closed-form
marginal-analysis approximations, and a direct numerical maximization of the
spectral-efficiency lower bound. Both work with a continuous ``T_tr``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import Strategy, SystemConfig, TrainingType
from .rates import LN2, delta_r_ini, p_ibi, rate_zf
from .strategy import se_bound

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0


@dataclass(frozen=True)
class TrainingPlan:
    T_tr_opt: float
    se_at_opt: float
    method: str  # "closed_form" or "grid_search"
    c_marginal: float
    strategy: Strategy
    training: TrainingType
    clamped: bool = False


def _strategy(strategy) -> Strategy:
    strategy = Strategy(strategy)
    if strategy is Strategy.GENIE:
        raise ValueError("the genie system has no training to optimize")
    return strategy


def normalized_cost(cfg: SystemConfig, strategy) -> float:
    """Normalized marginal cost ``c`` in bits/s/Hz.

    Sequential beamforming: ``(M-1)/2 dR_ini + (M+1)/2 R_zf``.
    Half duplex: ``M R_zf``.
    """
    M = cfg.M
    R = rate_zf(M, cfg.P)
    if _strategy(strategy) is Strategy.SQBF:
        dR = delta_r_ini(M, cfg.P, cfg.f, cfg.alpha)
        return 0.5 * (M - 1) * dR + 0.5 * (M + 1) * R
    return M * R


def approx_opt_ttr(cfg: SystemConfig, strategy) -> TrainingPlan:
    """Closed-form approximation of the optimal training duration.

    Closed loop::

        M(M-1) [ln(T P / c) + ln((1 + fP)^(1/(M-1)) - 1)] / ln(1 + fP)

    Open loop::

        sqrt((M-1) T / (f c / M))

    The result is clamped to ``[0, T]``; ``clamped`` records whether that
    happened (for example when ``T P / c`` is too small for the logarithm to
    be positive).
    """
    strategy = _strategy(strategy)
    M, T = cfg.M, cfg.T
    c = normalized_cost(cfg, strategy)
    fp = cfg.fP_eff
    if cfg.training is TrainingType.CLOSED:
        arg = T * cfg.P / c * ((1.0 + fp) ** (1.0 / (M - 1)) - 1.0)
        raw = M * (M - 1) * math.log(arg) / math.log1p(fp) if arg > 0 else -math.inf
    else:
        f_eff = fp / cfg.P
        raw = math.sqrt((M - 1) * T / (f_eff * c / M))
    t = min(max(raw, 0.0), float(T))
    se = se_bound(cfg, t, strategy).se_total
    return TrainingPlan(t, se, "closed_form", c, strategy, cfg.training,
                        clamped=(t != raw))


def golden_section_max(func, a: float, b: float, tol: float = 1e-3):
    """Maximize a unimodal ``func`` on ``[a, b]``.

    Returns ``(x, func(x))`` with ``x`` within ``tol`` of the maximizer.
    """
    a, b = min(a, b), max(a, b)
    h = b - a
    if h <= tol:
        x = 0.5 * (a + b)
        return x, func(x)
    n = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))
    c = a + INV_PHI2 * h
    d = a + INV_PHI * h
    fc, fd = func(c), func(d)
    for _ in range(n):
        if fc > fd:
            b, d, fd = d, c, fc
            h *= INV_PHI
            c = a + INV_PHI2 * h
            fc = func(c)
        else:
            a, c, fc = c, d, fd
            h *= INV_PHI
            d = a + INV_PHI * h
            fd = func(d)
    x = 0.5 * (a + b)
    return x, func(x)


def exact_opt_ttr(cfg: SystemConfig, strategy, tol: float = 1e-3) -> TrainingPlan:
    """Numerically maximize the spectral-efficiency bound over ``[0, T]``.

    A coarse grid with step ``M`` locates the best bracket (clamped rates
    can make the objective flat near the edges), then golden-section search
    refines it to ``tol`` symbols.
    """
    strategy = _strategy(strategy)
    T = float(cfg.T)

    def objective(t):
        return se_bound(cfg, t, strategy).se_total

    grid = np.arange(0.0, T + cfg.M, cfg.M)
    grid[-1] = T
    grid = np.unique(grid)
    values = np.array([objective(t) for t in grid])
    k = int(np.argmax(values))
    best_t, best_se = float(grid[k]), float(values[k])
    lo = float(grid[max(k - 1, 0)])
    hi = float(grid[min(k + 1, len(grid) - 1)])
    t, se = golden_section_max(objective, lo, hi, tol)
    if se > best_se:
        best_t, best_se = t, se
    return TrainingPlan(best_t, best_se, "grid_search",
                        normalized_cost(cfg, strategy), strategy, cfg.training)


def delta_r_data(cfg: SystemConfig, T_tr: float) -> float:
    """Post-training rate gained from ``M`` more training symbols, in bits."""
    p0 = p_ibi(cfg.training, T_tr, cfg.M, cfg.f, cfg.P, cfg.P_SI)
    p1 = p_ibi(cfg.training, T_tr + cfg.M, cfg.M, cfg.f, cfg.P, cfg.P_SI)
    return math.log2((1.0 + p0) / (1.0 + p1))


def marginal_utility(cfg: SystemConfig, strategy, T_tr: float) -> float:
    """Spectral efficiency gained by adding ``M`` training symbols at ``T_tr``."""
    strategy = _strategy(strategy)
    if not (0 <= T_tr <= cfg.T - cfg.M):
        raise ValueError(f"T_tr must lie in [0, T-M], got {T_tr}")
    frac = T_tr / cfg.T
    if strategy is Strategy.SQBF:
        weight = 1.0 - (cfg.M + 1) / (2 * cfg.M) * frac
    else:
        weight = 1.0 - frac
    return weight * delta_r_data(cfg, T_tr)


def marginal_cost(cfg: SystemConfig, strategy) -> float:
    """Spectral efficiency lost by adding ``M`` training symbols; ``c / T``."""
    return normalized_cost(cfg, strategy) / cfg.T


def se_loss_bound(cfg: SystemConfig, strategy) -> float:
    """Leading-order bound on the gap to the genie system at the optimum.

    Closed loop::

        (c/M) M(M-1) / ln(1 + fP) * ln(T) / T

    Open loop::

        2 sqrt((M-1) (c/M) / (f T))

    Lower-order terms are dropped. The open-loop expression comes from a
    first-order expansion of the natural logarithm, so it is evaluated with
    rates in nats and the result converted to bits/s/Hz.
    """
    strategy = _strategy(strategy)
    M, T = cfg.M, cfg.T
    c_per_user = normalized_cost(cfg, strategy) / M
    fp = cfg.fP_eff
    if cfg.training is TrainingType.CLOSED:
        return c_per_user * M * (M - 1) / math.log1p(fp) * math.log(T) / T
    f_eff = fp / cfg.P
    return 2.0 * math.sqrt((M - 1) * c_per_user * LN2 / (f_eff * T)) / LN2
