"""Block-level Monte Carlo of sequential beamforming and half duplex.

One block: users train in turn for ``T_tr / M`` symbols each. During cycle
``j`` (users ``1..j-1`` already trained) the base station zero-forces to the
trained users while user ``j`` is training, so each receiver also sees
inter-node interference. After training, all ``M`` users are served for the
remaining ``T - T_tr`` symbols. Spectral efficiency is per user: delivered
bits summed over users divided by ``M T``.

Iteration ``i`` draws from ``SeedSequence(seed, spawn_key=(i, attempt))``,
so results do not depend on how iterations are split across workers.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .channel import (ChannelRealization, CsiAtBaseStation, estimate_csi_open_loop,
                      feedback_bit_budget, perfect_csi, quantize_csi, quantize_csi_rvq,
                      sample_channel)
from .config import Strategy, SystemConfig, TrainingType
from .precoding import RankDeficientCsi, Precoder, sinr, zf_directions

log = logging.getLogger(__name__)

Z95 = 1.959963984540054
RESAMPLE_FLAG_FRACTION = 1e-3


class SimulationError(RuntimeError):
    """A Monte Carlo run could not produce valid samples."""


@dataclass(frozen=True)
class SimOptions:
    """Monte Carlo controls.

    ``feedback`` selects the closed-loop CSI model: ``"rvq"`` (random vector
    quantization of the channel direction) or ``"fixed_point"`` (scalar
    quantization of every coefficient). ``perfect_csi`` overrides both
    training types with the true channel.
    """

    n_iter: int = 10000
    seed: int = 0
    power_adaptation: bool = False
    stochastic_ini: bool = False
    feedback: str = "rvq"
    perfect_csi: bool = False
    workers: int = 1
    max_resample: int = 20

    def __post_init__(self):
        if self.n_iter < 1:
            raise ValueError(f"n_iter must be >= 1, got {self.n_iter}")
        if self.feedback not in ("rvq", "fixed_point"):
            raise ValueError(f"unknown feedback model {self.feedback!r}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass(frozen=True)
class BlockSample:
    se_sqbf: float
    se_hf: float
    per_cycle_rates: np.ndarray  # (M, M); [i, j] = rate of user i in cycle j, NaN if idle
    data_rates: np.ndarray  # (M,)
    r_tr_mean: float  # mean over the (i, j) pairs of the training phase; NaN if none


@dataclass(frozen=True)
class SimResult:
    se_mean: float
    se_ci95: float
    per_cycle_rates: np.ndarray
    r_data_mean: float
    r_data_ci95: float
    r_tr_mean: float
    r_tr_ci95: float
    strategy: Strategy
    cfg: SystemConfig
    T_tr: int
    n_iter: int
    n_resampled: int = 0
    flagged: bool = False
    per_cycle_ci95: Optional[np.ndarray] = field(default=None, repr=False)


def round_training(cfg: SystemConfig, T_tr: float) -> int:
    """Round ``T_tr`` down to a whole number of cycles."""
    if not (0 <= T_tr <= cfg.T):
        raise ValueError(f"T_tr must lie in [0, T={cfg.T}], got {T_tr}")
    return int(math.floor(T_tr / cfg.M + 1e-9)) * cfg.M


def acquire_csi(channel: ChannelRealization, cfg: SystemConfig, T_tr: int,
                opts: SimOptions, rng: np.random.Generator) -> CsiAtBaseStation:
    """CSI the base station holds for every user once that user has trained."""
    if opts.perfect_csi:
        return perfect_csi(channel)
    if cfg.training is TrainingType.OPEN:
        return estimate_csi_open_loop(channel, T_tr, cfg, rng)
    bits = feedback_bit_budget(cfg, T_tr)
    if opts.feedback == "rvq":
        return quantize_csi_rvq(channel, bits, rng)
    return quantize_csi(channel, bits, cfg)


def simulate_block(cfg: SystemConfig, T_tr: int, opts: SimOptions,
                   rng: np.random.Generator,
                   channel: Optional[ChannelRealization] = None,
                   csi: Optional[CsiAtBaseStation] = None) -> BlockSample:
    """Simulate one fading block.

    ``channel`` and ``csi`` may be supplied to replay a hand-built block;
    otherwise they are drawn from ``rng``.

    Raises
    ------
    RankDeficientCsi
        If zero forcing is impossible with the acquired CSI.
    """
    M, T, P = cfg.M, cfg.T, cfg.P
    if T_tr % M or not (0 <= T_tr <= T):
        raise ValueError(f"T_tr must be a multiple of M={M} in [0, {T}], got {T_tr}")
    if channel is None:
        channel = sample_channel(cfg, rng)
    if csi is None:
        csi = acquire_csi(channel, cfg, T_tr, opts, rng)
    H, H_hat = channel.H, csi.H_hat
    fP = cfg.f * P
    cycle_len = T_tr // M

    rates = np.full((M, M), np.nan)
    tr_bits = 0.0
    if cycle_len > 0:
        for j in range(1, M):  # 0-indexed: user j trains, users 0..j-1 receive
            served = tuple(range(j))
            power = P / j if opts.power_adaptation else P / M
            prec = Precoder(zf_directions(H_hat[:j]), served, power)
            if opts.stochastic_ini:
                ini = cfg.alpha * fP * channel.G[:j, j]
            else:
                ini = cfg.alpha * fP
            r = np.log2(1.0 + sinr(H, prec, ini))
            rates[:j, j] = r
            tr_bits += cycle_len * r.sum()
    prec = Precoder(zf_directions(H_hat), tuple(range(M)), P / M)
    data_rates = np.log2(1.0 + sinr(H, prec))
    data_bits = (T - T_tr) * data_rates.sum()
    r_tr = float(np.nanmean(rates)) if cycle_len > 0 else math.nan
    return BlockSample(
        se_sqbf=(tr_bits + data_bits) / (M * T),
        se_hf=data_bits / (M * T),
        per_cycle_rates=rates,
        data_rates=data_rates,
        r_tr_mean=r_tr,
    )


def iteration_rng(seed: int, index: int, attempt: int = 0) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index, attempt)))


def _run_chunk(args):
    cfg, T_tr, opts, start, stop = args
    M = cfg.M
    n = stop - start
    se_sqbf = np.empty(n)
    se_hf = np.empty(n)
    r_data = np.empty(n)
    r_tr = np.empty(n)
    cycles = np.empty((n, M, M))
    resampled = 0
    for k, i in enumerate(range(start, stop)):
        for attempt in range(opts.max_resample + 1):
            try:
                s = simulate_block(cfg, T_tr, opts, iteration_rng(opts.seed, i, attempt))
                break
            except RankDeficientCsi:
                resampled += 1
        else:
            raise SimulationError(
                f"iteration {i}: CSI rank deficient in {opts.max_resample + 1} attempts "
                f"(T_tr={T_tr}, training={cfg.training.value}, feedback={opts.feedback})")
        se_sqbf[k], se_hf[k] = s.se_sqbf, s.se_hf
        r_data[k] = s.data_rates.mean()
        r_tr[k] = s.r_tr_mean
        cycles[k] = s.per_cycle_rates
    return se_sqbf, se_hf, r_data, r_tr, cycles, resampled


def _mean_ci(x: np.ndarray):
    x = x[~np.isnan(x)]
    if len(x) == 0:
        return math.nan, math.nan
    if len(x) == 1:
        return float(x[0]), 0.0
    return float(x.mean()), float(Z95 * x.std(ddof=1) / math.sqrt(len(x)))


def run_monte_carlo(cfg: SystemConfig, T_tr: float, strategy, opts: SimOptions) -> SimResult:
    """Mean spectral efficiency over ``opts.n_iter`` independent blocks.

    ``T_tr`` is rounded down to a multiple of ``M``. The genie strategy
    serves all users for the whole block with perfect CSI.
    """
    strategy = Strategy(strategy)
    if strategy is Strategy.GENIE:
        opts = SimOptions(**{**opts.__dict__, "perfect_csi": True})
        T_tr = 0
    T_tr = round_training(cfg, T_tr)
    n = opts.n_iter
    n_chunks = min(opts.workers, n)
    bounds = np.linspace(0, n, n_chunks + 1).astype(int)
    tasks = [(cfg, T_tr, opts, int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:])]
    if n_chunks == 1:
        parts = [_run_chunk(tasks[0])]
    else:
        with ProcessPoolExecutor(max_workers=n_chunks) as pool:
            parts = list(pool.map(_run_chunk, tasks))
    se_sqbf, se_hf, r_data, r_tr, cycles = (np.concatenate([p[k] for p in parts])
                                            for k in range(5))
    resampled = sum(p[5] for p in parts)

    se = se_hf if strategy is Strategy.HF else se_sqbf
    se_mean, se_ci = _mean_ci(se)
    rd_mean, rd_ci = _mean_ci(r_data)
    rt_mean, rt_ci = _mean_ci(r_tr)
    with np.errstate(invalid="ignore"):
        cyc_mean = np.full((cfg.M, cfg.M), np.nan)
        cyc_ci = np.full((cfg.M, cfg.M), np.nan)
        for i in range(cfg.M):
            for j in range(i + 1, cfg.M):
                cyc_mean[i, j], cyc_ci[i, j] = _mean_ci(cycles[:, i, j])
    flagged = resampled > RESAMPLE_FLAG_FRACTION * n
    if flagged:
        log.warning("%d of %d iterations resampled for rank-deficient CSI", resampled, n)
    return SimResult(se_mean, se_ci, cyc_mean, rd_mean, rd_ci, rt_mean, rt_ci,
                     strategy, cfg, T_tr, n, resampled, flagged, cyc_ci)


def residual_self_interference(budget_dBm: float = 0.0, noise_floor_dB: float = -90.0,
                               isolation_dB: float = 40.0, analog_dB: float = 30.0,
                               digital_dB: float = 30.0) -> float:
    """Residual self-interference relative to the noise floor, linear.

    The defaults (0 dBm budget, -90 dB floor, 40 + 30 + 30 dB suppression)
    leave -10 dB, i.e. 0.1.
    """
    residual_dB = budget_dBm - isolation_dB - analog_dB - digital_dB - noise_floor_dB
    return 10.0 ** (residual_dB / 10.0)


def run_with_self_interference(cfg: SystemConfig, T_tr: float, strategy, opts: SimOptions,
                               P_SI: Optional[float] = None, **si_db) -> SimResult:
    """Run the Monte Carlo with a residual self-interference power.

    ``P_SI`` is taken from the argument, else built from the dB figures in
    ``si_db`` (see :func:`residual_self_interference`) when any are given,
    else from ``cfg.P_SI``.
    """
    if P_SI is None and si_db:
        P_SI = residual_self_interference(**si_db)
    if P_SI is not None:
        cfg = cfg.replace(P_SI=P_SI)
    return run_monte_carlo(cfg, T_tr, strategy, opts)
