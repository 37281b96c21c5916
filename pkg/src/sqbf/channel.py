"""Rayleigh block fading and the base station's imperfect view of it.

Row ``i`` of ``H`` is user ``i``'s downlink channel; the received signal of
user ``i`` under precoder ``V`` is ``H[i] @ V @ s``. All randomness comes from
an injected ``numpy.random.Generator``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .config import SystemConfig

INTEGER_BITS = 3  # two's complement covering [-4, 4)


@dataclass(frozen=True)
class ChannelRealization:
    H: np.ndarray  # (M, M) complex
    G: np.ndarray  # (M, M) inter-user power gains, zero diagonal


@dataclass(frozen=True)
class CsiProvenance:
    kind: str  # "perfect", "quantized", "rvq" or "estimated"
    bits_per_user: Optional[int] = None
    pilots_per_user: Optional[float] = None
    error_variance: Optional[float] = None


@dataclass(frozen=True)
class CsiAtBaseStation:
    H_hat: np.ndarray
    provenance: CsiProvenance


def complex_normal(rng: np.random.Generator, shape) -> np.ndarray:
    """Circularly-symmetric complex Gaussian entries with unit variance."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2.0)


def sample_channel(cfg: SystemConfig, rng: np.random.Generator) -> ChannelRealization:
    M = cfg.M
    H = complex_normal(rng, (M, M))
    g = np.abs(complex_normal(rng, (M, M))) ** 2
    G = np.triu(g, 1)
    G = G + G.T
    return ChannelRealization(H, G)


def perfect_csi(channel: ChannelRealization) -> CsiAtBaseStation:
    return CsiAtBaseStation(channel.H.copy(), CsiProvenance("perfect"))


def _check_ttr(cfg, T_tr):
    if not (0 <= T_tr <= cfg.T):
        raise ValueError(f"T_tr must lie in [0, T={cfg.T}], got {T_tr}")


def feedback_bit_budget(cfg: SystemConfig, T_tr: float) -> int:
    """Feedback bits per user when each user's cycle runs the uplink at capacity.

    ``floor((T_tr/M) log2(1 + fP'))``. With this budget the closed-loop
    inter-beam interference of random vector quantization,
    ``P 2^(-B/(M-1))``, matches ``P (1 + fP')^(-T_tr/(M(M-1)))``.
    """
    _check_ttr(cfg, T_tr)
    return int(math.floor(T_tr / cfg.M * math.log2(1.0 + cfg.fP_eff)))


def fixed_point_levels(bits: int) -> np.ndarray:
    """All values of a signed fixed-point word with 3 integer bits."""
    step = 2.0 ** (INTEGER_BITS - bits)
    k = np.arange(-(2 ** (bits - 1)), 2 ** (bits - 1))
    return k * step


def quantize_real(x: np.ndarray, bits: int) -> np.ndarray:
    """Round to the nearest level of a ``bits``-wide fixed-point word.

    Three bits carry sign and integer part, the rest are fractional, so the
    range is ``[-4, 4 - step]`` with ``step = 2**(3 - bits)``. Out-of-range
    values are clipped. Fewer than 4 bits yields zeros.
    """
    x = np.asarray(x, dtype=float)
    if bits < INTEGER_BITS + 1:
        return np.zeros_like(x)
    step = 2.0 ** (INTEGER_BITS - bits)
    kmax = 2 ** (bits - 1)
    k = np.clip(np.floor(x / step + 0.5), -kmax, kmax - 1)
    return k * step


def quantize_csi(channel: ChannelRealization, bits_per_user: int,
                 cfg: SystemConfig) -> CsiAtBaseStation:
    """Scalar fixed-point feedback of every channel coefficient.

    The budget is split evenly over the ``2M`` real dimensions of a user's
    channel, ``floor(bits_per_user / (2M))`` bits each.
    """
    if bits_per_user < 0:
        raise ValueError(f"bits_per_user must be >= 0, got {bits_per_user}")
    per_dim = bits_per_user // (2 * cfg.M)
    H = channel.H
    H_hat = quantize_real(H.real, per_dim) + 1j * quantize_real(H.imag, per_dim)
    return CsiAtBaseStation(H_hat, CsiProvenance("quantized", bits_per_user=int(bits_per_user)))


def rvq_error(M: int, bits: float, rng: np.random.Generator, size=None) -> np.ndarray:
    """Draw the quantization error ``sin^2`` of the angle for random vector quantization.

    With ``2**bits`` isotropic codewords the error is the minimum of
    ``2**bits`` independent Beta(M-1, 1) variables; sampled by inverting
    ``1 - (1 - z**(M-1))**(2**bits)`` so that large budgets stay exact.
    """
    u = rng.random(size)
    # z^(M-1) = 1 - (1-u)^(2^-bits)
    w = -np.expm1(np.log1p(-u) * 2.0 ** (-bits))
    return w ** (1.0 / (M - 1))


def quantize_csi_rvq(channel: ChannelRealization, bits_per_user: int,
                     rng: np.random.Generator) -> CsiAtBaseStation:
    """Random vector quantization of each user's channel direction.

    Statistically equivalent to a ``2**bits`` random codebook: the fed-back
    unit vector makes angle error ``Z`` with the true direction and the
    residual lies in an isotropic direction orthogonal to it.
    """
    if bits_per_user < 0:
        raise ValueError(f"bits_per_user must be >= 0, got {bits_per_user}")
    H = channel.H
    M = H.shape[1]
    direction = H / np.linalg.norm(H, axis=1, keepdims=True)
    z = rvq_error(M, bits_per_user, rng, size=H.shape[0])
    w = complex_normal(rng, H.shape)
    # project w onto the orthogonal complement of each direction
    w = w - np.sum(w * direction.conj(), axis=1, keepdims=True) * direction
    w = w / np.linalg.norm(w, axis=1, keepdims=True)
    H_hat = np.sqrt(1.0 - z)[:, None] * direction + np.sqrt(z)[:, None] * w
    return CsiAtBaseStation(H_hat, CsiProvenance("rvq", bits_per_user=int(bits_per_user)))


def open_loop_error_variance(cfg: SystemConfig, T_tr: float) -> float:
    return 1.0 / (1.0 + (T_tr / cfg.M) * cfg.fP_eff)


def estimate_csi_open_loop(channel: ChannelRealization, T_tr: float, cfg: SystemConfig,
                           rng: np.random.Generator) -> CsiAtBaseStation:
    """MMSE estimate from ``T_tr / M`` uplink pilots per user.

    ``H_hat = (1 - s2) H + sqrt((1 - s2) s2) W`` gives an estimation error
    of variance ``s2 = 1 / (1 + (T_tr/M) fP')`` uncorrelated with ``H_hat``.
    """
    _check_ttr(cfg, T_tr)
    s2 = open_loop_error_variance(cfg, T_tr)
    rho = 1.0 - s2
    W = complex_normal(rng, channel.H.shape)
    H_hat = rho * channel.H + math.sqrt(rho * s2) * W
    return CsiAtBaseStation(H_hat, CsiProvenance("estimated", pilots_per_user=T_tr / cfg.M,
                                                 error_variance=s2))
