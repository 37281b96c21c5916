"""Zero-forcing precoders built from the base station's CSI."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import CsiAtBaseStation

COND_LIMIT = 1e12


class RankDeficientCsi(np.linalg.LinAlgError):
    """The served users' CSI rows are numerically dependent."""


@dataclass(frozen=True)
class Precoder:
    V: np.ndarray  # (M, k) unit-norm columns, one per served user
    served: tuple
    per_user_power: float


def zf_directions(H_rows: np.ndarray) -> np.ndarray:
    """Column-normalized pseudoinverse of ``H_rows`` (k x M).

    Column ``i`` is orthogonal to every other row and maximizes the gain
    toward row ``i`` among such vectors.
    """
    U, s, Vh = np.linalg.svd(H_rows, full_matrices=False)
    if s[-1] <= 0 or s[0] / s[-1] > COND_LIMIT:
        raise RankDeficientCsi(
            f"CSI of {H_rows.shape[0]} served users is rank deficient "
            f"(condition number {s[0] / s[-1] if s[-1] > 0 else np.inf:.3g})")
    V = (Vh.conj().T / s) @ U.conj().T
    return V / np.linalg.norm(V, axis=0, keepdims=True)


def zf_precoder(csi: CsiAtBaseStation, served, per_user_power: float) -> Precoder:
    served = tuple(int(i) for i in served)
    M = csi.H_hat.shape[1]
    if not served or len(served) > M:
        raise ValueError(f"need between 1 and {M} served users, got {len(served)}")
    if per_user_power <= 0:
        raise ValueError("per_user_power must be positive")
    V = zf_directions(csi.H_hat[list(served)])
    return Precoder(V, served, float(per_user_power))


def sinr(H: np.ndarray, precoder: Precoder, extra_interference=0.0) -> np.ndarray:
    """SINR of every served user with unit-variance noise.

    ``extra_interference`` is added to each user's denominator (scalar or one
    value per served user).
    """
    gains = np.abs(H[list(precoder.served)] @ precoder.V) ** 2
    signal = np.diag(gains)
    leakage = gains.sum(axis=1) - signal
    p = precoder.per_user_power
    return p * signal / (1.0 + p * leakage + extra_interference)
