"""
Linear precoders for SDMA, OMA and RSMA.

All precoders take the channel *estimate* (shape (..., K, N)) and return
N x K matrices whose column k feeds user k. Powers are in watts, so a
column norm has units of sqrt(W).

RSMA splits the budget P between a CSIT-free common beam, which gets
``P - P**alpha``, and MMSE private beams, which get ``P**alpha``. With
P = 100 W, alpha = 0 leaves 1 W for the private streams.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .numerics import as_complex_matrix, hermitian_transpose, solve_regularized

__all__ = ['Scheme', 'PrecoderSet', 'mmse_precoder', 'mrt_precoder',
           'rsma_common_precoder', 'rsma_power_split', 'build_precoders']


class Scheme(str, Enum):
    SDMA = 'SDMA'
    OMA = 'OMA'
    RSMA = 'RSMA'


@dataclass(frozen=True)
class PrecoderSet:
    scheme: Scheme
    private_W: np.ndarray
    common_w: np.ndarray
    alpha: float = 1.0

    @property
    def private_power(self):
        return np.sum(np.abs(self.private_W) ** 2, axis=(-2, -1))

    @property
    def common_power(self):
        return np.sum(np.abs(self.common_w) ** 2, axis=-1)

    @property
    def total_power(self):
        return self.private_power + self.common_power

    def column_powers(self):
        """Per-user private power, shape (..., K)."""
        return np.sum(np.abs(self.private_W) ** 2, axis=-2)


def mmse_precoder(H_est, noise_power, power_budget, k=None):
    """Regularized channel inversion with trace normalization.

    ``W' = (H^H H + noise_power * K / Q * I)^-1 H^H`` and the result is
    ``W' * sqrt(Q / tr(W'^H W'))`` so that the columns carry `Q` watts in
    total. Users with weak channels get more power than strong ones.

    Parameters
    ----------
    H_est : array_like, shape (..., K, N)
        Estimated channel matrix (or a batch of them).
    noise_power : float
        Receiver noise power in watts.
    power_budget : float or array_like
        Total power Q in watts; an array broadcasts over the batch.
    k : int, optional
        User count used in the regularizer. Defaults to ``H_est.shape[-2]``.

    Returns
    -------
    numpy.ndarray, shape (..., N, K)
    """
    H = as_complex_matrix(H_est)
    if k is None:
        k = H.shape[-2]
    if noise_power <= 0:
        raise ValueError("noise power must be > 0")
    q = np.asarray(power_budget, dtype=float)
    if np.any(q <= 0):
        raise ValueError("power budget must be > 0")
    HH = hermitian_transpose(H)
    reg = np.broadcast_to(noise_power * k / q, H.shape[:-2])
    W = solve_regularized(HH @ H, reg, HH)
    trace = np.sum(np.abs(W) ** 2, axis=(-2, -1))
    if np.any(trace == 0):
        raise ValueError("zero channel matrix: MMSE normalization undefined")
    return W * np.sqrt(q / trace)[..., None, None]


def mrt_precoder(H_est, total_power, k=None):
    """Matched filter with equal power ``total_power / K`` per user."""
    H = as_complex_matrix(H_est)
    if k is None:
        k = H.shape[-2]
    norms = np.linalg.norm(H, axis=-1)
    if np.any(norms == 0):
        raise ValueError("zero channel row: MRT direction undefined")
    return hermitian_transpose(H / norms[..., None]) * np.sqrt(total_power / k)


def rsma_power_split(total_power, alpha):
    """Return (common, private) power in watts for scaling factor `alpha`."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1], got {0}".format(alpha))
    private = total_power ** alpha
    common = total_power - private
    if common < 0:
        # only reachable with P < 1 W
        raise ValueError("P - P**alpha < 0 for P = {0} W; RSMA power split "
                         "requires P >= 1 W".format(total_power))
    return common, private


def rsma_common_precoder(n, total_power, alpha):
    """Uniform common beam ``sqrt((P - P**alpha) / N) * [1, ..., 1]``."""
    common, _ = rsma_power_split(total_power, alpha)
    return np.full(n, np.sqrt(common / n), dtype=np.complex128)


def build_precoders(scheme, H_est, s, alpha=1.0):
    """Precoders for `scheme` from the estimated channel and scenario `s`.

    `alpha` is ignored unless `scheme` is RSMA. RSMA with ``alpha = 1``
    reproduces the SDMA precoder exactly.
    """
    scheme = Scheme(scheme)
    H = as_complex_matrix(H_est)
    n = s.antenna_count
    k = s.user_count
    P = s.transmit_power
    if H.shape[-2:] != (k, n):
        raise ValueError("channel shape {0} does not match K={1}, N={2}".format(
            H.shape[-2:], k, n))
    zeros = np.zeros(H.shape[:-2] + (n,), dtype=np.complex128)
    if scheme is Scheme.SDMA:
        W = mmse_precoder(H, s.noise_power, P, k)
        return PrecoderSet(scheme, W, zeros, 1.0)
    if scheme is Scheme.OMA:
        W = mrt_precoder(H, P, k)
        return PrecoderSet(scheme, W, zeros, 1.0)
    alpha = float(alpha)
    common_w = rsma_common_precoder(n, P, alpha)
    W = mmse_precoder(H, s.noise_power, P ** alpha, k)
    return PrecoderSet(scheme, W, zeros + common_w, alpha)
