"""
Achievable rates in bps/Hz.

Rates are always evaluated with the true channel H, while the precoders
come from the estimate. Gaussian signalling, treating residual inter-user
interference as noise; for RSMA the common stream is decoded first with
perfect SIC and the weakest user limits the common rate.
"""

from dataclasses import dataclass

import numpy as np

from .numerics import as_complex_matrix
from .precoding import Scheme

__all__ = ['RateBreakdown', 'link_gains', 'sdma_sum_rate', 'oma_sum_rate',
           'rsma_rates', 'achievable_rate']


@dataclass(frozen=True)
class RateBreakdown:
    """Per-user and total rates; array fields carry any batch axes in front."""
    scheme: Scheme
    private_rates: np.ndarray
    common_rates: np.ndarray
    sum_rate: np.ndarray
    alpha: float = 1.0


def link_gains(H, W):
    """``|h_k w_i|^2`` for every user k (rows) and beam i (columns)."""
    H = as_complex_matrix(H)
    W = as_complex_matrix(W)
    if H.shape[-1] != W.shape[-2]:
        raise ValueError("H has {0} antennas, W has {1}".format(
            H.shape[-1], W.shape[-2]))
    G = H @ W
    return G.real ** 2 + G.imag ** 2


def _private_terms(gains):
    k = gains.shape[-1]
    signal = np.diagonal(gains, axis1=-2, axis2=-1)
    interference = np.sum(gains * (1.0 - np.eye(k)), axis=-1)
    return signal, interference


def sdma_sum_rate(H, W, noise_power):
    """Sum of per-user rates with IUI treated as noise."""
    signal, interference = _private_terms(link_gains(H, W))
    rates = np.log2(1.0 + signal / (noise_power + interference))
    zeros = np.zeros_like(rates)
    return RateBreakdown(Scheme.SDMA, rates, zeros, rates.sum(axis=-1))


def oma_sum_rate(H, W, noise_power, k=None):
    """Interference-free per-user rates scaled by the 1/K resource share."""
    gains = link_gains(H, W)
    if k is None:
        k = gains.shape[-1]
    signal = np.diagonal(gains, axis1=-2, axis2=-1)
    rates = np.log2(1.0 + signal / noise_power) / k
    zeros = np.zeros_like(rates)
    return RateBreakdown(Scheme.OMA, rates, zeros, rates.sum(axis=-1))


def rsma_rates(H, precoders, noise_power):
    """Common rates, private rates and ``min_k R_c,k + sum_k R_p,k``."""
    if precoders.scheme is not Scheme.RSMA:
        raise ValueError("rsma_rates needs an RSMA precoder set")
    H = as_complex_matrix(H)
    gains = link_gains(H, precoders.private_W)
    signal, interference = _private_terms(gains)
    hc = np.sum(H * precoders.common_w[..., None, :], axis=-1)
    common_gain = hc.real ** 2 + hc.imag ** 2
    common = np.log2(1.0 + common_gain / (noise_power + gains.sum(axis=-1)))
    private = np.log2(1.0 + signal / (noise_power + interference))
    total = common.min(axis=-1) + private.sum(axis=-1)
    return RateBreakdown(Scheme.RSMA, private, common, total, precoders.alpha)


def achievable_rate(H, precoders, noise_power):
    """Dispatch on ``precoders.scheme``."""
    if precoders.scheme is Scheme.SDMA:
        return sdma_sum_rate(H, precoders.private_W, noise_power)
    if precoders.scheme is Scheme.OMA:
        return oma_sum_rate(H, precoders.private_W, noise_power)
    return rsma_rates(H, precoders, noise_power)
