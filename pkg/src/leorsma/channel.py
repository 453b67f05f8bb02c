"""
Line-of-sight channel vectors, AoD-error channel estimates and the
inter-user correlation factor.

Channels are row vectors: a channel matrix for K users has shape (K, N).
The estimate seen by the transmitter differs from the true channel by a
per-user error on the cosine of the angle of departure, which acts as an
element-wise phase ramp and leaves every magnitude untouched.
"""

from dataclasses import dataclass

import numpy as np

from .numerics import as_complex_vector, vector_norm
from .scenario import user_geometry

__all__ = ['ErrorModel', 'ChannelSet', 'steering_vector', 'channel_vector',
           'channel_matrix', 'apply_aod_error', 'draw_epsilons',
           'correlation', 'estimate_channels']


@dataclass(frozen=True)
class ErrorModel:
    """Uniform AoD-cosine error, eps ~ U(-delta_eps, +delta_eps).

    ``delta_eps == 0`` is perfect CSIT.
    """
    delta_eps: float = 0.0

    def __post_init__(self):
        if not np.isfinite(self.delta_eps) or self.delta_eps < 0:
            raise ValueError("delta_eps must be finite and >= 0")

    @property
    def perfect(self):
        return self.delta_eps == 0


@dataclass(frozen=True)
class ChannelSet:
    true_H: np.ndarray
    estimated_H: np.ndarray
    epsilons: np.ndarray


def _element_offsets(n_antennas):
    # (N + 1 - 2n) for n = 1..N, symmetric about the array centre
    n = np.arange(1, n_antennas + 1)
    return (n_antennas + 1 - 2 * n).astype(float)


def steering_vector(s, eta):
    """ULA steering vector for AoD cosine `eta`.

    Element n (1-based) is ``exp(-j*pi*(dN/lambda)*(N+1-2n)*eta)``. `eta`
    may be an array, in which case the result has shape ``eta.shape + (N,)``.
    Arguments outside [-1, 1] are accepted since an erroneous cosine can
    leave the physical range.
    """
    eta = np.asarray(eta, dtype=float)
    phase = -np.pi * s.spacing_wavelengths * _element_offsets(s.antenna_count)
    return np.exp(1j * phase * eta[..., None])


def channel_vector(s, g):
    """LOS channel of one user from its :class:`UserGeometry`."""
    amplitude = np.sqrt(s.gain_product) * s.wavelength / (
        4.0 * np.pi * g.slant_distance)
    return (amplitude * np.exp(-1j * g.propagation_phase)
            * steering_vector(s, g.aod_cosine))


def channel_matrix(s):
    """True K x N channel matrix for every user in the scenario."""
    return np.stack([channel_vector(s, user_geometry(s, k))
                     for k in range(1, s.user_count + 1)])


def apply_aod_error(h, s, eps):
    """Estimated channel: Hadamard product of `h` with ``steering_vector(eps)``.

    Works row-wise on a (..., K, N) stack when `eps` has shape (..., K).
    """
    h = as_complex_vector(h)
    if h.shape[-1] != s.antenna_count:
        raise ValueError("channel has {0} elements, scenario has {1} "
                         "antennas".format(h.shape[-1], s.antenna_count))
    return h * steering_vector(s, eps)


def draw_epsilons(em, k, rng):
    """Draw `k` independent AoD-cosine errors from `rng`.

    Always consumes `k` uniforms from the stream, so perfect and imperfect
    runs sharing a seed stay aligned.
    """
    u = rng.uniform(-1.0, 1.0, size=k)
    return em.delta_eps * u


def estimate_channels(s, eps, true_H=None):
    """Build a :class:`ChannelSet` for the per-user errors `eps`."""
    H = channel_matrix(s) if true_H is None else true_H
    eps = np.asarray(eps, dtype=float)
    return ChannelSet(true_H=H, estimated_H=apply_aod_error(H, s, eps),
                      epsilons=eps)


def correlation(h1, h2):
    """Correlation factor ``|h1^H h2| / (||h1|| ||h2||)`` in [0, 1].

    Channels are row vectors, so ``h1^H h2`` is the inner product
    ``sum(conj(h1) * h2)``. Only the magnitude is reported; the phase
    depends on the arbitrary per-user propagation phase.
    """
    h1 = as_complex_vector(h1)
    h2 = as_complex_vector(h2)
    if h1.shape[-1] != h2.shape[-1]:
        raise ValueError("channel lengths differ")
    n1 = vector_norm(h1)
    n2 = vector_norm(h2)
    if np.any(n1 == 0) or np.any(n2 == 0):
        raise ValueError("correlation is undefined for a zero channel")
    rho = np.abs(np.sum(np.conj(h1) * h2, axis=-1)) / (n1 * n2)
    return np.minimum(rho, 1.0)
