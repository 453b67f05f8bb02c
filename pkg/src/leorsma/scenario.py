"""Physical scenario: system parameters and user placement on a flat ground plane."""

from dataclasses import dataclass, field, replace
import math

import numpy as np

__all__ = ['SPEED_OF_LIGHT', 'Scenario', 'UserGeometry', 'default_scenario',
           'db_to_linear', 'linear_to_db', 'user_geometry']

SPEED_OF_LIGHT = 299_792_458.0  # m/s


def db_to_linear(x):
    """Convert a dB quantity (dBi, dBW, ...) to linear scale."""
    out = 10.0 ** (np.asarray(x, dtype=float) / 10.0)
    return float(out) if out.ndim == 0 else out


def linear_to_db(x):
    """Inverse of :func:`db_to_linear`. `x` must be positive."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("linear value must be positive")
    out = 10.0 * np.log10(x)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class Scenario:
    """Downlink from one satellite with an N-element ULA to K single-antenna users.

    Lengths are in meters, frequencies in hertz and gains/powers in dB as
    noted in the field names. `user_distances` is the ground distance of
    every user from the sub-satellite point; user 1 is always at nadir.
    """
    user_count: int = 2
    altitude: float = 600e3
    carrier_frequency: float = 2e9
    antenna_count: int = 6
    antenna_spacing: float = 0.075
    sat_gain_db: float = 16.0
    user_gain_db: float = 0.0
    noise_power_dbw: float = -122.0
    transmit_power_dbw: float = 20.0
    user_distances: tuple = field(default=(0.0, 0.0))

    def __post_init__(self):
        object.__setattr__(self, 'user_distances',
                           tuple(float(d) for d in self.user_distances))
        if self.user_count < 1:
            raise ValueError("user_count must be >= 1")
        if self.antenna_count < 1:
            raise ValueError("antenna_count must be >= 1")
        for name in ('altitude', 'carrier_frequency', 'antenna_spacing'):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError("{0} must be > 0, got {1}".format(name, value))
        for name in ('sat_gain_db', 'user_gain_db', 'noise_power_dbw',
                     'transmit_power_dbw'):
            if not math.isfinite(getattr(self, name)):
                raise ValueError("{0} must be finite".format(name))
        if len(self.user_distances) != self.user_count:
            raise ValueError("expected {0} user distances, got {1}".format(
                self.user_count, len(self.user_distances)))
        if self.user_distances[0] != 0.0:
            raise ValueError("user 1 must be at nadir (distance 0)")
        if any(not math.isfinite(d) or d < 0 for d in self.user_distances):
            raise ValueError("user distances must be finite and >= 0")

    @property
    def wavelength(self):
        return SPEED_OF_LIGHT / self.carrier_frequency

    @property
    def spacing_wavelengths(self):
        """Antenna spacing in wavelengths, dN / lambda."""
        return self.antenna_spacing / self.wavelength

    @property
    def transmit_power(self):
        """Total transmit power P in watts."""
        return db_to_linear(self.transmit_power_dbw)

    @property
    def noise_power(self):
        """Noise power in watts."""
        return db_to_linear(self.noise_power_dbw)

    @property
    def gain_product(self):
        """Linear G_user * G_sat."""
        return db_to_linear(self.sat_gain_db + self.user_gain_db)

    def with_user_distance(self, distance):
        """Two-user shortcut: nadir user plus a second user at `distance` meters."""
        if self.user_count != 2:
            raise ValueError("with_user_distance needs a two-user scenario")
        return replace(self, user_distances=(0.0, float(distance)))

    def geometries(self):
        return [user_geometry(self, k) for k in range(1, self.user_count + 1)]


@dataclass(frozen=True)
class UserGeometry:
    slant_distance: float
    aod_cosine: float
    propagation_phase: float


def default_scenario():
    """Two-user scenario with the reference system parameters (both users at nadir)."""
    return Scenario()


def user_geometry(s, k):
    """Slant range, AoD cosine and propagation phase of user `k` (1-based).

    The array axis lies on the ground line through both users, so the
    nadir user sits at broadside (cosine 0).
    """
    if not 1 <= k <= s.user_count:
        raise ValueError("user index {0} outside 1..{1}".format(k, s.user_count))
    ground = s.user_distances[k - 1]
    d = math.hypot(s.altitude, ground)
    phase = math.fmod(2.0 * math.pi * d / s.wavelength, 2.0 * math.pi)
    return UserGeometry(slant_distance=d, aod_cosine=ground / d,
                        propagation_phase=phase)
