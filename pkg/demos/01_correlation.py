"""
Channel correlation between two users
=====================================

Two users share one satellite beam. User 1 sits directly below the
satellite, user 2 moves away along the ground. Their channel vectors are
almost parallel when close together and decorrelate as the angle of
departure separates them. The correlation factor follows a Dirichlet
kernel in the difference of the AoD cosines.
"""
import numpy as np

from leorsma import channel_matrix, correlation, default_scenario
from leorsma.experiment import default_distance_grid

s = default_scenario()
print("wavelength        {0:.4f} m".format(s.wavelength))
print("spacing / lambda  {0:.6f}".format(s.spacing_wavelengths))

#%%
# Evaluate rho on the default 80-point log grid from 0.5 km to 200 km.
grid = np.array(default_distance_grid())
rho = np.array([correlation(*channel_matrix(s.with_user_distance(d)))
                for d in grid])
for d, r in list(zip(grid, rho))[::10]:
    print("D = {0:8.2f} km   rho = {1:.6f}".format(d / 1e3, r))

#%%
# Same curve from the closed form |sin(N x) / (N sin x)|.
x = np.pi * s.spacing_wavelengths * grid / np.sqrt(s.altitude ** 2 + grid ** 2)
closed = np.abs(np.sin(s.antenna_count * x) / (s.antenna_count * np.sin(x)))
print("max |numeric - closed form| = {0:.2e}".format(np.abs(rho - closed).max()))

try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None
if plt is not None:
    plt.semilogx(grid / 1e3, rho)
    plt.xlabel("distance between users [km]")
    plt.ylabel("correlation factor")
    plt.show()
