"""
Sum rates under AoD estimation error
====================================

The estimated AoD cosine of every user is off by a uniform error in
[-0.2, 0.2]. Precoders are built from the estimate and rates are measured
on the true channel, averaged over Monte Carlo draws. The same error
draws are reused for every scheme and every alpha, so differences
between curves carry little noise.

A coarse grid and 500 iterations keep this demo under a minute.
"""
import numpy as np

from leorsma import SweepConfig, default_scenario, run_sweep
from leorsma.experiment import RSMA_OPT, crossover_distance

s = default_scenario()
grid = np.geomspace(5e3, 200e3, 12)
cfg = SweepConfig(distance_grid=grid, iterations=500, delta_eps=0.2, seed=7,
                  alpha_grid=np.linspace(0, 1, 21))
res = run_sweep(cfg, s)

#%%
d, sdma = res.curve('SDMA')
_, oma = res.curve('OMA')
_, opt = res.curve(RSMA_OPT)
err = res.column(RSMA_OPT, 'std_error')
alpha = res.column(RSMA_OPT, 'alpha')
for row in zip(d / 1e3, sdma, oma, opt, err, alpha):
    print("D = {0:7.2f} km  SDMA {1:6.3f}  OMA {2:6.3f}  "
          "RSMA-opt {3:6.3f} +- {4:.3f}  alpha {5:.2f}".format(*row))

x = crossover_distance(d, sdma, oma)
print("SDMA/OMA crossover: {0}".format(
    "none" if x is None else "{0:.1f} km".format(x / 1e3)))
