"""
Sum rates with perfect channel knowledge
========================================

With exact CSIT the MMSE precoder separates users well once their
channels decorrelate, so SDMA overtakes OMA beyond a few tens of
kilometres. RSMA with the best power split between common and private
streams never does worse than either.
"""
import time

from leorsma import SweepConfig, default_scenario, run_sweep
from leorsma.experiment import RSMA_OPT, crossover_distance

s = default_scenario()
cfg = SweepConfig(delta_eps=0.0)

start = time.perf_counter()
res = run_sweep(cfg, s)
print("sweep took {0:.2f} s".format(time.perf_counter() - start))

#%%
d, sdma = res.curve('SDMA')
_, oma = res.curve('OMA')
_, opt = res.curve(RSMA_OPT)
alpha = res.column(RSMA_OPT, 'alpha')
for i in range(0, len(d), 8):
    print("D = {0:8.2f} km  SDMA {1:6.3f}  OMA {2:6.3f}  RSMA-opt {3:6.3f}"
          "  alpha {4:.2f}".format(d[i] / 1e3, sdma[i], oma[i], opt[i], alpha[i]))

x = crossover_distance(d, sdma, oma)
print("SDMA overtakes OMA at about {0:.1f} km".format(x / 1e3))
