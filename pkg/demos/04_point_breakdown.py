"""
One operating point in detail
=============================

Breaks a single distance down into per-user powers, common rates and
private rates, then scans alpha to show how the split between the common
stream and the private streams moves the sum rate.
"""
import numpy as np

from leorsma import SweepConfig, default_scenario
from leorsma.cli import cmd_point
from leorsma.experiment import alpha_table

s = default_scenario()
sweep = SweepConfig(delta_eps=0.2, iterations=2000, seed=1)

print(cmd_point(s, sweep, 50e3, 'RSMA', alpha=0.5))

#%%
# alpha = 0 puts all but 1 W in the common stream, alpha = 1 is plain SDMA.
alphas = np.linspace(0, 1, 11)
means, errs = alpha_table(s, 50e3, alphas, sweep.delta_eps, 2000, sweep.seed)
for a, m, e in zip(alphas, means, errs):
    print("alpha {0:.1f}   {1:.4f} +- {2:.4f} bps/Hz".format(a, m, e))
