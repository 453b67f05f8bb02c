"""Link-level comparison of RSMA, SDMA and OMA for a multibeam LEO satellite downlink."""

from .scenario import Scenario, default_scenario, db_to_linear, linear_to_db
from .channel import ErrorModel, channel_matrix, correlation
from .precoding import Scheme, build_precoders
from .rates import achievable_rate
from .experiment import SweepConfig, run_sweep, evaluate_point, alpha_search

__version__ = '0.1.0'
