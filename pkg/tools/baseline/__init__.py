from baseline.exceptions import BaselineError
from baseline.models import GreedyConfig, GreedyStep, GreedyTrajectory
from baseline.greedy import GreedySwitchSearch, greedy_switch_search, start_topology
