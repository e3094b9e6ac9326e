from mga.exceptions import MgaError
from mga.models import Alternative, MgaConfig, MgaCriterion, MgaRun, MgaState
from mga.sampling import lhs_weights, stratum_of
from mga.objectives import next_objective, update_term, zero_bias_value
from mga.generator import AlternativeGenerator, run_mga
