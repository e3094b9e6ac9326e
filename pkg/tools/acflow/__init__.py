from acflow.exceptions import AcModelError
from acflow.models import AcConfig, AcState, Classification, PowerFlowResult, RecoveryResult
from acflow.flow_models import BranchFlowModel, BranchFlows, FlowModelFactory, PiFlowModel, PrintedFlowModel
from acflow.branch_flow import branch_flow_ac
from acflow.network_model import AcNetworkModel, ac_residuals
from acflow.power_flow import newton_power_flow
from acflow.classification import bus_roles, classify_solution, preliminary_classification
from acflow.recovery import AcRecoverySolver, solve_ac_recovery
from acflow.redispatch import RedispatchStats, redispatch_stats
