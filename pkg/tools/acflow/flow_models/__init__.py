from acflow.flow_models.abstract_flow_model import BranchFlowModel, BranchFlows
from acflow.flow_models.ext import PiFlowModel, PrintedFlowModel
from acflow.flow_models.flow_model_factory import FlowModelFactory
