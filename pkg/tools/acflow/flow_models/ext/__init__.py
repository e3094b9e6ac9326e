from acflow.flow_models.ext.pi_model import PiFlowModel
from acflow.flow_models.ext.printed_model import PrintedFlowModel
