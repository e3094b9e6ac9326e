# ====== Internal Project Imports ======
from acflow.exceptions import AcModelError
from acflow.flow_models.abstract_flow_model import BranchFlowModel
from acflow.flow_models.ext import PiFlowModel, PrintedFlowModel


class FlowModelFactory:
    """
    Factory to obtain a branch flow model from its configuration name.
    """

    @staticmethod
    def get_model(name: str | BranchFlowModel) -> BranchFlowModel:
        if isinstance(name, BranchFlowModel):
            return name
        if name == "pi":
            return PiFlowModel()
        elif name == "printed":
            return PrintedFlowModel()
        raise AcModelError(f"Unknown branch flow model: {name!r} (expected 'pi' or 'printed')")
