# ====== Code Summary ======
# Single-expression branch model: p = v_o v_d (b sin Δ + g cos Δ), q = v_o v_d (g sin Δ - b cos Δ)
# at the origin, and the opposite values at the destination (lossless, antisymmetric).

# ====== Third-Party Library Imports ======
import numpy as np

# ====== Internal Project Imports ======
from acflow.flow_models.abstract_flow_model import BranchFlowModel, BranchFlows


class PrintedFlowModel(BranchFlowModel):
    two_sided = False

    def flows(self, v_o, v_d, delta, g, b) -> BranchFlows:
        c, s = np.cos(delta), np.sin(delta)
        vv = v_o * v_d
        p_term = b * s + g * c
        q_term = g * s - b * c
        p, q = vv * p_term, vv * q_term
        dp_delta, dq_delta = vv * (b * c - g * s), vv * (g * c + b * s)

        values = np.vstack([p, q, -p, -q])
        d_vo = np.vstack([v_d * p_term, v_d * q_term, -v_d * p_term, -v_d * q_term])
        d_vd = np.vstack([v_o * p_term, v_o * q_term, -v_o * p_term, -v_o * q_term])
        d_delta = np.vstack([dp_delta, dq_delta, -dp_delta, -dq_delta])
        return BranchFlows(values, d_vo, d_vd, d_delta)
