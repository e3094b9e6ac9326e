# ====== Code Summary ======
# Series π model without line charging. With y = g - jb (b > 0 for inductive branches):
#   p_od = g v_o² - v_o v_d (g cos Δ - b sin Δ)     q_od = b v_o² - v_o v_d (g sin Δ + b cos Δ)
#   p_do = g v_d² - v_o v_d (g cos Δ + b sin Δ)     q_do = b v_d² + v_o v_d (g sin Δ - b cos Δ)
# Flows vanish at the flat state and p_od + p_do equals the series losses.

# ====== Third-Party Library Imports ======
import numpy as np

# ====== Internal Project Imports ======
from acflow.flow_models.abstract_flow_model import BranchFlowModel, BranchFlows


class PiFlowModel(BranchFlowModel):
    two_sided = True

    def flows(self, v_o, v_d, delta, g, b) -> BranchFlows:
        c, s = np.cos(delta), np.sin(delta)
        vv = v_o * v_d
        a_od = g * c - b * s
        r_od = g * s + b * c
        a_do = g * c + b * s
        r_do = g * s - b * c

        values = np.vstack([
            g * v_o ** 2 - vv * a_od,
            b * v_o ** 2 - vv * r_od,
            g * v_d ** 2 - vv * a_do,
            b * v_d ** 2 + vv * r_do,
        ])
        d_vo = np.vstack([
            2 * g * v_o - v_d * a_od,
            2 * b * v_o - v_d * r_od,
            -v_d * a_do,
            v_d * r_do,
        ])
        d_vd = np.vstack([
            -v_o * a_od,
            -v_o * r_od,
            2 * g * v_d - v_o * a_do,
            2 * b * v_d + v_o * r_do,
        ])
        d_delta = np.vstack([
            vv * r_od,
            -vv * a_od,
            vv * r_do,
            vv * a_do,
        ])
        return BranchFlows(values, d_vo, d_vd, d_delta)
