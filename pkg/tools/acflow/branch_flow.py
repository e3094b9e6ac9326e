# ====== Third-Party Library Imports ======
import numpy as np


def branch_flow_ac(v_o, v_d, theta_o, theta_d, g, b):
    """
    Real and reactive flow down a branch:
        p = v_o v_d (b sin Δθ + g cos Δθ),  q = v_o v_d (g sin Δθ - b cos Δθ),  Δθ = θ_o - θ_d.

    Args:
        v_o, v_d (float | np.ndarray): Terminal voltage magnitudes (pu), positive.
        theta_o, theta_d (float | np.ndarray): Terminal angles (rad).
        g, b (float | np.ndarray): Series conductance and susceptance (pu).

    Returns:
        tuple: (p, q), scalars or arrays following numpy broadcasting.
    """
    delta = np.subtract(theta_o, theta_d)
    vv = np.multiply(v_o, v_d)
    p = vv * (b * np.sin(delta) + g * np.cos(delta))
    q = vv * (g * np.sin(delta) - b * np.cos(delta))
    if np.ndim(p) == 0:
        return float(p), float(q)
    return p, q
