# ====== Code Summary ======
# Newton-Raphson power flow for a fixed dispatch. Every non-slack bus is a PQ bus; unknowns are
# their angles and voltage magnitudes, from a flat start. The slack bus keeps v = 1, θ = 0 and
# its first device absorbs the real and reactive imbalance once the mismatches have converged.
# A singular Jacobian or exhausted iterations are reported as divergence, not raised.

# ====== Standard Library Imports ======
import warnings

# ====== Third-Party Library Imports ======
import numpy as np
from scipy import sparse
from scipy.sparse.linalg import MatrixRankWarning, spsolve
from loggerplusplus import Logger

# ====== Internal Project Imports ======
from acflow.exceptions import AcModelError
from acflow.flow_models import BranchFlowModel
from acflow.models import PowerFlowResult
from acflow.network_model import AcNetworkModel
from gridnet import Network, connectivity_check

_logger = Logger(identifier="newton_power_flow", follow_logger_manager_rules=True)


def newton_power_flow(
        net: Network,
        topology,
        p_g,
        q_g,
        slack_bus: int | None = None,
        flow_model: str | BranchFlowModel = "pi",
        tol: float = 1e-8,
        max_iter: int = 50,
) -> PowerFlowResult:
    """
    Solves the AC power flow equations.

    Args:
        net (Network): Network.
        topology (array-like): On/off state per branch; the on-branches must connect every bus.
        p_g (array-like): Real output per device (pu); the slack device value is a guess.
        q_g (array-like): Reactive output per device (pu).
        slack_bus (int, optional): Slack bus id, the reference bus by default.
        flow_model (str | BranchFlowModel): Branch model.
        tol (float): Largest accepted mismatch.
        max_iter (int): Maximum number of mismatch evaluations.

    Returns:
        PowerFlowResult: Converged state, or a divergence status with the last mismatch.
    """
    model = AcNetworkModel(net, topology, flow_model)
    p_g = np.asarray(p_g, dtype=float).copy()
    q_g = np.asarray(q_g, dtype=float).copy()
    if p_g.shape != (net.n_devices,) or q_g.shape != (net.n_devices,):
        raise AcModelError(f"dispatch vectors must have {net.n_devices} entries")

    slack_id = net.buses[net.reference_bus].id if slack_bus is None else slack_bus
    if slack_id not in net.bus_index:
        raise AcModelError(f"unknown slack bus {slack_id}")
    slack_devices = net.devices_at[slack_id]
    if not slack_devices:
        raise AcModelError(f"slack bus {slack_id} has no device to absorb the imbalance")
    islands, _ = connectivity_check(net, model.topology)
    if islands != 1:
        raise AcModelError(f"power flow needs a connected topology, found {islands} islands")

    slack = net.bus_index[slack_id]
    pq = np.array([pos for pos in range(net.n_buses) if pos != slack], dtype=int)
    n_pq = pq.size
    v = np.ones(net.n_buses)
    theta = np.zeros(net.n_buses)

    mismatch = np.inf
    for iteration in range(1, max_iter + 1):
        flows = model.branch_flows(v, theta)
        d_p, d_q = model.residuals(v, theta, p_g, q_g, flows)
        f = np.concatenate([d_p[pq], d_q[pq]])
        mismatch = float(np.max(np.abs(f), initial=0.0))
        if not np.isfinite(mismatch):
            return PowerFlowResult(False, None, iteration, mismatch, "mismatch is not finite")
        if mismatch <= tol:
            p_g[slack_devices[0]] -= d_p[slack]
            q_g[slack_devices[0]] -= d_q[slack]
            _logger.debug(f"Power flow converged in {iteration} iterations")
            return PowerFlowResult(True, model.state(v, theta, p_g, q_g), iteration, mismatch, "converged")
        if n_pq == 0:
            break

        dp_dv, dp_dt, dq_dv, dq_dt = model.injection_jacobian(flows)
        # Residuals are injection minus flow, hence the sign.
        jacobian = -sparse.bmat(
            [
                [dp_dt[pq][:, pq], dp_dv[pq][:, pq]],
                [dq_dt[pq][:, pq], dq_dv[pq][:, pq]],
            ],
            format="csc",
        )
        with warnings.catch_warnings():
            warnings.simplefilter("error", MatrixRankWarning)
            try:
                step = np.atleast_1d(spsolve(jacobian, -f))
            except (MatrixRankWarning, RuntimeError) as e:
                return PowerFlowResult(False, None, iteration, mismatch, f"singular Jacobian: {e}")
        if not np.all(np.isfinite(step)):
            return PowerFlowResult(False, None, iteration, mismatch, "singular Jacobian")
        theta[pq] += step[:n_pq]
        v[pq] += step[n_pq:]
        if np.any(v[pq] <= 0):
            return PowerFlowResult(False, None, iteration, mismatch, "voltage collapsed")

    _logger.debug(f"Power flow diverged, last mismatch {mismatch:.3e}")
    return PowerFlowResult(False, None, max_iter, mismatch, "iteration limit reached")
