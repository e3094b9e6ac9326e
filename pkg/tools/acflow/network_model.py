# ====== Code Summary ======
# Network-level AC equations for a fixed topology. Branch injections are assembled with sparse
# incidence matrices Co (origin) and Cd (destination) over the switched-on branches:
#   P_flow = Co·p_od + Cd·p_do,  Q_flow = Co·q_od + Cd·q_do,
# and nodal residuals are ΔP = Σ_{g∈G_i} p_g - P_flow, ΔQ = Σ_{g∈G_i} q_g - Q_flow.
# Jacobians of the injections follow the chain rule through Eo = Coᵀ and Ed = Cdᵀ.

# ====== Third-Party Library Imports ======
import numpy as np
from scipy import sparse

# ====== Internal Project Imports ======
from acflow.exceptions import AcModelError
from acflow.flow_models import BranchFlowModel, BranchFlows, FlowModelFactory
from acflow.models import AcState
from gridnet import Network


def _check_topology(net: Network, topology) -> np.ndarray:
    topology = np.rint(np.asarray(topology, dtype=float)).astype(int)
    if topology.shape != (net.n_branches,):
        raise AcModelError(f"topology has {topology.size} entries, network has {net.n_branches} branches")
    return topology


class AcNetworkModel:
    """
    AC injections, residuals and Jacobians of a network under a fixed topology.
    """

    def __init__(self, net: Network, topology, flow_model: str | BranchFlowModel = "pi"):
        self.net = net
        self.topology = _check_topology(net, topology)
        self.flow_model = FlowModelFactory.get_model(flow_model)
        self.on = np.flatnonzero(self.topology)
        m, n = self.on.size, net.n_buses

        self.origin = net.origin_index[self.on] if m else np.zeros(0, dtype=int)
        self.dest = net.dest_index[self.on] if m else np.zeros(0, dtype=int)
        self.g = net.branch_vector("g")[self.on] if m else np.zeros(0)
        self.b = net.branch_vector("b")[self.on] if m else np.zeros(0)
        self.p_max = net.branch_vector("p_max")[self.on] if m else np.zeros(0)

        columns = np.arange(m)
        self.Co = sparse.csr_matrix((np.ones(m), (self.origin, columns)), shape=(n, m))
        self.Cd = sparse.csr_matrix((np.ones(m), (self.dest, columns)), shape=(n, m))
        self.Eo = self.Co.T.tocsr()
        self.Ed = self.Cd.T.tocsr()
        self.Ediff = (self.Eo - self.Ed).tocsr()
        self.G = sparse.csr_matrix(
            (np.ones(net.n_devices), (net.device_bus_index, np.arange(net.n_devices))),
            shape=(n, net.n_devices),
        )

    # ------------------------------------------------------------------ flows
    def branch_flows(self, v: np.ndarray, theta: np.ndarray) -> BranchFlows:
        return self.flow_model.flows(
            v[self.origin], v[self.dest], theta[self.origin] - theta[self.dest], self.g, self.b
        )

    def injections(self, flows: BranchFlows) -> tuple[np.ndarray, np.ndarray]:
        """Power leaving every bus through the switched-on branches."""
        p = self.Co @ flows.p_od + self.Cd @ flows.p_do
        q = self.Co @ flows.q_od + self.Cd @ flows.q_do
        return p, q

    def residuals(self, v, theta, p_g, q_g, flows: BranchFlows | None = None) -> tuple[np.ndarray, np.ndarray]:
        if flows is None:
            flows = self.branch_flows(v, theta)
        p_out, q_out = self.injections(flows)
        return self.G @ p_g - p_out, self.G @ q_g - q_out

    def flow_jacobian(self, row: int, flows: BranchFlows) -> tuple[sparse.csr_matrix, sparse.csr_matrix]:
        """Derivatives (d/dv, d/dθ) of one terminal quantity (0..3) of every on-branch, shape (m, n)."""
        if self.on.size == 0:
            empty = sparse.csr_matrix((0, self.net.n_buses))
            return empty, empty
        d_v = sparse.diags(flows.d_vo[row]) @ self.Eo + sparse.diags(flows.d_vd[row]) @ self.Ed
        d_theta = sparse.diags(flows.d_delta[row]) @ self.Ediff
        return d_v.tocsr(), d_theta.tocsr()

    def injection_jacobian(self, flows: BranchFlows) -> tuple[sparse.csr_matrix, ...]:
        """(dP/dv, dP/dθ, dQ/dv, dQ/dθ) of the bus injections, each of shape (n, n)."""
        blocks = []
        for origin_row, dest_row in ((0, 2), (1, 3)):
            dv_o, dt_o = self.flow_jacobian(origin_row, flows)
            dv_d, dt_d = self.flow_jacobian(dest_row, flows)
            blocks.append((self.Co @ dv_o + self.Cd @ dv_d).tocsr())
            blocks.append((self.Co @ dt_o + self.Cd @ dt_d).tocsr())
        return tuple(blocks)

    # ------------------------------------------------------------------ state
    def state(self, v, theta, p_g, q_g) -> AcState:
        flows = self.branch_flows(v, theta)
        full = np.zeros((4, self.net.n_branches))
        full[:, self.on] = flows.values
        return AcState(
            v=np.asarray(v, dtype=float).copy(),
            theta=np.asarray(theta, dtype=float).copy(),
            p_g=np.asarray(p_g, dtype=float).copy(),
            q_g=np.asarray(q_g, dtype=float).copy(),
            p_e=full[0],
            q_e=full[1],
            p_e_to=full[2],
            q_e_to=full[3],
        )

    def overloads(self, v, theta) -> np.ndarray:
        """max(|p_od| - p_max, |p_do| - p_max, 0) per network branch (zero for open branches)."""
        flows = self.branch_flows(v, theta)
        excess = np.maximum(np.abs(flows.p_od), np.abs(flows.p_do)) - self.p_max
        full = np.zeros(self.net.n_branches)
        full[self.on] = np.maximum(excess, 0.0)
        return full


def ac_residuals(net: Network, state: AcState, topology, flow_model: str | BranchFlowModel = "pi"):
    """
    Nodal real and reactive power mismatch of a state under a topology.

    Args:
        net (Network): Network.
        state (AcState): Operating point.
        topology (array-like): On/off state per branch; open branches carry nothing.
        flow_model (str | BranchFlowModel): Branch model.

    Returns:
        tuple[np.ndarray, np.ndarray]: (ΔP, ΔQ) per bus.
    """
    for name, values, size in (
            ("v", state.v, net.n_buses),
            ("theta", state.theta, net.n_buses),
            ("p_g", state.p_g, net.n_devices),
            ("q_g", state.q_g, net.n_devices),
    ):
        if np.shape(values) != (size,):
            raise AcModelError(f"state.{name} has shape {np.shape(values)}, expected ({size},)")
    model = AcNetworkModel(net, topology, flow_model)
    return model.residuals(state.v, state.theta, state.p_g, state.q_g)
