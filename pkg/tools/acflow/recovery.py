# ====== Code Summary ======
# AC recovery: with the integer decisions fixed, finds the cheapest AC operating point with soft
# thermal limits,
#     min  (Σ c_g p_g + M_pen Σ δ_e) / scale
#     s.t. ΔP_i = 0, ΔQ_i = 0                          (nodal balance)
#          p_max_e + δ_e ∓ p_e ≥ 0 at each branch end   (soft thermal limits)
#          v_min ≤ v ≤ v_max, device bounds, δ ≥ 0, one reference angle per island.
# Variables pinned by their bounds (reference angles, fixed loads, decommitted devices) are removed
# before solving. Each start (flat, then DC warm start) goes through:
#   1. a bounded least-squares solve of the nodal balance (feasibility restoration),
#   2. SLSQP stages with the penalty weight raised geometrically from 1 to penalty_factor,
#   3. trust-constr from the best point when the last SLSQP stage ends off the feasible set.
# A point is converged when its measured hard-constraint violation is within feas_tol, whatever
# the solver flags say. Among converged points the lowest penalized cost wins; without one, the
# least-violating point is kept for re-dispatch reporting and the result is Infeasible.

# ====== Standard Library Imports ======
import time
import warnings
from dataclasses import dataclass

# ====== Third-Party Library Imports ======
import numpy as np
from scipy.optimize import Bounds, NonlinearConstraint, least_squares, minimize
from loggerplusplus import Logger

# ====== Internal Project Imports ======
from acflow.classification import preliminary_classification
from acflow.exceptions import AcModelError
from acflow.models import AcConfig, RecoveryResult
from acflow.network_model import AcNetworkModel
from formulations import OpfSolution
from gridnet import Network, island_labels


@dataclass(frozen=True)
class _Layout:
    n_bus: int
    n_dev: int
    n_br: int

    @property
    def v(self) -> slice:
        return slice(0, self.n_bus)

    @property
    def theta(self) -> slice:
        return slice(self.n_bus, 2 * self.n_bus)

    @property
    def p(self) -> slice:
        return slice(2 * self.n_bus, 2 * self.n_bus + self.n_dev)

    @property
    def q(self) -> slice:
        return slice(2 * self.n_bus + self.n_dev, 2 * self.n_bus + 2 * self.n_dev)

    @property
    def delta(self) -> slice:
        start = 2 * self.n_bus + 2 * self.n_dev
        return slice(start, start + self.n_br)

    @property
    def size(self) -> int:
        return 2 * self.n_bus + 2 * self.n_dev + self.n_br


class _Reduction:
    """Maps the full variable vector onto its free entries (lower < upper)."""

    def __init__(self, lower: np.ndarray, upper: np.ndarray):
        self.free = lower < upper
        self.base = np.where(self.free, 0.0, lower)
        self.lower = lower[self.free]
        self.upper = upper[self.free]

    @property
    def size(self) -> int:
        return int(self.free.sum())

    def expand(self, y: np.ndarray) -> np.ndarray:
        z = self.base.copy()
        z[self.free] = y
        return z

    def reduce(self, z: np.ndarray) -> np.ndarray:
        return np.clip(z[self.free], self.lower, self.upper)


@dataclass
class _Candidate:
    z: np.ndarray
    violation: float
    score: float
    start: str
    message: str


class AcRecoverySolver:
    """
    Soft-thermal-limit AC OPF with fixed topology and commitment.
    """

    def __init__(self, net: Network, config: AcConfig | None = None, logger: Logger | None = None):
        if logger is None:
            logger = Logger(identifier=self.__class__.__name__, follow_logger_manager_rules=True)
        self.logger = logger
        self.net = net
        self.config = config or AcConfig()
        self.cost = net.device_vector("cost")
        scale = float(np.max(np.abs(self.cost), initial=0.0))
        self.scale = scale if scale > 0 else 1.0
        self.penalty = self.config.penalty_factor * self.scale

    # ------------------------------------------------------------------ problem pieces
    def _bounds(self, model: AcNetworkModel, layout: _Layout, commitment: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        net = self.net
        lower, upper = np.empty(layout.size), np.empty(layout.size)
        lower[layout.v], upper[layout.v] = net.bus_vector("v_min"), net.bus_vector("v_max")

        references = np.zeros(net.n_buses, dtype=bool)
        references[np.unique(island_labels(net, model.topology))] = True
        lower[layout.theta] = np.where(references, 0.0, -np.inf)
        upper[layout.theta] = np.where(references, 0.0, np.inf)

        on = commitment.astype(bool)
        lower[layout.p] = np.where(on, net.device_vector("p_min"), 0.0)
        upper[layout.p] = np.where(on, net.device_vector("p_max"), 0.0)
        lower[layout.q] = np.where(on, net.device_vector("q_min"), 0.0)
        upper[layout.q] = np.where(on, net.device_vector("q_max"), 0.0)
        lower[layout.delta], upper[layout.delta] = 0.0, np.inf
        return lower, upper

    def _objective(self, layout: _Layout, reduction: _Reduction, weight: float):
        gradient = np.zeros(layout.size)
        gradient[layout.p] = self.cost / self.scale
        gradient[layout.delta] = weight
        offset = float(gradient[~reduction.free] @ reduction.base[~reduction.free])
        gradient = gradient[reduction.free]

        def fun(y):
            return float(gradient @ y) + offset, gradient

        return fun

    def _equalities(self, model: AcNetworkModel, layout: _Layout, reduction: _Reduction):
        n = layout.n_bus
        G = model.G.toarray()

        def fun(y):
            z = reduction.expand(y)
            d_p, d_q = model.residuals(z[layout.v], z[layout.theta], z[layout.p], z[layout.q])
            return np.concatenate([d_p, d_q])

        def jac(y):
            z = reduction.expand(y)
            flows = model.branch_flows(z[layout.v], z[layout.theta])
            dp_dv, dp_dt, dq_dv, dq_dt = model.injection_jacobian(flows)
            J = np.zeros((2 * n, layout.size))
            J[:n, layout.v] = -dp_dv.toarray()
            J[:n, layout.theta] = -dp_dt.toarray()
            J[:n, layout.p] = G
            J[n:, layout.v] = -dq_dv.toarray()
            J[n:, layout.theta] = -dq_dt.toarray()
            J[n:, layout.q] = G
            return J[:, reduction.free]

        return fun, jac

    def _inequalities(self, model: AcNetworkModel, layout: _Layout, reduction: _Reduction):
        rows = (0, 2) if model.flow_model.two_sided else (0,)
        m = layout.n_br

        def fun(y):
            z = reduction.expand(y)
            flows = model.branch_flows(z[layout.v], z[layout.theta])
            delta = z[layout.delta]
            parts = []
            for row in rows:
                p = flows.values[row]
                parts += [model.p_max + delta - p, model.p_max + delta + p]
            return np.concatenate(parts)

        def jac(y):
            z = reduction.expand(y)
            flows = model.branch_flows(z[layout.v], z[layout.theta])
            blocks = []
            identity = np.eye(m)
            for row in rows:
                d_v, d_t = model.flow_jacobian(row, flows)
                d_v, d_t = d_v.toarray(), d_t.toarray()
                for sign in (-1.0, 1.0):
                    J = np.zeros((m, layout.size))
                    J[:, layout.v] = sign * d_v
                    J[:, layout.theta] = sign * d_t
                    J[:, layout.delta] = identity
                    blocks.append(J[:, reduction.free])
            return np.vstack(blocks)

        return fun, jac

    # ------------------------------------------------------------------ measures
    def _violation(self, model: AcNetworkModel, layout: _Layout, z: np.ndarray) -> float:
        d_p, d_q = model.residuals(z[layout.v], z[layout.theta], z[layout.p], z[layout.q])
        v = z[layout.v]
        v_excess = np.maximum(self.net.bus_vector("v_min") - v, v - self.net.bus_vector("v_max"))
        return float(max(np.max(np.abs(d_p), initial=0.0), np.max(np.abs(d_q), initial=0.0),
                         np.max(v_excess, initial=0.0)))

    def _candidate(self, model: AcNetworkModel, layout: _Layout, z: np.ndarray, start: str, message: str):
        if not np.all(np.isfinite(z)):
            self.logger.debug(f"Start {start}: non-finite iterate ({message})")
            return None
        z = z.copy()
        z[layout.delta] = model.overloads(z[layout.v], z[layout.theta])[model.on]
        score = float(self.cost @ z[layout.p] + self.penalty * z[layout.delta].sum())
        return _Candidate(z, self._violation(model, layout, z), score, start, message)

    def _weights(self) -> list[float]:
        stages, factor = self.config.penalty_stages, self.config.penalty_factor
        if stages <= 1 or factor <= 1.0:
            return [factor]
        return [float(factor ** (k / (stages - 1))) for k in range(stages)]

    def _starts(self, layout: _Layout, dc: OpfSolution, reduction: _Reduction) -> list[tuple[str, np.ndarray]]:
        starts = []
        for name, theta in (("flat", np.zeros(layout.n_bus)), ("dc", np.asarray(dc.theta, dtype=float))):
            z = np.zeros(layout.size)
            z[layout.v] = 1.0
            z[layout.theta] = theta
            z[layout.p] = dc.p_g
            starts.append((name, reduction.expand(reduction.reduce(z))))
        return starts

    # ------------------------------------------------------------------ solver stages
    def _restore(self, reduction: _Reduction, equalities, y0: np.ndarray):
        fun, jac = equalities
        res = least_squares(
            fun, y0, jac=jac, bounds=(reduction.lower, reduction.upper), method="trf",
            ftol=1e-12, xtol=1e-12, gtol=1e-12, max_nfev=self.config.max_iter,
        )
        return np.asarray(res.x, dtype=float), str(res.message)

    def _slsqp(self, reduction: _Reduction, objective, constraints: list, y0: np.ndarray):
        res = minimize(
            objective, y0, jac=True, method="SLSQP",
            bounds=Bounds(reduction.lower, reduction.upper),
            constraints=[{"type": kind, "fun": fun, "jac": jac} for kind, fun, jac in constraints],
            options={"maxiter": self.config.max_iter, "ftol": self.config.ftol},
        )
        return np.asarray(res.x, dtype=float), str(res.message)

    def _trust_constr(self, reduction: _Reduction, objective, constraints: list, y0: np.ndarray):
        size = reduction.size
        res = minimize(
            objective, y0, jac=True, hess=lambda y: np.zeros((size, size)), method="trust-constr",
            bounds=Bounds(reduction.lower, reduction.upper),
            constraints=[
                NonlinearConstraint(fun, 0.0, 0.0 if kind == "eq" else np.inf, jac=jac)
                for kind, fun, jac in constraints
            ],
            options={"maxiter": 4 * self.config.max_iter, "gtol": 1e-9, "xtol": 1e-12},
        )
        return np.asarray(res.x, dtype=float), str(res.message)

    # ------------------------------------------------------------------ solve
    def solve(self, topology, dc_solution: OpfSolution, commitment=None) -> RecoveryResult:
        """
        Recovers an AC operating point for a fixed integer decision.

        Args:
            topology (array-like): On/off state per branch.
            dc_solution (OpfSolution): DC solution used for the warm start and the re-dispatch.
            commitment (array-like, optional): On/off state per device, all on by default.

        Returns:
            RecoveryResult: Converged Safe/Overloaded point, or the least-violating point as Infeasible.
        """
        net, config = self.net, self.config
        started = time.perf_counter()
        model = AcNetworkModel(net, topology, config.flow_model)
        commitment = (
            np.ones(net.n_devices, dtype=int) if commitment is None else np.rint(np.asarray(commitment)).astype(int)
        )
        if commitment.shape != (net.n_devices,):
            raise AcModelError(f"commitment has {commitment.size} entries for {net.n_devices} devices")
        if np.shape(dc_solution.p_g) != (net.n_devices,) or np.shape(dc_solution.theta) != (net.n_buses,):
            raise AcModelError("DC solution dimensions do not match the network")

        layout = _Layout(net.n_buses, net.n_devices, model.on.size)
        reduction = _Reduction(*self._bounds(model, layout, commitment))
        starts = self._starts(layout, dc_solution, reduction)

        candidates = []
        if reduction.size == 0:
            candidates.append(self._candidate(model, layout, starts[0][1], "flat", "no free variable"))
        else:
            equalities = self._equalities(model, layout, reduction)
            constraints = [("eq", *equalities)]
            if layout.n_br:
                constraints.append(("ineq", *self._inequalities(model, layout, reduction)))
            for name, z0 in starts:
                found = self._run_start(model, layout, reduction, equalities, constraints, name, z0)
                candidates += found
                if any(c.violation <= config.feas_tol for c in found):
                    break

        candidates = [c for c in candidates if c is not None]
        feasible = [c for c in candidates if c.violation <= config.feas_tol]
        if feasible:
            best, converged = min(feasible, key=lambda c: c.score), True
        elif candidates:
            best, converged = min(candidates, key=lambda c: c.violation), False
        else:
            z = starts[0][1]
            best = _Candidate(z, self._violation(model, layout, z), float("inf"), "flat", "no finite iterate")
            converged = False

        z = best.z
        state = model.state(z[layout.v], z[layout.theta], z[layout.p], z[layout.q])
        slacks = model.overloads(z[layout.v], z[layout.theta])
        result = RecoveryResult(
            state=state,
            slacks=slacks,
            converged=converged,
            classification=preliminary_classification(converged, float(np.max(slacks, initial=0.0)), config.tol_overload),
            objective=float(self.cost @ state.p_g),
            redispatch=state.p_g - np.asarray(dc_solution.p_g, dtype=float),
            penalty=float(self.penalty * slacks.sum()),
            violation=best.violation,
            start=best.start,
            message=best.message,
            solve_time=time.perf_counter() - started,
        )
        self.logger.debug(
            f"Recovery: {result.classification.value}, cost {result.objective:.6g}, max slack {result.max_slack:.3e}, "
            f"violation {result.violation:.3e}"
        )
        return result

    def _run_start(self, model, layout, reduction, equalities, constraints, name: str, z0: np.ndarray) -> list:
        feas_tol = self.config.feas_tol
        found = []

        def keep(y, message):
            candidate = self._candidate(model, layout, reduction.expand(np.clip(y, reduction.lower, reduction.upper)), name, message)
            if candidate is not None:
                found.append(candidate)
            return candidate

        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            warnings.simplefilter("ignore", UserWarning)

            y, message = self._restore(reduction, equalities, reduction.reduce(z0))
            restored = keep(y, message)
            self.logger.debug(f"Start {name}: restoration violation {restored.violation if restored else float('nan'):.3e}")
            if restored is not None:
                y = reduction.reduce(restored.z)

            last = restored
            for weight in self._weights():
                objective = self._objective(layout, reduction, weight)
                y_new, message = self._slsqp(reduction, objective, constraints, y)
                last = keep(y_new, message)
                if last is not None:
                    y = reduction.reduce(last.z)
                    self.logger.debug(f"Start {name}: weight {weight:.3g}, violation {last.violation:.3e} ({message})")

            if last is None or last.violation > feas_tol:
                anchor = min(found, key=lambda c: (c.violation > feas_tol, c.score, c.violation), default=None)
                y0 = reduction.reduce(anchor.z if anchor is not None else z0)
                objective = self._objective(layout, reduction, self._weights()[-1])
                y_new, message = self._trust_constr(reduction, objective, constraints, y0)
                fallback = keep(y_new, message)
                if fallback is not None:
                    self.logger.debug(f"Start {name}: trust-constr violation {fallback.violation:.3e} ({message})")
        return found


def solve_ac_recovery(
        net: Network,
        topology,
        dc_solution: OpfSolution,
        config: AcConfig | None = None,
        commitment=None,
) -> RecoveryResult:
    """Runs `AcRecoverySolver` for one integer decision."""
    return AcRecoverySolver(net, config).solve(topology, dc_solution, commitment)
