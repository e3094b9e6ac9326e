# ====== Code Summary ======
# Shared assembly of the DC network equations used by every formulation. One call to
# `DcModelBuilder.add_period` adds, for a single period:
#   - bus angles θ_i (reference bus fixed to 0; per-bus bounds in "bus" mode),
#   - device injections p_g with linear cost (optionally scaled by commitment binaries),
#   - branch flows p_e bounded by ±p_max,
#   - nodal balance Σ p_g - Σ_{out} p_e + Σ_{in} p_e = 0,
#   - either the flow law p_e = b(θ_o - θ_d) or its big-M switched form,
#   - angle-difference rows -θ^max ≤ θ_o - θ_d ≤ θ^max ("difference" mode).

# ====== Standard Library Imports ======
import math
from dataclasses import dataclass

# ====== Third-Party Library Imports ======
import numpy as np
from loggerplusplus import Logger

# ====== Internal Project Imports ======
from formulations.config import FormulationConfig
from formulations.exceptions import FormulationError
from gridnet import Network
from milp import MilpBuilder, MilpModel


@dataclass(frozen=True)
class PeriodVariables:
    theta: np.ndarray
    p_g: np.ndarray
    p_e: np.ndarray


class DcModelBuilder:
    """
    Builds DC models period by period on top of a MilpBuilder.
    """

    def __init__(self, net: Network, cfg: FormulationConfig | None = None, logger: Logger | None = None):
        if logger is None:
            logger = Logger(identifier=self.__class__.__name__, follow_logger_manager_rules=True)
        self.logger = logger
        self.net = net
        self.cfg = cfg or FormulationConfig()
        self.builder = MilpBuilder()
        if net.n_devices == 0:
            self.logger.error("Network has no devices")
            raise FormulationError("network has no devices: nothing to dispatch")
        if net.n_buses == 0:
            raise FormulationError("network has no buses")

    def suffix(self, period: int) -> str:
        return "" if self.cfg.horizon == 1 else f",t{period}"

    def big_m(self) -> np.ndarray:
        """Per-branch big-M constants."""
        p_max = self.net.branch_vector("p_max")
        if self.cfg.big_m != "auto":
            m = np.full(self.net.n_branches, float(self.cfg.big_m))
            if np.any(m < p_max):
                raise FormulationError(f"fixed big-M {self.cfg.big_m} is below a branch thermal limit")
            return m
        if not math.isfinite(self.cfg.theta_bound):
            raise FormulationError("automatic big-M needs a finite theta_bound")
        b = np.abs(self.net.branch_vector("b"))
        return np.maximum(p_max, b * 2 * self.cfg.theta_bound) * 1.01

    def add_period(
            self,
            period: int,
            switch_vars: np.ndarray | None = None,
            commit_vars: np.ndarray | None = None,
    ) -> PeriodVariables:
        """
        Adds the variables and constraints of one period.

        Args:
            period (int): Period index (0-based).
            switch_vars (np.ndarray, optional): Branch switch variable per branch (big-M flow law).
            commit_vars (np.ndarray, optional): Commitment variable per device (bounds scaled by x_g).

        Returns:
            PeriodVariables: Variable indices of the period.
        """
        net, cfg, builder = self.net, self.cfg, self.builder
        tag = self.suffix(period)
        theta_max = cfg.theta_bound
        reference = net.reference_bus

        theta = np.empty(net.n_buses, dtype=int)
        for pos, bus in enumerate(net.buses):
            if pos == reference:
                lower = upper = 0.0
            elif cfg.theta_mode == "bus":
                lower, upper = -theta_max, theta_max
            else:
                lower, upper = -math.inf, math.inf
            theta[pos] = builder.add_var(f"theta[{bus.id}{tag}]", lower, upper, group="theta")

        multiplier = cfg.load_multiplier(period)
        p_g = np.empty(net.n_devices, dtype=int)
        for pos, dev in enumerate(net.devices):
            scale = multiplier if dev.is_fixed_load else 1.0
            lower, upper = dev.p_min * scale, dev.p_max * scale
            if commit_vars is not None:
                index = builder.add_var(
                    f"p_g[{dev.id}{tag}]", min(lower, 0.0), max(upper, 0.0), dev.cost, group="p_g"
                )
                x = int(commit_vars[pos])
                builder.add_row({index: 1.0, x: -upper}, upper=0.0, group="commitment")
                builder.add_row({index: 1.0, x: -lower}, lower=0.0, group="commitment")
            else:
                index = builder.add_var(f"p_g[{dev.id}{tag}]", lower, upper, dev.cost, group="p_g")
            p_g[pos] = index

        p_e = np.empty(net.n_branches, dtype=int)
        for pos, br in enumerate(net.branches):
            in_service = switch_vars is not None or br.x0 == 1
            limit = br.p_max if in_service else 0.0
            p_e[pos] = builder.add_var(f"p_e[{br.id}{tag}]", -limit, limit, group="p_e")

        for bus in net.buses:
            coefficients = {int(p_g[pos]): 1.0 for pos in net.devices_at[bus.id]}
            for pos in net.branches_from[bus.id]:
                coefficients[int(p_e[pos])] = -1.0
            for pos in net.branches_to[bus.id]:
                coefficients[int(p_e[pos])] = 1.0
            builder.add_eq(coefficients, 0.0, group="balance")

        big_m = self.big_m() if switch_vars is not None else None
        for pos, br in enumerate(net.branches):
            t_o = int(theta[net.origin_index[pos]])
            t_d = int(theta[net.dest_index[pos]])
            flow = int(p_e[pos])
            law = {flow: 1.0, t_o: -br.b, t_d: br.b}
            if switch_vars is None:
                if br.x0 == 1:
                    builder.add_eq(law, 0.0, group="flow")
            else:
                m, x = float(big_m[pos]), int(switch_vars[pos])
                builder.add_row({**law, x: m}, upper=m, group="big_m")
                builder.add_row({**law, x: -m}, lower=-m, group="big_m")
                builder.add_row({flow: 1.0, x: -m}, upper=0.0, group="switch_flow")
                builder.add_row({flow: 1.0, x: m}, lower=0.0, group="switch_flow")
            if cfg.theta_mode == "difference" and math.isfinite(theta_max):
                builder.add_row({t_o: 1.0, t_d: -1.0}, -theta_max, theta_max, group="angle")

        return PeriodVariables(theta=theta, p_g=p_g, p_e=p_e)

    def build(self, kind: str) -> MilpModel:
        model = self.builder.build(kind=kind, horizon=self.cfg.horizon)
        self.logger.debug(
            f"{kind}: {model.lp.n_vars} variables ({len(model.binary_vars)} binary), {model.lp.n_rows} rows"
        )
        return model
