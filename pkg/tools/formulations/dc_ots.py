# ====== Code Summary ======
# DC optimal transmission switching: the DC-OPF of `network_model` with one binary x_e per branch,
# the big-M switched flow law, and the operator side constraints:
#   - anti-islanding: Σ_{e incident to i} x_e ≥ min(2, degree_i) for every bus,
#   - switch budget against a reference topology x0 ("net" or "absolute" counting),
#   - pairwise exclusions x_{e1} + x_{e2} ≤ 1.
# Non-switchable branches keep their binary but with both bounds fixed to x0.

# ====== Third-Party Library Imports ======
import numpy as np
from loggerplusplus import Logger

# ====== Internal Project Imports ======
from formulations.config import FormulationConfig
from formulations.exceptions import FormulationError
from formulations.network_model import DcModelBuilder
from gridnet import Network
from milp import MilpModel

KIND_OTS = "DcOts"

_logger = Logger(identifier="build_dc_ots", follow_logger_manager_rules=True)


def build_dc_ots(net: Network, cfg: FormulationConfig | None = None) -> MilpModel:
    """
    Builds the DC optimal transmission switching model.

    Args:
        net (Network): Validated network with at least one switchable branch.
        cfg (FormulationConfig, optional): Big-M, angle, anti-islanding, budget and exclusion options.

    Returns:
        MilpModel: Model whose binaries are the branch switches, group "x_e".
    """
    cfg = cfg or FormulationConfig()
    if not any(br.switchable for br in net.branches):
        _logger.error("No switchable branch in the network")
        raise FormulationError("transmission switching needs at least one switchable branch")

    model = DcModelBuilder(net, cfg, logger=_logger)
    builder = model.builder
    switch_vars = np.array(
        [
            builder.add_var(
                f"x_e[{br.id}]",
                0.0 if br.switchable else float(br.x0),
                1.0 if br.switchable else float(br.x0),
                binary=True,
                group="x_e",
            )
            for br in net.branches
        ],
        dtype=int,
    )
    model.add_period(0, switch_vars=switch_vars)

    if cfg.anti_islanding:
        for bus in net.buses:
            incident = net.incident_branches(bus.id)
            if incident:
                builder.add_row(
                    {int(switch_vars[pos]): 1.0 for pos in incident},
                    lower=float(min(2, len(incident))),
                    group="anti_islanding",
                )

    if cfg.switch_budget is not None:
        reference = np.asarray(
            cfg.budget_reference if cfg.budget_reference is not None else net.initial_topology(), dtype=int
        )
        if reference.shape != (net.n_branches,):
            raise FormulationError(f"budget reference has {reference.size} entries for {net.n_branches} branches")
        switchable = [pos for pos, br in enumerate(net.branches) if br.switchable]
        if cfg.switch_budget_mode == "net":
            coefficients = {int(switch_vars[pos]): 1.0 for pos in switchable}
            upper = cfg.switch_budget + float(sum(reference[pos] for pos in switchable))
        else:
            coefficients = {int(switch_vars[pos]): (1.0 if reference[pos] == 0 else -1.0) for pos in switchable}
            upper = cfg.switch_budget - float(sum(reference[pos] for pos in switchable))
        builder.add_row(coefficients, upper=upper, group="switch_budget")

    positions = {br.id: pos for pos, br in enumerate(net.branches)}
    for first, second in cfg.pairwise_exclusions:
        if first not in positions or second not in positions:
            raise FormulationError(f"pairwise exclusion references unknown branch ({first}, {second})")
        builder.add_row(
            {int(switch_vars[positions[first]]): 1.0, int(switch_vars[positions[second]]): 1.0},
            upper=1.0,
            group="pairwise",
        )

    return model.build(KIND_OTS)
