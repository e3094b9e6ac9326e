# ====== Code Summary ======
# DC unit commitment: per-period copies of the DC-OPF equations on the case topology with a
# commitment binary per device (x_g for T = 1, x_{g,t} for T > 1), bounds p_min·x ≤ p ≤ p_max·x,
# and ramp coupling |p_{g,t} - p_{g,t-1}| ≤ δ_g between consecutive periods. Non-commitable
# devices have their binary fixed to 1.

# ====== Standard Library Imports ======
import math

# ====== Third-Party Library Imports ======
import numpy as np
from loggerplusplus import Logger

# ====== Internal Project Imports ======
from formulations.config import FormulationConfig
from formulations.exceptions import FormulationError
from formulations.network_model import DcModelBuilder
from gridnet import Network
from milp import MilpModel

KIND_UC = "DcUc"

_logger = Logger(identifier="build_dc_uc", follow_logger_manager_rules=True)


def build_dc_uc(net: Network, cfg: FormulationConfig | None = None) -> MilpModel:
    """
    Builds the DC unit commitment model.

    Args:
        net (Network): Validated network with at least one commitable device.
        cfg (FormulationConfig, optional): Horizon, load profile and angle options.

    Returns:
        MilpModel: Model whose binaries are the commitments, group "x_g" (period-major).
            Infeasible demand is not detected here; it surfaces at solve time.
    """
    cfg = cfg or FormulationConfig()
    if not any(dev.commitable for dev in net.devices):
        _logger.error("No commitable device in the network")
        raise FormulationError("unit commitment needs at least one commitable device")

    model = DcModelBuilder(net, cfg, logger=_logger)
    builder = model.builder
    previous: np.ndarray | None = None
    for period in range(cfg.horizon):
        tag = model.suffix(period)
        commit_vars = np.array(
            [
                builder.add_var(
                    f"x_g[{dev.id}{tag}]",
                    0.0 if dev.commitable else 1.0,
                    1.0,
                    binary=True,
                    group="x_g",
                )
                for dev in net.devices
            ],
            dtype=int,
        )
        current = model.add_period(period, commit_vars=commit_vars).p_g
        if previous is not None:
            for pos, dev in enumerate(net.devices):
                if math.isfinite(dev.ramp):
                    builder.add_row(
                        {int(current[pos]): 1.0, int(previous[pos]): -1.0},
                        -dev.ramp,
                        dev.ramp,
                        group="ramp",
                    )
        previous = current

    return model.build(KIND_UC)
