# ====== Internal Project Imports ======
from formulations.config import FormulationConfig
from formulations.network_model import DcModelBuilder
from gridnet import Network
from milp import MilpModel

KIND_OPF = "DcOpf"


def build_dc_opf(net: Network, cfg: FormulationConfig | None = None) -> MilpModel:
    """
    Builds the DC optimal power flow on the case topology (branches with x0 = 0 are out of service).

    Args:
        net (Network): Validated network.
        cfg (FormulationConfig, optional): Angle bound options; switching and horizon fields are ignored.

    Returns:
        MilpModel: Continuous model (no binaries) minimizing Σ c_g p_g.
    """
    cfg = cfg or FormulationConfig()
    if cfg.horizon != 1 or cfg.load_profile:
        cfg = FormulationConfig(
            big_m=cfg.big_m,
            theta_bound=cfg.theta_bound,
            theta_mode=cfg.theta_mode,
            anti_islanding=cfg.anti_islanding,
        )
    model = DcModelBuilder(net, cfg)
    model.add_period(0)
    return model.build(KIND_OPF)
