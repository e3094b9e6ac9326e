from formulations.exceptions import FormulationError
from formulations.config import FormulationConfig
from formulations.network_model import DcModelBuilder, PeriodVariables
from formulations.dc_opf import KIND_OPF, build_dc_opf
from formulations.dc_ots import KIND_OTS, build_dc_ots
from formulations.dc_uc import KIND_UC, build_dc_uc
from formulations.solution import OpfSolution, extract_solution, fixed_topology_model
