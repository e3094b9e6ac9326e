# ====== Code Summary ======
# Command-line entry point. `solve` reads a case, runs the DC problem, the requested MGA criteria
# and the AC recovery of every alternative, then writes the report. Tunables come from
# `config/config.json` through `CONFIG`; flags override them.
# Exit codes: 0 success, 1 parse/validation error, 2 base problem without an optimum.

# ====== Standard Library Imports ======
import sys

# ====== Third-Party Library Imports ======
import click
from loggerplusplus import Logger

# ====== Internal Project Imports ======
from config_loader import CONFIG
from acflow import AcConfig, AcModelError
from baseline import BaselineError, GreedyConfig
from formulations import FormulationConfig, FormulationError
from gridnet import GridNetError, NetworkDefaults
from mga import MgaConfig, MgaError
from milp import MilpConfig, MilpError
from pipeline import ALL_CRITERIA, PipelineConfig, PipelineError, PipelineRunner, emit_report

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_BASE_INFEASIBLE = 2

logger = Logger(identifier="main", follow_logger_manager_rules=True)


def build_config(problem, criterion, delta_f, max_iter, seed, horizon, workers, greedy_baseline) -> PipelineConfig:
    """Resolves every setting from CONFIG and the command-line flags."""
    criteria = ALL_CRITERIA if criterion == "all" else (criterion,)
    mga_workers = CONFIG.MGA_WORKERS if workers is None else workers
    return PipelineConfig(
        problem=problem,
        criteria=criteria,
        mga=MgaConfig(
            delta_f=CONFIG.MGA_DELTA_F if delta_f is None else delta_f,
            max_iter=CONFIG.MGA_MAX_ITER if max_iter is None else max_iter,
            seed=CONFIG.MGA_SEED if seed is None else seed,
            workers=mga_workers,
        ),
        formulation=FormulationConfig(
            big_m=CONFIG.FORMULATION_BIG_M,
            theta_bound=CONFIG.FORMULATION_THETA_BOUND,
            theta_mode=CONFIG.FORMULATION_THETA_MODE,
            switch_budget_mode=CONFIG.FORMULATION_SWITCH_BUDGET_MODE,
            anti_islanding=CONFIG.FORMULATION_ANTI_ISLANDING,
            horizon=horizon if problem == "uc" else 1,
        ),
        milp=MilpConfig(
            eps_int=CONFIG.MILP_EPS_INT,
            eps_feas=CONFIG.MILP_EPS_FEAS,
            eps_obj=CONFIG.MILP_EPS_OBJ,
            max_nodes=CONFIG.MILP_MAX_NODES,
            time_limit=CONFIG.MILP_TIME_LIMIT,
            lp_restarts=CONFIG.MILP_LP_RESTARTS,
        ),
        ac=AcConfig(
            flow_model=CONFIG.AC_FLOW_MODEL,
            penalty_factor=CONFIG.AC_PENALTY_FACTOR,
            penalty_stages=CONFIG.AC_PENALTY_STAGES,
            tol_overload=CONFIG.AC_TOL_OVERLOAD,
            max_iter=CONFIG.AC_MAX_ITER,
            ftol=CONFIG.AC_FTOL,
        ),
        greedy=GreedyConfig(tol=CONFIG.BASELINE_TOL, start=CONFIG.BASELINE_START) if greedy_baseline else None,
        workers=CONFIG.PIPELINE_WORKERS if workers is None else workers,
    )


def network_defaults() -> NetworkDefaults:
    return NetworkDefaults(
        v_min=CONFIG.NETWORK_V_MIN,
        v_max=CONFIG.NETWORK_V_MAX,
        q_ratio=CONFIG.NETWORK_Q_RATIO,
        unlimited_rating_mva=CONFIG.NETWORK_UNLIMITED_RATING_MVA,
    )


@click.group()
def cli():
    """DC switching / commitment alternatives with AC feasibility recovery."""


@cli.command()
@click.option("--case", "case_path", required=True, type=click.Path(exists=True, dir_okay=False), help="MATPOWER .m or JSON case.")
@click.option("--problem", type=click.Choice(["ots", "uc"]), default="ots", show_default=True)
@click.option("--criterion", type=click.Choice(list(ALL_CRITERIA) + ["all"]), default="all", show_default=True)
@click.option("--delta-f", type=float, default=None, help="Allowed DC cost degradation.")
@click.option("--max-iter", type=int, default=None, help="MGA iterations per criterion.")
@click.option("--seed", type=int, default=None, help="Random-vector sampling seed.")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False), help="Report directory.")
@click.option("--greedy-baseline", is_flag=True, help="Also run the greedy single-switch search.")
@click.option("--horizon", type=int, default=1, show_default=True, help="UC periods.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv", "both"]), default=CONFIG.PIPELINE_FORMATS, show_default=True)
@click.option("--workers", type=int, default=None, help="Threads for criteria and random vectors.")
def solve(case_path, problem, criterion, delta_f, max_iter, seed, out_dir, greedy_baseline, horizon, fmt, workers):
    """Runs DC problem, MGA, AC recovery and classification on one case."""
    try:
        config = build_config(problem, criterion, delta_f, max_iter, seed, horizon, workers, greedy_baseline)
        report = PipelineRunner(config, defaults=network_defaults()).run(case_path)
    except (GridNetError, FormulationError, PipelineError, MgaError, MilpError, AcModelError, BaselineError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        sys.exit(EXIT_INPUT_ERROR)

    for path in emit_report(report, out_dir, fmt):
        logger.info(f"Wrote {path}")
    if not report.solved:
        logger.error(f"Base {problem.upper()} problem: {report.status}")
        sys.exit(EXIT_BASE_INFEASIBLE)
    for entry in report.criteria:
        logger.info(
            f"{entry.criterion}: {len(entry.alternatives)} alternatives, "
            + ", ".join(f"{label} {count}" for label, count in entry.counts.items())
        )
    sys.exit(EXIT_OK)


if __name__ == "__main__":
    cli()
