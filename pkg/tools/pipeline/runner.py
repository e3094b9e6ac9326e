# ====== Code Summary ======
# End-to-end run: read the case, build and solve the DC problem (OTS or UC), run every requested
# MGA criterion from the base optimum, recover each distinct integer decision in AC once, classify
# against the cheapest Safe alternative, then assemble overlap and re-dispatch analyses. The
# optional greedy baseline runs on the same network with the same AC settings; its costs are
# reported as gaps to that cheapest alternative and never enter it.

# ====== Standard Library Imports ======
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace

# ====== Third-Party Library Imports ======
import numpy as np
from loggerplusplus import Logger

# ====== Internal Project Imports ======
from acflow import (
    AcRecoverySolver,
    Classification,
    RecoveryResult,
    bus_roles,
    classify_solution,
    redispatch_stats,
)
from baseline import GreedySwitchSearch, GreedyTrajectory
from formulations import build_dc_ots, build_dc_uc, extract_solution
from gridnet import CaseReaderFactory, Network, NetworkDefaults
from mga import Alternative, MgaRun, run_mga
from milp import SolveStatus, solve_milp
from pipeline.models import (
    AlternativeRecord,
    CriterionReport,
    PipelineConfig,
    PipelineReport,
)
from pipeline.overlap import overlap_analysis


def case_metadata(net: Network, case_path: str = "") -> dict:
    return {
        "name": net.name,
        "path": str(case_path),
        "n_buses": net.n_buses,
        "n_branches": net.n_branches,
        "n_devices": net.n_devices,
        "n_switchable": sum(1 for br in net.branches if br.switchable),
        "base_mva": net.base_mva,
        "defaults_applied": list(net.defaults_applied),
    }


class PipelineRunner:
    """
    DC-MILP → MGA → AC recovery → classification for one case.
    """

    def __init__(
            self,
            config: PipelineConfig | None = None,
            defaults: NetworkDefaults | None = None,
            logger: Logger | None = None,
    ):
        if logger is None:
            logger = Logger(identifier=self.__class__.__name__, follow_logger_manager_rules=True)
        self.logger = logger
        self.config = config or PipelineConfig()
        self.defaults = defaults

    # ------------------------------------------------------------------ stages
    def _build(self, net: Network):
        if self.config.problem == "uc":
            return build_dc_uc(net, self.config.formulation)
        return build_dc_ots(net, replace(self.config.formulation, horizon=1, load_profile=()))

    def _run_criteria(self, net, model, solution) -> tuple[list[MgaRun], dict]:
        config = self.config

        def one(tag: str) -> tuple[MgaRun, float]:
            start = time.perf_counter()
            run = run_mga(model, solution, replace(config.mga, criterion=tag), net, config.milp)
            return run, time.perf_counter() - start

        if config.workers > 1 and len(config.criteria) > 1:
            with ThreadPoolExecutor(max_workers=config.workers) as pool:
                results = list(pool.map(one, config.criteria))
        else:
            results = [one(tag) for tag in config.criteria]
        return [run for run, _ in results], {tag: elapsed for tag, (_, elapsed) in zip(config.criteria, results)}

    def _recover_all(self, net: Network, alternatives: list[Alternative]) -> dict[tuple, RecoveryResult]:
        solver = AcRecoverySolver(net, self.config.ac, logger=self.logger)
        recovered: dict[tuple, RecoveryResult] = {}
        for alt in alternatives:
            if alt.key in recovered:
                continue
            dispatch = alt.dispatch
            recovered[alt.key] = solver.solve(dispatch.topology(net), dispatch, dispatch.commitment(net))
            self.logger.debug(
                f"Recovered {alt.criterion}#{alt.iteration}: {recovered[alt.key].classification.value}"
            )
        self.logger.info(f"{len(recovered)} distinct alternatives recovered in AC")
        return recovered

    def _greedy(self, net: Network) -> GreedyTrajectory | None:
        config = self.config
        if config.greedy is None:
            return None
        if config.problem != "ots":
            self.logger.warning("Greedy switching baseline only applies to transmission switching, skipped")
            return None
        search = GreedySwitchSearch(net, config.greedy, config.ac, config.milp, logger=self.logger)
        return search.run()

    # ------------------------------------------------------------------ records
    def _record(self, net: Network, alt: Alternative, result: RecoveryResult, best_known_cost: float):
        classification = classify_solution(result, best_known_cost, self.config.ac.tol_overload)
        redispatch = np.asarray(result.state.p_g, dtype=float) - np.asarray(alt.dispatch.p_g, dtype=float)
        roles = tuple(bus_roles(net, result.state.p_g)) if self.config.problem == "uc" else ()
        return AlternativeRecord(
            criterion=alt.criterion,
            iteration=alt.iteration,
            topology=alt.key,
            dc_objective=float(alt.dc_objective),
            connected=int(alt.connected),
            classification=classification.value,
            converged=bool(result.converged),
            ac_objective=float(result.objective) if result.converged else None,
            max_slack=float(result.max_slack),
            violation=float(result.violation),
            redispatch=tuple(float(d) for d in redispatch),
            bus_roles=roles,
            v=tuple(float(value) for value in result.state.v),
            theta=tuple(float(value) for value in result.state.theta),
            p_g=tuple(float(value) for value in result.state.p_g),
            q_g=tuple(float(value) for value in result.state.q_g),
        )

    @staticmethod
    def _criterion_report(run: MgaRun, records: list[AlternativeRecord]) -> CriterionReport:
        counts = {label.value: 0 for label in Classification}
        for record in records:
            counts[record.classification] += 1
        first_safe = next((pos + 1 for pos, record in enumerate(records) if record.is_safe), None)
        return CriterionReport(
            criterion=run.criterion.value,
            alternatives=tuple(records),
            trajectory=tuple(int(c) for c in run.trajectory),
            stop_reason=run.stop_reason,
            iterations=run.iterations,
            duplicates=run.duplicates,
            skipped=tuple(run.skipped),
            notes=tuple(run.notes),
            counts=counts,
            recoveries_to_first_safe=first_safe,
        )

    @staticmethod
    def _redispatch_summary(net: Network, pairs: list) -> dict:
        stats = redispatch_stats(pairs)
        per_device = []
        for pos, values in sorted(stats.by_device.items()):
            per_device.append(
                {
                    "device_id": net.devices[pos].id,
                    "mean": float(np.mean(values)),
                    "min": float(np.min(values)),
                    "max": float(np.max(values)),
                    "mean_abs": float(np.mean(np.abs(values))),
                }
            )
        return {"mean_abs": list(stats.mean_abs), "per_device": per_device}

    @staticmethod
    def _greedy_summary(trajectory: GreedyTrajectory, best_known_cost: float | None) -> dict:
        # Gaps are measured against the cheapest Safe alternative; negative when greedy does better.
        return {
            "steps": [
                {
                    "branch_id": step.branch_id,
                    "cost": step.cost,
                    "evaluations": step.evaluations,
                    "skipped_islanding": step.skipped_islanding,
                    "gap": None if best_known_cost is None else step.cost - best_known_cost,
                }
                for step in trajectory.steps
            ],
            "final_cost": trajectory.costs[-1],
            "iteration_evals": list(trajectory.iteration_evals),
            "iteration_skipped": list(trajectory.iteration_skipped),
            "ac_evals": trajectory.ac_evals,
            "seed_evals": trajectory.seed_evals,
            "recoveries": trajectory.seed_evals + trajectory.ac_evals,
            "topology": list(trajectory.topology),
        }

    # ------------------------------------------------------------------ entry points
    def run(self, case_path: str) -> PipelineReport:
        start = time.perf_counter()
        net = CaseReaderFactory.auto_read(str(case_path), defaults=self.defaults)
        parse_time = time.perf_counter() - start
        report = self.run_network(net, case_path=str(case_path))
        report.timings["parse"] = parse_time
        return report

    def run_network(self, net: Network, case_path: str = "") -> PipelineReport:
        """
        Runs every stage on an already parsed network.

        Args:
            net (Network): Validated network.
            case_path (str, optional): Echoed in the case metadata.

        Returns:
            PipelineReport: Report with status only when the base problem has no optimum.
        """
        config = self.config
        started = time.perf_counter()
        timings: dict = {}
        case = case_metadata(net, case_path)
        self.logger.info(
            f"Case {net.name or case_path}: {net.n_buses} buses, {net.n_branches} branches, "
            f"{net.n_devices} devices, problem {config.problem}"
        )

        clock = time.perf_counter()
        model = self._build(net)
        base_solution = solve_milp(model, config.milp, logger=self.logger)
        timings["base_solve"] = time.perf_counter() - clock
        if base_solution.status is not SolveStatus.OPTIMAL:
            self.logger.error(f"Base {config.problem.upper()} problem ended with {base_solution.status.value}")
            timings["total"] = time.perf_counter() - started
            return PipelineReport(
                case=case,
                problem=config.problem,
                status=base_solution.status.value,
                config=config.to_dict(),
                timings=timings,
            )
        self.logger.info(f"Base DC optimum {base_solution.objective:.6g}")

        clock = time.perf_counter()
        runs, mga_times = self._run_criteria(net, model, base_solution)
        timings["mga"] = mga_times
        timings["mga_iteration_mean"] = {run.criterion.value: run.mean_solve_time for run in runs}
        timings["mga_total"] = time.perf_counter() - clock

        base_dispatch = extract_solution(net, model, base_solution)
        base_alt = Alternative(
            x=base_solution.binary_values(model),
            dispatch=base_dispatch,
            dc_objective=base_dispatch.objective,
            iteration=0,
            criterion="base",
        )
        ordered = [base_alt] + [alt for run in runs for alt in run.alternatives]

        clock = time.perf_counter()
        recovered = self._recover_all(net, ordered)
        timings["recovery_total"] = time.perf_counter() - clock

        clock = time.perf_counter()
        trajectory = self._greedy(net)
        if trajectory is not None:
            timings["greedy"] = time.perf_counter() - clock
            timings["greedy_steps"] = [step.wall_time for step in trajectory.steps]

        safe_costs = [
            r.objective for r in recovered.values() if r.classification in (Classification.SAFE, Classification.OPTIMAL)
        ]
        best_known_cost = min(safe_costs) if safe_costs else None
        reference = math.inf if best_known_cost is None else best_known_cost

        criteria = []
        recovery_means = {}
        for run in runs:
            records = [self._record(net, alt, recovered[alt.key], reference) for alt in run.alternatives]
            criteria.append(self._criterion_report(run, records))
            recovery_means[run.criterion.value] = float(
                np.mean([recovered[alt.key].solve_time for alt in run.alternatives])
            )
        timings["recovery_mean"] = recovery_means

        first_seen = {}
        for alt in ordered:
            first_seen.setdefault(alt.key, alt)
        pairs = [(alt.dispatch, recovered[key]) for key, alt in first_seen.items()]
        overlap = overlap_analysis({report.criterion: report.feasible_set for report in criteria})
        timings["total"] = time.perf_counter() - started

        return PipelineReport(
            case=case,
            problem=config.problem,
            status=base_solution.status.value,
            base=self._record(net, base_alt, recovered[base_alt.key], reference),
            criteria=tuple(criteria),
            overlap=overlap,
            redispatch=self._redispatch_summary(net, pairs),
            best_known_cost=best_known_cost,
            greedy=None if trajectory is None else self._greedy_summary(trajectory, best_known_cost),
            config=config.to_dict(),
            timings=timings,
        )


def run_pipeline(
        case_path: str,
        problem: str = "ots",
        criteria=None,
        cfg: PipelineConfig | None = None,
        defaults: NetworkDefaults | None = None,
) -> PipelineReport:
    """
    Runs the full pipeline on a case file.

    Args:
        case_path (str): MATPOWER (.m) or native JSON (.json) case.
        problem (str): "ots" or "uc"; overrides `cfg.problem`.
        criteria (iterable[str], optional): Criteria to run; overrides `cfg.criteria`.
        cfg (PipelineConfig, optional): MGA, formulation, MILP and AC settings.
        defaults (NetworkDefaults, optional): Defaults applied while reading the case.

    Returns:
        PipelineReport: Deterministic given the configuration and seed (timings aside).
    """
    cfg = cfg or PipelineConfig()
    cfg = replace(cfg, problem=problem, criteria=tuple(criteria) if criteria is not None else cfg.criteria)
    return PipelineRunner(cfg, defaults).run(case_path)
