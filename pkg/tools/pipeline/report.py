# ====== Code Summary ======
# Report files. JSON is the lossless form (`read_report` rebuilds an equal report); the CSV
# bundle holds flat tables ready for plotting:
#   - alternatives.csv: one row per alternative of every criterion (base rows included),
#   - overlap.csv: feasible-set sizes on the diagonal and pairwise intersections,
#   - redispatch.csv: AC minus DC output per device and alternative,
#   - greedy.csv: greedy baseline steps, when the baseline ran.

# ====== Standard Library Imports ======
import json
import os

# ====== Third-Party Library Imports ======
import pandas as pd

# ====== Internal Project Imports ======
from pipeline.exceptions import PipelineError
from pipeline.models import PipelineReport

FORMATS = ("json", "csv", "both")
REPORT_FILE = "report.json"
ALTERNATIVE_COLUMNS = [
    "criterion",
    "iteration",
    "source",
    "dc_objective",
    "ac_classification",
    "ac_objective",
    "connected_branches",
    "redispatch_mean",
    "max_slack",
    "topology",
]


def report_to_json(report: PipelineReport, include_timings: bool = True) -> str:
    return json.dumps(report.to_dict(include_timings=include_timings), indent=2, allow_nan=False)


def alternatives_frame(report: PipelineReport) -> pd.DataFrame:
    rows = [
        {
            "criterion": criterion.criterion,
            "iteration": alt.iteration,
            "source": alt.criterion,
            "dc_objective": alt.dc_objective,
            "ac_classification": alt.classification,
            "ac_objective": alt.ac_objective,
            "connected_branches": alt.connected,
            "redispatch_mean": alt.redispatch_mean,
            "max_slack": alt.max_slack,
            "topology": "".join(str(v) for v in alt.topology),
        }
        for criterion in report.criteria
        for alt in criterion.alternatives
    ]
    return pd.DataFrame(rows, columns=ALTERNATIVE_COLUMNS)


def overlap_frame(report: PipelineReport) -> pd.DataFrame:
    overlap = report.overlap
    rows = [{"criterion_a": name, "criterion_b": name, "count": size} for name, size in overlap.sizes]
    rows += [{"criterion_a": a, "criterion_b": b, "count": count} for a, b, count in overlap.pairwise]
    return pd.DataFrame(rows, columns=["criterion_a", "criterion_b", "count"])


def redispatch_frame(report: PipelineReport, device_ids: list[int] | None = None) -> pd.DataFrame:
    if device_ids is None:
        device_ids = [entry["device_id"] for entry in report.redispatch.get("per_device", [])]
    rows = []
    for criterion in report.criteria:
        for alt in criterion.alternatives:
            for pos, delta in enumerate(alt.redispatch):
                device_id = device_ids[pos] if pos < len(device_ids) else pos
                rows.append(
                    {
                        "criterion": criterion.criterion,
                        "iteration": alt.iteration,
                        "device_id": device_id,
                        "ac_classification": alt.classification,
                        "redispatch": delta,
                    }
                )
    return pd.DataFrame(rows, columns=["criterion", "iteration", "device_id", "ac_classification", "redispatch"])


def greedy_frame(report: PipelineReport) -> pd.DataFrame:
    steps = (report.greedy or {}).get("steps", [])
    frame = pd.DataFrame(steps, columns=["branch_id", "cost", "evaluations", "skipped_islanding", "gap"])
    frame.insert(0, "step", range(len(frame)))
    return frame


def emit_report(report: PipelineReport, out_dir: str, format: str = "both") -> list[str]:
    """
    Writes the report files into `out_dir` (created if needed).

    Args:
        report (PipelineReport): Report to write.
        out_dir (str): Output directory.
        format (str): "json", "csv" or "both".

    Returns:
        list[str]: Paths written.
    """
    if format not in FORMATS:
        raise PipelineError(f"format must be one of {FORMATS}, got {format!r}")
    os.makedirs(out_dir, exist_ok=True)
    written = []
    if format in ("json", "both"):
        path = os.path.join(out_dir, REPORT_FILE)
        with open(path, "w", encoding="utf-8") as f:
            f.write(report_to_json(report))
            f.write("\n")
        written.append(path)
    if format in ("csv", "both"):
        frames = {
            "alternatives.csv": alternatives_frame(report),
            "overlap.csv": overlap_frame(report),
            "redispatch.csv": redispatch_frame(report),
        }
        if report.greedy is not None:
            frames["greedy.csv"] = greedy_frame(report)
        for name, frame in frames.items():
            path = os.path.join(out_dir, name)
            frame.to_csv(path, index=False)
            written.append(path)
    return written


def read_report(path: str) -> PipelineReport:
    """Reads a report written by `emit_report` (a report.json file or the directory holding it)."""
    if os.path.isdir(path):
        path = os.path.join(path, REPORT_FILE)
    with open(path, encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise PipelineError(f"{path} is not a JSON report: {e}") from e
    return PipelineReport.from_dict(data)
