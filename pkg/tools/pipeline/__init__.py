from pipeline.exceptions import PipelineError
from pipeline.models import (
    ALL_CRITERIA,
    AlternativeRecord,
    CriterionReport,
    OverlapResult,
    PipelineConfig,
    PipelineReport,
)
from pipeline.overlap import overlap_analysis
from pipeline.runner import PipelineRunner, case_metadata, run_pipeline
from pipeline.report import (
    alternatives_frame,
    emit_report,
    greedy_frame,
    overlap_frame,
    read_report,
    redispatch_frame,
    report_to_json,
)
