class PipelineError(Exception):
    """Raised for an unusable pipeline request (unknown problem kind, unreadable report)."""
