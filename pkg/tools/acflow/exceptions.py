class AcModelError(Exception):
    """Raised on malformed AC inputs (dimension mismatch, missing slack device, unknown flow model)."""
