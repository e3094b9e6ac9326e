class FormulationError(Exception):
    """Raised when a network or configuration cannot be turned into a DC optimization model."""
