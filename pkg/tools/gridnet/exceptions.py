# ====== Code Summary ======
# Exception hierarchy for network ingestion and validation. Parse errors name the offending
# MATPOWER table and line, schema errors carry the JSON path, validation errors carry the full
# list of diagnostics produced by `validate_network`.


class GridNetError(Exception):
    """Base class for every network data error."""


class CaseParseError(GridNetError):
    """
    Raised when a case file cannot be parsed.

    Attributes:
        table (str): Name of the table being read (e.g. "mpc.branch").
        line (int): 1-based line number in the source text.
    """

    def __init__(self, message: str, table: str = "", line: int = 0):
        self.table = table
        self.line = line
        location = f" [{table}, line {line}]" if table else ""
        super().__init__(f"{message}{location}")


class NetworkSchemaError(GridNetError):
    """Raised when a native JSON document violates the schema."""

    def __init__(self, message: str, json_path: str = "$"):
        self.json_path = json_path
        super().__init__(f"{json_path}: {message}")


class NetworkValidationError(GridNetError):
    """Raised when a parsed network breaks one of its invariants."""

    def __init__(self, diagnostics: list):
        self.diagnostics = list(diagnostics)
        summary = "; ".join(str(d) for d in self.diagnostics[:5])
        more = f" (+{len(self.diagnostics) - 5} more)" if len(self.diagnostics) > 5 else ""
        super().__init__(f"Invalid network: {summary}{more}")


class UnsupportedCaseFormatError(GridNetError):
    """Raised when no reader handles the given file extension."""
