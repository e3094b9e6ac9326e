from gridnet.exceptions import (
    CaseParseError,
    GridNetError,
    NetworkSchemaError,
    NetworkValidationError,
    UnsupportedCaseFormatError,
)
from gridnet.models import Branch, Bus, Device, Diagnostic, Network, NetworkDefaults
from gridnet.validation import validate_network
from gridnet.topology import connectivity_check, island_labels
from gridnet.readers import (
    AbstractCaseReader,
    CaseReaderFactory,
    JsonCaseReader,
    MatpowerCaseReader,
    parse_matpower_case,
    parse_network_json,
)
from gridnet.writer import network_to_dict, network_to_json
