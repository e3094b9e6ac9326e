from gridnet.readers.abstract_reader import AbstractCaseReader
from gridnet.readers.ext import (
    JsonCaseReader,
    MatpowerCaseReader,
    parse_matpower_case,
    parse_network_json,
)
from gridnet.readers.reader_factory import CaseReaderFactory
