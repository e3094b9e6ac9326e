# ====== Standard Library Imports ======
import os

# ====== Internal Project Imports ======
from gridnet.exceptions import UnsupportedCaseFormatError
from gridnet.models import Network, NetworkDefaults
from gridnet.readers.abstract_reader import AbstractCaseReader
from gridnet.readers.ext import JsonCaseReader, MatpowerCaseReader


class CaseReaderFactory:
    """
    Factory to obtain the appropriate case reader based on file extension.
    """

    @staticmethod
    def get_reader(file_path: str, defaults: NetworkDefaults | None = None) -> AbstractCaseReader:
        ext = os.path.splitext(file_path)[1].lower()
        if ext == ".m":
            return MatpowerCaseReader(defaults=defaults)
        elif ext == ".json":
            return JsonCaseReader(defaults=defaults)
        raise UnsupportedCaseFormatError(f"Unsupported case file type: {file_path}")

    @staticmethod
    def auto_read(file_path: str, defaults: NetworkDefaults | None = None) -> Network:
        """
        Automatically reads a case file based on its extension.
        """
        reader = CaseReaderFactory.get_reader(file_path, defaults=defaults)
        return reader.read(file_path)
