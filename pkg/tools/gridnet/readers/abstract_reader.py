# ====== Standard Library Imports ======
from abc import ABC, abstractmethod

# ====== Third-Party Library Imports ======
from loggerplusplus import Logger

# ====== Internal Project Imports ======
from gridnet.exceptions import NetworkValidationError
from gridnet.models import Network, NetworkDefaults
from gridnet.validation import validate_network


class AbstractCaseReader(ABC):
    """
    Abstract base class for case readers.
    """

    def __init__(self, defaults: NetworkDefaults | None = None, logger: Logger | None = None):
        # Automatically use the child class name as the identifier if no logger is provided.
        if logger is None:
            logger = Logger(identifier=self.__class__.__name__, follow_logger_manager_rules=True)
        self.logger = logger
        self.defaults = defaults or NetworkDefaults()

    @abstractmethod
    def parse(self, text: str, name: str = "") -> Network:
        """
        Parse the case text into a validated Network.
        Must be implemented by subclasses.
        """
        raise NotImplementedError("The parse method must be implemented by subclasses.")

    def read(self, file_path: str) -> Network:
        """
        Reads and parses a case file.
        """
        self.logger.info(f"Reading case file: {file_path}")
        with open(file_path, "r", encoding="utf-8") as file:
            text = file.read()
        return self.parse(text)

    def _validated(self, net: Network) -> Network:
        diagnostics = validate_network(net)
        if diagnostics:
            for diagnostic in diagnostics:
                self.logger.error(str(diagnostic))
            raise NetworkValidationError(diagnostics)
        self.logger.info(
            f"Network '{net.name}': {net.n_buses} buses, {net.n_branches} branches, {net.n_devices} devices"
        )
        return net
