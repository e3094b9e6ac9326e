# Loads CONFIG first so that `tools/` is importable and the LoggerManager is configured for every test.
import config_loader  # noqa: F401
