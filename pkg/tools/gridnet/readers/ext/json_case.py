# ====== Code Summary ======
# Reader for the native JSON network document (see `gridnet.schema`). The document is checked
# against the JSON schema first, then omitted optional fields receive their defaults, which are
# recorded in `Network.defaults_applied`.

# ====== Standard Library Imports ======
import json
import math

# ====== Third-Party Library Imports ======
from jsonschema import Draft7Validator
from jsonschema.exceptions import best_match
from loggerplusplus import Logger

# ====== Internal Project Imports ======
from gridnet.exceptions import NetworkSchemaError
from gridnet.models import Branch, Bus, Device, Network, NetworkDefaults
from gridnet.readers.abstract_reader import AbstractCaseReader
from gridnet.schema import NETWORK_SCHEMA

_VALIDATOR = Draft7Validator(NETWORK_SCHEMA)


class JsonCaseReader(AbstractCaseReader):
    """
    Reader for native JSON network documents.
    """

    def __init__(self, defaults: NetworkDefaults | None = None, logger: Logger | None = None):
        super().__init__(defaults=defaults, logger=logger)

    def parse(self, text: str, name: str = "") -> Network:
        try:
            document = json.loads(text)
        except json.JSONDecodeError as e:
            self.logger.error(f"Invalid JSON: {e}")
            raise NetworkSchemaError(f"invalid JSON: {e.msg} (line {e.lineno})", "$") from e

        error = best_match(_VALIDATOR.iter_errors(document))
        if error is not None:
            self.logger.error(f"Schema violation at {error.json_path}: {error.message}")
            raise NetworkSchemaError(error.message, error.json_path)

        defaults_applied: list[str] = []

        def field(section: str, index: int, item: dict, key: str, default):
            if key in item:
                return item[key]
            defaults_applied.append(f"{section}[{index}].{key}")
            return default

        buses = tuple(
            Bus(
                id=item["id"],
                base_kv=float(field("buses", i, item, "base_kv", self.defaults.base_kv)),
                v_min=float(field("buses", i, item, "v_min", self.defaults.v_min)),
                v_max=float(field("buses", i, item, "v_max", self.defaults.v_max)),
            )
            for i, item in enumerate(document["buses"])
        )
        branches = tuple(
            Branch(
                id=item["id"],
                origin=item["origin"],
                dest=item["dest"],
                b=float(item["b"]),
                g=float(field("branches", i, item, "g", 0.0)),
                p_max=float(item["p_max"]),
                switchable=field("branches", i, item, "switchable", True),
                x0=int(field("branches", i, item, "x0", 1)),
            )
            for i, item in enumerate(document.get("branches", []))
        )

        devices = []
        for i, item in enumerate(document.get("devices", [])):
            p_max = float(item["p_max"])
            q_span = self.defaults.q_ratio * abs(p_max)
            ramp = field("devices", i, item, "ramp", None)
            devices.append(
                Device(
                    id=item["id"],
                    bus=item["bus"],
                    cost=float(item["cost"]),
                    p_min=float(item["p_min"]),
                    p_max=p_max,
                    q_min=float(field("devices", i, item, "q_min", -q_span)),
                    q_max=float(field("devices", i, item, "q_max", q_span)),
                    ramp=math.inf if ramp is None else float(ramp),
                    commitable=field("devices", i, item, "commitable", False),
                )
            )

        if "base_mva" not in document:
            defaults_applied.append("base_mva")
        if defaults_applied:
            self.logger.debug(f"Defaults applied to {len(defaults_applied)} fields")

        net = Network(
            buses=buses,
            branches=branches,
            devices=tuple(devices),
            base_mva=float(document.get("base_mva", 100.0)),
            name=name or document.get("name", ""),
            defaults_applied=tuple(defaults_applied),
        )
        return self._validated(net)


def parse_network_json(text: str, defaults: NetworkDefaults | None = None) -> Network:
    """Parses a native JSON document into a validated Network."""
    return JsonCaseReader(defaults=defaults).parse(text)
