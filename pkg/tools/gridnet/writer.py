# ====== Code Summary ======
# Emits a Network as a native JSON document, the inverse of `parse_network_json`.

# ====== Standard Library Imports ======
import json
import math

# ====== Internal Project Imports ======
from gridnet.models import Network


def network_to_dict(net: Network) -> dict:
    return {
        "name": net.name,
        "base_mva": net.base_mva,
        "buses": [
            {"id": bus.id, "base_kv": bus.base_kv, "v_min": bus.v_min, "v_max": bus.v_max}
            for bus in net.buses
        ],
        "branches": [
            {
                "id": br.id,
                "origin": br.origin,
                "dest": br.dest,
                "b": br.b,
                "g": br.g,
                "p_max": br.p_max,
                "switchable": br.switchable,
                "x0": br.x0,
            }
            for br in net.branches
        ],
        "devices": [
            {
                "id": dev.id,
                "bus": dev.bus,
                "cost": dev.cost,
                "p_min": dev.p_min,
                "p_max": dev.p_max,
                "q_min": dev.q_min,
                "q_max": dev.q_max,
                "ramp": None if math.isinf(dev.ramp) else dev.ramp,
                "commitable": dev.commitable,
            }
            for dev in net.devices
        ],
    }


def network_to_json(net: Network, indent: int = 2) -> str:
    """
    Serializes a Network to the native JSON schema.

    Args:
        net (Network): Network to emit.
        indent (int): JSON indentation.

    Returns:
        str: JSON document accepted by `parse_network_json`.
    """
    return json.dumps(network_to_dict(net), indent=indent)
