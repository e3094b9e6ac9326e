# ====== Code Summary ======
# Invariant checks over a `Network`. `validate_network` never raises: it returns one
# `Diagnostic` per violated invariant, so that the readers and the CLI can decide what to do.

# ====== Standard Library Imports ======
from collections import Counter

# ====== Internal Project Imports ======
from gridnet.models import Network, Diagnostic


def _duplicates(ids) -> list[int]:
    return sorted(i for i, count in Counter(ids).items() if count > 1)


def validate_network(net: Network) -> list[Diagnostic]:
    """
    Checks every type invariant of the network.

    Args:
        net (Network): Network to check.

    Returns:
        list[Diagnostic]: Empty iff all invariants hold.
    """
    diagnostics: list[Diagnostic] = []

    def error(entity: str, entity_id: int | None, message: str):
        diagnostics.append(Diagnostic("error", entity, entity_id, message))

    if net.base_mva <= 0:
        error("network", None, f"base_mva must be positive, got {net.base_mva}")

    for dup in _duplicates(bus.id for bus in net.buses):
        error("bus", dup, "duplicate bus id")
    for dup in _duplicates(br.id for br in net.branches):
        error("branch", dup, "duplicate branch id")
    for dup in _duplicates(dev.id for dev in net.devices):
        error("device", dup, "duplicate device id")

    for bus in net.buses:
        if bus.v_min <= 0:
            error("bus", bus.id, f"v_min must be positive, got {bus.v_min}")
        if bus.v_min > bus.v_max:
            error("bus", bus.id, f"v_min {bus.v_min} exceeds v_max {bus.v_max}")

    known = set(net.bus_index)
    for br in net.branches:
        if br.origin == br.dest:
            error("branch", br.id, f"origin and destination are both bus {br.origin}")
        for end in (br.origin, br.dest):
            if end not in known:
                error("branch", br.id, f"unknown bus {end}")
        if not br.p_max > 0:
            error("branch", br.id, f"p_max must be positive, got {br.p_max}")
        if br.x0 not in (0, 1):
            error("branch", br.id, f"x0 must be 0 or 1, got {br.x0}")

    for dev in net.devices:
        if dev.bus not in known:
            error("device", dev.id, f"unknown bus {dev.bus}")
        if dev.p_min > dev.p_max:
            error("device", dev.id, f"p_min {dev.p_min} exceeds p_max {dev.p_max}")
        if dev.q_min > dev.q_max:
            error("device", dev.id, f"q_min {dev.q_min} exceeds q_max {dev.q_max}")
        if dev.ramp < 0:
            error("device", dev.id, f"ramp must be non-negative, got {dev.ramp}")

    return diagnostics
