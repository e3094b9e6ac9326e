# ====== Code Summary ======
# Data model of a transmission network: buses, branches and devices (generators and loads, all
# expressed as power injections), plus the derived adjacency maps used by every formulation:
# branches leaving a bus (origin side), branches entering a bus (destination side) and devices
# attached to a bus. All quantities are per-unit on `Network.base_mva`. Instances are immutable.

# ====== Standard Library Imports ======
import math
from dataclasses import dataclass, field
from functools import cached_property

# ====== Third-Party Library Imports ======
import numpy as np


@dataclass(frozen=True)
class NetworkDefaults:
    """
    Defaults applied by the readers when a source omits a field.

    Attributes:
        v_min (float): Lower voltage bound (pu).
        v_max (float): Upper voltage bound (pu).
        q_ratio (float): Reactive bounds default to ±q_ratio·|p_max|.
        unlimited_rating_mva (float): Rating used for MATPOWER branches with rateA = 0.
        base_kv (float): Base voltage used when a bus omits it.
    """
    v_min: float = 0.9
    v_max: float = 1.1
    q_ratio: float = 0.3
    unlimited_rating_mva: float = 9900.0
    base_kv: float = 1.0


@dataclass(frozen=True)
class Bus:
    """
    Electrical node.

    Attributes:
        id (int): Bus identifier, unique within a network.
        base_kv (float): Base voltage (kV).
        v_min (float): Lower voltage magnitude bound (pu).
        v_max (float): Upper voltage magnitude bound (pu).
    """
    id: int
    base_kv: float = 1.0
    v_min: float = 0.9
    v_max: float = 1.1


@dataclass(frozen=True)
class Branch:
    """
    Line or transformer between two buses.

    Attributes:
        id (int): Branch identifier.
        origin (int): Origin bus id.
        dest (int): Destination bus id.
        b (float): Series susceptance (pu), positive for inductive branches.
        g (float): Series conductance (pu).
        p_max (float): Thermal limit on real power flow (pu).
        switchable (bool): Whether formulations may change the on/off state.
        x0 (int): Initial on/off state.
    """
    id: int
    origin: int
    dest: int
    b: float
    g: float = 0.0
    p_max: float = 1.0
    switchable: bool = True
    x0: int = 1


@dataclass(frozen=True)
class Device:
    """
    Power injection at a bus: generators are positive, loads negative.

    Attributes:
        id (int): Device identifier.
        bus (int): Bus id the device is attached to.
        cost (float): Linear cost per unit of output.
        p_min (float): Lower real power bound (pu).
        p_max (float): Upper real power bound (pu).
        q_min (float): Lower reactive power bound (pu).
        q_max (float): Upper reactive power bound (pu).
        ramp (float): Maximum change of output between consecutive periods (pu).
        commitable (bool): Whether unit commitment may switch the device off.
    """
    id: int
    bus: int
    cost: float
    p_min: float
    p_max: float
    q_min: float = 0.0
    q_max: float = 0.0
    ramp: float = math.inf
    commitable: bool = False

    @property
    def is_fixed(self) -> bool:
        return self.p_min == self.p_max

    @property
    def is_fixed_load(self) -> bool:
        return self.is_fixed and self.p_max < 0


@dataclass(frozen=True)
class Diagnostic:
    """
    One finding of `validate_network`.

    Attributes:
        severity (str): "error" for invariant violations.
        entity (str): "bus", "branch", "device" or "network".
        entity_id (int | None): Identifier of the offending entity.
        message (str): Human readable description.
    """
    severity: str
    entity: str
    entity_id: int | None
    message: str

    def __str__(self) -> str:
        ref = f"{self.entity} {self.entity_id}" if self.entity_id is not None else self.entity
        return f"[{self.severity}] {ref}: {self.message}"


@dataclass(frozen=True)
class Network:
    """
    Immutable network with derived adjacency.

    Attributes:
        buses (tuple[Bus, ...]): Buses, in source order.
        branches (tuple[Branch, ...]): Branches, in source order.
        devices (tuple[Device, ...]): Devices, in source order.
        base_mva (float): System base power (MW).
        name (str): Case name.
        defaults_applied (tuple[str, ...]): Fields filled in by reader defaults.
    """
    buses: tuple[Bus, ...]
    branches: tuple[Branch, ...] = ()
    devices: tuple[Device, ...] = ()
    base_mva: float = 100.0
    name: str = ""
    defaults_applied: tuple[str, ...] = field(default=(), compare=False)

    # ------------------------------------------------------------------ adjacency
    @cached_property
    def bus_index(self) -> dict[int, int]:
        """Bus id → position in `buses` (first occurrence wins on duplicates)."""
        index: dict[int, int] = {}
        for pos, bus in enumerate(self.buses):
            index.setdefault(bus.id, pos)
        return index

    @cached_property
    def branches_from(self) -> dict[int, tuple[int, ...]]:
        """Bus id → positions of branches whose origin is that bus."""
        return self._group(self.branches, lambda br: br.origin)

    @cached_property
    def branches_to(self) -> dict[int, tuple[int, ...]]:
        """Bus id → positions of branches whose destination is that bus."""
        return self._group(self.branches, lambda br: br.dest)

    @cached_property
    def devices_at(self) -> dict[int, tuple[int, ...]]:
        """Bus id → positions of devices attached to that bus."""
        return self._group(self.devices, lambda dev: dev.bus)

    def _group(self, items, key) -> dict[int, tuple[int, ...]]:
        groups: dict[int, list[int]] = {bus.id: [] for bus in self.buses}
        for pos, item in enumerate(items):
            bus_id = key(item)
            if bus_id in groups:
                groups[bus_id].append(pos)
        return {bus_id: tuple(positions) for bus_id, positions in groups.items()}

    def incident_branches(self, bus_id: int) -> tuple[int, ...]:
        return self.branches_from.get(bus_id, ()) + self.branches_to.get(bus_id, ())

    def degree(self, bus_id: int) -> int:
        return len(self.incident_branches(bus_id))

    # ------------------------------------------------------------------ sizes
    @property
    def n_buses(self) -> int:
        return len(self.buses)

    @property
    def n_branches(self) -> int:
        return len(self.branches)

    @property
    def n_devices(self) -> int:
        return len(self.devices)

    @property
    def reference_bus(self) -> int:
        """Position of the lowest-id bus, whose angle is fixed to zero."""
        return min(range(self.n_buses), key=lambda pos: self.buses[pos].id)

    # ------------------------------------------------------------------ vectors
    @cached_property
    def origin_index(self) -> np.ndarray:
        return np.array([self.bus_index[br.origin] for br in self.branches], dtype=int)

    @cached_property
    def dest_index(self) -> np.ndarray:
        return np.array([self.bus_index[br.dest] for br in self.branches], dtype=int)

    @cached_property
    def device_bus_index(self) -> np.ndarray:
        return np.array([self.bus_index[dev.bus] for dev in self.devices], dtype=int)

    def branch_vector(self, attr: str) -> np.ndarray:
        return np.array([getattr(br, attr) for br in self.branches], dtype=float)

    def device_vector(self, attr: str) -> np.ndarray:
        return np.array([getattr(dev, attr) for dev in self.devices], dtype=float)

    def bus_vector(self, attr: str) -> np.ndarray:
        return np.array([getattr(bus, attr) for bus in self.buses], dtype=float)

    def initial_topology(self) -> np.ndarray:
        return np.array([br.x0 for br in self.branches], dtype=int)
