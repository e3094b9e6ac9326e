# ====== Code Summary ======
# Topology checks on a switching decision: island counting with a union-find structure and the
# minimum-degree heuristic that the switching formulation embeds as its anti-islanding constraint.

# ====== Third-Party Library Imports ======
import numpy as np
from networkx.utils import UnionFind

# ====== Internal Project Imports ======
from gridnet.models import Network


def _as_topology(net: Network, x) -> np.ndarray:
    x = np.rint(np.asarray(x, dtype=float)).astype(int)
    if x.shape != (net.n_branches,):
        raise ValueError(f"Topology has {x.size} entries, network has {net.n_branches} branches")
    return x


def island_labels(net: Network, x) -> np.ndarray:
    """
    Labels every bus with the position of the lowest-position bus of its island.

    Args:
        net (Network): Network.
        x (array-like): On/off state per branch.

    Returns:
        np.ndarray: One label per bus position.
    """
    x = _as_topology(net, x)
    forest = UnionFind(range(net.n_buses))
    for pos in np.flatnonzero(x):
        forest.union(int(net.origin_index[pos]), int(net.dest_index[pos]))
    labels = np.empty(net.n_buses, dtype=int)
    for island in forest.to_sets():
        root = min(island)
        for pos in island:
            labels[pos] = root
    return labels


def connectivity_check(net: Network, x) -> tuple[int, bool]:
    """
    Counts islands and evaluates the minimum-degree heuristic.

    Args:
        net (Network): Network.
        x (array-like): On/off state per branch.

    Returns:
        tuple[int, bool]: (island count, whether every bus keeps min(2, degree) connected branches).
    """
    x = _as_topology(net, x)
    island_count = len(set(island_labels(net, x).tolist()))
    min_degree_satisfied = all(
        sum(x[pos] for pos in net.incident_branches(bus.id)) >= min(2, net.degree(bus.id))
        for bus in net.buses
    )
    return island_count, min_degree_satisfied
