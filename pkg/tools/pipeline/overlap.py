# ====== Standard Library Imports ======
from itertools import combinations

# ====== Internal Project Imports ======
from pipeline.exceptions import PipelineError
from pipeline.models import OverlapResult


def overlap_analysis(feasible_sets: dict[str, set]) -> OverlapResult:
    """
    Exact overlap between per-criterion sets of feasible binary vectors.

    Args:
        feasible_sets (dict[str, set]): Criterion tag to set of topology tuples.

    Returns:
        OverlapResult: Sizes, pairwise intersections (in key order), common and union counts.
    """
    sets = {name: {tuple(int(v) for v in x) for x in members} for name, members in feasible_sets.items()}
    lengths = {len(x) for members in sets.values() for x in members}
    if len(lengths) > 1:
        raise PipelineError(f"feasible sets mix vector lengths {sorted(lengths)}")

    pairwise = tuple((a, b, len(sets[a] & sets[b])) for a, b in combinations(sets, 2))
    values = list(sets.values())
    common = len(set.intersection(*values)) if values else 0
    union = len(set.union(*values)) if values else 0
    return OverlapResult(
        sizes=tuple((name, len(members)) for name, members in sets.items()),
        pairwise=pairwise,
        common=common,
        union=union,
    )
