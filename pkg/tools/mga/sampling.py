# ====== Code Summary ======
# Latin hypercube weights for random-vector MGA. Each dimension is split into n_samples equal
# strata of [-1, 1]; a random permutation assigns one stratum per sample and a uniform draw
# places the sample inside it.

# ====== Third-Party Library Imports ======
import numpy as np


def lhs_weights(n_dims: int, n_samples: int, seed: int) -> np.ndarray:
    """
    Draws Latin hypercube weight vectors in [-1, 1]^n_dims.

    Args:
        n_dims (int): Dimension of every vector.
        n_samples (int): Number of vectors.
        seed (int): Seed of the generator.

    Returns:
        np.ndarray: Array of shape (n_samples, n_dims).
    """
    if n_dims < 1 or n_samples < 1:
        raise ValueError(f"n_dims and n_samples must be positive, got {n_dims} and {n_samples}")
    rng = np.random.default_rng(seed)
    unit = np.empty((n_samples, n_dims))
    for dim in range(n_dims):
        strata = rng.permutation(n_samples)
        unit[:, dim] = (strata + rng.random(n_samples)) / n_samples
    return 2.0 * unit - 1.0


def stratum_of(weights: np.ndarray, n_samples: int) -> np.ndarray:
    """Stratum index (0..n_samples-1) of every weight."""
    unit = (np.asarray(weights, dtype=float) + 1.0) / 2.0
    return np.minimum(np.floor(unit * n_samples).astype(int), n_samples - 1)
