"""Dipolar coupling constants and the double-quantum effective Hamiltonian."""
from dataclasses import dataclass

import numpy as np

__all__ = ["CouplingModel", "coupling_matrix", "build_hmq", "build_hmq_parts"]

NEAREST_NEIGHBOR = "nn"
ALL_PAIRS = "full"

_ALIASES = {
    "nn": NEAREST_NEIGHBOR,
    "nearest": NEAREST_NEIGHBOR,
    "nearestneighbor": NEAREST_NEIGHBOR,
    "nearest_neighbor": NEAREST_NEIGHBOR,
    "full": ALL_PAIRS,
    "all": ALL_PAIRS,
    "allpairs": ALL_PAIRS,
    "all_pairs": ALL_PAIRS,
}


@dataclass(frozen=True)
class CouplingModel:
    """Which spin pairs interact, and the nearest-neighbour constant in s^-1.

    ``variant`` is ``"nn"`` (nearest neighbours only) or ``"full"`` (all pairs,
    falling off as ``d_nn / |j-k|**3``).
    """

    variant: str = ALL_PAIRS
    d_nn: float = 1.0

    def __post_init__(self):
        key = str(self.variant).lower().replace("-", "_")
        if key not in _ALIASES:
            raise ValueError(f"unknown coupling model {self.variant!r}; use 'nn' or 'full'")
        object.__setattr__(self, "variant", _ALIASES[key])
        if not (np.isfinite(self.d_nn) and self.d_nn > 0):
            raise ValueError(f"d_nn must be positive, got {self.d_nn}")

    @classmethod
    def nearest_neighbor(cls, d_nn=1.0):
        return cls(NEAREST_NEIGHBOR, d_nn)

    @classmethod
    def all_pairs(cls, d_nn=1.0):
        return cls(ALL_PAIRS, d_nn)


def coupling_matrix(n_spins, model):
    """Symmetric ``N x N`` matrix of couplings ``D_jk`` (s^-1), zero diagonal.

    Row/column ``j-1`` corresponds to site ``j``.
    """
    if n_spins < 2:
        raise ValueError(f"need at least 2 spins, got {n_spins}")
    sites = np.arange(n_spins)
    dist = np.abs(sites[:, None] - sites[None, :])
    d = np.zeros((n_spins, n_spins))
    off = dist > 0
    if model.variant == ALL_PAIRS:
        d[off] = model.d_nn / dist[off].astype(float) ** 3
    else:
        d[dist == 1] = model.d_nn
    return d


def build_hmq_parts(d):
    """Return ``(H2, Hm2)``: the +2 and -2 quantum parts of the Hamiltonian.

    ``H2 = -1/4 sum_{j<k} D_jk I_j^+ I_k^+`` and ``Hm2 = H2^dagger``.
    """
    d = np.asarray(d, dtype=float)
    n = d.shape[0]
    if d.shape != (n, n) or n < 2:
        raise ValueError(f"coupling matrix must be square with N >= 2, got {d.shape}")
    if not np.array_equal(d, d.T) or np.any(np.diag(d) != 0):
        raise ValueError("coupling matrix must be symmetric with zero diagonal")
    dim = 2**n
    idx = np.arange(dim)
    h2 = np.zeros((dim, dim), dtype=complex)
    # I_j^+ I_k^+ maps |c> (both spins down) to |c with bits j,k cleared>, amplitude 1.
    for j in range(n):
        for k in range(j + 1, n):
            if d[j, k] == 0:
                continue
            bj = 1 << (n - 1 - j)
            bk = 1 << (n - 1 - k)
            cols = idx[(idx & bj != 0) & (idx & bk != 0)]
            h2[cols ^ bj ^ bk, cols] += -0.25 * d[j, k]
    return h2, h2.conj().T


def build_hmq(d):
    """Double-quantum effective Hamiltonian ``H_MQ = H2 + H2^dagger``."""
    h2, hm2 = build_hmq_parts(d)
    return h2 + hm2

