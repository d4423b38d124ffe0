"""Two-spin reduced states, Wootters concurrence and entanglement of formation."""
from dataclasses import dataclass

import numpy as np

from .exceptions import NumericalContractError
from .spin_basis import check_site, n_spins_of

__all__ = [
    "ReducedState",
    "ConcurrenceResult",
    "reduce_to_pair",
    "concurrence",
    "entanglement_of_formation",
    "SIGMA_YY",
]

SIGMA_YY = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]]))
SIGMA_YY.setflags(write=False)

STATE_TOL = 1e-10
NEG_EIG_TOL = 1e-9
ZERO_CONCURRENCE = 1e-9
_RANK_TOL = 64 * np.finfo(float).eps


@dataclass(frozen=True)
class ReducedState:
    """4x4 density matrix of spins ``pair = (m, n)``, basis uu, ud, du, dd.

    The first tensor slot is spin ``m``.
    """

    pair: tuple
    rho: np.ndarray

    def __post_init__(self):
        rho = np.asarray(self.rho, dtype=complex)
        if rho.shape != (4, 4):
            raise ValueError(f"reduced state must be 4x4, got {rho.shape}")
        object.__setattr__(self, "rho", rho)

    def min_eigenvalue(self):
        return float(np.linalg.eigvalsh(0.5 * (self.rho + self.rho.conj().T))[0])

    def validate(self):
        """Raise ``NumericalContractError`` unless rho is a density matrix."""
        herm = float(np.max(np.abs(self.rho - self.rho.conj().T)))
        if herm > STATE_TOL:
            raise NumericalContractError(f"reduced state not Hermitian (residual {herm:.3e})")
        tr = np.trace(self.rho)
        if abs(tr - 1) > STATE_TOL:
            raise NumericalContractError(f"reduced state trace {tr.real:.12g} != 1")
        lo = self.min_eigenvalue()
        if lo < -NEG_EIG_TOL:
            raise NumericalContractError(f"reduced state has eigenvalue {lo:.3e}")
        return self


@dataclass(frozen=True)
class ConcurrenceResult:
    c: float
    lambdas: np.ndarray
    e_f: float


def reduce_to_pair(rho, m, n):
    """Trace out every spin except ``m`` and ``n`` (1-based, ``m < n``)."""
    rho = np.asarray(rho)
    N = n_spins_of(rho)
    check_site(m, N)
    check_site(n, N)
    if m >= n:
        raise ValueError(f"need m < n, got pair ({m}, {n})")
    keep = [m - 1, n - 1]
    rest = [k for k in range(N) if k not in keep]
    t = rho.reshape((2,) * (2 * N))
    t = t.transpose(keep + rest + [N + k for k in keep] + [N + k for k in rest])
    env = 2 ** (N - 2)
    red = np.einsum("aibi->ab", t.reshape(4, env, 4, env))
    return ReducedState((m, n), red)


def concurrence(rs):
    """Wootters concurrence of a two-qubit state.

    ``C = max(0, l1 - l2 - l3 - l4)`` where the ``l`` are, in descending
    order, the square roots of the eigenvalues of
    ``rho (sy x sy) rho* (sy x sy)``. They are obtained as the singular values
    of ``W^T (sy x sy) W`` for ``rho = W W^dagger``, which avoids taking square
    roots of rounding noise. Values below 1e-9 are reported as exactly 0.

    Raises
    ------
    NumericalContractError
        If ``rho`` has an eigenvalue below -1e-9.
    """
    rho = rs.rho if isinstance(rs, ReducedState) else np.asarray(rs, dtype=complex)
    w, v = np.linalg.eigh(0.5 * (rho + rho.conj().T))
    if w[0] < -NEG_EIG_TOL:
        raise NumericalContractError(f"state has eigenvalue {w[0]:.3e}")
    # eigenvalues at rounding level carry no information
    keep = w > _RANK_TOL * max(w[-1], 0.0)
    wm = v[:, keep] * np.sqrt(w[keep])
    sv = np.linalg.svd(wm.T @ SIGMA_YY @ wm, compute_uv=False)
    lambdas = np.zeros(4)
    lambdas[: sv.size] = sv
    c = lambdas[0] - lambdas[1:].sum()
    c = 0.0 if c < ZERO_CONCURRENCE else min(float(c), 1.0)
    return ConcurrenceResult(c, lambdas, entanglement_of_formation(c))


def entanglement_of_formation(c):
    """Entanglement of formation (ebits) as a function of concurrence ``c``."""
    if not -1e-12 <= c <= 1 + 1e-12:
        raise ValueError(f"concurrence must lie in [0, 1], got {c}")
    c = min(max(float(c), 0.0), 1.0)
    x = 0.5 * (1 + np.sqrt(1 - c * c))
    if x >= 1.0:
        return 0.0
    return float(-x * np.log2(x) - (1 - x) * np.log2(1 - x))
