"""Zeeman product basis and single-spin operators for a chain of spin-1/2.

Conventions used throughout the package:

* Operators are dense ``complex128`` arrays of shape ``(2**N, 2**N)``, with
  ``hbar = 1``.
* Spin 1 is the most significant bit of a basis index. A bit value of 0 means
  spin up (m = +1/2), 1 means spin down (m = -1/2). Index 0 is therefore the
  all-up state.
* Sites are labelled 1..N at every public boundary.
"""
from functools import lru_cache

import numpy as np

__all__ = [
    "single_site_ops",
    "embed",
    "total_iz",
    "magnetization",
    "magnetizations",
    "n_spins_of",
    "check_site",
]


def _frozen(a):
    a.setflags(write=False)
    return a


@lru_cache(maxsize=None)
def _single_site_ops():
    plus = np.array([[0, 1], [0, 0]], dtype=complex)
    minus = plus.T.copy()
    z = np.diag([0.5, -0.5]).astype(complex)
    return _frozen(plus), _frozen(minus), _frozen(z)


def single_site_ops():
    """Return the spin-1/2 raising, lowering and z operators ``(plus, minus, z)``.

    The arrays are read-only; copy them before modifying.
    """
    return _single_site_ops()


def n_spins_of(op):
    """Number of spins ``N`` for a ``2**N`` x ``2**N`` operator."""
    op = np.asarray(op)
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {op.shape}")
    dim = op.shape[0]
    n = dim.bit_length() - 1
    if dim < 2 or 1 << n != dim:
        raise ValueError(f"dimension {dim} is not a power of two >= 2")
    return n


def check_site(site, n_spins):
    if not isinstance(site, (int, np.integer)) or isinstance(site, bool):
        raise TypeError(f"site must be an integer, got {site!r}")
    if not 1 <= site <= n_spins:
        raise ValueError(f"site {site} out of range 1..{n_spins}")


def embed(site, local_op, n_spins):
    """Place a 2x2 operator on ``site`` (1-based) of an ``n_spins`` chain.

    Returns ``Id x ... x local_op x ... x Id`` with spin 1 as the leftmost
    Kronecker factor.
    """
    if n_spins < 1:
        raise ValueError("n_spins must be >= 1")
    check_site(site, n_spins)
    local_op = np.asarray(local_op, dtype=complex)
    if local_op.shape != (2, 2):
        raise ValueError(f"local_op must be 2x2, got {local_op.shape}")
    left = np.eye(2 ** (site - 1))
    right = np.eye(2 ** (n_spins - site))
    return np.kron(np.kron(left, local_op), right)


@lru_cache(maxsize=32)
def _popcounts(n_spins):
    idx = np.arange(2**n_spins, dtype=np.int64)
    counts = np.zeros_like(idx)
    for bit in range(n_spins):
        counts += (idx >> bit) & 1
    return _frozen(counts)


def magnetization(index, n_spins):
    """Total z-magnetization of basis state ``index``: ``(N - 2*popcount)/2``."""
    if not 0 <= index < 2**n_spins:
        raise ValueError(f"index {index} out of range for {n_spins} spins")
    return (n_spins - 2 * bin(int(index)).count("1")) / 2


def magnetizations(n_spins):
    """Vector of magnetizations for all ``2**n_spins`` basis states."""
    return (n_spins - 2 * _popcounts(n_spins)) / 2


def total_iz(n_spins):
    """Total z spin operator, diagonal in the computational basis."""
    if n_spins < 1:
        raise ValueError("n_spins must be >= 1")
    return np.diag(magnetizations(n_spins).astype(complex))
