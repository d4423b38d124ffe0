"""Unitary evolution under a time-independent Hermitian Hamiltonian.

The Hamiltonian is diagonalized once; propagators for any time are then
``V exp(-i lambda tau) V^dagger``.
"""
from typing import NamedTuple

import numpy as np

from .exceptions import ContractViolation

__all__ = ["EigenSystem", "eigendecompose", "propagator_at", "evolve", "hermiticity_residual"]

HERMITIAN_TOL = 1e-12


class EigenSystem(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def to_eigenbasis(self, op):
        """``V^dagger op V``."""
        v = self.eigenvectors
        return v.conj().T @ op @ v

    def evolve_from_eigenbasis(self, op_eig, tau):
        """Evolve an operator already expressed in the eigenbasis.

        Equivalent to ``evolve(op, propagator_at(self, tau))`` without forming
        ``U`` explicitly.
        """
        phase = np.exp(-1j * self.eigenvalues * tau)
        v = self.eigenvectors
        inner = phase[:, None] * op_eig * phase.conj()[None, :]
        return v @ inner @ v.conj().T


def hermiticity_residual(h):
    h = np.asarray(h)
    return float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0


def eigendecompose(h):
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Raises
    ------
    ContractViolation
        If ``max|H - H^dagger|`` exceeds 1e-12.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    res = hermiticity_residual(h)
    if res > HERMITIAN_TOL:
        raise ContractViolation(f"Hamiltonian is not Hermitian (residual {res:.3e})")
    lam, v = np.linalg.eigh(h)
    return EigenSystem(lam, v)


def propagator_at(es, tau):
    """``U(tau) = exp(-i tau H)`` from the spectral decomposition."""
    if not np.isfinite(tau):
        raise ValueError(f"tau must be finite, got {tau}")
    v = es.eigenvectors
    phase = np.exp(-1j * es.eigenvalues * tau)
    return (v * phase[None, :]) @ v.conj().T


def evolve(rho, u):
    """``U rho U^dagger``."""
    rho = np.asarray(rho)
    u = np.asarray(u)
    if rho.shape != u.shape or rho.ndim != 2:
        raise ValueError(f"dimension mismatch: rho {rho.shape} vs U {u.shape}")
    return u @ rho @ u.conj().T
