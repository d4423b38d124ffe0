"""Multiple-quantum order decomposition, intensities J_n and the MQ signal."""
from dataclasses import dataclass

import numpy as np

from .exceptions import NumericalContractError
from .spin_basis import magnetizations, n_spins_of

__all__ = [
    "CoherenceSpectrum",
    "SignalParams",
    "order_matrix",
    "decompose_orders",
    "coherence_intensities",
    "signal",
]

IMAG_TOL = 1e-10


def order_matrix(n_spins):
    """Integer matrix of ``m(r) - m(c)``: the coherence order of element (r, c)."""
    m2 = (2 * magnetizations(n_spins)).astype(np.int64)
    return (m2[:, None] - m2[None, :]) // 2


def decompose_orders(a):
    """Split ``a`` into components ``{n: A_n}`` by coherence order.

    ``A_n`` keeps the elements whose bra/ket magnetizations differ by ``n``
    and is zero elsewhere, so ``sum(A_n) == a`` exactly. Every order in
    ``-N..N`` is present as a key.
    """
    a = np.asarray(a)
    n = n_spins_of(a)
    orders = order_matrix(n)
    return {k: np.where(orders == k, a, 0) for k in range(-n, n + 1)}


@dataclass(frozen=True)
class CoherenceSpectrum:
    """Intensities ``J_n`` for orders ``n = -N..N`` (``values[n + N]``)."""

    n_spins: int
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (2 * self.n_spins + 1,):
            raise ValueError(f"expected {2 * self.n_spins + 1} intensities, got {v.shape}")
        object.__setattr__(self, "values", v)

    @property
    def orders(self):
        return range(-self.n_spins, self.n_spins + 1)

    def __getitem__(self, n):
        if not -self.n_spins <= n <= self.n_spins:
            return 0.0
        return float(self.values[n + self.n_spins])

    def as_dict(self):
        return {n: self[n] for n in self.orders}

    def total(self):
        return float(self.values.sum())

    def symmetry_residual(self):
        return float(np.max(np.abs(self.values - self.values[::-1])))


@dataclass(frozen=True, eq=False)
class SignalParams:
    """RF phase offset ``delta_omega`` (rad/s) and evolution time(s) ``t`` (s)."""

    delta_omega: float
    t: float | np.ndarray = 0.0

    def __post_init__(self):
        if not self.delta_omega > 0:
            raise ValueError(f"delta_omega must be positive, got {self.delta_omega}")

    def __eq__(self, other):
        if not isinstance(other, SignalParams):
            return NotImplemented
        return self.delta_omega == other.delta_omega and np.array_equal(self.t, other.t)


def coherence_intensities(rho_tau, rho_z_tau):
    """``J_n = Re Tr[rho(tau) rho_zn(tau)]`` for every order ``n``.

    The masked trace is evaluated without forming the order components:
    ``Tr[rho A_n] = sum over (r, c) of order n of rho[c, r] * A[r, c]``.
    """
    rho_tau = np.asarray(rho_tau)
    rho_z_tau = np.asarray(rho_z_tau)
    if rho_tau.shape != rho_z_tau.shape:
        raise ValueError(f"dimension mismatch: {rho_tau.shape} vs {rho_z_tau.shape}")
    n = n_spins_of(rho_tau)
    prod = (rho_tau.T * rho_z_tau).ravel()
    bins = (order_matrix(n) + n).ravel()
    re = np.bincount(bins, weights=prod.real, minlength=2 * n + 1)
    im = np.bincount(bins, weights=prod.imag, minlength=2 * n + 1)
    worst = float(np.max(np.abs(im)))
    if worst > IMAG_TOL:
        raise NumericalContractError(f"J_n has imaginary part {worst:.3e}")
    return CoherenceSpectrum(n, re)


def signal(spectrum, params):
    """MQ signal ``S(tau, t) = sum_n exp(-i n dw t) J_n(tau)``.

    ``params.t`` may be an array, in which case an array is returned.
    """
    t = np.asarray(params.t, dtype=float)
    orders = np.arange(-spectrum.n_spins, spectrum.n_spins + 1)
    phases = np.exp(-1j * params.delta_omega * np.multiply.outer(t, orders))
    s = phases @ spectrum.values
    return complex(s) if s.ndim == 0 else s
