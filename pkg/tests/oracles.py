"""Reference implementations used only by the tests.

Each one avoids the code path it checks: explicit index loops instead of
reshapes, Taylor series instead of eigendecomposition, the Hermitian
square-root route to concurrence instead of the spin-flip product.
"""
import itertools
import math

import numpy as np


def bits(index, n):
    """Spin states (0 up, 1 down) of ``index``, spin 1 first."""
    return tuple((index >> (n - 1 - k)) & 1 for k in range(n))


def kron_embed(site, op, n):
    """Embedding by explicit matrix elements: <a|O_site|b>."""
    dim = 2**n
    out = np.zeros((dim, dim), dtype=complex)
    for a in range(dim):
        ba = bits(a, n)
        for b in range(dim):
            bb = bits(b, n)
            if all(ba[k] == bb[k] for k in range(n) if k != site - 1):
                out[a, b] = op[ba[site - 1], bb[site - 1]]
    return out


def partial_trace_bruteforce(rho, m, n_site, n):
    """Double sum over full-basis indices, keeping spins ``m`` and ``n_site``."""
    out = np.zeros((4, 4), dtype=complex)
    dim = 2**n
    for a in range(dim):
        ba = bits(a, n)
        for b in range(dim):
            bb = bits(b, n)
            if any(ba[k] != bb[k] for k in range(n) if k not in (m - 1, n_site - 1)):
                continue
            out[2 * ba[m - 1] + ba[n_site - 1], 2 * bb[m - 1] + bb[n_site - 1]] += rho[a, b]
    return out


def hmq_bruteforce(d):
    """H_MQ summed term by term from explicitly embedded raising/lowering operators."""
    n = d.shape[0]
    plus = np.array([[0, 1], [0, 0]], dtype=complex)
    minus = plus.T
    dim = 2**n
    h = np.zeros((dim, dim), dtype=complex)
    for j, k in itertools.combinations(range(1, n + 1), 2):
        if d[j - 1, k - 1] == 0:
            continue
        pp = kron_embed(j, plus, n) @ kron_embed(k, plus, n)
        mm = kron_embed(j, minus, n) @ kron_embed(k, minus, n)
        h += -0.25 * d[j - 1, k - 1] * (pp + mm)
    return h


def expm_series(a, terms=80):
    """exp(a) by scaling and squaring of a Taylor series."""
    norm = np.max(np.abs(a)) * a.shape[0]
    s = max(0, int(math.ceil(math.log2(norm))) + 1) if norm > 0 else 0
    a = a / 2**s
    out = np.eye(a.shape[0], dtype=complex)
    term = np.eye(a.shape[0], dtype=complex)
    for k in range(1, terms):
        term = term @ a / k
        out = out + term
    for _ in range(s):
        out = out @ out
    return out


def _psd_sqrt(m):
    w, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    return (v * np.sqrt(np.clip(w, 0, None))) @ v.conj().T


def concurrence_hermitian(rho):
    """Concurrence from eigenvalues of sqrt(sqrt(rho) rho~ sqrt(rho))."""
    sy = np.array([[0, -1j], [1j, 0]])
    yy = np.kron(sy, sy)
    tilde = yy @ rho.conj() @ yy
    s = _psd_sqrt(rho)
    lam = np.sort(np.sqrt(np.clip(np.linalg.eigvalsh(s @ tilde @ s), 0, None)))[::-1]
    return max(0.0, lam[0] - lam[1] - lam[2] - lam[3])


def x_state_concurrence(rho):
    """Closed form for states with only diagonal and (0,3)/(1,2) coherences."""
    r = rho
    return 2 * max(
        0.0,
        abs(r[0, 3]) - math.sqrt(max(r[1, 1].real * r[2, 2].real, 0)),
        abs(r[1, 2]) - math.sqrt(max(r[0, 0].real * r[3, 3].real, 0)),
    )


def bell_projector():
    psi = np.zeros(4, dtype=complex)
    psi[0] = psi[3] = 1 / math.sqrt(2)
    return np.outer(psi, psi.conj())


def random_density_matrix(dim, rng, rank=None):
    rank = dim if rank is None else rank
    a = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def random_unitary(dim, rng):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(a)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def two_spin_closed_form(tau, p, d=1.0):
    """N = 2: J_0, J_2 (= J_-2) and C_12 from the 2x2 block algebra.

    On {|uu>, |dd>} the Hamiltonian is -(d/4) sigma_x, so the block of U is
    cos(d tau / 4) + i sin(d tau / 4) sigma_x; |ud>, |du> are untouched.
    ``p`` are the initial populations of |uu>, |ud>, |du>, |dd>.
    """
    p0, p1, p2, p3 = p
    phi = d * tau / 2
    j0 = (p0 - p3) * math.cos(phi) ** 2
    j2 = 0.5 * (p0 - p3) * math.sin(phi) ** 2
    c = max(0.0, abs(math.sin(phi)) * abs(p0 - p3) - 2 * math.sqrt(p1 * p2))
    return j0, j2, c
