import itertools

import numpy as np


def random_density_matrix(rng, dim, rank=None):
    rank = rank or dim
    X = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = X @ X.conj().T
    return rho / np.trace(rho).real


def random_ket(rng, dim):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_unitary(rng, dim):
    Z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    Q, R = np.linalg.qr(Z)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def brute_partial_trace(rho, dims, keep):
    """Sum over matching traced digits, one matrix element at a time."""
    keep = sorted(keep)
    traced = [i for i in range(len(dims)) if i not in keep]
    all_digits = list(itertools.product(*[range(d) for d in dims]))
    index = {d: i for i, d in enumerate(all_digits)}
    kept_digits = list(itertools.product(*[range(dims[i]) for i in keep]))
    traced_digits = list(itertools.product(*[range(dims[i]) for i in traced]))
    out = np.zeros((len(kept_digits), len(kept_digits)), dtype=complex)

    def full(k, t):
        d = [0] * len(dims)
        for pos, v in zip(keep, k):
            d[pos] = v
        for pos, v in zip(traced, t):
            d[pos] = v
        return index[tuple(d)]

    for r, kr in enumerate(kept_digits):
        for c, kc in enumerate(kept_digits):
            out[r, c] = sum(rho[full(kr, t), full(kc, t)] for t in traced_digits)
    return out


def concurrence_oracle(rho):
    """Textbook route: square roots of the (non-Hermitian) eigenvalues of rho rho~."""
    yy = np.kron([[0, -1j], [1j, 0]], [[0, -1j], [1j, 0]])
    ev = np.linalg.eigvals(rho @ yy @ rho.conj() @ yy)
    lam = np.sort(np.sqrt(np.abs(ev.real)))[::-1]
    return max(0.0, lam[0] - lam[1] - lam[2] - lam[3])
