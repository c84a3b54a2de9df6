"""Two-qubit concurrence, tangle and the CKW monogamy check."""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, NumericalError, TraceDeficitWarning
from .hilbert import SIGMA_Y, DensityMatrix, partial_trace

ROUNDOFF = 1e-10
CKW_SLACK = 1e-9
_YY = np.kron(SIGMA_Y, SIGMA_Y)


@dataclass(frozen=True)
class ConcurrenceResult:
    value: float
    lambdas: tuple[float, float, float, float]
    # False when the input matrix was not positive semidefinite (e.g. closed-form
    # coefficients taken verbatim); the value then comes from eig(rho rho~) directly.
    physical: bool = True

    def __float__(self):
        return self.value


@dataclass(frozen=True)
class CkwReport:
    lhs: float
    rhs: float
    satisfied: bool
    trace: float = 1.0


def _matrix(rho, dim: int) -> np.ndarray:
    m = rho.elements if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    if m.shape != (dim, dim):
        raise ArgumentError(f"expected a {dim}x{dim} matrix, got shape {m.shape}")
    return m


def spin_flip(rho) -> np.ndarray:
    """``(sigma_y x sigma_y) rho* (sigma_y x sigma_y)``."""
    m = _matrix(rho, 4)
    return _YY @ m.conj() @ _YY


def _factor(m: np.ndarray, rank_tol: float) -> np.ndarray:
    """``W`` with ``W W^dag = m``, dropping eigen-directions at or below ``rank_tol``."""
    w, V = np.linalg.eigh(m)
    keep = w > rank_tol
    return V[:, keep] * np.sqrt(w[keep])


def concurrence(rho, positivity_tol: float = 1e-9, rank_tol: float = 1e-12) -> ConcurrenceResult:
    """Wootters concurrence ``max(0, l1 - l2 - l3 - l4)``.

    For positive input the ``l_i`` are the singular values of
    ``tau = W^T (sy x sy) W`` with ``rho = W W^dag``; their squares are the
    eigenvalues of the Hermitian ``sqrt(rho) rho~ sqrt(rho)``. Working with the
    factor keeps round-off in the null space of rank-deficient states from
    entering through a square root. Non-positive input falls back to the
    eigenvalues of ``rho rho~`` directly.
    """
    m = _matrix(rho, 4)
    m = 0.5 * (m + m.conj().T)
    physical = bool(np.linalg.eigvalsh(m)[0] >= -positivity_tol)
    try:
        if physical:
            W = _factor(m, rank_tol)
            lam = np.zeros(4)
            if W.shape[1]:
                sv = np.linalg.svd(W.T @ _YY @ W, compute_uv=False)
                lam[: sv.size] = sv
        else:
            ev = np.linalg.eigvals(m @ spin_flip(m))
            if np.max(np.abs(ev.imag)) > 1e-8:
                raise NumericalError(f"complex spectrum for rho rho~: {ev}")
            ev = ev.real
            if ev.min() < -ROUNDOFF:
                raise NumericalError(f"eigenvalue {ev.min():.3g} of rho rho~ is negative beyond round-off")
            lam = np.sqrt(np.clip(ev, 0.0, None))
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolver failed: {exc}") from exc
    lam = np.sort(lam)[::-1]
    value = float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))
    return ConcurrenceResult(value, tuple(float(x) for x in lam), physical)


def tangle(c) -> float:
    value = c.value if isinstance(c, ConcurrenceResult) else float(c)
    return value * value


def pure_bipartite_concurrence(rho_reduced) -> float:
    """``2 sqrt(det rho)`` of a one-qubit reduced state; exact when the global state is pure."""
    m = _matrix(rho_reduced, 2)
    tr = float(np.trace(m).real)
    if abs(tr - 1.0) > 1e-6:
        warnings.warn(f"reduced state has trace {tr:.9g}; 2*sqrt(det) taken as given", TraceDeficitWarning, stacklevel=2)
    det = float(m[0, 0].real * m[1, 1].real - abs(m[0, 1]) ** 2)
    return 2.0 * float(np.sqrt(max(0.0, det)))


def ckw_check(rho: DensityMatrix, focus: str = "C2", others: tuple[str, str] = ("C1", "A1")) -> CkwReport:
    """``C^2(focus, b) + C^2(focus, c) <= C^2(focus, bc)`` with the 2 sqrt(det) estimate on the right."""
    labels = {focus, *others}
    if len(labels) != 3 or set(rho.space.names) != labels or rho.space.dims != (2, 2, 2):
        raise ArgumentError(f"ckw_check needs a three-qubit state over {sorted(labels)}, got {rho.space.names}")
    b, c = others
    lhs = tangle(concurrence(partial_trace(rho, {focus, b}))) + tangle(concurrence(partial_trace(rho, {focus, c})))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TraceDeficitWarning)
        rhs = pure_bipartite_concurrence(partial_trace(rho, {focus})) ** 2
    return CkwReport(lhs, rhs, bool(lhs <= rhs + CKW_SLACK), rho.trace)
