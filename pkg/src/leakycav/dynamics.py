"""Jaynes-Cummings dynamics with zero-temperature cavity leakage.

Times are measured in units of ``1/g``, so a time value is the Rabi angle
``gt`` and leakage constants enter as ``kappa/g``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import ArgumentError, ConfigurationError, NumericalError, NumericalFailure
from .hilbert import (
    DensityMatrix,
    Ket,
    Kind,
    OperatorMatrix,
    SpaceSpec,
    destroy,
    embed,
    sigma_minus,
    sigma_plus,
)

MAX_DT_TIMES_G = 0.01


@dataclass(frozen=True)
class CouplingParams:
    g: float = 1.0
    pairs: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(tuple(p) for p in self.pairs))
        if not self.g > 0:
            raise ConfigurationError(f"coupling g must be positive, got {self.g}")
        labels = [label for pair in self.pairs for label in pair]
        if len(set(labels)) != len(labels):
            raise ConfigurationError(f"a label appears in more than one coupled pair: {self.pairs}")


@dataclass(frozen=True)
class DissipationParams:
    kappa: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "kappa", dict(self.kappa))
        for name, k in self.kappa.items():
            if not k >= 0:
                raise ConfigurationError(f"leakage constant for {name} must be >= 0, got {k}")


@dataclass(frozen=True)
class IntegratorConfig:
    dt: float = 1e-3
    method: str = "rk4"
    positivity_tol: float = 1e-7
    renormalize_trace: bool = False
    allow_large_step: bool = False
    trace_tol: float = 1e-8

    def __post_init__(self):
        if self.method != "rk4":
            raise ConfigurationError(f"unsupported integration method {self.method!r}")
        if not self.dt > 0:
            raise ConfigurationError(f"dt must be positive, got {self.dt}")


def build_jc_hamiltonian(space: SpaceSpec, params: CouplingParams) -> OperatorMatrix:
    """Resonant interaction ``g (sigma+ a + sigma- a^dag)`` summed over the coupled pairs."""
    H = np.zeros((space.total_dim, space.total_dim), dtype=complex)
    for cav, at in params.pairs:
        if space[cav].kind is not Kind.CAVITY:
            raise ConfigurationError(f"{cav} is paired as a cavity but is a {space[cav].kind.value}")
        if space[at].kind is not Kind.ATOM:
            raise ConfigurationError(f"{at} is paired as an atom but is a {space[at].kind.value}")
        a = embed(destroy(space[cav].dim), space, cav).elements
        sp = embed(sigma_plus(), space, at).elements
        term = sp @ a
        H += params.g * (term + term.conj().T)
    return OperatorMatrix(space, H)


def excitation_number(space: SpaceSpec) -> OperatorMatrix:
    N = np.zeros((space.total_dim, space.total_dim), dtype=complex)
    for sub in space.subsystems:
        if sub.kind is Kind.CAVITY:
            a = destroy(sub.dim)
            N += embed(a.conj().T @ a, space, sub).elements
        else:
            N += embed(sigma_plus() @ sigma_minus(), space, sub).elements
    return OperatorMatrix(space, N)


def evolve_unitary(state, H: OperatorMatrix, t: float):
    """Apply ``exp(-iHt)`` to a ket or density matrix via the eigendecomposition of H."""
    if H.hermiticity_error() > 1e-10:
        raise NumericalError(f"Hamiltonian is not Hermitian (error {H.hermiticity_error():.3g})")
    if state.space != H.space:
        raise ArgumentError("state and Hamiltonian live on different spaces")
    w, V = np.linalg.eigh(H.elements)
    U = (V * np.exp(-1j * w * t)) @ V.conj().T
    if isinstance(state, Ket):
        return Ket(state.space, U @ state.amplitudes, normalized=state.normalized)
    out = U @ state.elements @ U.conj().T
    return DensityMatrix(state.space, 0.5 * (out + out.conj().T))


def rabi_evolution_paper(state: Ket, pair: tuple[str, str], gt: float) -> Ket:
    """Real-rotation convention of the closed-form solutions.

    ``|e,0> -> cos|e,0> + sin|g,1>`` and ``|g,1> -> cos|g,1> - sin|e,0>``;
    ``|g,0>`` is stationary. Amplitude on ``|e,1>`` or higher photon numbers is
    outside the supported sector.
    """
    space = state.space
    cav, at = pair
    if space[cav].kind is not Kind.CAVITY or space[at].kind is not Kind.ATOM:
        raise ArgumentError(f"pair {pair} must be (cavity, atom)")
    ic, ia = space.position(cav), space.position(at)
    c, s = math.cos(gt), math.sin(gt)
    out = np.zeros_like(state.amplitudes)
    for index, amp in enumerate(state.amplitudes):
        if amp == 0:
            continue
        digits = list(space.decode(index))
        n, a = digits[ic], digits[ia]
        if (n, a) == (0, 0):
            out[index] += amp
            continue
        if (n, a) not in ((0, 1), (1, 0)):
            if abs(amp) > 1e-12:
                raise ArgumentError(f"state has amplitude outside the single-excitation sector of {pair}")
            continue
        partner = digits.copy()
        partner[ic], partner[ia] = a, n
        j = space.encode(partner)
        if (n, a) == (0, 1):  # |e,0>
            out[index] += c * amp
            out[j] += s * amp
        else:  # |g,1>
            out[index] += c * amp
            out[j] -= s * amp
    return Ket(space, out, normalized=state.normalized)


class _Generator:
    """Precomputed pieces of ``drho/dt = K rho + rho K^dag + sum 2 kappa a rho a^dag``."""

    def __init__(self, H: OperatorMatrix, diss: DissipationParams):
        space = H.space
        K = -1j * H.elements.copy()
        self.jumps = []
        for name, k in diss.kappa.items():
            if space[name].kind is not Kind.CAVITY:
                raise ConfigurationError(f"leakage given for {name}, which is not a cavity")
            if k == 0:
                continue
            a = embed(destroy(space[name].dim), space, name).elements
            K -= k * (a.conj().T @ a)
            self.jumps.append((2.0 * k, a, a.conj().T))
        self.K = K
        self.Kdag = K.conj().T

    def __call__(self, rho: np.ndarray) -> np.ndarray:
        out = self.K @ rho + rho @ self.Kdag
        for rate, a, ad in self.jumps:
            out += rate * (a @ rho @ ad)
        return out


def lindblad_rhs(rho: DensityMatrix, H: OperatorMatrix, diss: DissipationParams) -> np.ndarray:
    """``-i[H, rho] + sum_j kappa_j (2 a rho a^dag - a^dag a rho - rho a^dag a)``."""
    if rho.space != H.space:
        raise ArgumentError("rho and H live on different spaces")
    return _Generator(H, diss)(np.asarray(rho.elements))


def _rk4_step(f, rho, h):
    k1 = f(rho)
    k2 = f(rho + 0.5 * h * k1)
    k3 = f(rho + 0.5 * h * k2)
    k4 = f(rho + h * k3)
    return rho + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


def integrate_master_equation(
    rho0: DensityMatrix,
    H: OperatorMatrix,
    diss: DissipationParams,
    t_final: float,
    cfg: IntegratorConfig = IntegratorConfig(),
    sample_times: Sequence[float] | None = None,
    g: float = 1.0,
) -> list[tuple[float, DensityMatrix]]:
    """Fixed-step RK4 for the full master equation, no secular approximation.

    Steps are shortened so every sample time is hit exactly; no step exceeds
    ``cfg.dt``. Returns ``(t, rho)`` for each sample time (``t_final`` alone
    when none are given).
    """
    if t_final < 0:
        raise ConfigurationError(f"t_final must be >= 0, got {t_final}")
    if cfg.dt * g > MAX_DT_TIMES_G and not cfg.allow_large_step:
        raise ConfigurationError(
            f"dt*g = {cfg.dt * g:.3g} exceeds {MAX_DT_TIMES_G}; set allow_large_step to override"
        )
    if not rho0.is_positive(cfg.positivity_tol) or abs(rho0.trace - 1) > 1e-9:
        raise ArgumentError("initial state must be a valid density matrix")
    times = [t_final] if sample_times is None else [float(t) for t in sample_times]
    if any(b < a for a, b in zip(times, times[1:])):
        raise ArgumentError("sample_times must be non-decreasing")
    if times and (times[0] < 0 or times[-1] > t_final + 1e-12):
        raise ArgumentError("sample_times must lie in [0, t_final]")

    f = _Generator(H, diss)
    rho = np.array(rho0.elements)
    t = 0.0
    out = []
    record = len(times)
    if not times or times[-1] < t_final:
        times.append(t_final)
    for i, target in enumerate(times):
        span = target - t
        if span > 0:
            n = max(1, math.ceil(span / cfg.dt - 1e-9))
            h = span / n
            for _ in range(n):
                rho = _rk4_step(f, rho, h)
                rho = 0.5 * (rho + rho.conj().T)
                if cfg.renormalize_trace:
                    rho = rho / np.trace(rho).real
            t = target
        lowest = np.linalg.eigvalsh(rho)[0]
        if lowest < -cfg.positivity_tol:
            raise NumericalFailure(f"positivity violated: lowest eigenvalue {lowest:.3g}", t)
        if i < record:
            out.append((target, DensityMatrix(rho0.space, rho)))
    drift = abs(np.trace(rho).real - 1.0)
    if drift > cfg.trace_tol:
        raise NumericalFailure(f"trace drift {drift:.3g} exceeds {cfg.trace_tol:.1g}", t)
    return out
