"""Closed-form states of the two-cavity set-ups and the curves built from them.

Two arrangements share one initial cavity pair ``(|0_1 1_2> + |1_1 0_2>)/sqrt2``:

* tripartite (C1, C2, A1): one ground-state atom crosses cavity C1;
* quadripartite (C1, C2, A1, A2): one ground-state atom crosses each cavity.

Dissipative states come either from the secular-approximation coefficients
(``alpha_*``; ``method="analytic"``) or from integrating the full master
equation (``oracle_*``; ``method="numeric"``). Everything is in units g = 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .dynamics import (
    CouplingParams,
    DissipationParams,
    IntegratorConfig,
    build_jc_hamiltonian,
    integrate_master_equation,
)
from .entanglement import ckw_check, concurrence
from .errors import ArgumentError, AssemblyError, ConfigurationError, InternalConsistencyError
from .hilbert import DensityMatrix, Ket, SpaceSpec, atom, basis_ket, cavity, partial_trace

PIPELINE_TOL = 1e-10
ASSEMBLY_TOL = 1e-12


class AlphaMode(str, Enum):
    VERBATIM = "verbatim"
    LIMIT_CONSISTENT = "limit-consistent"


def tripartite_space(cavity_levels: int = 2) -> SpaceSpec:
    return SpaceSpec.of(cavity("C1", cavity_levels), cavity("C2", cavity_levels), atom("A1"))


def quadripartite_space(cavity_levels: int = 2) -> SpaceSpec:
    return SpaceSpec.of(cavity("C1", cavity_levels), cavity("C2", cavity_levels), atom("A1"), atom("A2"))


TRIPARTITE = tripartite_space()
QUADRIPARTITE = quadripartite_space()
PAIR_SPACE_C1C2 = SpaceSpec.of(cavity("C1"), cavity("C2"))
PAIR_SPACE_C2A1 = SpaceSpec.of(cavity("C2"), atom("A1"))
PAIR_SPACE_C1A1 = SpaceSpec.of(cavity("C1"), atom("A1"))
PAIR_SPACE_A1A2 = SpaceSpec.of(atom("A1"), atom("A2"))


def initial_state(space: SpaceSpec) -> Ket:
    """Entangled cavity pair with every atom in ``g``."""
    rest = ["g"] * (len(space.subsystems) - 2)
    ket = basis_ket(space, (0, 1, *rest)) + basis_ket(space, (1, 0, *rest))
    return ket.normalize()


def _ket(space: SpaceSpec, terms: dict) -> Ket:
    amps = np.zeros(space.total_dim, dtype=complex)
    for occ, coeff in terms.items():
        amps[space.encode([{"g": 0, "e": 1}.get(x, x) for x in occ])] += coeff
    return Ket(space, amps, normalized=False).normalize()


def _check(label: str, closed: Sequence[float], piped: Sequence[float]):
    err = max(abs(a - b) for a, b in zip(closed, piped))
    if err > PIPELINE_TOL:
        raise InternalConsistencyError(f"{label}: closed form {closed} vs pipeline {piped} (error {err:.3g})")


# ---------------------------------------------------------------- ideal cases

def ideal_tripartite_state(gt: float) -> Ket:
    c, s = math.cos(gt), math.sin(gt)
    r = 1 / math.sqrt(2)
    return _ket(TRIPARTITE, {(0, 1, "g"): r, (1, 0, "g"): r * c, (0, 0, "e"): -r * s})


def ideal_tripartite_concurrences(gt: float) -> tuple[float, float, float]:
    """``(C_C1C2, C_C2A1, C_C1A1) = (|cos|, |sin|, |cos sin|)``, cross-checked against the state."""
    c, s = math.cos(gt), math.sin(gt)
    closed = (abs(c), abs(s), abs(c * s))
    rho = ideal_tripartite_state(gt).dm()
    piped = tuple(concurrence(partial_trace(rho, keep)).value for keep in (("C1", "C2"), ("C2", "A1"), ("C1", "A1")))
    _check(f"ideal tripartite gt={gt}", closed, piped)
    return closed


def ideal_quadripartite_state(gt: float) -> Ket:
    c, s = math.cos(gt), math.sin(gt)
    r = 1 / math.sqrt(2)
    return _ket(QUADRIPARTITE, {
        (0, 1, "g", "g"): r * c,
        (0, 0, "g", "e"): -r * s,
        (1, 0, "g", "g"): r * c,
        (0, 0, "e", "g"): -r * s,
    })


def ideal_swap_concurrences(gt: float) -> tuple[float, float]:
    """``(C_C1C2, C_A1A2) = (cos^2, sin^2)``, cross-checked against the state."""
    c, s = math.cos(gt), math.sin(gt)
    closed = (c * c, s * s)
    rho = ideal_quadripartite_state(gt).dm()
    piped = tuple(concurrence(partial_trace(rho, keep)).value for keep in (("C1", "C2"), ("A1", "A2")))
    _check(f"ideal swap gt={gt}", closed, piped)
    return closed


# ----------------------------------------------------------- secular closed forms

@dataclass(frozen=True)
class AlphaSet:
    alpha: tuple[complex, complex, complex, complex, complex, complex]
    scenario: str
    mode: AlphaMode
    gt: float
    kappa1_over_g: float
    kappa2_over_g: float

    def __getitem__(self, i: int) -> complex:
        """One-based access, ``alphas[1]`` .. ``alphas[6]``."""
        if not 1 <= i <= 6:
            raise IndexError(i)
        return self.alpha[i - 1]


def _check_kappas(k1: float, k2: float):
    if k1 < 0 or k2 < 0:
        raise ArgumentError(f"leakage ratios must be >= 0, got ({k1}, {k2})")


def alpha_tripartite(gt: float, k1: float, k2: float, mode=AlphaMode.VERBATIM) -> AlphaSet:
    """Coefficients of the one-atom dissipative state; ``limit-consistent`` halves alpha_5."""
    _check_kappas(k1, k2)
    mode = AlphaMode(mode)
    t = gt
    c, s = math.cos(gt), math.sin(gt)
    x = math.exp(-k1 * t)
    y = math.exp(-2 * k2 * t)
    h1 = math.exp(-k1 * t / 2)
    a1 = (1 - x / 2) * y
    a2 = c * c * x * (1 - y / 2)
    a3 = s * s * x * (1 - y / 2)
    a4 = c * h1 * math.exp(-k2 * t) / 2
    a5 = 1j * math.sin(2 * gt) * x * (1 - y / 2)
    if mode is AlphaMode.LIMIT_CONSISTENT:
        a5 /= 2
    a6 = 1j * (h1 * s / 2 - k1 * h1 * c / 4 + k1 / 4) * math.exp(-k2 * t)
    return AlphaSet((a1, a2, a3, a4, a5, a6), "tripartite", mode, gt, k1, k2)


def alpha_quadripartite(gt: float, k1: float, k2: float, mode=AlphaMode.VERBATIM) -> AlphaSet:
    """Coefficients of the two-atom dissipative state; ``limit-consistent`` uses cos^2 in alpha_5."""
    _check_kappas(k1, k2)
    mode = AlphaMode(mode)
    t = gt
    c, s = math.cos(gt), math.sin(gt)
    x1, x2 = math.exp(-k1 * t), math.exp(-k2 * t)
    h1, h2 = math.exp(-k1 * t / 2), math.exp(-k2 * t / 2)
    a1 = (1 - x1 / 2) * x2 * c * c
    a2 = s * s * x2 * (1 - x1 / 2)
    a3 = c * c * x1 * (1 - x2 / 2)
    a4 = s * s * x1 * (1 - x2 / 2)
    a5 = (c * c if mode is AlphaMode.LIMIT_CONSISTENT else c) * h1 * h2 / 2
    a6 = (h1 * s - k1 * h1 / 2 + k1 / 2) * (h2 * s - k2 * h2 / 2 + k2 / 2) / 2
    return AlphaSet(tuple(complex(a) for a in (a1, a2, a3, a4, a5, a6)), "quadripartite", mode, gt, k1, k2)


def _hermitian(space: SpaceSpec, m: np.ndarray, label: str) -> DensityMatrix:
    err = float(np.max(np.abs(m - m.conj().T)))
    if err > ASSEMBLY_TOL:
        raise AssemblyError(f"{label} is not Hermitian (error {err:.3g})")
    return DensityMatrix(space, m)


def _require(alphas: AlphaSet, scenario: str):
    if alphas.scenario != scenario:
        raise ArgumentError(f"expected {scenario} coefficients, got {alphas.scenario}")


def dissipative_tripartite_state(alphas: AlphaSet) -> DensityMatrix:
    """Nine-term matrix over (C1, C2, A1). Its trace is ``a1 + a2 + a3`` and is not forced to 1."""
    _require(alphas, "tripartite")
    a1, a2, a3, a4, a5, a6 = alphas.alpha
    i01g, i10g, i00e = (TRIPARTITE.encode(d) for d in ((0, 1, 0), (1, 0, 0), (0, 0, 1)))
    m = np.zeros((8, 8), dtype=complex)
    m[i01g, i01g] = a1
    m[i10g, i10g] = a2
    m[i00e, i00e] = a3
    m[i01g, i10g] = m[i10g, i01g] = a4
    m[i10g, i00e] = a5
    m[i00e, i10g] = -a5
    m[i00e, i01g] = a6
    m[i01g, i00e] = -a6
    return _hermitian(TRIPARTITE, m, "tripartite state")


def dissipative_tripartite_reduced(alphas: AlphaSet) -> tuple[DensityMatrix, DensityMatrix, DensityMatrix]:
    """``(rho_C1C2, rho_C2A1, rho_C1A1)`` assembled term by term and checked against the partial traces."""
    _require(alphas, "tripartite")
    a1, a2, a3, a4, a5, a6 = alphas.alpha
    # (C1, C2): |00>=0 |01>=1 |10>=2
    c1c2 = np.zeros((4, 4), dtype=complex)
    c1c2[1, 1], c1c2[2, 2], c1c2[0, 0] = a1, a2, a3
    c1c2[1, 2] = c1c2[2, 1] = a4
    # (C2, A1): |0g>=0 |0e>=1 |1g>=2
    c2a1 = np.zeros((4, 4), dtype=complex)
    c2a1[2, 2], c2a1[0, 0], c2a1[1, 1] = a1, a2, a3
    c2a1[2, 1] = -a6
    c2a1[1, 2] = a6
    # (C1, A1): |0g>=0 |0e>=1 |1g>=2
    c1a1 = np.zeros((4, 4), dtype=complex)
    c1a1[0, 0], c1a1[2, 2], c1a1[1, 1] = a1, a2, a3
    c1a1[2, 1] = a5
    c1a1[1, 2] = -a5
    reduced = (
        _hermitian(PAIR_SPACE_C1C2, c1c2, "rho_C1C2"),
        _hermitian(PAIR_SPACE_C2A1, c2a1, "rho_C2A1"),
        _hermitian(PAIR_SPACE_C1A1, c1a1, "rho_C1A1"),
    )
    full = dissipative_tripartite_state(alphas)
    for rho, keep in zip(reduced, (("C1", "C2"), ("C2", "A1"), ("C1", "A1"))):
        err = float(np.max(np.abs(partial_trace(full, keep).elements - rho.elements)))
        if err > ASSEMBLY_TOL:
            raise InternalConsistencyError(f"reduced state {keep} disagrees with partial trace by {err:.3g}")
    return reduced


def dissipative_swap_reduced(alphas: AlphaSet) -> tuple[DensityMatrix, DensityMatrix]:
    """``(rho_C1C2, rho_A1A2)`` of the two-atom dissipative state."""
    _require(alphas, "quadripartite")
    a1, a2, a3, a4, a5, a6 = alphas.alpha
    c1c2 = np.zeros((4, 4), dtype=complex)
    c1c2[1, 1], c1c2[2, 2], c1c2[0, 0] = a1, a3, a2 + a4
    c1c2[1, 2] = c1c2[2, 1] = a5
    a1a2 = np.zeros((4, 4), dtype=complex)
    a1a2[0, 0], a1a2[1, 1], a1a2[2, 2] = a1 + a3, a2, a4
    a1a2[1, 2] = a1a2[2, 1] = a6
    return _hermitian(PAIR_SPACE_C1C2, c1c2, "rho_C1C2"), _hermitian(PAIR_SPACE_A1A2, a1a2, "rho_A1A2")


# ------------------------------------------------------------ numerical oracle

def _oracle(space: SpaceSpec, pairs, kappa: dict, gt_values: Sequence[float], dt: float) -> list[DensityMatrix]:
    gts = [float(x) for x in gt_values]
    if not gts:
        return []
    if min(gts) < 0:
        raise ConfigurationError("numeric evolution needs gt >= 0")
    order = sorted(range(len(gts)), key=gts.__getitem__)
    H = build_jc_hamiltonian(space, CouplingParams(1.0, pairs))
    rho0 = initial_state(space).dm()
    samples = integrate_master_equation(
        rho0, H, DissipationParams(kappa), gts[order[-1]], IntegratorConfig(dt=dt),
        sample_times=[gts[i] for i in order],
    )
    out: list = [None] * len(gts)
    for i, (_, rho) in zip(order, samples):
        out[i] = rho
    return out


def oracle_tripartite(gt_values: Iterable[float], k1: float, k2: float, dt: float = 1e-3,
                      cavity_levels: int = 2) -> list[DensityMatrix]:
    """Full master-equation states over (C1, C2, A1) at each requested Rabi angle."""
    _check_kappas(k1, k2)
    return _oracle(tripartite_space(cavity_levels), [("C1", "A1")], {"C1": k1, "C2": k2}, list(gt_values), dt)


def oracle_quadripartite(gt_values: Iterable[float], k1: float, k2: float, dt: float = 1e-3,
                         cavity_levels: int = 2) -> list[DensityMatrix]:
    _check_kappas(k1, k2)
    return _oracle(quadripartite_space(cavity_levels), [("C1", "A1"), ("C2", "A2")],
                   {"C1": k1, "C2": k2}, list(gt_values), dt)


# ------------------------------------------------------------------- sweeps

QUANTITIES = {
    "monogamy": ("C_C1C2", "C_C2A1", "C_C1A1", "TRACE"),
    "swap": ("C_C1C2", "C_A1A2"),
    "ckw": ("CKW_LHS", "CKW_RHS", "TRACE"),
    "fig5": ("C_A1C1",),
}
CONCURRENCE_QUANTITIES = {"C_C1C2", "C_C2A1", "C_C1A1", "C_A1A2", "C_A1C1"}


@dataclass(frozen=True)
class ScenarioRow:
    scenario: str
    gt: float
    kappa1_over_g: float
    kappa2_over_g: float
    quantity: str
    value: float
    method: str

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise InternalConsistencyError(f"non-finite value for {self.quantity} at gt={self.gt}")
        if self.quantity in CONCURRENCE_QUANTITIES and not -1e-12 <= self.value <= 1 + 1e-9:
            raise InternalConsistencyError(f"concurrence {self.quantity} = {self.value} outside [0, 1]")


def _tripartite_values(rho: DensityMatrix) -> dict[str, float]:
    return {
        "C_C1C2": concurrence(partial_trace(rho, ("C1", "C2"))).value,
        "C_C2A1": concurrence(partial_trace(rho, ("C2", "A1"))).value,
        "C_C1A1": concurrence(partial_trace(rho, ("C1", "A1"))).value,
        "TRACE": rho.trace,
    }


def _swap_values(rho: DensityMatrix) -> dict[str, float]:
    return {
        "C_C1C2": concurrence(partial_trace(rho, ("C1", "C2"))).value,
        "C_A1A2": concurrence(partial_trace(rho, ("A1", "A2"))).value,
    }


def _ckw_values(rho: DensityMatrix) -> dict[str, float]:
    report = ckw_check(rho)
    return {"CKW_LHS": report.lhs, "CKW_RHS": report.rhs, "TRACE": report.trace}


def analytic_values(scenario: str, gt: float, k1: float, k2: float, mode=AlphaMode.VERBATIM) -> dict[str, float]:
    """Closed-form quantities at one point; without leakage the ideal pure-state forms are used."""
    ideal = k1 == 0 and k2 == 0
    if scenario == "monogamy":
        if ideal:
            c12, c2a, c1a = ideal_tripartite_concurrences(gt)
            return {"C_C1C2": c12, "C_C2A1": c2a, "C_C1A1": c1a, "TRACE": 1.0}
        alphas = alpha_tripartite(gt, k1, k2, mode)
        r12, r2a, r1a = dissipative_tripartite_reduced(alphas)
        return {
            "C_C1C2": concurrence(r12).value,
            "C_C2A1": concurrence(r2a).value,
            "C_C1A1": concurrence(r1a).value,
            "TRACE": float((alphas[1] + alphas[2] + alphas[3]).real),
        }
    if scenario == "swap":
        if ideal:
            c12, a12 = ideal_swap_concurrences(gt)
            return {"C_C1C2": c12, "C_A1A2": a12}
        r12, ra = dissipative_swap_reduced(alpha_quadripartite(gt, k1, k2, mode))
        return {"C_C1C2": concurrence(r12).value, "C_A1A2": concurrence(ra).value}
    if scenario == "ckw":
        rho = ideal_tripartite_state(gt).dm() if ideal else dissipative_tripartite_state(alpha_tripartite(gt, k1, k2, mode))
        return _ckw_values(rho)
    if scenario == "fig5":
        _, _, r1a = dissipative_tripartite_reduced(alpha_tripartite(gt, k1, k2, mode))
        return {"C_A1C1": concurrence(r1a).value}
    raise ArgumentError(f"unknown scenario {scenario!r}")


def numeric_values(scenario: str, gt_values: Sequence[float], k1: float, k2: float,
                   dt: float = 1e-3) -> list[dict[str, float]]:
    """Oracle quantities at each Rabi angle (one integration per call)."""
    if scenario == "swap":
        return [_swap_values(rho) for rho in oracle_quadripartite(gt_values, k1, k2, dt)]
    states = oracle_tripartite(gt_values, k1, k2, dt)
    if scenario == "monogamy":
        return [_tripartite_values(rho) for rho in states]
    if scenario == "ckw":
        return [_ckw_values(rho) for rho in states]
    if scenario == "fig5":
        return [{"C_A1C1": concurrence(partial_trace(rho, ("C1", "A1"))).value} for rho in states]
    raise ArgumentError(f"unknown scenario {scenario!r}")


def _methods(method: str) -> tuple[str, ...]:
    if method == "both":
        return ("analytic", "numeric")
    if method in ("analytic", "numeric"):
        return (method,)
    raise ArgumentError(f"unknown method {method!r}")


def sweep(scenario: str, gt_values: Sequence[float], k1: float, k2: float, method: str = "analytic",
          mode=AlphaMode.VERBATIM, dt: float = 1e-3) -> list[ScenarioRow]:
    """Rows ordered by gt, then quantity, then method (analytic before numeric)."""
    if scenario not in QUANTITIES or scenario == "fig5":
        raise ArgumentError(f"sweep supports monogamy, swap, ckw; got {scenario!r} (use fig5_curve)")
    methods = _methods(method)
    values = {}
    if "analytic" in methods:
        values["analytic"] = [analytic_values(scenario, gt, k1, k2, mode) for gt in gt_values]
    if "numeric" in methods:
        values["numeric"] = numeric_values(scenario, gt_values, k1, k2, dt)
    rows = []
    for i, gt in enumerate(gt_values):
        for q in QUANTITIES[scenario]:
            for m in methods:
                rows.append(ScenarioRow(scenario, float(gt), k1, k2, q, float(values[m][i][q]), m))
    return rows


def fig5_curve(gt_values: Sequence[float], kappa_grid: Sequence[float], mode=AlphaMode.VERBATIM,
               method: str = "analytic", dt: float = 1e-3) -> list[ScenarioRow]:
    """``C(rho_A1C1)`` against a common leakage ``kappa1 = kappa2 = kappa``; rows ordered by gt, then kappa."""
    kappas = [float(k) for k in kappa_grid]
    if not kappas or min(kappas) <= 0 or any(b <= a for a, b in zip(kappas, kappas[1:])):
        raise ArgumentError("kappa grid must be positive and strictly ascending")
    methods = _methods(method)
    table = {}
    for m in methods:
        for k in kappas:
            if m == "analytic":
                vals = [analytic_values("fig5", gt, k, k, mode)["C_A1C1"] for gt in gt_values]
            else:
                vals = [v["C_A1C1"] for v in numeric_values("fig5", gt_values, k, k, dt)]
            for gt, v in zip(gt_values, vals):
                table[m, k, gt] = v
    return [
        ScenarioRow("fig5", float(gt), k, k, "C_A1C1", float(table[m, k, gt]), m)
        for gt in gt_values for k in kappas for m in methods
    ]
