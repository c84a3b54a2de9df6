"""Composite Hilbert spaces of cavity modes and two-level atoms.

Subsystems listed left to right are the most- to least-significant digits of
the mixed-radix basis index, so ``|0_1 1_2 g_1>`` over ``(C1, C2, A1)`` is the
digit tuple ``(0, 1, 0)``. Atoms use ``g -> 0`` and ``e -> 1``; cavities use the
photon number directly.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import ArgumentError, CompositionError, DimensionError

HERMITIAN_TOL = 1e-12
ATOM_LEVELS = {"g": 0, "e": 1}


class Kind(str, Enum):
    CAVITY = "cavity-mode"
    ATOM = "two-level-atom"


@dataclass(frozen=True)
class Subsystem:
    name: str
    kind: Kind
    dim: int = 2

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 2:
            raise DimensionError(f"subsystem {self.name}: dim must be an integer >= 2, got {self.dim}")
        if self.kind is Kind.ATOM and self.dim != 2:
            raise DimensionError(f"atom {self.name} must have dim 2, got {self.dim}")


def cavity(name: str, levels: int = 2) -> Subsystem:
    return Subsystem(name, Kind.CAVITY, levels)


def atom(name: str) -> Subsystem:
    return Subsystem(name, Kind.ATOM, 2)


Label = Union[str, Subsystem]


def _name(label: Label) -> str:
    return label.name if isinstance(label, Subsystem) else label


@dataclass(frozen=True)
class SpaceSpec:
    subsystems: tuple[Subsystem, ...]

    def __post_init__(self):
        subs = tuple(self.subsystems)
        object.__setattr__(self, "subsystems", subs)
        names = [s.name for s in subs]
        if not subs:
            raise CompositionError("a space needs at least one subsystem")
        if len(set(names)) != len(names):
            raise CompositionError(f"duplicate subsystem labels in {names}")

    @classmethod
    def of(cls, *subsystems: Subsystem) -> "SpaceSpec":
        return cls(tuple(subsystems))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.subsystems)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.subsystems)

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.dims))

    def __contains__(self, label: Label) -> bool:
        return _name(label) in self.names

    def __getitem__(self, label: Label) -> Subsystem:
        return self.subsystems[self.position(label)]

    def position(self, label: Label) -> int:
        name = _name(label)
        try:
            return self.names.index(name)
        except ValueError:
            raise CompositionError(f"subsystem {name!r} not in space {self.names}") from None

    def compose(self, other: "SpaceSpec") -> "SpaceSpec":
        clash = set(self.names) & set(other.names)
        if clash:
            raise CompositionError(f"cannot compose spaces sharing labels {sorted(clash)}")
        return SpaceSpec(self.subsystems + other.subsystems)

    def encode(self, digits: Sequence[int]) -> int:
        if len(digits) != len(self.subsystems):
            raise DimensionError(f"expected {len(self.subsystems)} digits, got {len(digits)}")
        index = 0
        for d, sub in zip(digits, self.subsystems):
            if not 0 <= d < sub.dim:
                raise DimensionError(f"level {d} out of range for subsystem {sub.name} (dim {sub.dim})")
            index = index * sub.dim + int(d)
        return index

    def decode(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.total_dim:
            raise DimensionError(f"basis index {index} out of range for dimension {self.total_dim}")
        digits = []
        for dim in reversed(self.dims):
            index, d = divmod(index, dim)
            digits.append(d)
        return tuple(reversed(digits))


def _frozen(array, dtype=complex) -> np.ndarray:
    out = np.array(array, dtype=dtype)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class Ket:
    space: SpaceSpec
    amplitudes: np.ndarray
    normalized: bool = True

    def __post_init__(self):
        amps = _frozen(self.amplitudes).reshape(-1)
        if amps.shape[0] != self.space.total_dim:
            raise DimensionError(f"ket has {amps.shape[0]} amplitudes, space needs {self.space.total_dim}")
        if self.normalized and abs(np.linalg.norm(amps) - 1.0) > 1e-12:
            raise ArgumentError(f"ket asserted normalized but has norm {np.linalg.norm(amps):.15g}")
        object.__setattr__(self, "amplitudes", amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def dm(self) -> "DensityMatrix":
        return DensityMatrix(self.space, np.outer(self.amplitudes, self.amplitudes.conj()))

    def __add__(self, other: "Ket") -> "Ket":
        if other.space != self.space:
            raise CompositionError("cannot add kets over different spaces")
        return Ket(self.space, self.amplitudes + other.amplitudes, normalized=False)

    def __mul__(self, scalar) -> "Ket":
        return Ket(self.space, scalar * self.amplitudes, normalized=False)

    __rmul__ = __mul__

    def normalize(self) -> "Ket":
        return Ket(self.space, self.amplitudes / self.norm(), normalized=True)


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    space: SpaceSpec
    elements: np.ndarray

    def __post_init__(self):
        m = _frozen(self.elements)
        n = self.space.total_dim
        if m.shape != (n, n):
            raise DimensionError(f"matrix shape {m.shape} does not match space dimension {n}")
        object.__setattr__(self, "elements", m)

    @property
    def dag(self):
        return type(self)(self.space, self.elements.conj().T)

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.elements - self.elements.conj().T)))

    def is_hermitian(self, tol: float = HERMITIAN_TOL) -> bool:
        return self.hermiticity_error() <= tol


class DensityMatrix(OperatorMatrix):
    """Hermitian state matrix. Trace and positivity are checked on demand, not at construction,
    because the closed-form dissipative states are trace deficient and not always positive."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_hermitian():
            raise ArgumentError(f"density matrix not Hermitian (max |rho - rho^H| = {self.hermiticity_error():.3g})")

    @property
    def trace(self) -> float:
        return float(np.trace(self.elements).real)

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.elements)

    def is_positive(self, tol: float = 1e-9) -> bool:
        return bool(self.eigenvalues()[0] >= -tol)

    def is_physical(self, trace_tol: float = 1e-9, positivity_tol: float = 1e-9) -> bool:
        return self.is_positive(positivity_tol) and abs(self.trace - 1.0) <= trace_tol

    def populations(self) -> np.ndarray:
        return np.diag(self.elements).real.copy()


def _level(sub: Subsystem, level) -> int:
    if isinstance(level, str):
        if sub.kind is not Kind.ATOM or level not in ATOM_LEVELS:
            raise DimensionError(f"level {level!r} invalid for subsystem {sub.name}")
        return ATOM_LEVELS[level]
    return int(level)


def basis_index(space: SpaceSpec, occupation) -> int:
    """Mixed-radix index of an occupation given as a tuple or a ``{label: level}`` mapping."""
    if isinstance(occupation, dict):
        missing = set(space.names) - set(occupation)
        if missing or len(occupation) != len(space.names):
            raise DimensionError(f"occupation must name exactly {space.names}")
        occupation = tuple(occupation[n] for n in space.names)
    if len(occupation) != len(space.subsystems):
        raise DimensionError(f"expected {len(space.subsystems)} levels, got {len(occupation)}")
    digits = [_level(sub, lev) for sub, lev in zip(space.subsystems, occupation)]
    return space.encode(digits)


def basis_ket(space: SpaceSpec, occupation) -> Ket:
    amps = np.zeros(space.total_dim, dtype=complex)
    amps[basis_index(space, occupation)] = 1.0
    return Ket(space, amps)


def tensor(a, b):
    """Kronecker product of two kets or two operators over disjoint spaces."""
    space = a.space.compose(b.space)
    if isinstance(a, Ket) and isinstance(b, Ket):
        return Ket(space, np.kron(a.amplitudes, b.amplitudes), normalized=a.normalized and b.normalized)
    if isinstance(a, OperatorMatrix) and isinstance(b, OperatorMatrix):
        kind = DensityMatrix if isinstance(a, DensityMatrix) and isinstance(b, DensityMatrix) else OperatorMatrix
        return kind(space, np.kron(a.elements, b.elements))
    raise CompositionError(f"cannot tensor {type(a).__name__} with {type(b).__name__}")


def embed(op, space: SpaceSpec, target: Label) -> OperatorMatrix:
    """Lift a single-subsystem operator to ``space``, identity on every other factor."""
    pos = space.position(target)
    local = op.elements if isinstance(op, OperatorMatrix) else np.asarray(op, dtype=complex)
    dim = space.dims[pos]
    if local.shape != (dim, dim):
        raise DimensionError(f"operator shape {local.shape} does not fit subsystem {_name(target)} (dim {dim})")
    left = int(np.prod(space.dims[:pos]))
    right = int(np.prod(space.dims[pos + 1:]))
    return OperatorMatrix(space, np.kron(np.kron(np.eye(left), local), np.eye(right)))


def partial_trace(rho: DensityMatrix, keep: Iterable[Label]) -> DensityMatrix:
    """Trace out every subsystem not in ``keep``; kept subsystems stay in their original order."""
    keep_names = {_name(k) for k in keep}
    if not keep_names:
        raise ArgumentError("partial_trace needs at least one subsystem to keep")
    unknown = keep_names - set(rho.space.names)
    if unknown:
        raise ArgumentError(f"unknown subsystems {sorted(unknown)} for space {rho.space.names}")
    space = rho.space
    kept = [i for i, n in enumerate(space.names) if n in keep_names]
    traced = [i for i, n in enumerate(space.names) if n not in keep_names]
    n = len(space.dims)
    dk = int(np.prod([space.dims[i] for i in kept]))
    dt = int(np.prod([space.dims[i] for i in traced])) if traced else 1
    t = rho.elements.reshape(space.dims + space.dims)
    t = t.transpose(kept + traced + [n + i for i in kept] + [n + i for i in traced])
    reduced = np.trace(t.reshape(dk, dt, dk, dt), axis1=1, axis2=3)
    sub_space = SpaceSpec(tuple(space.subsystems[i] for i in kept))
    return DensityMatrix(sub_space, reduced)


def destroy(dim: int = 2) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, dim)), k=1).astype(complex)


def sigma_minus() -> np.ndarray:
    # |g><e| with g -> 0, e -> 1
    return np.array([[0, 1], [0, 0]], dtype=complex)


def sigma_plus() -> np.ndarray:
    return sigma_minus().T.copy()


SIGMA_Y = np.array([[0, -1j], [1j, 0]])
