import math

import numpy as np
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from leakycav.entanglement import ckw_check, concurrence, pure_bipartite_concurrence, spin_flip
from leakycav.hilbert import DensityMatrix, Ket, SpaceSpec, atom, cavity, partial_trace, tensor
from leakycav.scenarios import TRIPARTITE, alpha_tripartite

MANY = settings(max_examples=500, deadline=None)
finite = st.floats(-1, 1, allow_nan=False, allow_infinity=False)
angle = st.floats(0, 2 * math.pi, allow_nan=False)


def _complex(n, m=None):
    shape = (n,) if m is None else (n, m)
    return st.tuples(arrays(float, shape, elements=finite), arrays(float, shape, elements=finite)).map(
        lambda p: p[0] + 1j * p[1])


def _density(dim):
    def build(X):
        rho = X @ X.conj().T + 1e-3 * np.eye(dim)
        return rho / np.trace(rho).real
    return _complex(dim, dim).map(build)


def _ket(dim):
    return _complex(dim).filter(lambda v: np.linalg.norm(v) > 1e-3).map(lambda v: v / np.linalg.norm(v))


def _su2(a, b, c):
    rz = lambda t: np.diag([np.exp(-0.5j * t), np.exp(0.5j * t)])
    ry = np.array([[math.cos(b / 2), -math.sin(b / 2)], [math.sin(b / 2), math.cos(b / 2)]])
    return rz(a) @ ry @ rz(c)


local_unitary = st.tuples(*[angle] * 6).map(lambda t: np.kron(_su2(*t[:3]), _su2(*t[3:])))

Q1 = SpaceSpec.of(cavity("C1"))
Q2 = SpaceSpec.of(atom("A1"))


@MANY
@given(_density(4), local_unitary)
def test_concurrence_local_unitary_invariance(rho, U):
    assert abs(concurrence(U @ rho @ U.conj().T).value - concurrence(rho).value) < 1e-9


@MANY
@given(_density(4))
def test_concurrence_range(rho):
    res = concurrence(rho)
    assert 0.0 <= res.value <= 1.0 + 1e-12
    assert res.lambdas[-1] >= -1e-10


@MANY
@given(_complex(4, 4))
def test_spin_flip_involution(m):
    assert np.allclose(spin_flip(spin_flip(m)), m, atol=1e-13)


@MANY
@given(_density(8), _density(8), finite, finite)
def test_partial_trace_linear(r1, r2, a, b):
    d1, d2 = DensityMatrix(TRIPARTITE, r1), DensityMatrix(TRIPARTITE, r2)
    keep = ("C1", "A1")
    combo = DensityMatrix(TRIPARTITE, a * r1 + b * r2)
    lhs = partial_trace(combo, keep).elements
    rhs = a * partial_trace(d1, keep).elements + b * partial_trace(d2, keep).elements
    assert np.max(np.abs(lhs - rhs)) < 1e-12


@MANY
@given(_density(2), _density(2))
def test_partial_trace_round_trip(ra, rb):
    joint = tensor(DensityMatrix(Q1, ra), DensityMatrix(Q2, rb))
    assert np.max(np.abs(partial_trace(joint, {"C1"}).elements - ra)) < 1e-12


@MANY
@given(_density(8), st.sampled_from([("C1",), ("C2", "A1"), ("C1", "C2"), ("A1",)]))
def test_partial_trace_keeps_hermitian_positive(rho, keep):
    out = partial_trace(DensityMatrix(TRIPARTITE, rho), keep)
    assert out.is_hermitian()
    assert out.eigenvalues()[0] >= -1e-9
    assert abs(out.trace - 1) < 1e-12


@MANY
@given(_ket(4))
def test_pure_state_concurrence_consistency(v):
    a, b, c, d = v
    rho = DensityMatrix(SpaceSpec.of(cavity("C1"), atom("A1")), np.outer(v, v.conj()))
    value = concurrence(rho).value
    assert abs(value - 2 * abs(a * d - b * c)) < 1e-10
    # squared: 2 sqrt(det) turns ~1e-17 round-off in det into ~1e-9 near product states
    for keep in ({"C1"}, {"A1"}):
        assert abs(value ** 2 - pure_bipartite_concurrence(partial_trace(rho, keep)) ** 2) < 1e-10


@MANY
@given(_ket(8))
def test_ckw_random_pure_states(v):
    assert ckw_check(Ket(TRIPARTITE, v).dm()).satisfied


@MANY
@given(st.floats(0, 50), st.floats(0, 10), st.floats(0, 10))
def test_analytic_trace_bounded(gt, k1, k2):
    a = alpha_tripartite(gt, k1, k2)
    assert (a[1] + a[2] + a[3]).real <= 1 + 1e-12
