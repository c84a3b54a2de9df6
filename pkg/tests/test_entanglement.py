import math
import warnings

import numpy as np
import pytest

from helpers import concurrence_oracle, random_density_matrix, random_ket, random_unitary
from leakycav.entanglement import ckw_check, concurrence, pure_bipartite_concurrence, spin_flip, tangle
from leakycav.errors import ArgumentError, TraceDeficitWarning
from leakycav.hilbert import DensityMatrix, Ket, SpaceSpec, atom, basis_ket, cavity, partial_trace
from leakycav.scenarios import TRIPARTITE, ideal_tripartite_state


def _bell_minus():
    v = np.array([0, 1, -1, 0]) / math.sqrt(2)
    return np.outer(v, v)


def test_spin_flip_bell_fixed_point():
    assert np.allclose(spin_flip(_bell_minus()), _bell_minus(), atol=1e-15)


def test_spin_flip_maps_00_to_11():
    rho = np.zeros((4, 4))
    rho[0, 0] = 1
    expected = np.zeros((4, 4))
    expected[3, 3] = 1
    assert np.allclose(spin_flip(rho), expected)


def test_spin_flip_involution():
    rho = random_density_matrix(np.random.default_rng(0), 4)
    assert np.allclose(spin_flip(spin_flip(rho)), rho, atol=1e-14)


def test_spin_flip_wrong_dimension():
    with pytest.raises(ArgumentError):
        spin_flip(np.eye(2))


def test_concurrence_maximally_entangled():
    v = np.array([0, 1, 1, 0]) / math.sqrt(2)
    assert concurrence(np.outer(v, v)).value == pytest.approx(1.0, abs=1e-12)


def test_concurrence_reduced_cavity_pair():
    gt = math.pi / 3
    rho = partial_trace(ideal_tripartite_state(gt).dm(), ("C1", "C2"))
    assert concurrence(rho).value == pytest.approx(0.5, abs=1e-12)


def test_concurrence_reduced_atom_cavity():
    rho = partial_trace(ideal_tripartite_state(math.pi / 4).dm(), ("C1", "A1"))
    assert concurrence(rho).value == pytest.approx(0.5, abs=1e-12)


def test_concurrence_maximally_mixed():
    res = concurrence(np.eye(4) / 4)
    assert res.value == 0.0
    assert res.lambdas == pytest.approx((0.25,) * 4)


def test_concurrence_lambdas_descending():
    res = concurrence(random_density_matrix(np.random.default_rng(11), 4))
    lam = res.lambdas
    assert all(a >= b for a, b in zip(lam, lam[1:]))
    assert res.value == pytest.approx(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]), abs=1e-12)


def test_concurrence_matches_textbook_route_on_random_states():
    rng = np.random.default_rng(12)
    for rank in (1, 2, 3, 4):
        for _ in range(25):
            rho = random_density_matrix(rng, 4, rank)
            assert concurrence(rho).value == pytest.approx(concurrence_oracle(rho), abs=1e-7)


def test_concurrence_pure_amplitude_formula():
    rng = np.random.default_rng(13)
    for _ in range(50):
        a, b, c, d = random_ket(rng, 4)
        rho = np.outer([a, b, c, d], np.conj([a, b, c, d]))
        assert concurrence(rho).value == pytest.approx(2 * abs(a * d - b * c), abs=1e-10)


def test_concurrence_non_positive_input_uses_direct_spectrum():
    # X matrix with a coherence larger than the populations allow
    rho = np.diag([0.5, 0.25, 0.25, 0.0]).astype(complex)
    rho[1, 2], rho[2, 1] = 0.4j, -0.4j
    res = concurrence(rho)
    assert not res.physical
    assert res.value == pytest.approx(2 * min(0.4, 0.25), abs=1e-12)


def test_tangle():
    assert tangle(1.0) == 1.0
    assert tangle(0.5) == 0.25
    rho = partial_trace(ideal_tripartite_state(math.pi / 3).dm(), ("C1", "C2"))
    assert tangle(concurrence(rho)) == pytest.approx(0.25, abs=1e-12)


def test_pure_bipartite_concurrence():
    assert pure_bipartite_concurrence(np.diag([0.5, 0.5])) == pytest.approx(1.0)
    assert pure_bipartite_concurrence(np.diag([1.0, 0.0])) == 0.0
    for gt in np.linspace(0, 2 * math.pi, 9):
        rho_c2 = partial_trace(ideal_tripartite_state(gt).dm(), ("C2",))
        assert pure_bipartite_concurrence(rho_c2) == pytest.approx(1.0, abs=1e-12)


def test_pure_bipartite_concurrence_warns_on_trace_deficit():
    with pytest.warns(TraceDeficitWarning):
        value = pure_bipartite_concurrence(np.diag([0.4, 0.4]))
    assert value == pytest.approx(0.8)


def test_ckw_ideal_state():
    rep = ckw_check(ideal_tripartite_state(math.pi / 5).dm())
    assert rep.lhs == pytest.approx(1.0, abs=1e-10)
    assert rep.rhs == pytest.approx(1.0, abs=1e-10)
    assert rep.satisfied


def test_ckw_product_state():
    rep = ckw_check(basis_ket(TRIPARTITE, (0, 0, "g")).dm())
    assert (rep.lhs, rep.rhs, rep.satisfied) == (0.0, 0.0, True)


def test_ckw_wrong_labels():
    space = SpaceSpec.of(cavity("C1"), cavity("C2"), atom("A2"))
    with pytest.raises(ArgumentError):
        ckw_check(basis_ket(space, (0, 0, "g")).dm())


def test_ckw_no_warning_leaks_for_deficient_trace():
    rho = DensityMatrix(TRIPARTITE, 0.9 * ideal_tripartite_state(0.4).dm().elements)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        rep = ckw_check(rho)
    assert rep.trace == pytest.approx(0.9)


def test_local_unitary_invariance_sample():
    rng = np.random.default_rng(21)
    for _ in range(20):
        rho = random_density_matrix(rng, 4)
        U = np.kron(random_unitary(rng, 2), random_unitary(rng, 2))
        assert concurrence(U @ rho @ U.conj().T).value == pytest.approx(concurrence(rho).value, abs=1e-9)
