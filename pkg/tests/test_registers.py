"""Register numerics: composition, circuits, reduction, transposition, spectra."""
from __future__ import annotations

import numpy as np
import pytest

from locclone.registers import (
    GATE_S,
    GATE_X,
    GATE_Z,
    Bipartition,
    DensityMatrix,
    HermitianOperator,
    SingleQubitGate,
    StateVector,
    TransversalCnot,
    apply_circuit,
    commutator_norm,
    density,
    embed_operator,
    fidelity_pure,
    hermitian_spectrum,
    load_state,
    make_pure,
    mix,
    partial_trace,
    partial_transpose,
    psd_rank,
    save_state,
    schmidt_coefficients,
    support_span_dim,
    tensor,
    trace_norm,
)
from locclone.states import GhzLabel, ghz, w_basis

RT2 = np.sqrt(2.0)


def random_state(rng: np.random.Generator, n: int) -> StateVector:
    amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return make_pure(amps / np.linalg.norm(amps))


def random_density(rng: np.random.Generator, n: int, rank: int = 3) -> DensityMatrix:
    weights = rng.random(rank)
    weights /= weights.sum()
    return mix(weights, [density(random_state(rng, n)) for _ in range(rank)])


def bell() -> StateVector:
    return make_pure([1 / RT2, 0, 0, 1 / RT2])


def test_make_pure_basis_state():
    state = make_pure([1, 0])
    assert state.n_qubits == 1
    assert np.allclose(state.amplitudes, [1, 0])


def test_make_pure_renormalizes_small_drift():
    state = make_pure([1 + 4e-10, 0])
    assert abs(np.linalg.norm(state.amplitudes) - 1.0) < 1e-15


@pytest.mark.parametrize(
    "amps",
    [[0, 0, 0, 0], [1, 0, 0], [0.9, 0], [1]],
    ids=["zero", "not-power-of-two", "norm-off", "scalar"],
)
def test_make_pure_rejects(amps):
    with pytest.raises(ValueError):
        make_pure(amps)


def test_tensor_basis_states():
    ket01 = tensor(make_pure([1, 0]), make_pure([0, 1]))
    assert ket01.n_qubits == 2
    assert np.allclose(ket01.amplitudes, [0, 1, 0, 0])


def test_tensor_preserves_norm():
    rng = np.random.default_rng(11)
    for _ in range(5):
        joint = tensor(random_state(rng, 2), random_state(rng, 3))
        assert abs(np.linalg.norm(joint.amplitudes) - 1.0) < 1e-12


def test_tensor_ghz_pair_has_four_half_amplitudes():
    joint = tensor(ghz(GhzLabel(0, 0, 0)), ghz(GhzLabel(0, 0, 0)))
    magnitudes = np.abs(joint.amplitudes)
    assert np.count_nonzero(magnitudes > 1e-12) == 4
    assert np.allclose(magnitudes[magnitudes > 1e-12], 0.5)


def test_transversal_cnot_fixes_all_zero():
    state = make_pure([1] + [0] * 63)
    out = apply_circuit(state, [TransversalCnot("forward")])
    assert np.allclose(out.amplitudes, state.amplitudes)


def test_transversal_cnot_fixes_ghz_pair():
    pair = tensor(ghz(GhzLabel(0, 0, 0)), ghz(GhzLabel(0, 0, 0)))
    out = apply_circuit(pair, [TransversalCnot("forward")])
    assert fidelity_pure(out, pair) > 1 - 1e-12


def test_clone_register_x_relabels_ghz():
    # X on the clone's middle qubit flips the clone's i label
    joint = tensor(ghz(GhzLabel(0, 0, 0)), ghz(GhzLabel(0, 0, 0)))
    out = apply_circuit(joint, [SingleQubitGate(4, GATE_X, "X")])
    want = tensor(ghz(GhzLabel(0, 0, 0)), ghz(GhzLabel(0, 1, 0)))
    assert fidelity_pure(out, want) > 1 - 1e-12


def test_apply_circuit_preserves_norm():
    rng = np.random.default_rng(3)
    state = random_state(rng, 4)
    layers = []
    for _ in range(6):
        raw = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        unitary, _ = np.linalg.qr(raw)
        layers.append(SingleQubitGate(int(rng.integers(4)), unitary))
        layers.append(TransversalCnot("reverse"))
    out = apply_circuit(state, layers)
    assert abs(np.linalg.norm(out.amplitudes) - 1.0) < 1e-12


def test_apply_circuit_rejects_bad_targets():
    state = make_pure([1, 0])
    with pytest.raises(ValueError):
        apply_circuit(state, [SingleQubitGate(1, GATE_X)])
    three = make_pure([1, 0, 0, 0, 0, 0, 0, 0])
    with pytest.raises(ValueError):
        apply_circuit(three, [TransversalCnot("forward")])


def test_transversal_direction_validated():
    with pytest.raises(ValueError):
        TransversalCnot("sideways")


def test_density_projector():
    dm = density(make_pure([1, 0]))
    assert np.allclose(dm.entries, np.diag([1, 0]))
    dm = density(bell())
    assert abs(np.trace(dm.entries) - 1.0) < 1e-12
    assert np.allclose(dm.entries[0, 0], 0.5)
    assert np.allclose(dm.entries[0, 3], 0.5)


def test_mix_basics():
    dm = mix([0.5, 0.5], [density(make_pure([1, 0])), density(make_pure([0, 1]))])
    assert np.allclose(dm.entries, np.diag([0.5, 0.5]))
    first = density(bell())
    same = mix([1.0, 0.0], [first, density(make_pure([1, 0, 0, 0]))])
    assert np.allclose(same.entries, first.entries)


def test_mix_rejects_bad_input():
    one = density(make_pure([1, 0]))
    two = density(make_pure([1, 0, 0, 0]))
    with pytest.raises(ValueError):
        mix([0.4, 0.4], [one, one])
    with pytest.raises(ValueError):
        mix([-0.5, 1.5], [one, one])
    with pytest.raises(ValueError):
        mix([0.5, 0.5], [one, two])
    with pytest.raises(ValueError):
        mix([], [])


def test_partial_trace_bell_marginal():
    reduced = partial_trace(density(bell()), {1})
    assert np.allclose(reduced.entries, np.diag([0.5, 0.5]))


def test_partial_trace_w_state_marginal():
    # grouping the terms of the first W basis state by its third qubit
    reduced = partial_trace(density(w_basis(1)), {2})
    phi = np.array([1, 0, 0, 1]) / RT2
    want = (2 / 3) * np.outer(phi, phi) + (1 / 3) * np.outer([0, 0, 1, 0], [0, 0, 1, 0])
    assert np.allclose(reduced.entries, want, atol=1e-12)


def test_partial_trace_product_keeps_factor():
    rng = np.random.default_rng(5)
    left, right = random_state(rng, 2), random_state(rng, 1)
    reduced = partial_trace(density(tensor(left, right)), {2})
    assert np.allclose(reduced.entries, density(left).entries, atol=1e-12)


def test_partial_trace_preserves_trace():
    rng = np.random.default_rng(6)
    dm = random_density(rng, 3)
    for discard in ({0}, {1, 2}, {0, 2}):
        reduced = partial_trace(dm, discard)
        assert abs(np.trace(reduced.entries) - 1.0) < 1e-12


def test_partial_trace_rejects_bad_subsets():
    dm = density(bell())
    with pytest.raises(ValueError):
        partial_trace(dm, set())
    with pytest.raises(ValueError):
        partial_trace(dm, {0, 1})
    with pytest.raises(ValueError):
        partial_trace(dm, {5})


def test_partial_transpose_bell_spectrum():
    op = partial_transpose(density(bell()), Bipartition(2, frozenset({1})))
    spectrum = hermitian_spectrum(op)
    assert np.allclose(spectrum, [0.5, 0.5, 0.5, -0.5], atol=1e-12)


def test_partial_transpose_is_involution():
    rng = np.random.default_rng(7)
    dm = random_density(rng, 3)
    cut = Bipartition(3, frozenset({0, 2}))
    once = partial_transpose(dm, cut)
    twice = partial_transpose(DensityMatrix(3, once.entries), cut)
    assert np.allclose(twice.entries, dm.entries, atol=1e-14)
    assert abs(np.trace(once.entries) - 1.0) < 1e-12


def test_partial_transpose_product_stays_positive():
    rng = np.random.default_rng(8)
    left = random_density(rng, 1)
    right = random_density(rng, 2)
    joint = DensityMatrix(3, np.kron(left.entries, right.entries))
    spectrum = hermitian_spectrum(partial_transpose(joint, Bipartition(3, frozenset({1, 2}))))
    assert spectrum.min() > -1e-12


def test_hermitian_spectrum_sorted_and_checked():
    op = HermitianOperator(2, np.array([[0, 1], [1, 0]], dtype=complex))
    assert np.allclose(hermitian_spectrum(op), [1, -1])
    with pytest.raises(ValueError):
        hermitian_spectrum(HermitianOperator(2, np.array([[0, 1], [0, 0]], dtype=complex)))


def test_trace_norm_of_density_is_one():
    rng = np.random.default_rng(9)
    assert abs(trace_norm(random_density(rng, 2)) - 1.0) < 1e-12


def test_schmidt_coefficients_bell():
    coeffs = schmidt_coefficients(bell(), Bipartition(2, frozenset({1})))
    assert np.allclose(coeffs, [0.5, 0.5])


def test_schmidt_matches_marginal_spectrum():
    rng = np.random.default_rng(10)
    for _ in range(20):
        state = random_state(rng, 4)
        side_b = frozenset(rng.choice(4, size=int(rng.integers(1, 4)), replace=False).tolist())
        cut = Bipartition(4, side_b)
        coeffs = schmidt_coefficients(state, cut)
        marginal = partial_trace(density(state), set(cut.side_b))
        spectrum = hermitian_spectrum(marginal)[: len(coeffs)]
        assert np.allclose(np.sort(coeffs), np.sort(spectrum), atol=1e-10)
        assert abs(coeffs.sum() - 1.0) < 1e-10
        assert np.all(np.diff(coeffs) <= 1e-15)


def test_psd_rank_and_span():
    zero = density(make_pure([1, 0]))
    one = density(make_pure([0, 1]))
    assert psd_rank(zero.entries) == 1
    assert support_span_dim(zero, one) == 2
    assert support_span_dim(zero, zero) == 1
    with pytest.raises(ValueError):
        support_span_dim(zero, density(bell()))


def test_commutator_norm():
    zero = density(make_pure([1, 0]))
    plus = density(make_pure([1 / RT2, 1 / RT2]))
    assert commutator_norm(zero, zero) == 0.0
    assert commutator_norm(zero, plus) > 0.1


def test_embed_operator_matches_kron():
    assert np.allclose(embed_operator(GATE_X, 2, [0]), np.kron(GATE_X, np.eye(2)))
    assert np.allclose(embed_operator(GATE_Z, 2, [1]), np.kron(np.eye(2), GATE_Z))
    with pytest.raises(ValueError):
        embed_operator(GATE_X, 2, [0, 0])


def test_embed_operator_agrees_with_apply_circuit():
    rng = np.random.default_rng(12)
    state = random_state(rng, 3)
    via_gate = apply_circuit(state, [SingleQubitGate(1, GATE_S, "S")])
    via_embed = embed_operator(GATE_S, 3, [1]) @ state.amplitudes
    assert np.allclose(via_gate.amplitudes, via_embed, atol=1e-12)


def test_state_json_round_trip(tmp_path):
    rng = np.random.default_rng(13)
    state = random_state(rng, 3)
    path = tmp_path / "state.json"
    save_state(state, str(path))
    loaded = load_state(str(path))
    assert loaded.n_qubits == 3
    assert np.allclose(loaded.amplitudes, state.amplitudes, atol=1e-12)


def test_bipartition_validation():
    cut = Bipartition(3, frozenset({2}))
    assert cut.side_a == (0, 1)
    with pytest.raises(ValueError):
        Bipartition(3, frozenset())
    with pytest.raises(ValueError):
        Bipartition(3, frozenset({0, 1, 2}))
    with pytest.raises(ValueError):
        Bipartition(3, frozenset({3}))
