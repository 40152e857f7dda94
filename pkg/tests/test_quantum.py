"""States, operators, correlation tensors, and the see-saw optimizer."""

import math
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from bellift import (
    BellExpression,
    MeasurementSettings,
    PAULIS,
    QuantumState,
    Scenario,
    SeesawConfig,
    bell_operator,
    contract_coefficients,
    correlation_tensor,
    expectation,
    four_party_19,
    mabk,
    mabk_optimal_settings,
    make_state,
    seesaw_maximize,
    spectrum,
    sum_squared_correlations,
)

CHSH = mabk(2)
BELL = make_state("bell-pair")


# ---------------------------------------------------------------------------
# states
# ---------------------------------------------------------------------------


def test_state_validation():
    with pytest.raises(ValueError):
        QuantumState(1, np.array([[1.0, 1.0], [0.0, 0.0]]))  # not Hermitian
    with pytest.raises(ValueError):
        QuantumState(1, np.eye(2))  # trace 2
    with pytest.raises(ValueError):
        QuantumState(1, np.diag([1.5, -0.5]))  # negative eigenvalue


def test_named_states_are_valid_density_matrices():
    for name in ["ghz4", "bell-pair", "w4", "pdc", "chi", "cluster4"]:
        state = make_state(name)
        assert np.isclose(np.trace(state.rho).real, 1.0)
        assert state.n == (2 if name == "bell-pair" else 4)


def test_make_state_domain_errors():
    with pytest.raises(ValueError):
        make_state("nope")
    with pytest.raises(ValueError):
        make_state("generalized-ghz", 1.0)  # outside [0, pi/4]
    with pytest.raises(ValueError):
        make_state("ghz")
    with pytest.raises(ValueError):
        make_state("custom")


def test_generalized_ghz_endpoints():
    assert np.allclose(make_state("generalized-ghz", math.pi / 4).rho, make_state("ghz4").rho)
    assert np.allclose(make_state("generalized-ghz", 0.0).rho, make_state("product-zeros", 4).rho)


# ---------------------------------------------------------------------------
# correlation tensors
# ---------------------------------------------------------------------------


def kron_chain(mats):
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def test_correlation_tensor_against_kron_oracle():
    """Recompute every entry with explicit Kronecker products and traces."""
    for name in ["w4", "cluster4"]:
        state = make_state(name)
        tensor = correlation_tensor(state).values
        for idx in product(range(3), repeat=4):
            op = kron_chain([PAULIS[i] for i in idx])
            direct = np.trace(state.rho @ op).real
            assert abs(tensor[idx] - direct) < 1e-12


def test_correlation_tensor_reference_entries():
    zzzz = (2, 2, 2, 2)
    assert np.isclose(correlation_tensor(make_state("ghz4")).values[zzzz], 1.0)
    assert np.isclose(correlation_tensor(make_state("w4")).values[zzzz], -1.0)


def test_sum_squared_correlations_reference_values():
    assert np.isclose(sum_squared_correlations(make_state("product-zeros", 4)), 1.0)
    assert np.isclose(sum_squared_correlations(BELL), 3.0)
    values = {
        "ghz4": 9.0,
        "w4": 4.0,
        "pdc": 9.0,
        "chi": 5.0,
        "cluster4": 5.0,
    }
    for name, expected in values.items():
        assert abs(sum_squared_correlations(make_state(name)) - expected) < 1e-9


def test_sum_squared_correlations_is_rotation_invariant():
    rng = np.random.default_rng(5)
    state = make_state("pdc")
    base = sum_squared_correlations(state)
    for _ in range(5):
        bases = [np.linalg.qr(rng.normal(size=(3, 3)))[0] for _ in range(4)]
        assert abs(sum_squared_correlations(state, bases) - base) < 1e-9


def test_generalized_ghz_closed_form():
    for lam in np.linspace(0, math.pi / 4, 9):
        got = sum_squared_correlations(make_state("generalized-ghz", float(lam)))
        assert abs(got - (5 - 4 * math.cos(4 * lam))) < 1e-9


# ---------------------------------------------------------------------------
# operators and spectra
# ---------------------------------------------------------------------------


def z_settings(parties, m):
    return MeasurementSettings(tuple(np.tile([0.0, 0.0, 1.0], (m, 1)) for _ in range(parties)))


def test_bell_operator_zz():
    e = BellExpression.from_terms(Scenario((1, 1)), [((0, 0), 1)])
    op = bell_operator(e, z_settings(2, 1))
    assert np.allclose(op, np.diag([1, -1, -1, 1]))


def test_bell_operator_rejects_mismatched_settings():
    with pytest.raises(ValueError):
        bell_operator(CHSH, z_settings(2, 3))


def test_expectation_bell_pair():
    zz = BellExpression.from_terms(Scenario((1, 1)), [((0, 0), 1)])
    assert np.isclose(expectation(zz, z_settings(2, 1), BELL), 1.0)
    xx = MeasurementSettings((np.array([[1.0, 0, 0]]), np.array([[1.0, 0, 0]])))
    assert np.isclose(expectation(zz, xx, BELL), 1.0)


def test_spectrum_grouping_and_checks():
    spec = spectrum(np.diag([2.0, 2.0 + 1e-9, -1.0]))
    assert spec.groups == ((2.0 + 1e-9, 2), (-1.0, 1))
    assert spec.eigenvalues[0] >= spec.eigenvalues[-1]
    with pytest.raises(ValueError):
        spectrum(np.array([[0.0, 1.0], [0.0, 0.0]]))
    assert spectrum(np.zeros((4, 4))).groups == ((0.0, 4),)


# ---------------------------------------------------------------------------
# contraction identities
# ---------------------------------------------------------------------------


def test_contraction_reproduces_expectation():
    rng = np.random.default_rng(2)
    fp = four_party_19()
    for _ in range(5):
        ket = rng.normal(size=16) + 1j * rng.normal(size=16)
        state = make_state("custom", rho=np.outer(ket, ket.conj()) / np.vdot(ket, ket).real)
        vecs = rng.normal(size=(4, 3, 3))
        vecs /= np.linalg.norm(vecs, axis=2, keepdims=True)
        settings = MeasurementSettings(tuple(vecs))
        lhs = float(np.sum(correlation_tensor(state).values * contract_coefficients(fp, settings)))
        assert abs(lhs - expectation(fp, settings, state)) < 1e-10


def test_contracted_coefficient_norm_is_constant():
    rng = np.random.default_rng(4)
    fp = four_party_19()
    angles = [tuple(rng.uniform(0, 2 * math.pi, 3)) for _ in range(4)]
    alpha = contract_coefficients(fp, MeasurementSettings.from_angles(angles))
    assert abs(np.sum((4 * alpha) ** 2) - 16.0) < 1e-9


# ---------------------------------------------------------------------------
# see-saw
# ---------------------------------------------------------------------------


def test_seesaw_reaches_tsirelson():
    res = seesaw_maximize(CHSH, BELL, SeesawConfig(restarts=5, seed=0))
    assert abs(res.value - math.sqrt(2)) < 1e-9
    assert res.converged
    # the value the optimizer reports is the expectation at its settings
    assert abs(expectation(CHSH, res.settings, BELL) - res.value) < 1e-12


def test_seesaw_product_state_stays_classical():
    res = seesaw_maximize(CHSH, make_state("product-zeros", 2), SeesawConfig(restarts=5, seed=1))
    assert res.value <= 1.0 + 1e-9


def test_seesaw_normalizes_the_bound():
    res = seesaw_maximize(CHSH.scaled(4), BELL, SeesawConfig(restarts=3, seed=0))
    assert res.scale == Fraction(1, 4)
    assert abs(res.value - math.sqrt(2)) < 1e-9  # violation factor, not raw value


def test_seesaw_trace_is_monotone():
    res = seesaw_maximize(four_party_19(), make_state("chi"), SeesawConfig(restarts=2, seed=3))
    assert all(b >= a - 1e-12 for a, b in zip(res.trace, res.trace[1:]))


def test_seesaw_is_deterministic_given_seed():
    cfg = SeesawConfig(restarts=4, seed=9)
    a = seesaw_maximize(CHSH, BELL, cfg)
    b = seesaw_maximize(CHSH, BELL, cfg)
    assert a.value == b.value
    assert all(np.array_equal(x, y) for x, y in zip(a.settings.vectors, b.settings.vectors))


def test_seesaw_rejects_party_mismatch():
    with pytest.raises(ValueError):
        seesaw_maximize(CHSH, make_state("ghz4"))


def test_seesaw_never_exceeds_top_eigenvalue():
    fp = four_party_19()
    state = make_state("w4")
    res = seesaw_maximize(fp, state, SeesawConfig(restarts=6, seed=0))
    top = spectrum(bell_operator(fp, res.settings)).eigenvalues[0]
    assert res.value <= top + 1e-10


# ---------------------------------------------------------------------------
# closed-form optimal settings for the two-setting family
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4])
def test_mabk_optimal_settings_attain_the_quantum_maximum(n):
    settings = mabk_optimal_settings(n)
    value = expectation(mabk(n), settings, make_state("ghz", n))
    assert abs(value - math.sqrt(2) ** (n - 1)) < 1e-12
