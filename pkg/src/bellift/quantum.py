"""Quantum side: Bell operators, spectra, correlation tensors, see-saw search.

Conventions:

* Qubit p is party p and is the p-th tensor factor; basis kets are labelled
  ``|b_0 b_1 ... b_{n-1}>`` with qubit 0 the most significant bit.
* Measurement directions are real unit 3-vectors; the observable for
  direction v is ``v . (sigma_x, sigma_y, sigma_z)``.
* The correlation tensor of an n-qubit state holds the 3^n expectation
  values of products of one local basis observable per party; with the
  default bases these are the Pauli x/y/z products.  The sum of its squared
  entries is invariant under local rotations.
* Violation factors are Bell expectation values divided by the
  local-realistic bound; expressions are rescaled to lr_max = 1 before any
  quantum analysis (the scale, if not 1, is logged and reported).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .expressions import BellExpression, Scenario
from .polytope import lr_max

logger = logging.getLogger(__name__)

PAULIS = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [0 + 1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=np.complex128,
)

_HERMITICITY_TOL = 1e-10
_STATE_TOL = 1e-12
_EIGENVALUE_FLOOR = -1e-10
_DEGENERACY_TOL = 1e-6


# ---------------------------------------------------------------------------
# States
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuantumState:
    """An n-qubit density matrix (validated Hermitian, unit trace, PSD)."""

    n: int
    rho: np.ndarray

    def __post_init__(self) -> None:
        rho = np.asarray(self.rho, dtype=np.complex128)
        dim = 2**self.n
        if rho.shape != (dim, dim):
            raise ValueError(f"expected a {dim}x{dim} matrix for {self.n} qubits")
        if np.abs(rho - rho.conj().T).max() > _STATE_TOL:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(rho).real - 1.0) > _STATE_TOL:
            raise ValueError("density matrix trace differs from 1")
        if np.linalg.eigvalsh(rho).min() < _EIGENVALUE_FLOOR:
            raise ValueError("density matrix has a negative eigenvalue")
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)

    @classmethod
    def from_ket(cls, amplitudes: Sequence[complex]) -> QuantumState:
        ket = np.asarray(amplitudes, dtype=np.complex128)
        n = int(round(math.log2(ket.size)))
        if 2**n != ket.size:
            raise ValueError("ket length must be a power of two")
        norm = np.linalg.norm(ket)
        if norm < 1e-12:
            raise ValueError("cannot normalize the zero vector")
        ket = ket / norm
        return cls(n, np.outer(ket, ket.conj()))


def _ket_from_bits(bits: str) -> np.ndarray:
    ket = np.zeros(2 ** len(bits), dtype=np.complex128)
    ket[int(bits, 2)] = 1.0
    return ket


def _cluster4_ket() -> np.ndarray:
    plus = np.array([1, 1], dtype=np.complex128) / math.sqrt(2)
    minus = np.array([1, -1], dtype=np.complex128) / math.sqrt(2)
    zero = np.array([1, 0], dtype=np.complex128)
    one = np.array([0, 1], dtype=np.complex128)

    def prod(*factors: np.ndarray) -> np.ndarray:
        out = factors[0]
        for f in factors[1:]:
            out = np.kron(out, f)
        return out

    return 0.5 * (
        prod(plus, zero, plus, zero)
        + prod(plus, zero, minus, one)
        + prod(minus, one, minus, zero)
        + prod(minus, one, plus, one)
    )


def make_state(
    name: str,
    param: float | int | None = None,
    rho: np.ndarray | None = None,
) -> QuantumState:
    """Named states used throughout the analysis.

    ``ghz`` and ``product-zeros`` take the qubit count as ``param``;
    ``generalized-ghz`` takes the angle lambda in radians, restricted to
    [0, pi/4]; ``custom`` takes a density matrix via ``rho``.
    """
    if name == "custom":
        if rho is None:
            raise ValueError("custom state needs a density matrix")
        mat = np.asarray(rho, dtype=np.complex128)
        return QuantumState(int(round(math.log2(mat.shape[0]))), mat)
    if name == "ghz4":
        return make_state("ghz", 4)
    if name == "bell-pair":
        return make_state("ghz", 2)
    if name == "ghz":
        if param is None or int(param) < 1:
            raise ValueError("ghz needs a positive qubit count")
        n = int(param)
        ket = (_ket_from_bits("0" * n) + _ket_from_bits("1" * n)) / math.sqrt(2)
        return QuantumState.from_ket(ket)
    if name == "product-zeros":
        if param is None or int(param) < 1:
            raise ValueError("product-zeros needs a positive qubit count")
        return QuantumState.from_ket(_ket_from_bits("0" * int(param)))
    if name == "generalized-ghz":
        if param is None:
            raise ValueError("generalized-ghz needs the angle lambda in radians")
        lam = float(param)
        if not 0.0 <= lam <= math.pi / 4 + 1e-15:
            raise ValueError("lambda must lie in [0, pi/4]")
        ket = math.cos(lam) * _ket_from_bits("0000") + math.sin(lam) * _ket_from_bits(
            "1111"
        )
        return QuantumState.from_ket(ket)
    if name == "w4":
        ket = 0.5 * (
            _ket_from_bits("0001")
            + _ket_from_bits("0010")
            + _ket_from_bits("0100")
            + _ket_from_bits("1000")
        )
        return QuantumState.from_ket(ket)
    if name == "pdc":
        ket = math.sqrt(1 / 3) * (
            _ket_from_bits("0011")
            + _ket_from_bits("1100")
            - 0.5
            * (
                _ket_from_bits("0101")
                - _ket_from_bits("0110")
                - _ket_from_bits("1001")
                + _ket_from_bits("1010")
            )
        )
        return QuantumState.from_ket(ket)
    if name == "chi":
        ket = (
            _ket_from_bits("0000")
            - _ket_from_bits("0011")
            - _ket_from_bits("0101")
            + _ket_from_bits("0110")
            + _ket_from_bits("1001")
            + _ket_from_bits("1010")
            + _ket_from_bits("1100")
            + _ket_from_bits("1111")
        ) / (2 * math.sqrt(2))
        return QuantumState.from_ket(ket)
    if name == "cluster4":
        return QuantumState.from_ket(_cluster4_ket())
    raise ValueError(f"unknown state name {name!r}")


# ---------------------------------------------------------------------------
# Measurement settings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MeasurementSettings:
    """One unit direction per party per setting: arrays of shape (m_p, 3)."""

    vectors: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        vecs = []
        for party in self.vectors:
            arr = np.asarray(party, dtype=np.float64)
            if arr.ndim != 2 or arr.shape[1] != 3:
                raise ValueError("each party needs an (m, 3) array of directions")
            norms = np.linalg.norm(arr, axis=1)
            if np.abs(norms - 1.0).max() > 1e-9:
                raise ValueError("measurement directions must be unit vectors")
            arr.setflags(write=False)
            vecs.append(arr)
        object.__setattr__(self, "vectors", tuple(vecs))

    @classmethod
    def from_angles(
        cls,
        angles: Sequence[tuple[float, float, float]],
        bases: Sequence[np.ndarray] | None = None,
    ) -> MeasurementSettings:
        """Three settings per party from angles (chi, theta, phi).

        Settings 0 and 1 are ``cos(chi) X1 +- sin(chi) X2`` and setting 2 is
        the arbitrary direction ``sin(theta) sin(phi) X1 +
        sin(theta) cos(phi) X2 + cos(theta) X3``, where X1..X3 are the rows
        of the party's basis triad (default: the coordinate axes).  Any pair
        of unit directions can be brought to the settings-0/1 form by a
        suitable choice of triad, so this parametrization loses nothing.
        """
        parties = len(angles)
        triads = _default_bases(parties) if bases is None else list(bases)
        vectors = []
        for (chi, theta, phi), triad in zip(angles, triads):
            x1, x2, x3 = np.asarray(triad, dtype=np.float64)
            a0 = math.cos(chi) * x1 + math.sin(chi) * x2
            a1 = math.cos(chi) * x1 - math.sin(chi) * x2
            a2 = (
                math.sin(theta) * math.sin(phi) * x1
                + math.sin(theta) * math.cos(phi) * x2
                + math.cos(theta) * x3
            )
            vectors.append(np.vstack([a0, a1, a2]))
        return cls(tuple(vectors))

    def matches(self, scenario: Scenario) -> bool:
        return tuple(v.shape[0] for v in self.vectors) == scenario.settings


def _default_bases(parties: int) -> list[np.ndarray]:
    return [np.eye(3)] * parties


def _check_bases(bases: Sequence[np.ndarray] | None, parties: int) -> list[np.ndarray]:
    if bases is None:
        return _default_bases(parties)
    out = []
    for b in bases:
        arr = np.asarray(b, dtype=np.float64)
        if arr.shape != (3, 3) or np.abs(arr @ arr.T - np.eye(3)).max() > 1e-9:
            raise ValueError("bases must be orthonormal triads (rows)")
        out.append(arr)
    if len(out) != parties:
        raise ValueError("one basis triad per party required")
    return out


# ---------------------------------------------------------------------------
# Operators and spectra
# ---------------------------------------------------------------------------


def bell_operator(expr: BellExpression, settings: MeasurementSettings) -> np.ndarray:
    """The Hermitian operator of the expression at the given directions."""
    scenario = expr.scenario
    if not settings.matches(scenario):
        raise ValueError(f"settings shape does not match scenario {scenario}")
    n = scenario.parties
    dim = 2**n
    observables = [
        np.einsum("ji,ikl->jkl", party, PAULIS) for party in settings.vectors
    ]
    op = np.zeros((dim, dim), dtype=np.complex128)
    for idx, c in expr.terms():
        term = observables[0][idx[0]]
        for p in range(1, n):
            term = np.kron(term, observables[p][idx[p]])
        op += float(c) * term
    return op


def expectation(
    expr: BellExpression, settings: MeasurementSettings, state: QuantumState
) -> float:
    """Tr(rho B) for the Bell operator at the given settings."""
    op = bell_operator(expr, settings)
    return float(np.trace(state.rho @ op).real)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted descending, plus degeneracy groups.

    ``groups`` holds (representative eigenvalue, multiplicity) pairs, where
    eigenvalues closer than the degeneracy tolerance are merged.
    """

    eigenvalues: tuple[float, ...]
    groups: tuple[tuple[float, int], ...]


def spectrum(operator: np.ndarray, degeneracy_tol: float = _DEGENERACY_TOL) -> Spectrum:
    """Eigenvalues of a Hermitian operator, grouped by near-degeneracy."""
    op = np.asarray(operator, dtype=np.complex128)
    if np.abs(op - op.conj().T).max() > _HERMITICITY_TOL:
        raise ValueError("operator is not Hermitian")
    eigs = np.linalg.eigvalsh(op)[::-1]
    groups: list[tuple[float, int]] = []
    for value in eigs:
        if groups and abs(groups[-1][0] - value) <= degeneracy_tol:
            rep, count = groups[-1]
            groups[-1] = (rep, count + 1)
        else:
            groups.append((float(value), 1))
    return Spectrum(tuple(float(v) for v in eigs), tuple(groups))


# ---------------------------------------------------------------------------
# Correlation tensors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CorrelationTensor:
    """All 3^n products of one local basis observable per party."""

    n: int
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64)
        if values.shape != (3,) * self.n:
            raise ValueError(f"expected shape {(3,) * self.n}")
        if np.abs(values).max() > 1.0 + 1e-9:
            raise ValueError("correlation tensor entries must lie in [-1, 1]")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)


def correlation_tensor(
    state: QuantumState, bases: Sequence[np.ndarray] | None = None
) -> CorrelationTensor:
    """Expectation values Tr(rho x_i1 ... x_in) over the local triads."""
    n = state.n
    triads = _check_bases(bases, n)
    rho_t = state.rho.reshape((2,) * (2 * n))
    operands: list = [rho_t, list(range(2 * n))]
    out = []
    for p, triad in enumerate(triads):
        obs = np.einsum("ji,ikl->jkl", triad, PAULIS)
        # Tr(rho X) contracts rho[a, b] with X[b, a]
        operands.extend([obs, [2 * n + p, n + p, p]])
        out.append(2 * n + p)
    values = np.einsum(*operands, out)
    if np.abs(values.imag).max() > 1e-10:
        raise ValueError("correlation tensor came out complex; state invalid?")
    return CorrelationTensor(n, values.real)


def sum_squared_correlations(
    state: QuantumState, bases: Sequence[np.ndarray] | None = None
) -> float:
    """Sum of squared correlation-tensor entries (local-rotation invariant)."""
    t = correlation_tensor(state, bases)
    return float(np.sum(t.values**2))


def contract_coefficients(
    expr: BellExpression,
    settings: MeasurementSettings,
    bases: Sequence[np.ndarray] | None = None,
) -> np.ndarray:
    """Coefficients of the expression as a tensor over the local triads.

    The returned alpha-tilde satisfies ``<T, alpha-tilde> = Tr(rho B)`` for
    every state, where T is the correlation tensor over the same bases.
    """
    scenario = expr.scenario
    if not settings.matches(scenario):
        raise ValueError(f"settings shape does not match scenario {scenario}")
    n = scenario.parties
    triads = _check_bases(bases, n)
    coeffs = np.array([float(c) for c in expr.coeffs]).reshape(scenario.settings)
    operands: list = [coeffs, list(range(n))]
    out = []
    for p, (vecs, triad) in enumerate(zip(settings.vectors, triads)):
        operands.extend([vecs @ triad.T, [p, n + p]])
        out.append(n + p)
    return np.einsum(*operands, out)


# ---------------------------------------------------------------------------
# See-saw maximization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SeesawConfig:
    restarts: int = 50
    max_sweeps: int = 500
    tol: float = 1e-10
    seed: int = 0


@dataclass(frozen=True)
class SeesawResult:
    """Best value found, the directions achieving it, and bookkeeping.

    ``scale`` is the factor the expression was multiplied by to normalize its
    local-realistic maximum to 1 (so the value is a violation factor);
    ``converged`` refers to the restart that produced the best value;
    ``trace`` holds that restart's per-sweep values (non-decreasing).
    """

    value: float
    settings: MeasurementSettings
    converged: bool
    scale: Fraction
    trace: tuple[float, ...]


def _random_directions(rng: np.random.Generator, m: int) -> np.ndarray:
    vecs = rng.normal(size=(m, 3))
    return vecs / np.linalg.norm(vecs, axis=1, keepdims=True)


def seesaw_maximize(
    expr: BellExpression,
    state: QuantumState,
    config: SeesawConfig | None = None,
) -> SeesawResult:
    """Alternating maximization of Tr(rho B) over measurement directions.

    For fixed directions of all other parties the expectation is linear in
    each of party p's direction vectors, with gradient W; the update replaces
    the direction by W/|W| (kept unchanged when W = 0).  Sweeps run until the
    improvement drops below ``tol`` or ``max_sweeps`` is hit; the whole
    search restarts from fresh random directions ``restarts`` times, with a
    per-restart RNG split from the master seed.  Ties keep the earliest
    restart.  This is a heuristic for the true quantum maximum: values are
    certified lower bounds only.
    """
    cfg = config or SeesawConfig()
    scenario = expr.scenario
    if scenario.parties != state.n:
        raise ValueError(
            f"state has {state.n} qubits but the scenario has {scenario.parties} parties"
        )
    bound = lr_max(expr)
    if bound <= 0:
        raise ValueError("expression has non-positive local-realistic maximum")
    scale = Fraction(1) / bound
    if scale != 1:
        logger.info("rescaling expression by %s to normalize lr_max to 1", scale)
    coeffs = np.array([float(c * scale) for c in expr.coeffs]).reshape(
        scenario.settings
    )
    corr = correlation_tensor(state).values
    n = scenario.parties

    def full_value(units: list[np.ndarray]) -> float:
        operands: list = [coeffs, list(range(n)), corr, list(range(n, 2 * n))]
        for p, u in enumerate(units):
            operands.extend([u, [p, n + p]])
        return float(np.einsum(*operands, []))

    def effective(units: list[np.ndarray], p: int) -> np.ndarray:
        # W[j, i] = sum over settings with idx_p = j of coeff * prod_{q != p}
        # (u_q . T axis q); shape (m_p, 3)
        operands: list = [coeffs, list(range(n)), corr, list(range(n, 2 * n))]
        for q, u in enumerate(units):
            if q != p:
                operands.extend([u, [q, n + q]])
        return np.einsum(*operands, [p, n + p])

    seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.restarts)
    best: tuple[float, list[np.ndarray], bool, list[float]] | None = None
    for restart in range(cfg.restarts):
        rng = np.random.default_rng(seeds[restart])
        units = [_random_directions(rng, m) for m in scenario.settings]
        value = full_value(units)
        trace = [value]
        converged = False
        for _ in range(cfg.max_sweeps):
            for p in range(n):
                w = effective(units, p)
                norms = np.linalg.norm(w, axis=1)
                keep = norms == 0.0
                norms[keep] = 1.0
                updated = w / norms[:, None]
                updated[keep] = units[p][keep]
                units[p] = updated
            value = full_value(units)
            trace.append(value)
            if value - trace[-2] < cfg.tol:
                converged = True
                break
        if best is None or value > best[0]:
            best = (value, units, converged, trace)
    assert best is not None
    value, units, converged, trace = best
    return SeesawResult(
        value=value,
        settings=MeasurementSettings(tuple(units)),
        converged=converged,
        scale=scale,
        trace=tuple(trace),
    )


# ---------------------------------------------------------------------------
# MABK specifics
# ---------------------------------------------------------------------------


def mabk_optimal_settings(n: int) -> MeasurementSettings:
    """Closed-form optimal directions for the n-party MABK expression.

    All directions lie in the x-y plane; party p uses angles
    ``(phi_p, phi_p - pi/2)``.  On the n-qubit GHZ state the correlator of
    in-plane directions is ``cos(sum of angles)``, which turns the expression
    into the real part of a fixed complex number times a global phase; the
    optimal global phase is carried by party 0.  At these settings the Bell
    operator reaches the quantum maximum (sqrt 2)^(n-1).
    """
    if n < 1:
        raise ValueError("mabk needs at least one party")
    g = 1 + 0j
    for k in range(2, n + 1):
        swapped = (-1j) ** (k - 1) * g.conjugate()
        g = g * (1 - 1j) / 2 + swapped * (1 + 1j) / 2
    phase = -np.angle(g)
    vectors = []
    for p in range(n):
        phi = phase if p == 0 else 0.0
        vectors.append(
            np.array(
                [
                    [math.cos(phi), math.sin(phi), 0.0],
                    [math.cos(phi - math.pi / 2), math.sin(phi - math.pi / 2), 0.0],
                ]
            )
        )
    return MeasurementSettings(tuple(vectors))


def mabk_critical_lambda(
    config: SeesawConfig | None = None,
    resolution_deg: float = 2e-3,
) -> float:
    """Angle (degrees) where generalized GHZ states start violating 4-party MABK.

    Bisection on the see-saw violation factor of the four-party MABK
    expression over ``cos(lambda)|0000> + sin(lambda)|1111>``.  The result
    satisfies sin(2 lambda) = 1/sqrt(8).
    """
    from .lifting import mabk  # local import to avoid a cycle at module load

    expr = mabk(4)
    cfg = config or SeesawConfig()

    def violates(lam_deg: float) -> bool:
        state = make_state("generalized-ghz", math.radians(lam_deg))
        return seesaw_maximize(expr, state, cfg).value > 1.0 + 1e-7

    lo, hi = 5.0, 15.0
    if violates(lo) or not violates(hi):
        raise RuntimeError("bisection bracket does not straddle the threshold")
    while hi - lo > resolution_deg:
        mid = 0.5 * (lo + hi)
        if violates(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
