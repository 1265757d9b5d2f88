"""Single-site algebra for a pair of spin-1/2 chains in a common bath.

Each chain contributes one spin-1/2 per site; because the chains do not
interact and every site couples to the environment the same way, the whole
model is generated by one four-dimensional site algebra: the tensor product of
one spin from chain one with one spin from chain two. Basis ordering is
|s1 s2> with spin-up first, so sigma3 x 1 = diag(1, 1, -1, -1). Units are
k_B = hbar = 1 throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import ContractViolation

GAMMA_MAX = 0.5

SIGMA0 = np.eye(2, dtype=complex)
SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
SIGMA_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)

_PAULI = (SIGMA0, SIGMA1, SIGMA2, SIGMA3)


def kron2(i: int, j: int) -> np.ndarray:
    """Two-site Pauli word sigma_i x sigma_j (indices 0..3, 0 = identity)."""
    return np.kron(_PAULI[i], _PAULI[j])


@dataclass(frozen=True)
class ModelParams:
    """Model parameters with derived thermal quantities.

    eta = tanh(epsilon*beta/2) is the single-site magnetization scale; it must
    lie strictly inside (0, 1). Parameters cold enough that eta rounds to 1.0
    in float are rejected, because every downstream normalization (mode
    commutators, stationary covariance 1/(2*eta)) degenerates there.
    eta_perp = sqrt(1 - eta**2) is always computed as sech(epsilon*beta/2);
    forming it from eta would lose half the digits for eta near 1.
    """

    epsilon: float = 1.0
    temperature: float = 1.0
    gamma: float = 0.5
    beta: float = field(init=False)
    eta: float = field(init=False)
    eta_perp: float = field(init=False)

    def __post_init__(self) -> None:
        for name in ("epsilon", "temperature", "gamma"):
            value = getattr(self, name)
            if not np.isfinite(value):
                raise ContractViolation(f"{name} must be finite, got {value!r}")
        if self.epsilon <= 0:
            raise ContractViolation(f"epsilon must be positive, got {self.epsilon}")
        if self.temperature <= 0:
            raise ContractViolation(
                f"temperature must be positive, got {self.temperature}"
            )
        if not 0.0 <= self.gamma <= GAMMA_MAX:
            raise ContractViolation(
                f"gamma must lie in [0, {GAMMA_MAX}] for complete positivity, "
                f"got {self.gamma}"
            )
        beta = 1.0 / self.temperature
        u = 0.5 * self.epsilon * beta
        eta = float(np.tanh(u))
        if not 0.0 < eta < 1.0:
            raise ContractViolation(
                f"tanh(epsilon*beta/2) = {eta} must lie strictly in (0, 1); "
                "the temperature is too low for finite-precision thermal structure"
            )
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "eta_perp", float(1.0 / np.cosh(u)))


def site_hamiltonian(params: ModelParams) -> np.ndarray:
    """One-site Hamiltonian (epsilon/2)(sigma3 x 1 + 1 x sigma3)."""
    return 0.5 * params.epsilon * (kron2(3, 0) + kron2(0, 3))


@dataclass(frozen=True)
class ThermalSiteState:
    """Gibbs state of a single site pair; rho is diagonal in the spin basis."""

    rho: np.ndarray
    partition_function: float
    params: ModelParams

    def expectation(self, op: np.ndarray) -> complex:
        return complex(np.trace(self.rho @ op))


def thermal_state(params: ModelParams) -> ThermalSiteState:
    """Thermal state exp(-beta H)/Z of one site pair.

    Weights are exponentiated after shifting by the ground energy, so large
    beta*epsilon cannot overflow before normalization.
    """
    energies = 0.5 * params.epsilon * np.array([2.0, 0.0, 0.0, -2.0])
    shifted = np.exp(-params.beta * (energies - energies.min()))
    rho = np.diag(shifted / shifted.sum()).astype(complex)
    partition_function = float(np.exp(-params.beta * energies).sum())
    return ThermalSiteState(rho=rho, partition_function=partition_function, params=params)


def fluctuation_inner(x: np.ndarray, y: np.ndarray, state: ThermalSiteState) -> complex:
    """Covariance form <x, y> = w(x^dag y) - w(x^dag) w(y) in the given state."""
    xd = x.conj().T
    return state.expectation(xd @ y) - state.expectation(xd) * state.expectation(y)


@dataclass(frozen=True)
class ObservableSet:
    """The eight site observables whose fluctuations close under the dynamics.

    ops[0..3] act on chain one (sigma1 x 1, sigma2 x 1, sigma1 x sigma3,
    sigma2 x sigma3), ops[4..7] mirror them on chain two. complement holds the
    remaining eight Pauli words, which stay decoupled in the thermal state.
    """

    ops: tuple[np.ndarray, ...]
    complement: tuple[np.ndarray, ...]


@lru_cache(maxsize=1)
def observables() -> ObservableSet:
    ops = tuple(
        kron2(i, j)
        for i, j in ((1, 0), (2, 0), (1, 3), (2, 3), (0, 1), (0, 2), (3, 1), (3, 2))
    )
    complement = tuple(
        kron2(i, j)
        for i, j in ((0, 0), (3, 0), (0, 3), (3, 3), (1, 1), (1, 2), (2, 1), (2, 2))
    )
    return ObservableSet(ops=ops, complement=complement)


def lindblad_ops() -> tuple[np.ndarray, ...]:
    """Environment coupling operators: collective flip-flop and dephasing."""
    return (
        np.kron(SIGMA_PLUS, SIGMA_MINUS),
        np.kron(SIGMA_MINUS, SIGMA_PLUS),
        0.5 * kron2(3, 0),
        0.5 * kron2(0, 3),
    )


@dataclass(frozen=True)
class DissipationMatrix:
    """Kossakowski matrix over the coupling operators, with its spectrum.

    Completely positive dynamics requires the matrix to be positive
    semidefinite, which holds exactly for gamma in [0, 1/2]. Construction
    never raises outside that window; positivity is reported, not enforced.
    """

    matrix: np.ndarray
    gamma: float
    eigenvalues: np.ndarray
    min_eigenvalue: float
    is_positive: bool


def dissipation_matrix(gamma: float) -> DissipationMatrix:
    gamma = float(gamma)
    if not np.isfinite(gamma):
        raise ContractViolation(f"gamma must be finite, got {gamma!r}")
    m = np.array(
        [
            [1.0, 0.0, gamma, gamma],
            [0.0, 1.0, gamma, gamma],
            [gamma, gamma, 1.0, 0.0],
            [gamma, gamma, 0.0, 1.0],
        ],
        dtype=complex,
    )
    eigenvalues = np.linalg.eigvalsh(m)
    min_eigenvalue = float(eigenvalues[0])
    return DissipationMatrix(
        matrix=m,
        gamma=gamma,
        eigenvalues=eigenvalues,
        min_eigenvalue=min_eigenvalue,
        is_positive=min_eigenvalue >= -1e-12,
    )


def pauli_coefficients(op: np.ndarray) -> np.ndarray:
    """Coefficients c[i, j] of op in the (sigma_i x sigma_j)/4 trace basis."""
    op = np.asarray(op, dtype=complex)
    if op.shape != (4, 4):
        raise ContractViolation(f"site operators are 4x4, got shape {op.shape}")
    coeffs = np.empty((4, 4), dtype=complex)
    for i in range(4):
        for j in range(4):
            coeffs[i, j] = np.trace(kron2(i, j) @ op) / 4.0
    return coeffs


def pauli_assemble(coeffs: np.ndarray) -> np.ndarray:
    """Inverse of pauli_coefficients: sum c[i, j] sigma_i x sigma_j."""
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.shape != (4, 4):
        raise ContractViolation(f"expected 4x4 coefficients, got shape {coeffs.shape}")
    out = np.zeros((4, 4), dtype=complex)
    for i in range(4):
        for j in range(4):
            if coeffs[i, j] != 0:
                out += coeffs[i, j] * kron2(i, j)
    return out
