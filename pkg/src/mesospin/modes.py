"""Collective fluctuation modes and their Gaussian mesoscopic dynamics.

The eight site observables carry, in the large-size limit, a Gaussian
fluctuation field with two ladder modes per chain: a1, a2 for chain one and
b1, b2 for chain two. This module owns the change of basis between site
observables and modes, the quadratic drift generator of the dissipative
evolution, and the closed-form propagation of Gaussian moment matrices. No
time stepping is involved: the drift is linear, so the flow is an exact
matrix exponential conjugation toward the thermal fixed point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation
from .linalg import STRUCTURAL_TOL, expm
from .sites import SIGMA0, SIGMA_MINUS, ModelParams


@dataclass(frozen=True)
class ModeMap:
    """Invertible map from the eight site observables to ladder modes.

    Row order is (a1, a2, b1, b2, a1*, a2*, b1*, b2*). The inverse is the
    closed form obtained by solving the defining combinations, not a numerical
    inversion: the matrix becomes ill-conditioned for eta near 1 and the
    closed form keeps the round trip exact at the 1e-12 level there.
    """

    matrix: np.ndarray
    inverse: np.ndarray
    eta: float


def mode_map(params: ModelParams) -> ModeMap:
    eta, w = params.eta, params.eta_perp
    sq = np.sqrt(eta)
    c1 = 1.0 / (2.0 * sq)
    c2 = sq / (2.0 * w)

    r = np.zeros((8, 8), dtype=complex)
    r[0, 0], r[0, 1] = c1, -1.0j * c1
    r[1, 0], r[1, 1] = c2, -1.0j * c2
    r[1, 2], r[1, 3] = c2 / eta, -1.0j * c2 / eta
    r[2, 4], r[2, 5] = c1, -1.0j * c1
    r[3, 4], r[3, 5] = c2, -1.0j * c2
    r[3, 6], r[3, 7] = c2 / eta, -1.0j * c2 / eta
    r[4:, :] = r[:4, :].conj()

    inv = np.zeros((8, 8), dtype=complex)
    inv[0, 0], inv[0, 4] = sq, sq
    inv[1, 0], inv[1, 4] = 1.0j * sq, -1.0j * sq
    inv[2, 0], inv[2, 1] = -eta * sq, w * sq
    inv[2, 4], inv[2, 5] = -eta * sq, w * sq
    inv[3, 0], inv[3, 1] = -1.0j * eta * sq, 1.0j * w * sq
    inv[3, 4], inv[3, 5] = 1.0j * eta * sq, -1.0j * w * sq
    inv[4:, 2:4] = inv[:4, 0:2]
    inv[4:, 6:8] = inv[:4, 4:6]

    return ModeMap(matrix=r, inverse=inv, eta=eta)


def mode_operators(params: ModelParams) -> tuple[np.ndarray, ...]:
    """The four annihilation modes assembled directly as site matrices.

    Equivalent to applying the mode map to the observable vector, but immune
    to the cancellation that plagues that route for eta near 1: the only
    delicate diagonal entry is formed as -(1-eta)/eta, which is exact for
    eta >= 1/2 and loses nothing below.
    """
    eta, w = params.eta, params.eta_perp
    sq = np.sqrt(eta)
    c2 = sq / (2.0 * w)
    d = np.diag([1.0 + 1.0 / eta, -(1.0 - eta) / eta]).astype(complex)
    return (
        np.kron(SIGMA_MINUS, SIGMA0) / sq,
        2.0 * c2 * np.kron(SIGMA_MINUS, d),
        np.kron(SIGMA0, SIGMA_MINUS) / sq,
        2.0 * c2 * np.kron(d, SIGMA_MINUS),
    )


@dataclass(frozen=True)
class MesoGenerator:
    """Drift matrix of the annihilation modes, -(1+i*eps)I + gamma*K.

    The bath-mediated coupling K is real symmetric with K^2 = I, so the
    spectrum is -(1+i*eps) +/- gamma, each twice: dissipation always wins for
    gamma < 1 and the slow envelope contracts at rate 1 - gamma per quadrature
    pair (2(1-gamma) for the moment matrix).
    """

    matrix: np.ndarray
    coupling: np.ndarray
    epsilon: float
    gamma: float
    eta: float


def drift_matrix(params: ModelParams) -> MesoGenerator:
    eta, w = params.eta, params.eta_perp
    k = np.zeros((4, 4))
    k[0, 2], k[0, 3] = -eta, w
    k[1, 2], k[1, 3] = w, eta
    k[2:, :2] = k[:2, 2:].T
    m = -(1.0 + 1.0j * params.epsilon) * np.eye(4, dtype=complex) + params.gamma * k
    return MesoGenerator(
        matrix=m,
        coupling=k,
        epsilon=params.epsilon,
        gamma=params.gamma,
        eta=eta,
    )


_SWAP = np.block(
    [[np.zeros((4, 4)), np.eye(4)], [np.eye(4), np.zeros((4, 4))]]
).astype(complex)


@dataclass(frozen=True)
class GaussianState:
    """Quasi-free fluctuation state, held as the 8x8 moment matrix Gamma.

    Gamma is ordered (modes; conjugate modes): the upper-left block holds the
    symmetrized second moments, the lower-left block the anomalous pair
    moments (negated), and conjugation symmetry Gamma = Swap conj(Gamma) Swap
    ties the halves together. Construction enforces Hermiticity and the swap
    symmetry, then stores the exactly symmetrized matrix.
    """

    moment_matrix: np.ndarray
    eta: float

    def __post_init__(self) -> None:
        g = np.asarray(self.moment_matrix, dtype=complex)
        if g.shape != (8, 8):
            raise ContractViolation(f"moment matrix must be 8x8, got {g.shape}")
        scale = max(1.0, float(np.abs(g).max()))
        if np.abs(g - g.conj().T).max() > STRUCTURAL_TOL * scale:
            raise ContractViolation("moment matrix must be Hermitian")
        swapped = _SWAP @ g.conj() @ _SWAP
        if np.abs(g - swapped).max() > STRUCTURAL_TOL * scale:
            raise ContractViolation(
                "moment matrix must equal its conjugate under mode-conjugate swap"
            )
        g = 0.5 * (g + g.conj().T)
        g = 0.5 * (g + _SWAP @ g.conj() @ _SWAP)
        object.__setattr__(self, "moment_matrix", g)


def initial_state(params: ModelParams, squeeze_r: float = 0.0) -> GaussianState:
    """Thermal fluctuation state with both first modes squeezed by r.

    The squeeze acts independently on a1 and b1 with the same real parameter
    (alpha -> cosh(r) alpha - sinh(r) alpha*), so the state is a product over
    the two chains and carries no cross correlations: entanglement between
    the chains can only be generated by the common bath afterwards.
    r = 0 returns the exact fixed point I/(2*eta).
    """
    r = float(squeeze_r)
    if not np.isfinite(r):
        raise ContractViolation(f"squeeze parameter must be finite, got {squeeze_r!r}")
    eta = params.eta
    ch, sh = np.cosh(2.0 * r), np.sinh(2.0 * r)
    sym = np.diag([ch, 1.0, ch, 1.0]).astype(complex) / (2.0 * eta)
    pair = np.zeros((4, 4), dtype=complex)
    pair[0, 0] = pair[2, 2] = -sh / (2.0 * eta)
    g = np.zeros((8, 8), dtype=complex)
    g[:4, :4] = sym
    g[4:, 4:] = sym.T
    g[4:, :4] = -pair
    g[:4, 4:] = -pair.conj()
    return GaussianState(moment_matrix=g, eta=eta)


def propagate(state: GaussianState, gen: MesoGenerator, t: float) -> GaussianState:
    """Evolve the moment matrix for time t >= 0 in closed form.

    Gamma(t) = T(t)^dag (Gamma(0) - Gamma_th) T(t) + Gamma_th with
    T = exp(tM) (+) conj(exp(tM)) and Gamma_th = I/(2*eta); the deviation from
    the fixed point is conjugated by a strict contraction whenever gamma < 1.
    """
    t = float(t)
    if not np.isfinite(t) or t < 0.0:
        raise ContractViolation(f"propagation time must be nonnegative, got {t!r}")
    if abs(state.eta - gen.eta) > 1e-15:
        raise ContractViolation(
            "state and generator were built from different thermal parameters"
        )
    u = expm(gen.matrix, t)
    transfer = np.zeros((8, 8), dtype=complex)
    transfer[:4, :4] = u
    transfer[4:, 4:] = u.conj()
    reference = np.eye(8, dtype=complex) / (2.0 * state.eta)
    g = transfer.conj().T @ (state.moment_matrix - reference) @ transfer + reference
    return GaussianState(moment_matrix=g, eta=state.eta)
