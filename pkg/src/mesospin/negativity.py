"""Logarithmic negativity between the first collective modes of the chains.

The pipeline is: select the (a1, b1) block of an eight-dimensional moment
matrix, rewrite it as a real quadrature covariance normalized so the vacuum is
the identity, partially transpose the second mode, and read off the smallest
symplectic eigenvalue. Entanglement is E = max(0, -ln nu_min): positive
exactly when the partial transpose fails to be a physical state.

The smallest eigenvalue is computed twice, by independent routes: the closed
two-mode determinant formula, and the spectrum of i*Omega*sigma. The spectral
route goes through a Cholesky similarity (i*Omega*sigma is similar to the
Hermitian matrix i L^T Omega L), which stays fully accurate at degenerate
symplectic spectra where a general eigensolver loses half its digits. The two
routes must agree; disagreement is reported as a numeric failure, never
papered over.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation, NumericError
from .linalg import SPECTRAL_TOL
from .modes import GaussianState

_BLOCK_TOL = 1e-10


def first_mode_block(state: GaussianState) -> np.ndarray:
    """Moment block of (a1, b1) and conjugates: rows/columns 0, 2, 4, 6."""
    idx = np.array([0, 2, 4, 6])
    return state.moment_matrix[np.ix_(idx, idx)].copy()


def quadrature_covariance(block: np.ndarray) -> np.ndarray:
    """Real covariance over (x_1, p_1, ..., x_n, p_n), vacuum = identity.

    Accepts a 2n x 2n complex moment block ordered (modes; conjugate modes).
    The block must be Hermitian and conjugation-symmetric within 1e-10;
    the assembled real matrix must be symmetric to the same tolerance.
    """
    block = np.asarray(block, dtype=complex)
    if block.ndim != 2 or block.shape[0] != block.shape[1] or block.shape[0] % 2:
        raise ContractViolation(f"moment block must be 2n x 2n, got {block.shape}")
    n = block.shape[0] // 2
    scale = max(1.0, float(np.abs(block).max()))
    if np.abs(block - block.conj().T).max() > _BLOCK_TOL * scale:
        raise ContractViolation("moment block must be Hermitian")
    swap = np.zeros_like(block)
    swap[:n, n:] = np.eye(n)
    swap[n:, :n] = np.eye(n)
    if np.abs(block - swap @ block.conj() @ swap).max() > _BLOCK_TOL * scale:
        raise ContractViolation("moment block breaks mode-conjugate symmetry")

    sym = block[:n, :n].conj()
    pair = -block[n:, :n]
    cov = np.empty((2 * n, 2 * n))
    cov[0::2, 0::2] = (sym + pair).real
    cov[0::2, 1::2] = pair.imag - sym.imag
    cov[1::2, 0::2] = pair.imag + sym.imag
    cov[1::2, 1::2] = (sym - pair).real
    cov *= 2.0
    if np.abs(cov - cov.T).max() > _BLOCK_TOL * max(1.0, float(np.abs(cov).max())):
        raise ContractViolation("assembled quadrature covariance is not symmetric")
    return 0.5 * (cov + cov.T)


def _symplectic_form(n: int) -> np.ndarray:
    j = np.array([[0.0, 1.0], [-1.0, 0.0]])
    omega = np.zeros((2 * n, 2 * n))
    for k in range(n):
        omega[2 * k : 2 * k + 2, 2 * k : 2 * k + 2] = j
    return omega


def symplectic_eigenvalues(cov: np.ndarray) -> np.ndarray:
    """Ascending symplectic spectrum of a real symmetric positive covariance.

    Uses the similarity i*Omega*cov ~ i L^T Omega L (L the Cholesky factor),
    whose right side is Hermitian: the Hermitian eigensolver keeps full
    accuracy even when the spectrum is degenerate.
    """
    cov = np.asarray(cov, dtype=float)
    if cov.ndim != 2 or cov.shape[0] != cov.shape[1] or cov.shape[0] % 2:
        raise ContractViolation(f"covariance must be 2n x 2n, got {cov.shape}")
    n = cov.shape[0] // 2
    if np.abs(cov - cov.T).max() > _BLOCK_TOL * max(1.0, float(np.abs(cov).max())):
        raise ContractViolation("covariance must be symmetric")
    try:
        chol = np.linalg.cholesky(cov)
    except np.linalg.LinAlgError as exc:
        raise NumericError("covariance is not positive definite") from exc
    herm = 1.0j * (chol.T @ _symplectic_form(n) @ chol)
    spectrum = np.linalg.eigvalsh(herm)
    return np.sort(np.abs(spectrum))[::2]


def min_symplectic_pt(cov: np.ndarray) -> float:
    """Smallest symplectic eigenvalue after partial transposition of mode two.

    cov is the 4x4 quadrature covariance of two modes, vacuum-normalized.
    Computed both from the closed determinant formula and from the symplectic
    spectrum of the transposed matrix; the routes must agree within 1e-9.
    """
    cov = np.asarray(cov, dtype=float)
    if cov.shape != (4, 4):
        raise ContractViolation(f"two-mode covariance must be 4x4, got {cov.shape}")
    flip = np.diag([1.0, 1.0, 1.0, -1.0])
    transposed = flip @ cov @ flip

    a_blk, b_blk, c_blk = cov[:2, :2], cov[2:, 2:], cov[:2, 2:]
    a = float(np.linalg.det(a_blk))
    b = float(np.linalg.det(b_blk))
    c = float(np.linalg.det(c_blk))
    delta = a + b - 2.0 * c
    # delta^2 - 4 det(cov) cancels catastrophically near degenerate spectra
    # (product states would lose half the digits). The expanded form below is
    # algebraically identical and evaluates to exactly zero at C = 0, A = B.
    c_adj = np.array([[c_blk[1, 1], -c_blk[0, 1]], [-c_blk[1, 0], c_blk[0, 0]]])
    tau = float(np.trace(a_blk @ c_adj.T @ b_blk @ c_adj))
    disc = max((a - b) ** 2 + 4.0 * (tau - c * (a + b)), 0.0)
    nu_formula = float(np.sqrt(max(0.5 * (delta - np.sqrt(disc)), 0.0)))

    nu_spectral = float(symplectic_eigenvalues(transposed)[0])
    if abs(nu_formula - nu_spectral) > SPECTRAL_TOL * max(1.0, nu_spectral):
        raise NumericError(
            "symplectic eigenvalue routes disagree: "
            f"formula {nu_formula:.12e} vs spectrum {nu_spectral:.12e}"
        )
    return nu_formula


def log_negativity(nu_min: float) -> float:
    """E = max(0, -ln nu_min); nu_min must be strictly positive."""
    nu_min = float(nu_min)
    if not np.isfinite(nu_min) or nu_min <= 0.0:
        raise ContractViolation(
            f"smallest symplectic eigenvalue must be positive, got {nu_min!r}"
        )
    return max(0.0, -float(np.log(nu_min)))


@dataclass(frozen=True)
class NegativityResult:
    nu_min: float
    log_negativity: float


def negativity(state: GaussianState) -> NegativityResult:
    """Logarithmic negativity between a1 and b1 in the given Gaussian state."""
    cov = quadrature_covariance(first_mode_block(state))
    nu_min = min_symplectic_pt(cov)
    return NegativityResult(nu_min=nu_min, log_negativity=log_negativity(nu_min))
