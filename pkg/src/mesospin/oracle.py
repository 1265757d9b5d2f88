"""Exact microscopic dynamics of one site pair, used to certify the mode model.

Everything here works at the level of the full 16-dimensional operator space
of a single site pair: the Heisenberg generator as an explicit matrix, its
restriction to the eight closing observables, and finite-size Weyl
expectations whose central limit fixes the Gaussian fluctuation state. The
mesoscopic propagation never depends on this module; it exists so the two
routes can be compared.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ClosureError, ContractViolation
from .linalg import STRUCTURAL_TOL, expm
from .modes import mode_map
from .sites import (
    ModelParams,
    ThermalSiteState,
    dissipation_matrix,
    fluctuation_inner,
    lindblad_ops,
    observables,
    site_hamiltonian,
)

CLOSURE_TOL = 1e-10

_DIM = 4


def _vec(x: np.ndarray) -> np.ndarray:
    return np.asarray(x, dtype=complex).flatten(order="F")


def _unvec(v: np.ndarray) -> np.ndarray:
    return np.asarray(v, dtype=complex).reshape((_DIM, _DIM), order="F")


def _left(a: np.ndarray) -> np.ndarray:
    return np.kron(np.eye(_DIM), a)


def _right(b: np.ndarray) -> np.ndarray:
    return np.kron(b.T, np.eye(_DIM))


@dataclass(frozen=True)
class Superoperator:
    """Heisenberg generator as a 16x16 matrix over column-stacked operators."""

    matrix: np.ndarray
    params: ModelParams

    def apply(self, x: np.ndarray) -> np.ndarray:
        return _unvec(self.matrix @ _vec(x))


def liouvillian(params: ModelParams) -> Superoperator:
    """Heisenberg generator L[X] = i[H,X] + (1/2) sum D_mn [[V_m,X],V_n^dag].

    The half in front of the double commutator makes the generator agree with
    the standard completely positive form (sum over both Lindblad pairings);
    unitality L[1] = 0 holds exactly by construction and is checked.
    """
    h = site_hamiltonian(params)
    d = dissipation_matrix(params.gamma).matrix
    v_ops = lindblad_ops()

    gen = 1.0j * (_left(h) - _right(h))
    for m, vm in enumerate(v_ops):
        for n, vn in enumerate(v_ops):
            if d[m, n] == 0:
                continue
            vnd = vn.conj().T
            term = (
                _right(vnd) @ _left(vm)
                - _right(vm @ vnd)
                - _left(vnd @ vm)
                + _left(vnd) @ _right(vm)
            )
            gen = gen + 0.5 * d[m, n] * term

    sup = Superoperator(matrix=gen, params=params)
    unital = float(np.abs(sup.apply(np.eye(_DIM))).max())
    if unital > STRUCTURAL_TOL:
        raise ClosureError(f"generator is not unital: ||L[1]|| = {unital:.3e}")
    return sup


@dataclass(frozen=True)
class GeneratorExtraction:
    """Restriction of the generator to the span of the eight observables.

    coefficients[b, a] is the component of L[x_a] along x_b in the normalized
    trace basis; identity_coeffs collects the identity components (zero for
    unital dynamics restricted to traceless operators... kept explicit so the
    test can pin it). mode_generator expresses the same action in the ladder
    basis (a1, a2, b1, b2, and conjugates); its upper-left block is the drift
    matrix the mesoscopic propagation uses, transposed.
    """

    coefficients: np.ndarray
    identity_coeffs: np.ndarray
    residual: float
    mode_generator: np.ndarray
    annihilation_block: np.ndarray


def extract_mode_generator(
    sup: Superoperator, params: ModelParams
) -> GeneratorExtraction:
    obs = observables().ops
    images = [sup.apply(x) for x in obs]

    coeffs = np.empty((8, 8), dtype=complex)
    identity = np.empty(8, dtype=complex)
    residual = 0.0
    eye = np.eye(_DIM, dtype=complex)
    for a, image in enumerate(images):
        identity[a] = np.trace(image) / 4.0
        for b, xb in enumerate(obs):
            coeffs[b, a] = np.trace(xb.conj().T @ image) / 4.0
        recon = identity[a] * eye
        for b, xb in enumerate(obs):
            recon = recon + coeffs[b, a] * xb
        residual = max(residual, float(np.abs(image - recon).max()))
    if residual > CLOSURE_TOL:
        raise ClosureError(
            f"observables do not close under the generator: residual {residual:.3e}"
        )

    mm = mode_map(params)
    mode_generator = mm.matrix @ coeffs.T @ mm.inverse
    return GeneratorExtraction(
        coefficients=coeffs,
        identity_coeffs=identity,
        residual=residual,
        mode_generator=mode_generator,
        annihilation_block=mode_generator[:4, :4].copy(),
    )


def _require_hermitian(x: np.ndarray, name: str) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    if x.shape != (_DIM, _DIM):
        raise ContractViolation(f"{name} must be 4x4, got shape {x.shape}")
    if np.abs(x - x.conj().T).max(initial=0.0) > STRUCTURAL_TOL:
        raise ContractViolation(f"{name} must be Hermitian")
    return x


def _require_sites(n: int) -> int:
    if int(n) != n or n < 1:
        raise ContractViolation(f"site count must be a positive integer, got {n!r}")
    return int(n)


def _site_weyl_factor(x: np.ndarray, n: int, state: ThermalSiteState) -> complex:
    centered = x - state.expectation(x) * np.eye(_DIM)
    u = expm(1.0j * centered / np.sqrt(n))
    return state.expectation(u)


def weyl_expectation_finite(x: np.ndarray, n: int, state: ThermalSiteState) -> complex:
    """Exact n-site expectation of the Weyl operator of the mean-centered sum.

    Sites are independent and identically prepared, so the expectation
    factorizes into the n-th power of one site factor.
    """
    x = _require_hermitian(x, "Weyl argument")
    n = _require_sites(n)
    return _site_weyl_factor(x, n, state) ** n


def weyl_expectation_limit(x: np.ndarray, state: ThermalSiteState) -> float:
    """Large-n limit exp(-<x,x>/2) of the single Weyl expectation."""
    x = _require_hermitian(x, "Weyl argument")
    variance = fluctuation_inner(x, x, state).real
    return float(np.exp(-0.5 * variance))


def weyl_product_finite(
    x: np.ndarray, y: np.ndarray, n: int, state: ThermalSiteState
) -> complex:
    """Exact n-site expectation of the product of two Weyl operators."""
    x = _require_hermitian(x, "first Weyl argument")
    y = _require_hermitian(y, "second Weyl argument")
    n = _require_sites(n)
    cx = x - state.expectation(x) * np.eye(_DIM)
    cy = y - state.expectation(y) * np.eye(_DIM)
    ux = expm(1.0j * cx / np.sqrt(n))
    uy = expm(1.0j * cy / np.sqrt(n))
    return state.expectation(ux @ uy) ** n


def weyl_product_limit(
    x: np.ndarray, y: np.ndarray, state: ThermalSiteState
) -> complex:
    """Large-n limit exp(-(<x+y, x+y> + [x, y])/2) of the Weyl product.

    The commutator term is the scalar w([x, y]) that survives the central
    limit; it makes the limit genuinely complex for non-commuting arguments.
    """
    x = _require_hermitian(x, "first Weyl argument")
    y = _require_hermitian(y, "second Weyl argument")
    ixx = fluctuation_inner(x, x, state)
    iyy = fluctuation_inner(y, y, state)
    ixy = fluctuation_inner(x, y, state)
    iyx = fluctuation_inner(y, x, state)
    sum_form = ixx + iyy + ixy + iyx
    commutator = ixy - iyx
    return complex(np.exp(-0.5 * (sum_form + commutator)))
