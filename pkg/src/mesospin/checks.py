"""Self-verification suite: every structural identity the model rests on.

Each check recomputes one identity from scratch (complete positivity window,
thermal invariance, closure of the observable algebra, generator agreement
between the microscopic and mesoscopic routes, canonical commutation of the
collective modes, central-limit convergence, stationarity, physicality of
propagated states) and reports the worst residual against its tolerance.
The checks are pure functions of their parameter grids, so a harness can
inject out-of-window couplings or a tampered drift builder and watch the
corresponding check fail; nothing here is ever skipped or clamped.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericError
from .experiments import ExperimentConfig, run_curve
from .linalg import STRUCTURAL_TOL
from .modes import drift_matrix, initial_state, mode_operators, propagate
from .negativity import quadrature_covariance, symplectic_eigenvalues
from .oracle import (
    CLOSURE_TOL,
    extract_mode_generator,
    liouvillian,
    weyl_expectation_finite,
    weyl_expectation_limit,
)
from .sites import (
    ModelParams,
    dissipation_matrix,
    fluctuation_inner,
    kron2,
    observables,
    thermal_state,
)

DEFAULT_GAMMAS = (0.0, 0.1, 0.25, 0.5)
FULL_EPS_TEMPS = tuple(
    (eps, temp) for eps in (0.5, 1.0, 2.0) for temp in (0.1, 0.5, 1.0, 5.0)
)
FAST_EPS_TEMPS = ((1.0, 1.0), (1.0, 0.1), (2.0, 0.5))
CLT_SITES = (100, 1000, 10000)
CLT_TOL = 1e-2
PHYSICALITY_TOL = 1e-9
STATIONARITY_TOL = 1e-10


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tolerance: float
    passed: bool
    detail: str = ""


def _result(name: str, residual: float, tolerance: float, detail: str = "") -> CheckResult:
    return CheckResult(
        name=name,
        residual=float(residual),
        tolerance=float(tolerance),
        passed=bool(residual <= tolerance),
        detail=detail,
    )


def check_dissipation_spectrum(gammas: tuple[float, ...] = DEFAULT_GAMMAS) -> CheckResult:
    """Spectrum {1-2g, 1, 1, 1+2g} and positive semidefiniteness of D."""
    residual = 0.0
    detail = ""
    for gamma in gammas:
        d = dissipation_matrix(gamma)
        expected = np.sort(np.array([1.0 - 2.0 * gamma, 1.0, 1.0, 1.0 + 2.0 * gamma]))
        residual = max(residual, float(np.abs(d.eigenvalues - expected).max()))
        if not d.is_positive:
            residual = max(residual, -d.min_eigenvalue)
            detail = (
                f"gamma = {gamma:g} is not completely positive: "
                f"min eigenvalue {d.min_eigenvalue:.6g}"
            )
    return _result("dissipation-spectrum", residual, STRUCTURAL_TOL, detail)


def _eps_temps(level: str) -> tuple[tuple[float, float], ...]:
    return FULL_EPS_TEMPS if level == "full" else FAST_EPS_TEMPS


def check_thermal_invariance(level: str = "fast") -> CheckResult:
    """The thermal state is stationary: w(L[P]) = 0 for all 16 Pauli words."""
    words = [kron2(i, j) for i in range(4) for j in range(4)]
    residual = 0.0
    for eps, temp in _eps_temps(level):
        for gamma in DEFAULT_GAMMAS:
            params = ModelParams(eps, temp, gamma)
            state = thermal_state(params)
            sup = liouvillian(params)
            for word in words:
                residual = max(residual, abs(state.expectation(sup.apply(word))))
    return _result("thermal-invariance", residual, STRUCTURAL_TOL)


def check_generator_match(level: str = "fast") -> CheckResult:
    """Microscopic restriction equals the mesoscopic drift, block by block."""
    residual = 0.0
    try:
        for eps, temp in _eps_temps(level):
            for gamma in DEFAULT_GAMMAS:
                params = ModelParams(eps, temp, gamma)
                ext = extract_mode_generator(liouvillian(params), params)
                m = drift_matrix(params).matrix
                g = ext.mode_generator
                residual = max(
                    residual,
                    ext.residual,
                    float(np.abs(ext.identity_coeffs).max()),
                    float(np.abs(g[:4, :4] - m.T).max()),
                    float(np.abs(g[4:, 4:] - m.conj().T).max()),
                    float(np.abs(g[:4, 4:]).max()),
                    float(np.abs(g[4:, :4]).max()),
                )
    except NumericError as exc:
        return _result("generator-match", float("inf"), CLOSURE_TOL, str(exc))
    return _result("generator-match", residual, CLOSURE_TOL)


def check_mode_ccr(level: str = "fast") -> CheckResult:
    """Canonical commutators of all four modes through the fluctuation form."""
    residual = 0.0
    for eps, temp in _eps_temps(level):
        params = ModelParams(eps, temp, 0.0)
        state = thermal_state(params)
        ops = mode_operators(params)
        for i, ai in enumerate(ops):
            for j, aj in enumerate(ops):
                creation = fluctuation_inner(
                    ai.conj().T, aj.conj().T, state
                ) - fluctuation_inner(aj, ai, state)
                expected = 1.0 if i == j else 0.0
                residual = max(residual, abs(creation - expected))
                plain = fluctuation_inner(ai.conj().T, aj, state) - fluctuation_inner(
                    aj.conj().T, ai, state
                )
                residual = max(residual, abs(plain))
    return _result("mode-ccr", residual, STRUCTURAL_TOL)


def check_clt_convergence(level: str = "fast") -> CheckResult:
    """Weyl expectations approach their Gaussian limits monotonically."""
    params = ModelParams(1.0, 1.0, 0.0)
    state = thermal_state(params)
    residual = 0.0
    detail = ""
    for index, x in enumerate(observables().ops):
        limit = weyl_expectation_limit(x, state)
        errors = [
            abs(weyl_expectation_finite(x, n, state) - limit) for n in CLT_SITES
        ]
        if not all(a > b for a, b in zip(errors, errors[1:])):
            detail = f"observable {index + 1}: errors not monotone: {errors}"
            residual = max(residual, float("inf"))
        residual = max(residual, errors[-1])
    return _result("clt-convergence", residual, CLT_TOL, detail)


def check_stationarity(level: str = "fast") -> CheckResult:
    """Unsqueezed state: the moment matrix never leaves the fixed point."""
    samples = 101 if level == "full" else 21
    residual = 0.0
    for eps, temp in _eps_temps(level):
        params = ModelParams(eps, temp, 0.5)
        gen = drift_matrix(params)
        start = initial_state(params, 0.0)
        reference = np.eye(8) / (2.0 * params.eta)
        for t in np.linspace(0.0, 5.0, samples):
            drift = propagate(start, gen, t).moment_matrix - reference
            residual = max(residual, float(np.abs(drift).max()))
    return _result("meso-stationarity", residual, STATIONARITY_TOL)


def check_physicality(level: str = "fast") -> CheckResult:
    """Propagated covariances stay physical: symplectic spectrum >= 1."""
    configs = [ExperimentConfig(t_steps=51)]
    if level == "full":
        configs.append(ExperimentConfig(gamma=0.3, temperature=0.5, t_steps=51))
        configs.append(ExperimentConfig(gamma=0.1, temperature=1.0, t_steps=51))
    residual = 0.0
    for config in configs:
        params = ModelParams(config.epsilon, config.temperature, config.gamma)
        gen = drift_matrix(params)
        start = initial_state(params, config.squeeze_r)
        for t in np.linspace(0.0, config.t_max, config.t_steps):
            state = propagate(start, gen, t)
            cov = quadrature_covariance(state.moment_matrix)
            smallest = float(symplectic_eigenvalues(cov)[0])
            residual = max(residual, max(0.0, 1.0 - smallest))
    return _result("state-physicality", residual, PHYSICALITY_TOL)


def run_checks(level: str = "fast") -> list[CheckResult]:
    if level not in ("fast", "full"):
        raise ValueError(f"verification level must be 'fast' or 'full', got {level!r}")
    return [
        check_dissipation_spectrum(),
        check_thermal_invariance(level),
        check_generator_match(level),
        check_mode_ccr(level),
        check_clt_convergence(level),
        check_stationarity(level),
        check_physicality(level),
    ]


def format_report(results: list[CheckResult]) -> str:
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(
            f"{r.name:<24} residual {r.residual:10.3e}  "
            f"tolerance {r.tolerance:7.0e}  {status}"
        )
        if r.detail:
            lines.append(f"    {r.detail}")
    verdict = "all checks passed" if all(r.passed for r in results) else "FAILURES present"
    lines.append(verdict)
    return "\n".join(lines)
