"""Numerical cross-validation of structural verdicts: random admissible
realizations, rank and eigenvalue tests, deadbeat steering, Monte Carlo runs.

Structural claims are generic: they hold for all parameter values outside a
measure-zero set.  No finite computation certifies that, so this module
samples concrete realizations, runs the classical numeric tests, and reports
agreement statistics instead of pretending at certainty.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .patterns import PatternMatrix
from .structural import is_generically_controllable, is_generically_zero_controllable

#: Default base seed for every seeded entry point, so quick-start runs agree.
DEFAULT_BASE_SEED = 20240001

#: Relative singular-value cutoff for numeric rank decisions.
RANK_REL_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class ValueSpec:
    """Sampling law for realized nonzeros: sign uniform, magnitude uniform in
    [low, high].  The lower bound keeps realizations away from degenerate
    parameter choices."""

    low: float = 0.1
    high: float = 2.0


@dataclass(frozen=True, eq=False)
class Realization:
    """Concrete numeric pair sampled for a pattern pair: zeros of the pattern
    stay exactly zero, every pattern nonzero gets a value with
    |value| >= value_spec.low."""

    a: np.ndarray
    b: np.ndarray
    seed: int
    value_spec: ValueSpec

    @property
    def n(self) -> int:
        return self.a.shape[0]

    @property
    def m(self) -> int:
        return self.b.shape[1]


def sample_realization(
    pattern_a: PatternMatrix,
    pattern_b: PatternMatrix | None = None,
    seed: int = DEFAULT_BASE_SEED,
    value_spec: ValueSpec = ValueSpec(),
) -> Realization:
    """Deterministic realization for the given seed.  Entries are filled in
    sorted position order, so the draw sequence is part of the contract."""
    if not pattern_a.is_square:
        raise ValueError("state pattern must be square")
    rng = np.random.default_rng(seed)
    n = pattern_a.n_rows
    m = pattern_b.n_cols if pattern_b is not None else 0
    a = np.zeros((n, n))
    for i, j in pattern_a.sorted_entries():
        magnitude = rng.uniform(value_spec.low, value_spec.high)
        sign = 1.0 if rng.random() < 0.5 else -1.0
        a[i - 1, j - 1] = sign * magnitude
    b = np.zeros((n, m))
    if pattern_b is not None:
        for i, j in pattern_b.sorted_entries():
            magnitude = rng.uniform(value_spec.low, value_spec.high)
            sign = 1.0 if rng.random() < 0.5 else -1.0
            b[i - 1, j - 1] = sign * magnitude
    return Realization(a, b, seed, value_spec)


def numeric_rank(matrix: np.ndarray, rel_tol: float = RANK_REL_TOL) -> int:
    """Rank with singular values below max(shape) * sigma_max * rel_tol
    treated as zero."""
    if matrix.size == 0:
        return 0
    s = np.linalg.svd(matrix, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > max(matrix.shape) * s[0] * rel_tol))


def controllability_matrix(realization: Realization) -> np.ndarray:
    """[B, AB, ..., A^(n-1)B], an n-by-(n*m) matrix (n-by-0 when m = 0)."""
    a, b = realization.a, realization.b
    n = realization.n
    blocks = []
    block = b
    for _ in range(n):
        blocks.append(block)
        block = a @ block
    return np.hstack(blocks) if blocks else np.zeros((n, 0))


@dataclass(frozen=True)
class NumericCheck:
    """Joint outcome of the image-based and eigenvalue-based (Hautus) rank
    tests.  The two must agree on well-conditioned instances; when they do
    not, ``consistent`` is False and the verdict is the conservative False."""

    verdict: bool
    image_test: bool
    hautus_test: bool
    consistent: bool

    def __bool__(self) -> bool:
        return self.verdict


def _hautus_ok(a: np.ndarray, b: np.ndarray, eigenvalues: Iterable[complex]) -> bool:
    n = a.shape[0]
    eye = np.eye(n)
    for lam in eigenvalues:
        pencil = np.hstack([a - lam * eye, b]).astype(complex)
        if numeric_rank(pencil) < n:
            return False
    return True


def is_controllable_numeric(realization: Realization, tol: float = 1e-8) -> NumericCheck:
    """Controllability of a concrete pair: full-rank controllability matrix,
    cross-checked by the Hautus rank test at every eigenvalue."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    a, b = realization.a, realization.b
    n = realization.n
    image_ok = numeric_rank(controllability_matrix(realization)) == n
    hautus_ok = _hautus_ok(a, b, np.linalg.eigvals(a) if n else [])
    return NumericCheck(
        verdict=image_ok and hautus_ok,
        image_test=image_ok,
        hautus_test=hautus_ok,
        consistent=image_ok == hautus_ok,
    )


def is_zero_controllable_numeric(realization: Realization, tol: float = 1e-8) -> NumericCheck:
    """Zero controllability of a concrete pair: the image of A^n must lie in
    the image of the controllability matrix, cross-checked by the Hautus test
    at every eigenvalue of modulus above tol * (1 + spectral radius)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    a, b = realization.a, realization.b
    n = realization.n
    ctrb = controllability_matrix(realization)
    a_pow_n = np.linalg.matrix_power(a, n) if n else np.zeros((0, 0))
    image_ok = numeric_rank(np.hstack([ctrb, a_pow_n])) == numeric_rank(ctrb)
    eigenvalues = np.linalg.eigvals(a) if n else np.array([])
    radius = float(np.max(np.abs(eigenvalues))) if eigenvalues.size else 0.0
    threshold = tol * (1.0 + radius)
    nonzero_eigs = [lam for lam in eigenvalues if abs(lam) > threshold]
    hautus_ok = _hautus_ok(a, b, nonzero_eigs)
    return NumericCheck(
        verdict=image_ok and hautus_ok,
        image_test=image_ok,
        hautus_test=hautus_ok,
        consistent=image_ok == hautus_ok,
    )


def count_nonzero_eigenvalues(realization: Realization, tol: float = 1e-8) -> int:
    """Number of eigenvalues with modulus above tol * (1 + spectral radius);
    for almost every realization this equals the structural cycle count
    nu(A)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    if realization.n == 0:
        return 0
    eigenvalues = np.linalg.eigvals(realization.a)
    radius = float(np.max(np.abs(eigenvalues))) if eigenvalues.size else 0.0
    return int(np.sum(np.abs(eigenvalues) > tol * (1.0 + radius)))


@dataclass(frozen=True, eq=False)
class SteeringResult:
    """Deadbeat steering attempt: controls u(0..horizon-1), simulated
    trajectory x(0..horizon), and the norm of the final state."""

    controls: np.ndarray    # (horizon, m)
    trajectory: np.ndarray  # (horizon + 1, n)
    final_norm: float
    horizon: int


def deadbeat_steer(
    realization: Realization, x0: np.ndarray, horizon: int
) -> SteeringResult:
    """Minimum-norm least-squares control sequence aiming at x(horizon) = 0.

    Solves sum_k A^(horizon-1-k) B u(k) = -A^horizon x0 and simulates the
    result forward; an unsteerable state simply shows up as a large final
    norm.  With no inputs the trajectory is the free motion.
    """
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    a, b = realization.a, realization.b
    n, m = realization.n, realization.m
    x0 = np.asarray(x0, dtype=float).reshape(n)

    if m > 0:
        powers = [b]
        for _ in range(horizon - 1):
            powers.append(a @ powers[-1])
        # columns ordered for the stacked unknown [u(0); ...; u(horizon-1)]
        gram = np.hstack(powers[::-1])
        rhs = -np.linalg.matrix_power(a, horizon) @ x0
        stacked, *_ = np.linalg.lstsq(gram, rhs, rcond=None)
        controls = stacked.reshape(horizon, m)
    else:
        controls = np.zeros((horizon, 0))

    trajectory = np.empty((horizon + 1, n))
    trajectory[0] = x0
    for k in range(horizon):
        trajectory[k + 1] = a @ trajectory[k] + b @ controls[k]
    return SteeringResult(
        controls=controls,
        trajectory=trajectory,
        final_norm=float(np.linalg.norm(trajectory[-1])),
        horizon=horizon,
    )


def steering_residual(realization: Realization, result: SteeringResult) -> float:
    """Worst relative violation of x(l) - A^l x(0) = sum_k A^(l-1-k) B u(k)
    over every prefix of the trajectory."""
    a, b = realization.a, realization.b
    x0 = result.trajectory[0]
    worst = 0.0
    forced = np.zeros_like(x0)
    free = x0.copy()
    for l in range(1, result.horizon + 1):
        forced = a @ forced + b @ result.controls[l - 1]
        free = a @ free
        lhs = result.trajectory[l] - free
        scale = max(1.0, float(np.linalg.norm(result.trajectory[l])), float(np.linalg.norm(free)))
        worst = max(worst, float(np.linalg.norm(lhs - forced)) / scale)
    return worst


@dataclass(frozen=True)
class MonteCarloStats:
    """Agreement between a structural verdict and seeded numeric trials.
    Trial i uses seed base_seed + i, so results are reproducible and
    independent of execution order."""

    trials: int
    base_seed: int
    zc_structural: bool
    zc_agreements: int
    inconsistent_trials: int
    disagreeing_seeds: tuple[int, ...]
    ctrl_structural: bool | None = None
    ctrl_agreements: int | None = None

    @property
    def agreement_fraction(self) -> float:
        return self.zc_agreements / self.trials if self.trials else 1.0


def monte_carlo_verify(
    pattern_a: PatternMatrix,
    pattern_b: PatternMatrix | None = None,
    trials: int = 100,
    base_seed: int = DEFAULT_BASE_SEED,
    tol: float = 1e-8,
    check_controllability: bool = False,
) -> MonteCarloStats:
    """Sample `trials` realizations and compare the numeric zero-controllability
    verdict (optionally also plain controllability) with the structural one."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    zc_structural = is_generically_zero_controllable(pattern_a, pattern_b).verdict
    ctrl_structural = (
        is_generically_controllable(pattern_a, pattern_b).verdict
        if check_controllability
        else None
    )
    zc_agree = 0
    ctrl_agree = 0
    inconsistent = 0
    disagreeing = []
    for i in range(trials):
        seed = base_seed + i
        realization = sample_realization(pattern_a, pattern_b, seed)
        zc = is_zero_controllable_numeric(realization, tol)
        if zc.verdict == zc_structural:
            zc_agree += 1
        else:
            disagreeing.append(seed)
        if not zc.consistent:
            inconsistent += 1
        if check_controllability:
            ctrl = is_controllable_numeric(realization, tol)
            if ctrl.verdict == ctrl_structural:
                ctrl_agree += 1
            if not ctrl.consistent:
                inconsistent += 1
    return MonteCarloStats(
        trials=trials,
        base_seed=base_seed,
        zc_structural=zc_structural,
        zc_agreements=zc_agree,
        inconsistent_trials=inconsistent,
        disagreeing_seeds=tuple(disagreeing),
        ctrl_structural=ctrl_structural,
        ctrl_agreements=ctrl_agree if check_controllability else None,
    )
