from pathlib import Path

import numpy as np
import pytest

from zerocontrol import PatternMatrix, build_b_pattern

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"

# 5-state system: input u1 feeds x4; cycles at {x1,x2}, {x1} and {x5};
# x5 is the only state the input cannot reach.
EXAMPLE1_A = PatternMatrix.from_rows([
    [1, 1, 1, 0, 0],
    [1, 0, 0, 1, 0],
    [0, 0, 0, 1, 1],
    [0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1],
])
EXAMPLE1_B = PatternMatrix.from_rows([[0], [0], [0], [1], [0]])

# 11-state input-free system used for driver selection: nontrivial components
# {x1,x2,x3}, {x4}, {x5}, {x6,x7}; x9..x11 feed everything through x8.
EXAMPLE2_A = PatternMatrix.from_rows([
    [0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
])

EXAMPLE2_B_PER_DRIVER = build_b_pattern(11, {"x4", "x8"}, "per_driver").pattern


@pytest.fixture
def example1_a():
    return EXAMPLE1_A


@pytest.fixture
def example1_b():
    return EXAMPLE1_B


@pytest.fixture
def example2_a():
    return EXAMPLE2_A


@pytest.fixture
def fixture_dir():
    return FIXTURE_DIR


def random_pattern(rng: np.random.Generator, n_rows: int, n_cols: int, density: float) -> PatternMatrix:
    """Seeded random pattern used by the property suites."""
    entries = {
        (i, j)
        for i in range(1, n_rows + 1)
        for j in range(1, n_cols + 1)
        if rng.random() < density
    }
    return PatternMatrix(n_rows, n_cols, frozenset(entries))


def random_square_patterns(seed: int, count: int, max_n: int):
    """Deterministic stream of `count` random square patterns with n <= max_n."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(1, max_n + 1))
        density = float(rng.uniform(0.1, 0.6))
        out.append(random_pattern(rng, n, n, density))
    return out
