import numpy as np
import pytest
from pydantic import ValidationError

from critgroup.core.exceptions import (
    InvalidConfigurationError,
    NotAvalancheFiniteError,
    NotSemisimpleError,
    StepLimitExceededError,
)
from critgroup.services.chipfire import (
    ChipConfig,
    burning_config,
    burning_from_script,
    burning_script,
    is_avalanche_finite,
    is_recurrent,
    recurrent_configurations,
    stabilize,
)
from critgroup.services.exact_linalg import IntMatrix, determinant
from critgroup.services.richness import reduced_laplacian
from tests.conftest import matrix, module


def chips(*values):
    return ChipConfig(chips=values)


class TestStabilize:
    def test_small_example(self):
        record = stabilize(matrix([[2, -1], [-1, 2]]), chips(2, 0))
        assert record.stable == chips(0, 1)
        assert record.firings == (1, 0)

    def test_stable_configuration_is_untouched(self):
        record = stabilize(matrix([[3, -1], [-1, 2]]), chips(2, 1))
        assert record.stable == chips(2, 1)
        assert record.firings == (0, 0)

    def test_step_limit(self):
        with pytest.raises(StepLimitExceededError):
            stabilize(matrix([[0]]), chips(1), step_limit=50, check=False)

    def test_rejects_matrix_that_is_not_avalanche_finite(self):
        with pytest.raises(NotAvalancheFiniteError):
            stabilize(matrix([[1, -2], [-2, 1]]), chips(3, 3))

    def test_negative_chips_are_rejected(self):
        with pytest.raises(ValidationError):
            chips(-1, 0)


def _random_instance(rng, size=4):
    n_matrix = rng.integers(0, 3, size=(size, size))
    n = int(n_matrix.sum(axis=0).max()) + 1
    lap = IntMatrix.from_rows((n * np.eye(size, dtype=np.int64) - n_matrix).tolist())
    c = ChipConfig(chips=tuple(int(x) for x in rng.integers(0, 3 * n, size=size)))
    return lap, c


def test_outcome_does_not_depend_on_firing_order():
    rng = np.random.default_rng(20240101)
    for _ in range(50):
        lap, c = _random_instance(rng)
        assert is_avalanche_finite(lap)
        expected = stabilize(lap, c)
        for seed in range(3):
            record = stabilize(lap, c, rng=np.random.default_rng(seed))
            assert record == expected
        stable = tuple(a - b for a, b in zip(c.chips, lap.apply(expected.firings)))
        assert expected.stable.chips == stable
        assert all(x < lap[i, i] for i, x in enumerate(stable))


class TestBurning:
    def test_script_by_least_action(self):
        assert burning_script(matrix([[1, -2], [0, 1]])) == (2, 1)
        assert burning_script(matrix([[2, -1], [-1, 2]])) == (1, 1)

    def test_burning_from_script(self):
        assert burning_from_script(matrix([[1, -2], [0, 1]])) == chips(0, 1)

    def test_s4p0_d31_burning_config(self, s4p0):
        rep, v = s4p0.datum, module(s4p0, "D31")
        b = burning_config(rep, v)
        assert b == chips(1, 0, 0, 0)
        p_bar = rep.p[1:]
        assert reduced_laplacian(rep, v).apply(p_bar) == b.chips

    def test_burning_config_needs_semisimple_datum(self, s4p2, s4p3):
        with pytest.raises(NotSemisimpleError):
            burning_config(s4p2.datum, module(s4p2, "D31"))
        with pytest.raises(NotSemisimpleError):
            burning_config(s4p3.datum, module(s4p3, "D31"))


class TestRecurrence:
    def test_is_recurrent(self):
        lap = matrix([[2, -1], [-1, 2]])
        b = burning_from_script(lap)
        assert b == chips(1, 1)
        assert is_recurrent(lap, b, chips(1, 1))
        assert is_recurrent(lap, b, chips(0, 1))
        assert not is_recurrent(lap, b, chips(0, 0))

    def test_unstable_configuration(self):
        lap = matrix([[2, -1], [-1, 2]])
        with pytest.raises(InvalidConfigurationError):
            is_recurrent(lap, chips(1, 1), chips(2, 0))

    @pytest.mark.parametrize(
        "rows",
        [
            [[2, -1], [-1, 2]],
            [[3, -1], [-1, 2]],
            [[1, -2], [0, 1]],
            [[3, -1, -1], [-1, 3, -1], [-1, -1, 3]],
            [[2, 0, -1], [-1, 3, -2], [-1, -1, 2]],
            [[4, -2, 0], [-1, 3, -1], [0, -2, 2]],
        ],
    )
    def test_recurrent_count_is_determinant(self, rows):
        lap = matrix(rows)
        recurrent = recurrent_configurations(lap, burning_from_script(lap))
        assert len(recurrent) == abs(determinant(lap))

    @pytest.mark.parametrize("size", [2, 3])
    def test_recurrent_count_on_random_matrices(self, size):
        rng = np.random.default_rng(1000 + size)
        for _ in range(15):
            lap, _ = _random_instance(rng, size=size)
            recurrent = recurrent_configurations(lap, burning_from_script(lap))
            assert len(recurrent) == abs(determinant(lap))

    def test_s4p0_d31_has_four_recurrent_configurations(self, s4p0):
        rep, v = s4p0.datum, module(s4p0, "D31")
        lap = reduced_laplacian(rep, v)
        assert len(recurrent_configurations(lap, burning_config(rep, v))) == 4
