# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
from collections import Counter

import numpy as np
import pytest
from pydantic_core import ValidationError

from mhslib.base import FiltrationNotPreserved, NotExists, NotNilpotent
from mhslib.filtrations import (
    Direction,
    FilteredSpaceWithNilpotent,
    Filtration,
    direct_sum,
    graded_piece,
    is_monodromy_filtration,
    is_relative_monodromy_filtration,
    monodromy_filtration,
    primitive_decomposition,
    push_weight,
    relative_monodromy_filtration,
)
from mhslib.linalg import LinearMap, Subspace, image
from mhslib.tools.generate import generate
from tests import (
    conjugated,
    decreasing,
    eye,
    increasing,
    jordan_matrix,
    jordan_type,
    mat,
    span,
)

JORDAN_2 = mat([0, 1], [0, 0])
JORDAN_3 = mat([0, 1, 0], [0, 0, 1], [0, 0, 0])
JORDAN_31 = mat([0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0])
JORDAN_22 = mat([0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0])


class TestFiltration:
    def test_steps_must_be_nested(self):
        with pytest.raises(ValidationError, match="not nested"):
            increasing(2, {0: [[1, 0]], 1: [[0, 1]], 2: eye(2)})

    def test_steps_must_be_exhaustive(self):
        with pytest.raises(ValidationError, match="not exhaustive"):
            increasing(2, {0: [[1, 0]]})

    def test_repeated_index(self):
        with pytest.raises(ValueError, match="repeated"):
            Filtration.from_subspaces(
                [(0, Subspace.full(1)), (0, Subspace.full(1))], 1
            )

    def test_queries_resolve_to_nearest_step(self):
        w = increasing(2, {0: [[1, 0]], 3: eye(2)})
        assert w.at(-1).is_zero()
        assert w.at(2) == span(2, [1, 0])
        assert w.at(10).is_full()
        assert w.jumps() == [0, 3]

    def test_trivial(self):
        w = Filtration.trivial(3, 2)
        assert w.graded_dims() == {2: 3}
        sub, quot = graded_piece(w, 2)
        assert sub.is_full()
        assert quot.is_zero()
        assert graded_piece(w, 1)[0].is_zero()

    def test_two_step(self):
        w = increasing(2, {0: [[1, 0]], 1: eye(2)})
        assert w.graded_dims() == {0: 1, 1: 1}

    def test_decreasing(self):
        f = decreasing(2, {0: eye(2), 1: [[0, 1]]})
        assert not f.increasing
        assert f.at(1) == span(2, [0, 1]).to_field(f.field)
        assert f.at(2).is_zero()
        assert f.at(-4).is_full()
        assert f.jumps() == [0, 1]
        assert f.graded_dims() == {0: 1, 1: 1}

    def test_shift(self):
        w = increasing(2, {0: [[1, 0]], 1: eye(2)})
        moved = w.shift(2)
        assert moved.at(2) == w.at(0)
        assert moved.jumps() == [2, 3]
        f = decreasing(2, {0: eye(2), 1: [[0, 1]]})
        assert f.shift(-1).at(0) == f.at(1)

    @pytest.mark.parametrize(
        ("data", "message"),
        [
            ({"steps": [{"index": 0, "basis": [[1]]}]}, "missing 'ambient_dim'"),
            ({"ambient_dim": 1, "steps": [{"basis": [[1]]}]}, "missing 'index'"),
            ({"ambient_dim": 1, "steps": [{"index": None, "basis": [[1]]}]}, "integer"),
            ({"ambient_dim": 1, "steps": [{"index": True, "basis": [[1]]}]}, "integer"),
            ({"ambient_dim": 1, "steps": [0]}, "malformed Filtration"),
        ],
    )
    def test_malformed_input(self, data, message):
        with pytest.raises(ValidationError, match=message):
            Filtration.model_validate(data)

    def test_serialisation(self):
        w = increasing(2, {0: [[2, 0]], 1: eye(2)})
        assert w.model_dump() == {
            "ambient_dim": 2,
            "field": "Q",
            "direction": "increasing",
            "steps": [
                {"index": 0, "basis": [["1", "0"]]},
                {"index": 1, "basis": [["1", "0"], ["0", "1"]]},
            ],
        }
        assert Filtration.model_validate(w.model_dump()) == w

    def test_direct_sum(self):
        total = direct_sum(Filtration.trivial(1, 0), Filtration.trivial(2, 2))
        assert total.graded_dims() == {0: 1, 2: 2}
        assert total.at(0) == span(3, [1, 0, 0])

    def test_direct_sum_of_mixed_directions(self):
        with pytest.raises(ValueError, match="directions"):
            direct_sum(
                Filtration.trivial(1, 0),
                Filtration.trivial(1, 0, direction=Direction.DECREASING),
            )

    @pytest.mark.parametrize("seed", range(5))
    def test_graded_dimensions_telescope(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, 6))
        vectors = rng.integers(-2, 3, size=(n, n)).tolist()
        steps = {k: Subspace(ambient_dim=n, basis=vectors[:k]) for k in range(n)}
        steps[n] = Subspace.full(n)
        w = Filtration.from_subspaces(steps, n)
        assert sum(w.graded_dims().values()) == n


class TestMonodromyFiltration:
    @pytest.mark.parametrize("m", [-1, 0, 3])
    def test_zero_nilpotent(self, m):
        w = monodromy_filtration(LinearMap.zeros(3, 3), m)
        assert w.graded_dims() == {m: 3}
        assert w.at(m - 1).is_zero()

    def test_single_block(self):
        w = monodromy_filtration(JORDAN_2, 0)
        assert w.at(-1) == span(2, [1, 0])
        assert w.at(0) == span(2, [1, 0])
        assert w.at(1).is_full()
        assert w.at(-2).is_zero()

    @pytest.mark.parametrize(
        ("n", "m", "dims"),
        [
            (JORDAN_31, 0, {-2: 1, 0: 2, 2: 1}),
            (JORDAN_22, 0, {-1: 2, 1: 2}),
            (JORDAN_3, 1, {-1: 1, 1: 1, 3: 1}),
        ],
    )
    def test_graded_dimensions(self, n, m, dims):
        w = monodromy_filtration(n, m)
        assert w.graded_dims() == dims
        assert is_monodromy_filtration(n, m, w)

    def test_characterisation_rejects_other_filtrations(self):
        w = monodromy_filtration(JORDAN_31, 0)
        wrong = w.shift(1)
        report = is_monodromy_filtration(JORDAN_31, 0, wrong)
        assert not report
        assert "lefschetz" in report.failed()
        trivial = is_monodromy_filtration(JORDAN_31, 0, Filtration.trivial(4, 0))
        assert trivial.failed() == ["shift"]

    def test_not_nilpotent(self):
        with pytest.raises(NotNilpotent):
            monodromy_filtration(LinearMap.identity(2), 0)

    @pytest.mark.parametrize("t", ["5/3", "1/7", 4])
    def test_scaling_invariance(self, t):
        n = generate("monodromy-filtration", 3).parsed().N
        assert monodromy_filtration(n.scale(t), 1) == monodromy_filtration(n, 1)

    def test_conjugation_invariance(self):
        p = mat([1, 2, 0], [0, 1, 1], [1, 0, 1])
        moved = p @ JORDAN_3 @ p.inverse()
        w = monodromy_filtration(moved, 0)
        assert w == monodromy_filtration(JORDAN_3, 0).transported(p)
        assert is_monodromy_filtration(moved, 0, w)


def _weights_of_blocks(blocks: list[tuple], m: int) -> dict[int, int]:
    """A Jordan block of size s contributes m - s + 1, m - s + 3, ..., m + s - 1"""
    return dict(
        Counter(m - size + 1 + 2 * i for _, size in blocks for i in range(size))
    )


def _random_monodromy(seed: int):
    rng = np.random.default_rng(seed)
    blocks = jordan_type(rng, int(rng.integers(1, 7)), [0])
    n = conjugated(rng, jordan_matrix(blocks))
    m = int(rng.integers(-2, 3))
    w = monodromy_filtration(n, m)
    assert w.graded_dims() == _weights_of_blocks(blocks, m)
    assert w.is_preserved_by(n, -2)
    assert is_monodromy_filtration(n, m, w)
    t = f"{int(rng.integers(1, 9))}/{int(rng.integers(1, 9))}"
    assert monodromy_filtration(n.scale(t), m) == w


@pytest.mark.parametrize("seed", range(12))
def test_random_nilpotent(seed):
    _random_monodromy(seed)


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(12, 312))
def test_random_nilpotent_sweep(seed):
    _random_monodromy(seed)


class TestPrimitiveDecomposition:
    def test_zero_nilpotent(self):
        parts = primitive_decomposition(LinearMap.zeros(2, 2), 1)
        assert [(p.k, p.space.dim) for p in parts] == [(0, 2)]

    @pytest.mark.parametrize(
        ("n", "expected"),
        [
            (JORDAN_3, {0: 0, 2: 1}),
            (JORDAN_22, {1: 2}),
            (JORDAN_31, {0: 1, 2: 1}),
        ],
    )
    def test_primitive_dimensions(self, n, expected):
        parts = primitive_decomposition(n, 0)
        assert {p.k: p.space.dim for p in parts} == expected


class TestRelativeMonodromy:
    def test_single_jump_is_absolute(self):
        x = FilteredSpaceWithNilpotent(W=Filtration.trivial(3, 2), N=JORDAN_3)
        assert relative_monodromy_filtration(x) == monodromy_filtration(JORDAN_3, 2)

    def test_zero_nilpotent_reproduces_w(self):
        w = increasing(3, {-1: [[1, 0, 0]], 1: [[1, 0, 0], [0, 1, 1]], 2: eye(3)})
        x = FilteredSpaceWithNilpotent(W=w, N=LinearMap.zeros(3, 3))
        assert relative_monodromy_filtration(x) == w

    def test_extension_across_two_weights(self):
        w = increasing(2, {0: [[1, 0]], 2: eye(2)})
        x = FilteredSpaceWithNilpotent(W=w, N=JORDAN_2)
        m = relative_monodromy_filtration(x)
        assert m == w
        assert is_relative_monodromy_filtration(x, m)

    def test_does_not_exist(self):
        w = increasing(2, {0: [[1, 0]], 1: eye(2)})
        x = FilteredSpaceWithNilpotent(W=w, N=JORDAN_2)
        result = relative_monodromy_filtration(x)
        assert isinstance(result, NotExists)
        assert not result
        assert "lift" in result.reason

    def test_n_must_preserve_w(self):
        w = increasing(2, {0: [[0, 1]], 1: eye(2)})
        with pytest.raises(ValidationError, match="does not preserve"):
            FilteredSpaceWithNilpotent(W=w, N=JORDAN_2)
        assert issubclass(FiltrationNotPreserved, ValueError)

    @pytest.mark.parametrize("seed", range(8))
    def test_generated_instances_verify(self, seed):
        x = generate("relative-monodromy", seed).parsed()
        m = relative_monodromy_filtration(x)
        assert not isinstance(m, NotExists)
        assert is_relative_monodromy_filtration(x, m)


class TestPushWeight:
    def test_pure_weight(self):
        w = Filtration.trivial(2, 0)
        m = monodromy_filtration(JORDAN_2, 0)
        pushed = push_weight(JORDAN_2, w, m)
        assert pushed.at(-1) == image(JORDAN_2)
        assert pushed.graded_dims() == {-1: 1, 1: 1}

    def test_zero_nilpotent(self):
        w = increasing(2, {0: [[1, 0]], 2: eye(2)})
        zero = LinearMap.zeros(2, 2)
        assert push_weight(zero, w, w) == w

    def test_not_exists_propagates(self):
        missing = NotExists(reason="no relative filtration")
        w = Filtration.trivial(1, 0)
        assert push_weight(LinearMap.zeros(1, 1), w, missing) is missing
