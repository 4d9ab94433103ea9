# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
import pytest
from sympy.polys.domains import QQ, QQ_I

from mhslib.base import NonSplitSpectrum, NotHermitian, NotNilpotent, NotUnipotent
from mhslib.linalg import (
    LinearMap,
    ScalarField,
    eigenvalues,
    exp_nilpotent,
    generalized_eigenspace,
    hermitian_is_positive_definite,
    is_nilpotent,
    jordan_chevalley,
    log_unipotent,
    nilpotency_index,
)
from tests import I, gaussian, mat, span

JORDAN_3 = mat([0, 1, 0], [0, 0, 1], [0, 0, 0])


class TestNilpotent:
    def test_index(self):
        assert is_nilpotent(JORDAN_3)
        assert nilpotency_index(JORDAN_3) == 3
        assert nilpotency_index(LinearMap.zeros(2, 2)) == 0

    def test_not_nilpotent(self):
        assert not is_nilpotent(LinearMap.identity(2))
        with pytest.raises(NotNilpotent):
            nilpotency_index(mat([1, 1], [0, 0]))

    def test_exp_log_inverse(self):
        t = exp_nilpotent(JORDAN_3)
        assert t == mat([1, 1, "1/2"], [0, 1, 1], [0, 0, 1])
        assert log_unipotent(t) == JORDAN_3

    def test_log_needs_unipotent(self):
        with pytest.raises(NotUnipotent):
            log_unipotent(mat([2, 0], [0, 1]))


class TestSpectrum:
    def test_rational_eigenvalues(self):
        a = mat([2, 1, 0], [0, 2, 0], [0, 0, "1/2"])
        assert eigenvalues(a) == [(QQ(1, 2), 1), (QQ(2), 2)]
        assert generalized_eigenspace(a, 2) == span(3, [1, 0, 0], [0, 1, 0])

    def test_rotation_does_not_split_over_q(self):
        with pytest.raises(NonSplitSpectrum):
            eigenvalues(mat([0, -1], [1, 0]))

    def test_rotation_splits_over_gaussian(self):
        rotation = mat([0, -1], [1, 0]).to_field(ScalarField.GAUSSIAN)
        values = eigenvalues(rotation)
        assert [m for _, m in values] == [1, 1]
        found = [x for x, _ in values]
        assert QQ_I(0, 1) in found
        assert QQ_I(0, -1) in found

    def test_jordan_chevalley(self):
        a = mat([2, 1, 0], [0, 2, 0], [0, 0, 3])
        s, n = jordan_chevalley(a)
        assert s == mat([2, 0, 0], [0, 2, 0], [0, 0, 3])
        assert n == mat([0, 1, 0], [0, 0, 0], [0, 0, 0])
        assert s @ n == n @ s


class TestHermitian:
    @pytest.mark.parametrize(
        ("g", "expected"),
        [
            (mat([2, I], [gaussian(0, -1), 2]), True),
            (mat([1, 2], [2, 1]), False),
            (mat([-1]), False),
            (mat([1, 0], [0, "1/5"]), True),
        ],
    )
    def test_sylvester(self, g, expected):
        assert hermitian_is_positive_definite(g) is expected

    def test_not_hermitian(self):
        with pytest.raises(NotHermitian):
            hermitian_is_positive_definite(mat([1, I], [I, 1]))
