# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
import pytest
from pydantic_core import ValidationError
from sympy.polys.domains import QQ

from mhslib.base import DimensionMismatch, WellDefinednessViolation
from mhslib.linalg import (
    ScalarField,
    Subquotient,
    Subspace,
    image,
    image_of,
    induced_map,
    induced_on,
    intersect,
    kernel,
    preimage,
    solve,
    subspace_sum,
)
from tests import I, gaussian, mat, span

G = ScalarField.GAUSSIAN


class TestSubspace:
    def test_span_is_canonical(self):
        assert span(2, [2, 4]) == span(2, [1, 2])
        assert span(3, [1, 1, 0], [1, -1, 0]) == Subspace.standard([0, 1], 3)

    def test_dependent_vectors(self):
        s = span(3, [1, 2, 3], [2, 4, 6], [0, 0, 0])
        assert s.dim == 1

    def test_wrong_length_rejected(self):
        with pytest.raises(ValidationError, match="length 3"):
            span(3, [1, 2])

    def test_contains_and_order(self):
        plane = span(3, [1, 0, 0], [0, 1, 0])
        assert plane.contains((QQ(2), QQ(-1), QQ(0)))
        assert not plane.contains((QQ(0), QQ(0), QQ(1)))
        assert span(3, [1, 1, 0]) <= plane
        assert not Subspace.full(3) <= plane

    def test_conjugate(self):
        line = span(2, [1, I], field=G)
        assert line.conjugate() == span(2, [1, gaussian(0, -1)], field=G)
        assert intersect(line, line.conjugate()).is_zero()
        assert (line + line.conjugate()).is_full()

    def test_serialisation(self):
        assert span(2, [2, 4]).model_dump() == {
            "ambient_dim": 2,
            "field": "Q",
            "basis": [["1", "2"]],
        }


class TestLattice:
    def test_kernel_and_image(self):
        f = mat([1, 1, 0], [0, 0, 1])
        assert kernel(f) == span(3, [1, -1, 0])
        assert image(f).is_full()
        assert kernel(mat([0, 0])).is_full()

    def test_sum_and_intersection(self):
        a = span(3, [1, 0, 0], [0, 1, 0])
        b = span(3, [0, 1, 0], [0, 0, 1])
        assert intersect(a, b) == span(3, [0, 1, 0])
        assert subspace_sum(a, b).is_full()

    def test_mismatched_ambient(self):
        with pytest.raises(DimensionMismatch, match="ambient"):
            intersect(Subspace.full(2), Subspace.full(3))

    def test_image_and_preimage(self):
        n = mat([0, 1], [0, 0])
        assert image_of(n, Subspace.full(2)) == span(2, [1, 0])
        assert preimage(n, Subspace.zero(2)) == span(2, [1, 0])
        assert preimage(n, span(2, [1, 0])).is_full()

    def test_solve(self):
        f = mat([1, 1], [0, 0])
        x = solve(f, (QQ(2), QQ(0)))
        assert f.apply(x) == (QQ(2), QQ(0))
        assert solve(f, (QQ(0), QQ(1))) is None


class TestSubquotient:
    def test_dimensions_and_coordinates(self):
        sq = Subquotient.of(Subspace.full(3), span(3, [1, 0, 0]))
        assert sq.dim == 2
        assert sq.projection @ sq.lift == mat([1, 0], [0, 1])
        assert sq.coordinates((QQ(5), QQ(1), QQ(2))) == (QQ(1), QQ(2))

    def test_quot_must_lie_in_sub(self):
        with pytest.raises(ValidationError, match="not contained"):
            Subquotient(sub=span(2, [1, 0]), quot=span(2, [0, 1]))

    def test_project_and_pull_back(self):
        sq = Subquotient.of(Subspace.full(3), span(3, [1, 0, 0]))
        projected = sq.project(span(3, [1, 1, 0]))
        assert projected == span(2, [1, 0])
        assert sq.pull_back(projected) == span(3, [1, 0, 0], [0, 1, 0])

    def test_induced_map(self):
        n = mat([0, 1], [0, 0])
        line = span(2, [1, 0])
        # N: V / ker N -> ker N
        induced = induced_map(n, Subspace.full(2), line, line, Subspace.zero(2))
        assert induced == mat([1])

    def test_induced_map_must_descend(self):
        n = mat([0, 1], [0, 0])
        line = span(2, [0, 1])
        with pytest.raises(WellDefinednessViolation, match="sub into sub"):
            induced_on(n, Subquotient.of(line), Subquotient.of(line))
