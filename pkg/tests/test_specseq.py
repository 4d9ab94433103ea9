# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
import pytest
from pydantic_core import ValidationError

from mhslib.base import WellDefinednessViolation
from mhslib.linalg import LinearMap
from mhslib.specseq import (
    DoubleComplex,
    FilteredComplex,
    abutment_filtration,
    chain_map_on_dec,
    check_spectral_sequence,
    decalage,
    decalage_comparison,
    e_infinity,
    euler_characteristic,
    is_filtered_quasi_isomorphism,
    page,
    strictness_check,
    truncation_filtration,
)
from mhslib.tools.generate import generate
from tests import mat


def _steps(steps: dict) -> dict:
    return {"steps": [{"index": k, "basis": b} for k, b in steps.items()]}


def filtered(dims, d, F, W=None):  # noqa: N803
    data = {
        "degrees": [0, len(dims) - 1],
        "dims": dims,
        "d": d,
        "F": [_steps(f) for f in F],
    }
    if W is not None:
        data["W"] = [_steps(w) for w in W]
    return FilteredComplex.model_validate(data)


@pytest.fixture
def acyclic():
    """Q -1-> Q with F^0 everything"""
    return filtered([1, 1], [[[1]]], [{0: [[1]]}, {0: [[1]]}])


@pytest.fixture
def staggered():
    """Q -1-> Q with the target one filtration step higher"""
    return filtered([1, 1], [[[1]]], [{0: [[1]]}, {1: [[1]]}])


@pytest.fixture
def cocycle():
    """Q^2 -> Q killing e2, with F^1 spanned by e2"""
    return filtered(
        [2, 1], [[[1, 0]]], [{0: [[1, 0], [0, 1]], 1: [[0, 1]]}, {0: [[1]]}]
    )


@pytest.fixture
def square():
    """Four copies of Q with every differential the identity"""
    one = [[1]]
    return DoubleComplex.model_validate(
        {
            "columns": [0, 1],
            "rows": [0, 1],
            "dims": [[1, 1], [1, 1]],
            "dh": [{"a": 0, "b": 0, "map": one}, {"a": 0, "b": 1, "map": one}],
            "dv": [{"a": 0, "b": 0, "map": one}, {"a": 1, "b": 0, "map": one}],
        }
    )


class TestComplexes:
    def test_d_squared(self):
        with pytest.raises(ValidationError, match="is not zero"):
            FilteredComplex.model_validate(
                {
                    "degrees": [0, 2],
                    "dims": [1, 1, 1],
                    "d": [[[1]], [[1]]],
                    "F": [_steps({0: [[1]]})] * 3,
                }
            )

    def test_filtration_preserved(self):
        with pytest.raises(ValidationError, match="does not preserve F"):
            filtered([1, 1], [[[1]]], [{1: [[1]]}, {0: [[1]]}])

    def test_cohomology(self, cocycle):
        assert cocycle.cohomology(0).dim == 1
        assert cocycle.cohomology(1).dim == 0
        assert cocycle.dim(5) == 0

    def test_serialisation(self, cocycle):
        dumped = cocycle.model_dump()
        assert dumped["d"][0]["entries"] == [["1", "0"]]
        assert "W" not in dumped
        assert FilteredComplex.model_validate(dumped) == cocycle


class TestPages:
    def test_acyclic(self, acyclic):
        assert page(acyclic, 0).dims() == {(0, 0): 1, (0, 1): 1}
        assert page(acyclic, 1).dims() == {}
        assert e_infinity(acyclic).dims() == {}

    def test_staggered(self, staggered):
        assert staggered.length == 2
        assert page(staggered, 1).dims() == {(0, 0): 1, (1, 0): 1}
        assert page(staggered, 1).differentials[0, 0].rank() == 1
        assert page(staggered, 2).dims() == {}
        assert euler_characteristic(page(staggered, 1)) == 0

    def test_cocycle(self, cocycle):
        e = e_infinity(cocycle)
        assert e.dims() == {(1, -1): 1}
        assert euler_characteristic(e) == 1
        abutment = abutment_filtration(cocycle)
        assert abutment[0].graded_dims() == {1: 1}
        assert abutment[1].graded_dims() == {}

    def test_negative_page(self, acyclic):
        with pytest.raises(ValueError, match="negative"):
            page(acyclic, -1)

    def test_pages_are_complexes(self, staggered):
        assert all(page(staggered, r).is_complex() for r in range(4))

    def test_page_serialisation(self, cocycle):
        assert e_infinity(cocycle).model_dump() == {
            "r": 2,
            "terms": [{"p": 1, "q": -1, "dim": 1}],
        }

    @pytest.mark.parametrize("fixture", ["acyclic", "staggered", "cocycle"])
    def test_invariants(self, fixture, request):
        report = check_spectral_sequence(request.getfixturevalue(fixture))
        assert report
        assert [c.name for c in report] == [
            "pages",
            "stabilization",
            "euler",
            "abutment",
            "decalage",
        ]

    @pytest.mark.parametrize("seed", range(8))
    def test_generated(self, seed):
        c = generate("specseq", seed).parsed().filtered()
        assert check_spectral_sequence(c)


class TestDecalage:
    @pytest.mark.parametrize("fixture", ["acyclic", "staggered", "cocycle"])
    def test_reindexed_pages(self, fixture, request):
        assert decalage_comparison(request.getfixturevalue(fixture))

    def test_decalage_of_staggered(self, staggered):
        dec = decalage(staggered)
        assert dec.dims == staggered.dims
        assert page(dec, 1).dims() == {}

    def test_chain_map(self, cocycle):
        identity = (LinearMap.identity(2), LinearMap.identity(1))
        dec_a, dec_b = chain_map_on_dec(identity, cocycle, cocycle)
        assert dec_a == dec_b


class TestTruncation:
    def test_canonical_filtration(self, cocycle):
        t = truncation_filtration(cocycle.underlying())
        assert t.at(0, 0).dim == 1
        assert t.at(1, -1).dim == 1
        assert check_spectral_sequence(t)
        assert euler_characteristic(e_infinity(t)) == 1


class TestStrictness:
    def test_strict(self, cocycle):
        with_weight = filtered(
            [2, 1],
            [[[1, 0]]],
            [{0: [[1, 0], [0, 1]], 1: [[0, 1]]}, {0: [[1]]}],
            W=[{0: [[1, 0], [0, 1]]}, {0: [[1]]}],
        )
        report = check_spectral_sequence(with_weight)
        assert report
        assert report["injective"].passed
        assert strictness_check(cocycle)

    def test_not_strict(self, staggered):
        report = strictness_check(staggered)
        assert not report
        assert [1, 1, 0] in report["injective"].witness


class TestQuasiIsomorphism:
    def test_identity(self, cocycle):
        identity = (LinearMap.identity(2), LinearMap.identity(1))
        assert is_filtered_quasi_isomorphism(identity, cocycle, cocycle)

    def test_zero_map(self, staggered):
        zero = (LinearMap.zeros(1, 1), LinearMap.zeros(1, 1))
        report = is_filtered_quasi_isomorphism(zero, staggered, staggered)
        assert report.failed() == ["e1_isomorphism"]

    def test_not_filtered(self, acyclic, staggered):
        identity = (LinearMap.identity(1), LinearMap.identity(1))
        forward = is_filtered_quasi_isomorphism(identity, acyclic, staggered)
        assert forward.failed() == ["e1_isomorphism"]
        report = is_filtered_quasi_isomorphism(identity, staggered, acyclic)
        assert report.failed() == ["filtered", "e1_isomorphism"]

    def test_not_a_chain_map(self, acyclic):
        with pytest.raises(WellDefinednessViolation):
            is_filtered_quasi_isomorphism(
                (LinearMap.identity(1), mat([2])), acyclic, acyclic
            )


class TestDoubleComplex:
    def test_total(self, square):
        total = square.total()
        assert total.dims == (1, 2, 1)
        assert total.d[0] == mat([1], [1])
        assert total.d[1] == mat([1, -1])
        assert all(total.cohomology(n).dim == 0 for n in total.range)

    @pytest.mark.parametrize("method", ["column_filtration", "leray_filtration"])
    def test_filtrations(self, square, method):
        c = getattr(square, method)()
        assert check_spectral_sequence(c)
        assert e_infinity(c).dims() == {}

    def test_anticommuting_squares(self):
        with pytest.raises(ValidationError, match="differ"):
            DoubleComplex.model_validate(
                {
                    "columns": [0, 1],
                    "rows": [0, 1],
                    "dims": [[1, 1], [1, 1]],
                    "dh": [
                        {"a": 0, "b": 0, "map": [[1]]},
                        {"a": 0, "b": 1, "map": [[2]]},
                    ],
                    "dv": [
                        {"a": 0, "b": 0, "map": [[1]]},
                        {"a": 1, "b": 0, "map": [[1]]},
                    ],
                }
            )

    def test_serialisation(self, square):
        dumped = square.model_dump()
        assert dumped["dims"] == [[1, 1], [1, 1]]
        assert DoubleComplex.model_validate(dumped) == square
