# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
import numpy as np
import pytest
from pydantic_core import ValidationError

from mhslib.base import NotICSum, NotInvertible
from mhslib.linalg import LinearMap
from mhslib.quivers import (
    PerverseQuiver1D,
    PerverseQuiver2D,
    cohomology_1d,
    decompose_1d,
    direct_sum,
    from_local_system,
    is_ic_sum,
    monodromy,
    restrict_to_sector,
    validate,
)
from mhslib.tools.generate import generate
from tests import conjugated, jordan_matrix, jordan_type, mat

UNIPOTENT = mat([1, 1], [0, 1])


@pytest.fixture
def graded():
    """Two sectors: alpha = 0 on e1 and alpha = 1/2 on e2"""
    return PerverseQuiver1D.model_validate(
        {
            "psi": 2,
            "phi": 2,
            "c": [[1, 0], [0, 2]],
            "v": [[1, 0], [0, 3]],
            "sectors": [
                {"alpha": "0", "psi_basis": [[1, 0]], "phi_basis": [[1, 0]]},
                {"alpha": "1/2", "psi_basis": [[0, 1]], "phi_basis": [[0, 1]]},
            ],
        }
    )


def _square(c1_bot):
    one = mat([1])
    return PerverseQuiver2D(
        v11=1,
        v12=1,
        v21=1,
        v22=1,
        c1_top=one,
        v1_top=one,
        c1_bot=c1_bot,
        v1_bot=one,
        c2_left=one,
        v2_left=one,
        c2_right=one,
        v2_right=one,
    )


class TestValidate:
    def test_invertible(self):
        q = PerverseQuiver1D(psi=1, phi=1, c=mat([1]), v=mat([1]))
        report = validate(q)
        assert report
        assert report["invertibility"].witness["monodromy"] == [["2"]]
        assert report["sectors"].witness == "ungraded"

    def test_singular(self):
        q = PerverseQuiver1D(psi=1, phi=1, c=mat([1]), v=mat([-1]))
        report = validate(q)
        assert report.failed() == ["invertibility"]
        assert report["invertibility"].witness["det_I_plus_vc"] == "0"

    def test_shapes(self):
        with pytest.raises(ValidationError, match="c has shape"):
            PerverseQuiver1D(psi=1, phi=1, c=mat([1], [1]), v=mat([1]))

    def test_sectors(self, graded):
        assert validate(graded)
        assert monodromy(graded) == mat([2, 0], [0, 7])

    def test_sector_not_preserved(self):
        q = PerverseQuiver1D.model_validate(
            {
                "psi": 2,
                "phi": 2,
                "c": [[1, 1], [0, 1]],
                "v": [[1, 0], [0, 1]],
                "sectors": [
                    {"alpha": "0", "psi_basis": [[1, 0]], "phi_basis": [[1, 0]]},
                    {"alpha": "1/3", "psi_basis": [[0, 1]], "phi_basis": [[0, 1]]},
                ],
            }
        )
        report = validate(q)
        assert report.failed() == ["sectors"]
        assert report["sectors"].witness == ["sector 1/3 not preserved"]

    def test_serialisation(self, graded):
        dumped = graded.model_dump(mode="json")
        assert dumped["sectors"][1] == {
            "alpha": "1/2",
            "psi_basis": [["0", "1"]],
            "phi_basis": [["0", "1"]],
        }
        assert PerverseQuiver1D.model_validate(dumped) == graded

    def test_square(self):
        q = _square(mat([1]))
        report = validate(q)
        assert report
        assert [c.name for c in report] == [
            "invertibility_top",
            "invertibility_bottom",
            "invertibility_left",
            "invertibility_right",
            "commutativity",
        ]

    def test_square_not_commuting(self):
        report = validate(_square(mat([2])))
        assert report.failed() == ["commutativity"]
        assert "cc" in report["commutativity"].witness

    def test_square_shapes(self):
        one = mat([1])
        with pytest.raises(ValidationError, match="edge top"):
            PerverseQuiver2D(
                v11=1,
                v12=2,
                v21=1,
                v22=1,
                c1_top=one,
                v1_top=one,
                c1_bot=one,
                v1_bot=one,
                c2_left=one,
                v2_left=one,
                c2_right=one,
                v2_right=one,
            )

    @pytest.mark.parametrize("seed", range(8))
    def test_generated_quivers(self, seed):
        assert validate(generate("quiver", seed).parsed().quiver)


class TestLocalSystems:
    def test_middle_extension(self):
        q = from_local_system(UNIPOTENT)
        assert (q.psi, q.phi) == (2, 1)
        assert monodromy(q) == UNIPOTENT
        assert is_ic_sum(q)
        assert cohomology_1d(q).dims == (1, 0)

    def test_full_direct_image(self):
        q = from_local_system(UNIPOTENT, "full_direct_image")
        assert (q.psi, q.phi) == (2, 2)
        assert monodromy(q) == UNIPOTENT
        assert not is_ic_sum(q)

    def test_trivial_monodromy(self):
        q = from_local_system(LinearMap.identity(2), "full_direct_image")
        assert cohomology_1d(q).dims == (2, 2)
        assert from_local_system(LinearMap.identity(2)).phi == 0

    def test_singular_monodromy(self):
        with pytest.raises(NotInvertible):
            from_local_system(mat([1, 0], [0, 0]))


def _random_local_system(seed: int):
    rng = np.random.default_rng(seed)
    blocks = jordan_type(rng, int(rng.integers(1, 7)), [1, 1, 2, -1, "1/2"])
    t = conjugated(rng, jordan_matrix(blocks))
    invariants = sum(1 for lam, _ in blocks if lam == 1)
    full = from_local_system(t, "full_direct_image")
    assert monodromy(full) == t
    assert cohomology_1d(full).dims == (invariants, invariants)
    middle = from_local_system(t)
    assert validate(middle)
    assert is_ic_sum(middle)
    assert cohomology_1d(middle).dims == (invariants, 0)


@pytest.mark.parametrize("seed", range(12))
def test_circle_cohomology(seed):
    _random_local_system(seed)


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(12, 212))
def test_circle_cohomology_sweep(seed):
    _random_local_system(seed)


class TestDecomposition:
    def test_split(self):
        q = direct_sum(from_local_system(UNIPOTENT), PerverseQuiver1D.skyscraper(1))
        assert (q.psi, q.phi) == (2, 2)
        parts = decompose_1d(q)
        assert parts.types == (1, 0)
        assert [(s.psi, s.phi) for s in parts.summands] == [(2, 1), (0, 1)]
        assert parts.phi_iso == LinearMap.identity(2)

    def test_not_ic(self):
        with pytest.raises(NotICSum):
            decompose_1d(from_local_system(UNIPOTENT, "full_direct_image"))

    def test_skyscraper(self):
        q = PerverseQuiver1D.skyscraper(2)
        assert is_ic_sum(q)
        assert cohomology_1d(q).dims == (0, 2)
        assert decompose_1d(q).types == (0,)

    def test_direct_sum_merges_sectors(self, graded):
        total = direct_sum(graded, graded)
        assert (total.psi, total.phi) == (4, 4)
        assert len(total.sectors) == 2
        assert validate(total)

    def test_restrict_to_sector(self, graded):
        q = restrict_to_sector(graded, "1/2")
        assert q.c == mat([2])
        assert q.v == mat([3])
        assert validate(q)
        with pytest.raises(KeyError):
            restrict_to_sector(graded, "1/3")
