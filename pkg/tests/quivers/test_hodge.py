# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
import pytest

from mhslib.base import NotOrbit
from mhslib.hodge import MixedHodgeData, NilpotentOrbitData
from mhslib.quivers import (
    HodgeQuiver1D,
    HodgeQuiver2D,
    check_pure_hodge_quiver,
    hodge_quiver_from_orbit,
    validate,
)
from tests import decreasing, eye, mat

JORDAN_2 = mat([0, 1], [0, 0])


@pytest.fixture
def square_orbit(degeneration):
    """The same degeneration seen from two commuting directions"""
    return NilpotentOrbitData(
        H=degeneration.H, m=1, Ns=(JORDAN_2, JORDAN_2), Qform=degeneration.Qform
    )


class TestHodgeQuiverFromOrbit:
    def test_disk(self, degeneration):
        q = hodge_quiver_from_orbit(degeneration)
        assert isinstance(q, HodgeQuiver1D)
        assert q.weight == 2
        assert (q.psi.dim, q.phi.dim) == (2, 1)
        assert q.v @ q.c == JORDAN_2
        assert q.phi.hodge.W.jumps() == [2]
        assert q.phi.hodge.F.jumps() == [1]
        assert q.phi.form == mat([1])
        assert validate(q.underlying())

    def test_disk_is_pure(self, degeneration):
        q = hodge_quiver_from_orbit(degeneration)
        report = check_pure_hodge_quiver(q, 2)
        assert report
        assert [c.name for c in report] == [
            "ic_sum",
            "weight_psi",
            "orbit_psi",
            "weight_phi",
            "orbit_phi",
        ]

    def test_disk_at_the_wrong_weight(self, degeneration):
        report = check_pure_hodge_quiver(hodge_quiver_from_orbit(degeneration), 3)
        assert "weight_psi" in report.failed()
        assert "ic_sum" not in report.failed()

    def test_bidisk(self, square_orbit):
        q = hodge_quiver_from_orbit(square_orbit, dims=2)
        assert isinstance(q, HodgeQuiver2D)
        assert q.weight == 3
        assert [q.v11.dim, q.v12.dim, q.v21.dim, q.v22.dim] == [2, 1, 1, 0]
        assert all(q.underlying().commutativity().values())
        report = check_pure_hodge_quiver(q, 3)
        for name in ("ic_sum", "weight_v11", "orbit_v11", "orbit_v12", "orbit_v21"):
            assert report[name].passed

    def test_wrong_number_of_nilpotents(self, degeneration):
        with pytest.raises(NotOrbit, match="2-dimensional"):
            hodge_quiver_from_orbit(degeneration, dims=2)

    def test_not_an_orbit(self, degeneration):
        d = NilpotentOrbitData(
            H=MixedHodgeData.pure(1, decreasing(2, {0: eye(2), 1: [[1, 0]]})),
            m=1,
            Ns=degeneration.Ns,
        )
        with pytest.raises(NotOrbit, match="not a nilpotent orbit"):
            hodge_quiver_from_orbit(d)
