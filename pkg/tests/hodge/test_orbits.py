# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
import numpy as np
import pytest
from pydantic_core import ValidationError
from sympy.polys.domains import QQ

from mhslib.base import NotExists, NotOrbit
from mhslib.filtrations import monodromy_filtration
from mhslib.hodge import (
    MixedHodgeData,
    MixedNilpotentOrbitData,
    NilpotentOrbitData,
    is_mixed_nilpotent_orbit,
    is_nilpotent_orbit,
    orbit_sum,
)
from mhslib.linalg import LinearMap
from mhslib.tools.generate import generate, mixed_orbit_instance
from tests import decreasing, eye, increasing, mat

JORDAN_2 = mat([0, 1], [0, 0])
CURVE_FORM = mat([0, 1], [-1, 0])


class TestNilpotentOrbit:
    def test_degeneration(self, degeneration):
        report = is_nilpotent_orbit(degeneration)
        assert report
        assert [c.name for c in report] == ["independence", "mhs", "polarization"]
        assert report["independence"].witness["samples"] == 5

    def test_real_hodge_line_is_not_an_orbit(self, degeneration):
        moved = NilpotentOrbitData(
            H=MixedHodgeData.pure(1, decreasing(2, {0: eye(2), 1: [[1, 0]]})),
            m=1,
            Ns=degeneration.Ns,
            Qform=degeneration.Qform,
        )
        report = is_nilpotent_orbit(moved)
        assert report.failed() == ["mhs", "polarization"]

    def test_no_nilpotents(self, curve):
        report = is_nilpotent_orbit(NilpotentOrbitData(H=curve, m=1, Qform=CURVE_FORM))
        assert report
        assert report["independence"].witness["samples"] == 0

    @pytest.mark.parametrize("t", [3, "1/4"])
    def test_scaling(self, degeneration, t):
        scaled = NilpotentOrbitData(
            H=degeneration.H,
            m=1,
            Ns=(JORDAN_2.scale(t),),
            Qform=degeneration.Qform,
        )
        assert is_nilpotent_orbit(scaled)

    def test_missing_form_is_skipped(self, degeneration):
        d = NilpotentOrbitData(H=degeneration.H, m=1, Ns=degeneration.Ns)
        report = is_nilpotent_orbit(d)
        assert report
        assert report["polarization"].witness == "skipped"

    @pytest.mark.parametrize("seed", range(6))
    def test_generated_orbits(self, seed):
        assert is_nilpotent_orbit(generate("nilpotent-orbit", seed).parsed())


class TestOrbitAxioms:
    def test_nilpotents_must_commute(self, degeneration):
        with pytest.raises(ValidationError, match="do not commute"):
            NilpotentOrbitData(
                H=degeneration.H, m=1, Ns=(JORDAN_2, JORDAN_2.transpose())
            )
        assert issubclass(NotOrbit, ValueError)

    def test_nilpotents_must_be_nilpotent(self, degeneration):
        with pytest.raises(ValidationError, match="not nilpotent"):
            NilpotentOrbitData(H=degeneration.H, m=1, Ns=(LinearMap.identity(2),))

    def test_horizontality(self):
        h = MixedHodgeData.pure(2, decreasing(2, {0: eye(2), 2: [[1, 0]]}))
        with pytest.raises(ValidationError, match="horizontal"):
            NilpotentOrbitData(H=h, m=2, Ns=(JORDAN_2.transpose(),))

    def test_isometry(self, degeneration):
        with pytest.raises(ValidationError, match="infinitesimal isometry"):
            NilpotentOrbitData(
                H=degeneration.H, m=1, Ns=degeneration.Ns, Qform=eye(2)
            )

    def test_weight_must_be_pure(self, q_plus_q1):
        with pytest.raises(ValidationError, match="pure of weight"):
            NilpotentOrbitData(H=q_plus_q1, m=0)


class TestMixedNilpotentOrbit:
    def test_pure_reduces_to_orbit(self, degeneration):
        d = MixedNilpotentOrbitData(
            H=degeneration.H,
            Ns=degeneration.Ns,
            graded_forms={1: degeneration.Qform},
        )
        assert is_nilpotent_orbit(d.graded_orbit(1))
        assert is_mixed_nilpotent_orbit(d)

    def test_no_nilpotents(self, q_plus_q1):
        d = MixedNilpotentOrbitData(
            H=q_plus_q1, graded_forms={0: mat([1]), 2: mat([1])}
        )
        report = is_mixed_nilpotent_orbit(d)
        assert report
        assert report["relative_monodromy"].witness == []

    def test_relative_filtration_does_not_exist(self):
        d = MixedNilpotentOrbitData(
            H=MixedHodgeData(
                dim=2,
                W=increasing(2, {0: [[1, 0]], 1: eye(2)}),
                F=decreasing(2, {0: eye(2)}),
            ),
            Ns=(JORDAN_2,),
        )
        assert isinstance(d.relative_filtration(), NotExists)
        report = is_mixed_nilpotent_orbit(d)
        assert not report
        assert "relative_monodromy" in report.failed()
        assert report["relative_monodromy"].witness == [[0]]

    def test_nilpotents_must_preserve_w(self, q_plus_q1):
        with pytest.raises(ValidationError, match="does not preserve W"):
            MixedNilpotentOrbitData(H=q_plus_q1, Ns=(JORDAN_2.transpose(),))

    @pytest.mark.parametrize("seed", range(4))
    @pytest.mark.parametrize("variables", [1, 2])
    def test_generated_instances(self, seed, variables):
        d = mixed_orbit_instance(np.random.default_rng(seed), 4, variables)
        assert len(d.Ns) == variables
        assert is_mixed_nilpotent_orbit(d)


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(100))
def test_weight_independent_of_positive_scales(seed):
    d = generate("nilpotent-orbit", seed, dim=6).parsed()
    rng = np.random.default_rng(seed)
    reference = monodromy_filtration(d.N, d.m)
    for _ in range(20):
        scales = tuple(
            QQ(int(rng.integers(1, 20)), int(rng.integers(1, 20))) for _ in d.Ns
        )
        assert monodromy_filtration(orbit_sum(d.Ns, d.H.dim, scales), d.m) == reference
