# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
"""
Hodge quivers: perverse quivers whose vertices carry mixed Hodge data.

On the disk the vertex psi sits at weight k - 1 and phi at weight k; on the
bidisk the vertices v11, v12, v21 and v22 sit at k - 2, k - 1, k - 1 and k. The
nilpotent endomorphism of a vertex is read off the quiver maps: v c or c v.
The twist (-1) of v is bookkeeping only, no scalar is applied.
"""

from __future__ import annotations

import logging
from typing import Literal

from pydantic import model_validator

from mhslib.base import CheckReport, Clause, MHSBaseModel, NotOrbit
from mhslib.filtrations import monodromy_filtration
from mhslib.hodge.orbits import NilpotentOrbitData, is_nilpotent_orbit
from mhslib.hodge.structures import MixedHodgeData
from mhslib.linalg.maps import LinearMap
from mhslib.linalg.scalars import ScalarField
from mhslib.linalg.subspaces import Subquotient, image, solve
from mhslib.quivers.perverse import PerverseQuiver1D, PerverseQuiver2D, is_ic_sum

__all__ = [
    "HodgeQuiver1D",
    "HodgeQuiver2D",
    "HodgeVertex",
    "check_pure_hodge_quiver",
    "hodge_quiver_from_orbit",
]

log = logging.getLogger(__name__)


class HodgeVertex(MHSBaseModel):
    """Mixed Hodge data at a quiver vertex with an optional polarizing form"""

    hodge: MixedHodgeData
    form: LinearMap | None = None

    @property
    def dim(self) -> int:
        """Dimension"""  # noqa: DOC201
        return self.hodge.dim


class HodgeQuiver1D(MHSBaseModel):
    """psi ⇄ phi with c a morphism psi -> phi and v a morphism phi -> psi(-1)"""

    psi: HodgeVertex
    phi: HodgeVertex
    c: LinearMap
    v: LinearMap
    weight: int

    @model_validator(mode="after")
    def _shapes(self):
        self.underlying()
        return self

    def underlying(self) -> PerverseQuiver1D:
        """The perverse quiver forgetting the Hodge data"""  # noqa: DOC201
        return PerverseQuiver1D(psi=self.psi.dim, phi=self.phi.dim, c=self.c, v=self.v)

    def vertices(self, k: int | None = None) -> dict[str, tuple]:
        """Vertices with their expected weight and nilpotent endomorphisms"""  # noqa: DOC201
        k = self.weight if k is None else k
        return {
            "psi": (self.psi, k - 1, (self.v @ self.c,)),
            "phi": (self.phi, k, (self.c @ self.v,)),
        }


class HodgeQuiver2D(MHSBaseModel):
    """Commutative square of Hodge quivers, indices as in PerverseQuiver2D"""

    v11: HodgeVertex
    v12: HodgeVertex
    v21: HodgeVertex
    v22: HodgeVertex
    c1_top: LinearMap
    v1_top: LinearMap
    c1_bot: LinearMap
    v1_bot: LinearMap
    c2_left: LinearMap
    v2_left: LinearMap
    c2_right: LinearMap
    v2_right: LinearMap
    weight: int

    @model_validator(mode="after")
    def _shapes(self):
        self.underlying()
        return self

    def underlying(self) -> PerverseQuiver2D:
        """The perverse quiver forgetting the Hodge data"""  # noqa: DOC201
        return PerverseQuiver2D(
            v11=self.v11.dim,
            v12=self.v12.dim,
            v21=self.v21.dim,
            v22=self.v22.dim,
            c1_top=self.c1_top,
            v1_top=self.v1_top,
            c1_bot=self.c1_bot,
            v1_bot=self.v1_bot,
            c2_left=self.c2_left,
            v2_left=self.v2_left,
            c2_right=self.c2_right,
            v2_right=self.v2_right,
        )

    def vertices(self, k: int | None = None) -> dict[str, tuple]:
        """Vertices with their expected weight and (N_1, N_2)"""  # noqa: DOC201
        k = self.weight if k is None else k
        return {
            "v11": (
                self.v11,
                k - 2,
                (self.v1_top @ self.c1_top, self.v2_left @ self.c2_left),
            ),
            "v12": (
                self.v12,
                k - 1,
                (self.c1_top @ self.v1_top, self.v2_right @ self.c2_right),
            ),
            "v21": (
                self.v21,
                k - 1,
                (self.v1_bot @ self.c1_bot, self.c2_left @ self.v2_left),
            ),
            "v22": (
                self.v22,
                k,
                (self.c1_bot @ self.v1_bot, self.c2_right @ self.v2_right),
            ),
        }


def _image_vertex(
    d: NilpotentOrbitData, through: LinearMap, weight: int
) -> tuple[HodgeVertex, Subquotient]:
    """Data induced on the image of ``through``

    F^p is through(F^p), the weight filtration is that of the restricted sum of
    the N_i centred at ``weight`` and the form is Q(x, w) for w = through(x).
    """
    target = Subquotient.of(image(through))
    gaussian = Subquotient.of(target.sub.to_field(ScalarField.GAUSSIAN))
    hodge = d.H.F.image_under(through, gaussian)
    restricted = target.projection @ d.N @ target.lift
    data = MixedHodgeData(
        dim=target.dim,
        W=monodromy_filtration(restricted, weight),
        F=hodge,
        twist=d.H.twist,
    )
    form = None
    if d.Qform is not None:
        preimages = [solve(through, w) for w in target.lift.columns()]
        form = LinearMap.build(
            (
                tuple(_pair(d.Qform, x, w) for w in target.lift.columns())
                for x in preimages
            ),
            target.dim,
            target.dim,
            d.Qform.field,
        )
    return HodgeVertex(hodge=data, form=form), target


def _pair(form: LinearMap, x, w):
    return sum(
        (a * b for a, b in zip(x, form.apply(w), strict=True)), form.field.zero
    )


def hodge_quiver_from_orbit(
    d: NilpotentOrbitData, dims: Literal[1, 2] = 1
) -> HodgeQuiver1D | HodgeQuiver2D:
    """The Hodge quiver of a nilpotent orbit

    On the disk psi = (H, F, M(N)[m]) and phi = N H with the induced data, with
    c = N and v the inclusion. On the bidisk the vertices are H, N_1 H, N_2 H and
    N_1 N_2 H at weights m, m + 1, m + 1 and m + 2.

    Returns
    -------
    :
        The quiver, of weight m + 1 on the disk and m + 2 on the bidisk

    Raises
    ------
    NotOrbit
        The data is not a nilpotent orbit or has the wrong number of N_i
    """
    if len(d.Ns) != dims:
        raise NotOrbit(f"{len(d.Ns)} nilpotent maps for a {dims}-dimensional quiver")
    report = is_nilpotent_orbit(d)
    if not report:
        raise NotOrbit(f"not a nilpotent orbit, failing {report.failed()}")
    psi = HodgeVertex(
        hodge=d.H.with_weight(monodromy_filtration(d.N, d.m)), form=d.Qform
    )
    if dims == 1:
        phi, target = _image_vertex(d, d.Ns[0], d.m + 1)
        return HodgeQuiver1D(
            psi=psi,
            phi=phi,
            c=target.projection @ d.Ns[0],
            v=target.lift,
            weight=d.m + 1,
        )
    n1, n2 = d.Ns
    v12, t12 = _image_vertex(d, n1, d.m + 1)
    v21, t21 = _image_vertex(d, n2, d.m + 1)
    v22, t22 = _image_vertex(d, n1 @ n2, d.m + 2)
    return HodgeQuiver2D(
        v11=psi,
        v12=v12,
        v21=v21,
        v22=v22,
        c1_top=t12.projection @ n1,
        v1_top=t12.lift,
        c1_bot=t22.projection @ n1 @ t21.lift,
        v1_bot=t21.projection @ t22.lift,
        c2_left=t21.projection @ n2,
        v2_left=t21.lift,
        c2_right=t22.projection @ n2 @ t12.lift,
        v2_right=t12.projection @ t22.lift,
        weight=d.m + 2,
    )


def _vertex_clauses(
    name: str, vertex: HodgeVertex, weight: int, ns: tuple[LinearMap, ...]
) -> list[Clause]:
    total = LinearMap.zeros(vertex.dim, vertex.dim)
    for a in ns:
        total += a
    try:
        expected = monodromy_filtration(total, weight)
    except ValueError as exc:
        return [
            Clause(name=f"weight_{name}", passed=False, witness=str(exc)),
            Clause(name=f"orbit_{name}", passed=False, witness=str(exc)),
        ]
    weight_clause = Clause(
        name=f"weight_{name}",
        passed=vertex.hodge.W == expected,
        witness={
            "expected": expected.graded_dims(),
            "got": vertex.hodge.W.graded_dims(),
        },
    )
    try:
        orbit = NilpotentOrbitData(
            H=MixedHodgeData.pure(weight, vertex.hodge.F, vertex.hodge.twist.j),
            m=weight,
            Ns=ns,
            Qform=vertex.form,
        )
    except ValueError as exc:
        return [
            weight_clause,
            Clause(
                name=f"orbit_{name}", passed=False, witness=str(exc).splitlines()[0]
            ),
        ]
    report = is_nilpotent_orbit(orbit)
    return [
        weight_clause,
        Clause(name=f"orbit_{name}", passed=report.passed, witness=report.failed()),
    ]


def check_pure_hodge_quiver(q: HodgeQuiver1D | HodgeQuiver2D, k: int) -> CheckReport:
    """Whether a Hodge quiver is pure of weight k

    Returns
    -------
    :
        Clause ``ic_sum`` and, per vertex, ``weight_<vertex>`` (its weight
        filtration is the monodromy filtration at the expected weight) and
        ``orbit_<vertex>`` (it is a nilpotent orbit of that weight)
    """
    ic = is_ic_sum(q.underlying())
    clauses = [
        Clause(
            name="ic_sum",
            passed=ic.passed,
            witness={c.name: c.witness for c in ic.clauses},
        )
    ]
    for name, (vertex, weight, ns) in q.vertices(k).items():
        clauses.extend(_vertex_clauses(name, vertex, weight, ns))
    return CheckReport.of(clauses)
