# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
"""
Filtered Hodge quivers and the tilde-W weight filtration of a mixed orbit.

Every vertex carries its mixed Hodge data (F with the relative monodromy
filtration M) and an auxiliary increasing filtration. The tilde-W filtration of
the quiver is the auxiliary filtration moved up by the vertex's shift, so that
tilde-W_k is W_{k-1} on psi and (N_*W)_{k-2} on phi.
"""

from __future__ import annotations

import logging

from pydantic import model_validator

from mhslib.base import (
    CheckReport,
    Clause,
    DimensionMismatch,
    MHSBaseModel,
    NotExists,
)
from mhslib.filtrations import (
    FilteredSpaceWithNilpotent,
    Filtration,
    push_weight,
    relative_monodromy_filtration,
)
from mhslib.hodge.orbits import MixedNilpotentOrbitData
from mhslib.hodge.structures import MixedHodgeData, tate_twist
from mhslib.linalg.maps import LinearMap
from mhslib.linalg.subspaces import (
    Subquotient,
    image_of,
    induced_map,
    induced_on,
    intersect,
    subspace_sum,
)
from mhslib.quivers.hodge import (
    HodgeQuiver1D,
    HodgeQuiver2D,
    HodgeVertex,
    check_pure_hodge_quiver,
)

__all__ = [
    "FilteredHodgeQuiver1D",
    "FilteredHodgeQuiver2D",
    "FilteredVertex",
    "check_push_symmetry",
    "check_tilde_w_purity",
    "pushed",
    "tilde_w_1d",
    "tilde_w_2d",
]

log = logging.getLogger(__name__)


class FilteredVertex(MHSBaseModel):
    """Mixed Hodge data (F, M) with an auxiliary filtration and its shift"""

    hodge: MixedHodgeData
    aux: Filtration
    shift: int = 0

    @model_validator(mode="after")
    def _dimensions(self):
        if self.aux.ambient_dim != self.hodge.dim or not self.aux.increasing:
            raise DimensionMismatch(
                f"auxiliary filtration on {self.aux.ambient_dim} must be increasing "
                f"on dimension {self.hodge.dim}"
            )
        return self

    @property
    def dim(self) -> int:
        """Dimension"""  # noqa: DOC201
        return self.hodge.dim

    def tilde(self, k: int) -> Subquotient:
        """Gr^{tilde W}_k of this vertex"""  # noqa: DOC201
        return self.aux.graded(k - self.shift)

    def jumps(self) -> list[int]:
        """Indices k with a nonzero Gr^{tilde W}_k"""  # noqa: DOC201
        return [j + self.shift for j in self.aux.jumps()]

    def graded_vertex(self, k: int) -> tuple[HodgeVertex, Subquotient]:
        """The induced data on Gr^{tilde W}_k, with no form"""  # noqa: DOC201
        sq = self.tilde(k)
        return HodgeVertex(hodge=self.hodge.induced_on(sq)), sq


class FilteredHodgeQuiver1D(MHSBaseModel):
    """psi ⇄ phi with filtered vertices"""

    psi: FilteredVertex
    phi: FilteredVertex
    c: LinearMap
    v: LinearMap

    @model_validator(mode="after")
    def _shapes(self):
        if self.c.shape != (self.phi.dim, self.psi.dim):
            raise DimensionMismatch(f"c has shape {self.c.shape}")
        if self.v.shape != (self.psi.dim, self.phi.dim):
            raise DimensionMismatch(f"v has shape {self.v.shape}")
        return self

    def vertex_map(self) -> dict[str, FilteredVertex]:
        """Vertices by name"""  # noqa: DOC201
        return {"psi": self.psi, "phi": self.phi}

    def graded_quiver(self, k: int) -> HodgeQuiver1D:
        """Gr^{tilde W}_k as a Hodge quiver of weight k

        Returns
        -------
        :
            The graded quiver

        Raises
        ------
        WellDefinednessViolation
            c or v does not respect tilde-W
        """
        psi, s_psi = self.psi.graded_vertex(k)
        phi, s_phi = self.phi.graded_vertex(k)
        return HodgeQuiver1D(
            psi=psi,
            phi=phi,
            c=induced_on(self.c, s_psi, s_phi),
            v=induced_on(self.v, s_phi, s_psi),
            weight=k,
        )


_MAPS_2D = {
    "c1_top": ("v11", "v12"),
    "v1_top": ("v12", "v11"),
    "c1_bot": ("v21", "v22"),
    "v1_bot": ("v22", "v21"),
    "c2_left": ("v11", "v21"),
    "v2_left": ("v21", "v11"),
    "c2_right": ("v12", "v22"),
    "v2_right": ("v22", "v12"),
}


class FilteredHodgeQuiver2D(MHSBaseModel):
    """Commutative square of filtered vertices, map names as in PerverseQuiver2D"""

    v11: FilteredVertex
    v12: FilteredVertex
    v21: FilteredVertex
    v22: FilteredVertex
    c1_top: LinearMap
    v1_top: LinearMap
    c1_bot: LinearMap
    v1_bot: LinearMap
    c2_left: LinearMap
    v2_left: LinearMap
    c2_right: LinearMap
    v2_right: LinearMap

    @model_validator(mode="after")
    def _shapes(self):
        for name, (source, target) in _MAPS_2D.items():
            shape = (getattr(self, target).dim, getattr(self, source).dim)
            if getattr(self, name).shape != shape:
                raise DimensionMismatch(f"{name} has shape {getattr(self, name).shape}")
        return self

    def vertex_map(self) -> dict[str, FilteredVertex]:
        """Vertices by name"""  # noqa: DOC201
        return {"v11": self.v11, "v12": self.v12, "v21": self.v21, "v22": self.v22}

    def graded_quiver(self, k: int) -> HodgeQuiver2D:
        """Gr^{tilde W}_k as a Hodge quiver of weight k

        Returns
        -------
        :
            The graded quiver

        Raises
        ------
        WellDefinednessViolation
            One of the maps does not respect tilde-W
        """
        graded = {
            name: vertex.graded_vertex(k) for name, vertex in self.vertex_map().items()
        }
        maps = {
            name: induced_on(getattr(self, name), graded[src][1], graded[dst][1])
            for name, (src, dst) in _MAPS_2D.items()
        }
        return HodgeQuiver2D(
            **{name: vertex for name, (vertex, _) in graded.items()}, **maps, weight=k
        )


def _relative(weight: Filtration, n: LinearMap) -> Filtration | NotExists:
    try:
        x = FilteredSpaceWithNilpotent(W=weight, N=n)
    except ValueError as exc:
        return NotExists(reason=str(exc).splitlines()[0])
    return relative_monodromy_filtration(x)


def pushed(weight: Filtration, n: LinearMap) -> Filtration | NotExists:
    """N_*W using the relative monodromy filtration of (W, N)"""  # noqa: DOC201
    return push_weight(n, weight, _relative(weight, n))


def _vertex(
    d: MixedNilpotentOrbitData, aux: Filtration, shift: int, twist: int
) -> FilteredVertex | NotExists:
    weight = _relative(aux, d.N)
    if isinstance(weight, NotExists):
        return weight
    return FilteredVertex(
        hodge=tate_twist(d.H.with_weight(weight), twist), aux=aux, shift=shift
    )


def tilde_w_1d(d: MixedNilpotentOrbitData) -> FilteredHodgeQuiver1D | NotExists:
    """The quiver H -N-> H -id-> H with psi filtered by W and phi by N_*W

    psi carries (F, M(W, N)), phi carries (F, M(N_*W, N)) twisted by -1.

    Returns
    -------
    :
        The filtered quiver, or the NotExists of a missing relative filtration

    Raises
    ------
    DimensionMismatch
        The orbit does not have exactly one nilpotent
    """
    if len(d.Ns) != 1:
        raise DimensionMismatch(f"{len(d.Ns)} nilpotents for a quiver on the disk")
    (n,) = d.Ns
    push = pushed(d.H.W, n)
    if isinstance(push, NotExists):
        return push
    psi = _vertex(d, d.H.W, 1, 0)
    phi = _vertex(d, push, 2, -1)
    for vertex in (psi, phi):
        if isinstance(vertex, NotExists):
            return vertex
    log.debug(f"tilde-W quiver with N_*W {push}")
    return FilteredHodgeQuiver1D(
        psi=psi, phi=phi, c=n, v=LinearMap.identity(d.H.dim, n.field)
    )


def tilde_w_2d(d: MixedNilpotentOrbitData) -> FilteredHodgeQuiver2D | NotExists:
    """The square on H, H, H, H filtered by W, N_1*W, N_2*W and N_1*N_2*W

    The c maps are N_1 (horizontal) and N_2 (vertical), every v is the identity.
    Vertices carry the relative monodromy filtration of their auxiliary
    filtration for N_1 + N_2, twisted by 0, -1, -1 and -2, and sit at shifts
    2, 3, 3 and 4.

    Returns
    -------
    :
        The filtered quiver, or the first NotExists met

    Raises
    ------
    DimensionMismatch
        The orbit does not have exactly two nilpotents
    """
    if len(d.Ns) != 2:  # noqa: PLR2004
        raise DimensionMismatch(f"{len(d.Ns)} nilpotents for a quiver on the bidisk")
    n1, n2 = d.Ns
    w12 = pushed(d.H.W, n1)
    w21 = pushed(d.H.W, n2)
    if isinstance(w12, NotExists):
        return w12
    if isinstance(w21, NotExists):
        return w21
    w22 = pushed(w21, n1)
    if isinstance(w22, NotExists):
        return w22
    vertices = {
        "v11": _vertex(d, d.H.W, 2, 0),
        "v12": _vertex(d, w12, 3, -1),
        "v21": _vertex(d, w21, 3, -1),
        "v22": _vertex(d, w22, 4, -2),
    }
    for vertex in vertices.values():
        if isinstance(vertex, NotExists):
            return vertex
    one = LinearMap.identity(d.H.dim, n1.field)
    return FilteredHodgeQuiver2D(
        **vertices,
        c1_top=n1,
        v1_top=one,
        c1_bot=n1,
        v1_bot=one,
        c2_left=n2,
        v2_left=one,
        c2_right=n2,
        v2_right=one,
    )


def check_push_symmetry(d: MixedNilpotentOrbitData) -> CheckReport:
    """Whether N_1*N_2*W = N_2*N_1*W

    Returns
    -------
    :
        Clause ``symmetry`` with the graded dimensions of both sides

    Raises
    ------
    DimensionMismatch
        The orbit does not have exactly two nilpotents
    """
    if len(d.Ns) != 2:  # noqa: PLR2004
        raise DimensionMismatch(f"{len(d.Ns)} nilpotents, symmetry needs two")
    n1, n2 = d.Ns
    sides = []
    for first, second in ((n2, n1), (n1, n2)):
        inner = pushed(d.H.W, first)
        sides.append(inner if isinstance(inner, NotExists) else pushed(inner, second))
    missing = [s.reason for s in sides if isinstance(s, NotExists)]
    if missing:
        return CheckReport.of(
            [Clause(name="symmetry", passed=False, witness={"not_exists": missing})]
        )
    left, right = sides
    return CheckReport.of(
        [
            Clause(
                name="symmetry",
                passed=left == right,
                witness={"N1N2": left.graded_dims(), "N2N1": right.graded_dims()},
            )
        ]
    )


def _graded_rank(n: LinearMap, weight: Filtration, k: int) -> int:
    sub, quot = weight.graded_piece(k)
    return induced_map(n, sub, quot, sub, quot).rank()


def _summand_clause(fq: FilteredHodgeQuiver1D, ks: list[int]) -> Clause:
    n = fq.v @ fq.c
    weight, relative = fq.psi.aux, fq.psi.hodge.W
    shapes, wrong = {}, []
    for k in ks:
        try:
            quiver = fq.graded_quiver(k)
            expected_c = _graded_rank(n, weight, k - 1)
        except ValueError:
            wrong.append(k)
            continue
        base = weight.at(k - 2)
        n_base = image_of(n, base)
        expected_v = (
            subspace_sum(intersect(relative.at(k - 2), base), n_base).dim
            - subspace_sum(intersect(relative.at(k - 3), base), n_base).dim
        )
        got_c = quiver.c.rank()
        got_v = quiver.phi.dim - quiver.v.rank()
        shapes[k] = {"im_c": got_c, "ker_v": got_v}
        if (got_c, got_v) != (expected_c, expected_v):
            wrong.append(k)
    return Clause(name="summands", passed=not wrong, witness=shapes)


def check_tilde_w_purity(
    fq: FilteredHodgeQuiver1D | FilteredHodgeQuiver2D,
) -> CheckReport:
    """Whether every Gr^{tilde W}_k is a pure Hodge quiver of weight k

    One clause ``Gr<k>`` per index with a nonzero graded quiver, and on the disk
    a ``summands`` clause matching each graded quiver by dimension with the sum
    of (Gr^W_{k-1} -> N Gr^W_{k-1}) and (0 ⇄ Gr^M_{k-2}(W_{k-2} / N W_{k-2})(-1)).

    Returns
    -------
    :
        The report
    """
    ks = sorted({k for v in fq.vertex_map().values() for k in v.jumps()})
    clauses = []
    for k in ks:
        try:
            report = check_pure_hodge_quiver(fq.graded_quiver(k), k)
        except ValueError as exc:
            clauses.append(Clause(name=f"Gr{k}", passed=False, witness=str(exc)))
            continue
        clauses.append(
            Clause(name=f"Gr{k}", passed=report.passed, witness=report.failed())
        )
    if isinstance(fq, FilteredHodgeQuiver1D):
        clauses.append(_summand_clause(fq, ks))
    log.debug(f"tilde-W purity over indices {ks}")
    return CheckReport.of(clauses)
