# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
"""Quivers of perverse sheaves on the disk and the bidisk"""

from __future__ import annotations

import logging
from typing import Any, Literal

from pydantic import field_validator, model_serializer, model_validator

from mhslib.base import (
    CheckReport,
    Clause,
    DimensionMismatch,
    MHSBaseModel,
    NotICSum,
    NotInvertible,
    parses_raw,
    required,
)
from mhslib.linalg.maps import LinearMap, block_diagonal, hstack
from mhslib.linalg.scalars import (
    ScalarField,
    common_field,
    format_scalar,
    parse_scalar,
)
from mhslib.linalg.subspaces import (
    Subquotient,
    Subspace,
    image,
    image_of,
    intersect,
    kernel,
)

__all__ = [
    "Cohomology1D",
    "Decomposition1D",
    "PerverseQuiver1D",
    "PerverseQuiver2D",
    "Sector",
    "cohomology_1d",
    "decompose_1d",
    "direct_sum",
    "from_local_system",
    "is_ic_sum",
    "monodromy",
    "restrict_to_sector",
    "validate",
]

log = logging.getLogger(__name__)


class Sector(MHSBaseModel):
    """Summand of psi and phi attached to a rational alpha in [0, 1)"""

    alpha: Any
    psi: Subspace
    phi: Subspace

    @model_validator(mode="before")
    @classmethod
    @parses_raw
    def _parse(cls, data):
        if not isinstance(data, dict) or "psi_basis" not in data:
            return data
        return {
            "alpha": required(data, "alpha", "sector"),
            "psi": {
                "ambient_dim": required(data, "psi_dim", "sector"),
                "basis": data["psi_basis"],
            },
            "phi": {
                "ambient_dim": required(data, "phi_dim", "sector"),
                "basis": required(data, "phi_basis", "sector"),
            },
        }

    @field_validator("alpha", mode="before")
    @classmethod
    def _rational(cls, value):
        return parse_scalar(value, ScalarField.RATIONAL)

    @model_serializer
    def _serialise(self) -> dict[str, Any]:
        return {
            "alpha": format_scalar(self.alpha, ScalarField.RATIONAL),
            "psi_basis": self.psi.model_dump()["basis"],
            "phi_basis": self.phi.model_dump()["basis"],
        }


class PerverseQuiver1D(MHSBaseModel):
    """psi ⇄ phi with c: psi -> phi and v: phi -> psi"""

    psi: int
    phi: int
    c: LinearMap
    v: LinearMap
    sectors: tuple[Sector, ...] = ()

    @model_validator(mode="before")
    @classmethod
    @parses_raw
    def _sector_dims(cls, data):
        if isinstance(data, dict) and data.get("sectors"):
            data = dict(data)
            data["sectors"] = [
                {
                    "psi_dim": required(data, "psi", "quiver"),
                    "phi_dim": required(data, "phi", "quiver"),
                    **s,
                }
                if isinstance(s, dict) and "psi_basis" in s
                else s
                for s in data["sectors"]
            ]
        return data

    @model_validator(mode="after")
    def _shapes(self):
        if self.c.shape != (self.phi, self.psi):
            raise DimensionMismatch(
                f"c has shape {self.c.shape}, not {(self.phi, self.psi)}"
            )
        if self.v.shape != (self.psi, self.phi):
            raise DimensionMismatch(
                f"v has shape {self.v.shape}, not {(self.psi, self.phi)}"
            )
        for s in self.sectors:
            if (s.psi.ambient_dim, s.phi.ambient_dim) != (self.psi, self.phi):
                raise DimensionMismatch(f"sector {s.alpha} lives in the wrong spaces")
        return self

    @classmethod
    def skyscraper(cls, dim: int) -> PerverseQuiver1D:
        """0 ⇄ V"""  # noqa: DOC201
        return cls(
            psi=0, phi=dim, c=LinearMap.zeros(dim, 0), v=LinearMap.zeros(0, dim)
        )


_EDGES_2D = {
    "top": ("v11", "v12", "c1_top", "v1_top"),
    "bottom": ("v21", "v22", "c1_bot", "v1_bot"),
    "left": ("v11", "v21", "c2_left", "v2_left"),
    "right": ("v12", "v22", "c2_right", "v2_right"),
}


class PerverseQuiver2D(MHSBaseModel):
    """Commutative square of 1D quivers over the bidisk

    Index 1 is the horizontal direction (v11 ⇄ v12, v21 ⇄ v22) and index 2 the
    vertical one (v11 ⇄ v21, v12 ⇄ v22).
    """

    v11: int
    v12: int
    v21: int
    v22: int
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
        self.edges()
        return self

    def edges(self) -> dict[str, PerverseQuiver1D]:
        """The four edges as 1D quivers

        Returns
        -------
        :
            Quivers keyed by top, bottom, left and right

        Raises
        ------
        DimensionMismatch
            A map has the wrong shape
        """
        edges = {}
        for name, (src, dst, c, v) in _EDGES_2D.items():
            try:
                edges[name] = PerverseQuiver1D(
                    psi=getattr(self, src),
                    phi=getattr(self, dst),
                    c=getattr(self, c),
                    v=getattr(self, v),
                )
            except ValueError as exc:
                raise DimensionMismatch(f"edge {name}: {exc}") from None
        return edges

    def commutativity(self) -> dict[str, bool]:
        """Whether each of the four squares commutes"""  # noqa: DOC201
        return {
            "cc": self.c1_bot @ self.c2_left == self.c2_right @ self.c1_top,
            "vv": self.v2_left @ self.v1_bot == self.v1_top @ self.v2_right,
            "cv": self.c1_top @ self.v2_left == self.v2_right @ self.c1_bot,
            "vc": self.c2_left @ self.v1_top == self.v1_bot @ self.c2_right,
        }


def monodromy(q: PerverseQuiver1D) -> LinearMap:
    """T = I + v c on psi"""  # noqa: DOC201
    return LinearMap.identity(q.psi, q.c.field) + q.v @ q.c


def _invertibility(q: PerverseQuiver1D) -> Clause:
    det_vc = (LinearMap.identity(q.psi) + q.v @ q.c).det()
    det_cv = (LinearMap.identity(q.phi) + q.c @ q.v).det()
    field = common_field(q.c.field, q.v.field)
    passed = det_vc != field.zero and det_cv != field.zero
    return Clause(
        name="invertibility",
        passed=passed,
        witness={
            "det_I_plus_vc": format_scalar(det_vc, field),
            "det_I_plus_cv": format_scalar(det_cv, field),
            "monodromy": monodromy(q).model_dump()["entries"],
        },
    )


def _sector_clause(q: PerverseQuiver1D) -> Clause:
    if not q.sectors:
        return Clause(name="sectors", passed=True, witness="ungraded")
    problems = []
    psi_total = sum(s.psi.dim for s in q.sectors)
    phi_total = sum(s.phi.dim for s in q.sectors)
    psi_span = Subspace.span([v for s in q.sectors for v in s.psi.basis], q.psi)
    phi_span = Subspace.span([v for s in q.sectors for v in s.phi.basis], q.phi)
    if psi_total != q.psi or not psi_span.is_full():
        problems.append("psi is not the direct sum of its sectors")
    if phi_total != q.phi or not phi_span.is_full():
        problems.append("phi is not the direct sum of its sectors")
    if len({str(s.alpha) for s in q.sectors}) != len(q.sectors):
        problems.append("repeated alpha")
    for s in q.sectors:
        if not image_of(q.c, s.psi) <= s.phi or not image_of(q.v, s.phi) <= s.psi:
            alpha = format_scalar(s.alpha, ScalarField.RATIONAL)
            problems.append(f"sector {alpha} not preserved")
    return Clause(name="sectors", passed=not problems, witness=problems)


def validate(q: PerverseQuiver1D | PerverseQuiver2D) -> CheckReport:
    """Invertibility of I + vc (and, in 2D, commutativity of the squares)

    Returns
    -------
    :
        Clauses ``invertibility`` (with the monodromy as witness) and ``sectors``
        in 1D; ``invertibility_<edge>`` and ``commutativity`` in 2D
    """
    if isinstance(q, PerverseQuiver1D):
        return CheckReport.of([_invertibility(q), _sector_clause(q)])
    clauses = []
    for name, edge in q.edges().items():
        inv = _invertibility(edge)
        clauses.append(
            Clause(name=f"invertibility_{name}", passed=inv.passed, witness=inv.witness)
        )
    squares = q.commutativity()
    failing = [name for name, ok in squares.items() if not ok]
    clauses.append(Clause(name="commutativity", passed=not failing, witness=failing))
    return CheckReport.of(clauses)


def from_local_system(
    t: LinearMap,
    variant: Literal["full_direct_image", "middle_extension"] = "middle_extension",
) -> PerverseQuiver1D:
    """Quiver of Rj_*L[1] (full direct image) or j_*L[1] (middle extension)

    Returns
    -------
    :
        (V, V, T - I, I) or (V, im(T - I), T - I, inclusion)

    Raises
    ------
    NotInvertible
        T is singular
    """
    if not t.is_invertible():
        raise NotInvertible("monodromy of a local system must be invertible")
    n = t.rows
    shifted = t - LinearMap.identity(n, t.field)
    if variant == "full_direct_image":
        return PerverseQuiver1D(
            psi=n, phi=n, c=shifted, v=LinearMap.identity(n, t.field)
        )
    target = image(shifted)
    return PerverseQuiver1D(
        psi=n,
        phi=target.dim,
        c=target.coordinate_map() @ shifted,
        v=target.inclusion(),
    )


def _ic_edge(q: PerverseQuiver1D) -> tuple[bool, dict[str, int]]:
    im_c, ker_v = image(q.c), kernel(q.v)
    ok = im_c.dim + ker_v.dim == q.phi and intersect(im_c, ker_v).is_zero()
    return ok, {"im_c": im_c.dim, "ker_v": ker_v.dim, "phi": q.phi}


def is_ic_sum(q: PerverseQuiver1D | PerverseQuiver2D) -> CheckReport:
    """Whether phi = im(c) ⊕ ker(v) on every edge"""  # noqa: DOC201
    edges = {"edge": q} if isinstance(q, PerverseQuiver1D) else q.edges()
    clauses = []
    for name, edge in edges.items():
        ok, dims = _ic_edge(edge)
        clauses.append(Clause(name=name, passed=ok, witness=dims))
    return CheckReport.of(clauses)


class Decomposition1D(MHSBaseModel):
    """Type 1 part (psi -> im c) and type 0 part (0 ⇄ ker v) of a 1D quiver

    ``phi_iso`` sends phi to the coordinates of im c followed by those of ker v;
    psi is unchanged.
    """

    summands: tuple[PerverseQuiver1D, ...]
    types: tuple[int, ...]
    phi_iso: LinearMap


def decompose_1d(q: PerverseQuiver1D) -> Decomposition1D:
    """Split a quiver with phi = im c ⊕ ker v into its two types

    Returns
    -------
    :
        Nonzero summands with the isomorphism on phi

    Raises
    ------
    NotICSum
        phi is not im c ⊕ ker v
    """
    ok, dims = _ic_edge(q)
    if not ok:
        raise NotICSum(f"phi is not im(c) + ker(v): {dims}")
    im_c, ker_v = image(q.c), kernel(q.v)
    summands, types = [], []
    if q.psi or im_c.dim:
        summands.append(
            PerverseQuiver1D(
                psi=q.psi,
                phi=im_c.dim,
                c=im_c.coordinate_map() @ q.c,
                v=q.v @ im_c.inclusion(),
            )
        )
        types.append(1)
    if ker_v.dim:
        summands.append(PerverseQuiver1D.skyscraper(ker_v.dim))
        types.append(0)
    basis_change = hstack(im_c.inclusion(), ker_v.inclusion(), rows=q.phi)
    return Decomposition1D(
        summands=tuple(summands),
        types=tuple(types),
        phi_iso=basis_change.inverse(),
    )


def direct_sum(*quivers: PerverseQuiver1D) -> PerverseQuiver1D:
    """Direct sum of 1D quivers; sectors with equal alpha are merged"""  # noqa: DOC201
    psi = sum(q.psi for q in quivers)
    phi = sum(q.phi for q in quivers)
    merged: dict[str, list] = {}
    psi_off = phi_off = 0
    for q in quivers:
        for s in q.sectors:
            key = format_scalar(s.alpha, ScalarField.RATIONAL)
            entry = merged.setdefault(key, [s.alpha, [], []])
            entry[1].extend(_embed(v, psi_off, psi) for v in s.psi.basis)
            entry[2].extend(_embed(v, phi_off, phi) for v in s.phi.basis)
        psi_off += q.psi
        phi_off += q.phi
    sectors = tuple(
        Sector(alpha=a, psi=Subspace.span(ps, psi), phi=Subspace.span(fs, phi))
        for a, ps, fs in merged.values()
    )
    return PerverseQuiver1D(
        psi=psi,
        phi=phi,
        c=block_diagonal(*(q.c for q in quivers)) if quivers else LinearMap.zeros(0, 0),
        v=block_diagonal(*(q.v for q in quivers)) if quivers else LinearMap.zeros(0, 0),
        sectors=sectors,
    )


def _embed(v, offset: int, total: int) -> tuple:
    zero = ScalarField.RATIONAL.zero
    return (zero,) * offset + tuple(v) + (zero,) * (total - offset - len(v))


class Cohomology1D(MHSBaseModel):
    """H^-1 = ker c in psi and H^0 = coker c as phi / im c"""

    h_minus1: Subspace
    h0: Subquotient

    @property
    def dims(self) -> tuple[int, int]:
        """(dim H^-1, dim H^0)"""  # noqa: DOC201
        return self.h_minus1.dim, self.h0.dim


def cohomology_1d(q: PerverseQuiver1D) -> Cohomology1D:
    """Cohomology of the two-term complex psi -c-> phi in degrees -1, 0"""  # noqa: DOC201
    return Cohomology1D(
        h_minus1=kernel(q.c),
        h0=Subquotient.of(Subspace.full(q.phi, q.c.field), image(q.c)),
    )


def restrict_to_sector(q: PerverseQuiver1D, alpha: Any) -> PerverseQuiver1D:
    """The summand quiver of one sector, in the sector's echelon coordinates

    Returns
    -------
    :
        The restricted quiver carrying the single sector

    Raises
    ------
    KeyError
        No sector with this alpha
    """
    key = parse_scalar(alpha, ScalarField.RATIONAL)
    for s in q.sectors:
        if s.alpha == key:
            return PerverseQuiver1D(
                psi=s.psi.dim,
                phi=s.phi.dim,
                c=s.phi.coordinate_map() @ q.c @ s.psi.inclusion(),
                v=s.psi.coordinate_map() @ q.v @ s.phi.inclusion(),
                sectors=(
                    Sector(
                        alpha=s.alpha,
                        psi=Subspace.full(s.psi.dim),
                        phi=Subspace.full(s.phi.dim),
                    ),
                ),
            )
    raise KeyError(f"no sector with alpha {alpha}")
