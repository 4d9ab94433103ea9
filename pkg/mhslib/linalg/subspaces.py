# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
"""
Canonical subspaces of Q^n and Q(i)^n, subquotients and induced maps.

A subspace is stored as the reduced row echelon form of any spanning set, so two
subspaces are equal exactly when their stored bases are equal. Quotients use the
complement spanned by the echelon basis of the subspace reduced modulo the
quotient, whose pivots avoid the pivots of the quotient.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from functools import cached_property
from typing import Any

from pydantic import model_serializer, model_validator

from mhslib.base import (
    DimensionMismatch,
    MHSBaseModel,
    WellDefinednessViolation,
    parses_raw,
    required,
)
from mhslib.linalg.maps import LinearMap, hstack
from mhslib.linalg.scalars import ScalarField, common_field, conj, parse_scalar

__all__ = [
    "Subquotient",
    "Subspace",
    "image",
    "image_of",
    "induced_map",
    "induced_on",
    "intersect",
    "kernel",
    "preimage",
    "solve",
    "subspace_sum",
]

log = logging.getLogger(__name__)


def _vector_field(vector: Sequence[Any]) -> ScalarField:
    if any(isinstance(x, ScalarField.GAUSSIAN.domain.dtype) for x in vector):
        return ScalarField.GAUSSIAN
    return ScalarField.RATIONAL


def _echelon(
    vectors: Sequence[Sequence[Any]], ambient_dim: int, field: ScalarField
) -> tuple[tuple[tuple[Any, ...], ...], tuple[int, ...]]:
    if not vectors or ambient_dim == 0:
        return (), ()
    reduced, pivots = LinearMap.build(
        vectors, len(vectors), ambient_dim, field
    ).rref()
    return reduced.entries[: len(pivots)], pivots


class Subspace(MHSBaseModel):
    """Subspace held by its reduced row echelon basis"""

    ambient_dim: int
    field: ScalarField = ScalarField.RATIONAL
    basis: tuple[tuple[Any, ...], ...] = ()
    pivots: tuple[int, ...] = ()

    @model_validator(mode="before")
    @classmethod
    @parses_raw
    def _canonicalise(cls, data):
        if not isinstance(data, dict) or "pivots" in data:
            return data
        data = dict(data)
        field = ScalarField(data.get("field", ScalarField.RATIONAL))
        n = required(data, "ambient_dim", "subspace")
        vectors = [
            tuple(parse_scalar(x, field) for x in v) for v in data.get("basis", ())
        ]
        if any(len(v) != n for v in vectors):
            raise DimensionMismatch(f"basis vectors must have length {n}")
        data["field"] = field
        data["basis"], data["pivots"] = _echelon(vectors, n, field)
        return data

    @model_validator(mode="after")
    def _check(self):
        if len(self.basis) != len(self.pivots):
            raise DimensionMismatch("one pivot per basis vector")
        return self

    @model_serializer
    def _serialise(self) -> dict[str, Any]:
        return {
            "ambient_dim": self.ambient_dim,
            "field": self.field.value,
            "basis": self.basis_matrix().model_dump()["entries"],
        }

    def __str__(self) -> str:  # noqa: D105
        return f"Subspace(dim={self.dim} in {self.field.value}^{self.ambient_dim})"

    # construction

    @classmethod
    def span(
        cls,
        vectors: Iterable[Sequence[Any]],
        ambient_dim: int,
        field: ScalarField = ScalarField.RATIONAL,
    ) -> Subspace:
        """Span of domain-element vectors"""  # noqa: DOC201
        basis, pivots = _echelon([tuple(v) for v in vectors], ambient_dim, field)
        return cls.model_construct(
            ambient_dim=ambient_dim, field=field, basis=basis, pivots=pivots
        )

    @classmethod
    def zero(cls, n: int, field: ScalarField = ScalarField.RATIONAL) -> Subspace:
        """The zero subspace"""  # noqa: DOC201
        return cls.model_construct(ambient_dim=n, field=field, basis=(), pivots=())

    @classmethod
    def full(cls, n: int, field: ScalarField = ScalarField.RATIONAL) -> Subspace:
        """The whole space"""  # noqa: DOC201
        return cls.model_construct(
            ambient_dim=n,
            field=field,
            basis=LinearMap.identity(n, field).entries,
            pivots=tuple(range(n)),
        )

    @classmethod
    def standard(
        cls, indices: Iterable[int], n: int, field: ScalarField = ScalarField.RATIONAL
    ) -> Subspace:
        """Span of standard basis vectors"""  # noqa: DOC201
        eye = LinearMap.identity(n, field).entries
        return cls.span((eye[i] for i in indices), n, field)

    # properties

    @property
    def dim(self) -> int:
        """Dimension"""  # noqa: DOC201
        return len(self.basis)

    def is_zero(self) -> bool:
        """Whether the subspace is zero"""  # noqa: DOC201
        return self.dim == 0

    def is_full(self) -> bool:
        """Whether the subspace is the whole space"""  # noqa: DOC201
        return self.dim == self.ambient_dim

    def basis_matrix(self) -> LinearMap:
        """dim x n matrix whose rows are the basis"""  # noqa: DOC201
        return LinearMap.build(self.basis, self.dim, self.ambient_dim, self.field)

    def inclusion(self) -> LinearMap:
        """n x dim matrix whose columns are the basis"""  # noqa: DOC201
        return LinearMap.from_columns(self.basis, self.ambient_dim, self.field)

    def coordinates(self, vector: Sequence[Any]) -> tuple[Any, ...]:
        """Coordinates of a member vector in the echelon basis"""  # noqa: DOC201
        return tuple(vector[p] for p in self.pivots)

    def coordinate_map(self) -> LinearMap:
        """dim x n matrix reading off echelon coordinates of member vectors"""  # noqa: DOC201
        eye = LinearMap.identity(self.ambient_dim, self.field).entries
        return LinearMap.build(
            (eye[p] for p in self.pivots), self.dim, self.ambient_dim, self.field
        )

    # conversions

    def to_field(self, field: ScalarField) -> Subspace:
        """Extension or restriction of scalars"""  # noqa: DOC201
        if field is self.field:
            return self
        return Subspace.span(
            self.basis_matrix().to_field(field).entries, self.ambient_dim, field
        )

    def conjugate(self) -> Subspace:
        """Complex conjugate subspace"""  # noqa: DOC201
        if self.field is ScalarField.RATIONAL:
            return self
        return Subspace.span(
            (tuple(conj(x, self.field) for x in v) for v in self.basis),
            self.ambient_dim,
            self.field,
        )

    # lattice operations

    def contains(self, vector: Sequence[Any]) -> bool:
        """Whether a domain-element vector lies in the subspace"""  # noqa: DOC201
        field = common_field(self.field, _vector_field(vector))
        sub = self.to_field(field)
        residual = [parse_scalar(x, field) for x in vector]
        for row, p in zip(sub.basis, sub.pivots, strict=True):
            c = residual[p]
            residual = [r - c * b for r, b in zip(residual, row, strict=True)]
        return all(r == field.zero for r in residual)

    def __le__(self, other: Subspace) -> bool:
        """Containment"""  # noqa: DOC201
        a, b = _promote(self, other)
        return all(b.contains(v) for v in a.basis)

    def __add__(self, other: Subspace) -> Subspace:  # noqa: D105
        return subspace_sum(self, other)

    def __and__(self, other: Subspace) -> Subspace:  # noqa: D105
        return intersect(self, other)

    def annihilator(self) -> LinearMap:
        """A matrix A whose kernel is this subspace"""  # noqa: DOC201
        return kernel(self.basis_matrix()).basis_matrix()


def _promote(*spaces: Subspace) -> list[Subspace]:
    if len({s.ambient_dim for s in spaces}) > 1:
        raise DimensionMismatch(
            f"ambient dimensions differ: {[s.ambient_dim for s in spaces]}"
        )
    field = common_field(*(s.field for s in spaces))
    return [s.to_field(field) for s in spaces]


def _map_and_space(f: LinearMap, space: Subspace, *, source: bool):
    n = f.cols if source else f.rows
    if space.ambient_dim != n:
        raise DimensionMismatch(
            f"subspace of dimension {space.ambient_dim} for a map of shape {f.shape}"
        )
    field = common_field(f.field, space.field)
    return f.to_field(field), space.to_field(field)


def kernel(f: LinearMap) -> Subspace:
    """Null space of f as a subspace of its source"""  # noqa: DOC201
    reduced, pivots = f.rref()
    pivot_set = set(pivots)
    field = f.field
    vectors = []
    for j in range(f.cols):
        if j in pivot_set:
            continue
        v = [field.zero] * f.cols
        v[j] = field.one
        for i, p in enumerate(pivots):
            v[p] = -reduced.entries[i][j]
        vectors.append(v)
    return Subspace.span(vectors, f.cols, field)


def image(f: LinearMap) -> Subspace:
    """Column space of f as a subspace of its target"""  # noqa: DOC201
    return Subspace.span(f.columns(), f.rows, f.field)


def image_of(f: LinearMap, space: Subspace) -> Subspace:
    """f(space)"""  # noqa: DOC201
    f, space = _map_and_space(f, space, source=True)
    return Subspace.span((f.apply(v) for v in space.basis), f.rows, f.field)


def subspace_sum(first: Subspace, second: Subspace) -> Subspace:
    """S + T"""  # noqa: DOC201
    a, b = _promote(first, second)
    if a.is_zero() or b.is_full():
        return b
    if b.is_zero() or a.is_full():
        return a
    return Subspace.span(a.basis + b.basis, a.ambient_dim, a.field)


def intersect(first: Subspace, second: Subspace) -> Subspace:
    """S intersected with T, computed through the annihilator of T"""  # noqa: DOC201
    a, b = _promote(first, second)
    if a.is_zero() or b.is_full():
        return a
    if b.is_zero() or a.is_full():
        return b
    constraints = b.annihilator() @ a.inclusion()
    coefficients = kernel(constraints)
    basis = a.basis_matrix()
    return Subspace.span(
        (basis.transpose().apply(c) for c in coefficients.basis),
        a.ambient_dim,
        a.field,
    )


def preimage(f: LinearMap, space: Subspace) -> Subspace:
    """{x : f x in space}"""  # noqa: DOC201
    f, space = _map_and_space(f, space, source=False)
    if space.is_full():
        return Subspace.full(f.cols, f.field)
    return kernel(space.annihilator() @ f)


def solve(f: LinearMap, target: Sequence[Any]) -> tuple[Any, ...] | None:
    """A vector x with f x = target, or None when there is none"""  # noqa: DOC201
    field = common_field(f.field, _vector_field(target))
    f = f.to_field(field)
    target = tuple(parse_scalar(x, field) for x in target)
    if f.cols == 0:
        return () if all(t == field.zero for t in target) else None
    augmented = hstack(f, LinearMap.from_columns([target], f.rows, field))
    reduced, pivots = augmented.rref()
    if pivots and pivots[-1] == f.cols:
        return None
    x = [field.zero] * f.cols
    for i, p in enumerate(pivots):
        x[p] = reduced.entries[i][f.cols]
    return tuple(x)


class Subquotient(MHSBaseModel):
    """The space sub/quot with canonical complement coordinates"""

    sub: Subspace
    quot: Subspace

    @model_validator(mode="after")
    def _nested(self):
        if self.sub.ambient_dim != self.quot.ambient_dim:
            raise DimensionMismatch("sub and quot live in different spaces")
        if not self.quot <= self.sub:
            raise WellDefinednessViolation("quotient space is not contained in sub")
        return self

    @classmethod
    def of(cls, sub: Subspace, quot: Subspace | None = None) -> Subquotient:
        """Subquotient with quot defaulting to zero"""  # noqa: DOC201
        if quot is None:
            quot = Subspace.zero(sub.ambient_dim, sub.field)
        sub, quot = _promote(sub, quot)
        return cls(sub=sub, quot=quot)

    @property
    def ambient_dim(self) -> int:
        """Dimension of the ambient space"""  # noqa: DOC201
        return self.sub.ambient_dim

    @property
    def field(self) -> ScalarField:
        """Scalar field"""  # noqa: DOC201
        return common_field(self.sub.field, self.quot.field)

    @cached_property
    def complement(self) -> Subspace:
        """Canonical complement of quot inside sub"""  # noqa: DOC201
        quot = self.quot.to_field(self.field)
        reduced = []
        for v in self.sub.to_field(self.field).basis:
            r = list(v)
            for row, p in zip(quot.basis, quot.pivots, strict=True):
                c = r[p]
                r = [x - c * y for x, y in zip(r, row, strict=True)]
            reduced.append(r)
        return Subspace.span(reduced, self.ambient_dim, self.field)

    @property
    def dim(self) -> int:
        """Dimension of sub/quot"""  # noqa: DOC201
        return self.sub.dim - self.quot.dim

    @cached_property
    def projection(self) -> LinearMap:
        """dim x n matrix sending members of sub to quotient coordinates"""  # noqa: DOC201
        field = self.field
        quot = self.quot.to_field(field)
        comp = self.complement
        rows = []
        for p_l in comp.pivots:
            row = [field.zero] * self.ambient_dim
            row[p_l] = field.one
            for q_row, p_q in zip(quot.basis, quot.pivots, strict=True):
                row[p_q] -= q_row[p_l]
            rows.append(tuple(row))
        return LinearMap.build(rows, self.dim, self.ambient_dim, field)

    @cached_property
    def lift(self) -> LinearMap:
        """n x dim matrix of canonical representatives"""  # noqa: DOC201
        return self.complement.inclusion()

    def coordinates(self, vector: Sequence[Any]) -> tuple[Any, ...]:
        """Quotient coordinates of a member of sub"""  # noqa: DOC201
        return self.projection.apply(vector)

    def project(self, space: Subspace) -> Subspace:
        """Image in quotient coordinates of (space intersected with sub)"""  # noqa: DOC201
        field = common_field(space.field, self.field)
        inside = intersect(space, self.sub.to_field(field))
        proj = self.projection.to_field(inside.field)
        return Subspace.span(
            (proj.apply(v) for v in inside.basis), self.dim, inside.field
        )

    def pull_back(self, space: Subspace) -> Subspace:
        """Subspace between quot and sub with the given quotient coordinates"""  # noqa: DOC201
        lift = self.lift.to_field(common_field(space.field, self.field))
        lifted = Subspace.span(
            (lift.apply(v) for v in space.basis), self.ambient_dim, lift.field
        )
        return subspace_sum(lifted, self.quot.to_field(lift.field))


def induced_map(
    f: LinearMap,
    src_sub: Subspace,
    src_quot: Subspace,
    dst_sub: Subspace,
    dst_quot: Subspace,
) -> LinearMap:
    """Matrix of f on src_sub/src_quot -> dst_sub/dst_quot

    Returns
    -------
    :
        The matrix in canonical complement coordinates

    Raises
    ------
    WellDefinednessViolation
        f does not map sub into sub and quot into quot
    """
    return induced_on(
        f, Subquotient.of(src_sub, src_quot), Subquotient.of(dst_sub, dst_quot)
    )


def induced_on(f: LinearMap, source: Subquotient, target: Subquotient) -> LinearMap:
    """Matrix of f between two subquotients

    Returns
    -------
    :
        The matrix in canonical complement coordinates

    Raises
    ------
    WellDefinednessViolation
        f does not descend
    """
    if not image_of(f, source.sub) <= target.sub:
        raise WellDefinednessViolation("f does not map sub into sub")
    if not image_of(f, source.quot) <= target.quot:
        raise WellDefinednessViolation("f does not map quot into quot")
    field = common_field(f.field, source.field, target.field)
    return (
        target.projection.to_field(field)
        @ f.to_field(field)
        @ source.lift.to_field(field)
    )

