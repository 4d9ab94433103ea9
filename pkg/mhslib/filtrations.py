# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
"""
Finite filtrations; monodromy, relative monodromy and pushed weight filtrations.

A filtration is stored increasingly by its jumps only. A decreasing filtration
F^p is stored as the increasing filtration F_{-p}, and every public method takes
and returns the indices of the filtration's own direction.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping
from enum import Enum
from typing import Any

from pydantic import model_serializer, model_validator

from mhslib.base import (
    CheckReport,
    Clause,
    DimensionMismatch,
    FiltrationNotPreserved,
    MHSBaseModel,
    NotExists,
    NotNilpotent,
    WellDefinednessViolation,
    as_int,
    parses_raw,
    required,
)
from mhslib.linalg.maps import LinearMap
from mhslib.linalg.scalars import ScalarField, common_field
from mhslib.linalg.spectral import is_nilpotent
from mhslib.linalg.subspaces import (
    Subquotient,
    Subspace,
    image_of,
    induced_map,
    intersect,
    kernel,
    preimage,
    solve,
    subspace_sum,
)

__all__ = [
    "Direction",
    "FilteredSpaceWithNilpotent",
    "Filtration",
    "PrimitivePart",
    "direct_sum",
    "graded_piece",
    "is_monodromy_filtration",
    "is_relative_monodromy_filtration",
    "monodromy_filtration",
    "primitive_decomposition",
    "push_weight",
    "relative_monodromy_filtration",
]

log = logging.getLogger(__name__)


class Direction(str, Enum):
    """Filtration direction"""

    INCREASING = "increasing"
    DECREASING = "decreasing"


def _normalise(
    steps: Iterable[tuple[int, Subspace]], n: int, field: ScalarField
) -> tuple[tuple[int, Subspace], ...]:
    ordered = sorted(((i, s.to_field(field)) for i, s in steps), key=lambda x: x[0])
    if len({i for i, _ in ordered}) != len(ordered):
        raise ValueError("repeated filtration index")
    jumps = []
    previous = Subspace.zero(n, field)
    for index, space in ordered:
        if space.ambient_dim != n:
            raise DimensionMismatch(
                f"step {index} lives in dimension {space.ambient_dim}, not {n}"
            )
        if not previous <= space:
            raise ValueError(f"filtration steps are not nested at index {index}")
        if space.dim > previous.dim:
            jumps.append((index, space))
            previous = space
    if previous.dim != n:
        raise ValueError("filtration is not exhaustive")
    return tuple(jumps)


class Filtration(MHSBaseModel):
    """Finite exhaustive filtration of Q^n or Q(i)^n

    Serialised as ``{"ambient_dim", "field", "direction", "steps"}`` where each
    step is ``{"index": k, "basis": matrix}`` in the filtration's own indexing.
    """

    ambient_dim: int
    field: ScalarField = ScalarField.RATIONAL
    direction: Direction = Direction.INCREASING
    steps: tuple[tuple[int, Subspace], ...] = ()

    @model_validator(mode="before")
    @classmethod
    @parses_raw
    def _parse_steps(cls, data):
        if not isinstance(data, dict):
            return data
        data = dict(data)
        n = required(data, "ambient_dim", "filtration")
        field = ScalarField(data.get("field", ScalarField.RATIONAL))
        direction = Direction(data.get("direction", Direction.INCREASING))
        sign = 1 if direction is Direction.INCREASING else -1
        parsed = []
        for step in data.get("steps", ()):
            if isinstance(step, dict):
                space = Subspace(
                    ambient_dim=n, field=field, basis=step.get("basis", ())
                )
                index = as_int(required(step, "index", "filtration step"), "index")
                parsed.append((sign * index, space))
            else:
                parsed.append(tuple(step))
        data["field"] = field
        data["direction"] = direction
        data["steps"] = _normalise(parsed, n, field)
        return data

    @model_serializer
    def _serialise(self) -> dict[str, Any]:
        return {
            "ambient_dim": self.ambient_dim,
            "field": self.field.value,
            "direction": self.direction.value,
            "steps": [
                {
                    "index": k,
                    "basis": self.at(k).basis_matrix().model_dump()["entries"],
                }
                for k in self.jumps()
            ],
        }

    def __str__(self) -> str:  # noqa: D105
        letter = "W" if self.direction is Direction.INCREASING else "F"
        body = ", ".join(f"{letter}{k}:{self.at(k).dim}" for k in self.jumps())
        return f"Filtration({body})"

    # construction

    @classmethod
    def from_subspaces(
        cls,
        steps: Mapping[int, Subspace] | Iterable[tuple[int, Subspace]],
        n: int,
        field: ScalarField = ScalarField.RATIONAL,
        direction: Direction = Direction.INCREASING,
    ) -> Filtration:
        """Build from subspaces keyed by index in the given direction

        Returns
        -------
        :
            The normalised filtration

        Raises
        ------
        ValueError
            Steps are not nested or not exhaustive
        """
        items = steps.items() if isinstance(steps, Mapping) else steps
        sign = 1 if direction is Direction.INCREASING else -1
        return cls.model_construct(
            ambient_dim=n,
            field=field,
            direction=direction,
            steps=_normalise(((sign * k, s) for k, s in items), n, field),
        )

    @classmethod
    def trivial(
        cls,
        n: int,
        index: int,
        field: ScalarField = ScalarField.RATIONAL,
        direction: Direction = Direction.INCREASING,
    ) -> Filtration:
        """Filtration with a single jump at index"""  # noqa: DOC201
        return cls.from_subspaces({index: Subspace.full(n, field)}, n, field, direction)

    # queries

    @property
    def increasing(self) -> bool:
        """Whether this is an increasing filtration"""  # noqa: DOC201
        return self.direction is Direction.INCREASING

    def _internal(self, k: int) -> int:
        return k if self.increasing else -k

    def at(self, k: int) -> Subspace:
        """The step W_k (increasing) or F^k (decreasing)"""  # noqa: DOC201
        i = self._internal(k)
        found = Subspace.zero(self.ambient_dim, self.field)
        for index, space in self.steps:
            if index > i:
                break
            found = space
        return found

    def jumps(self) -> list[int]:
        """Indices with nonzero graded piece, ascending"""  # noqa: DOC201
        return sorted(self._internal(i) for i, _ in self.steps)

    def graded_piece(self, k: int) -> tuple[Subspace, Subspace]:
        """(W_k, W_{k-1}) or (F^k, F^{k+1})"""  # noqa: DOC201
        below = k - 1 if self.increasing else k + 1
        return self.at(k), self.at(below)

    def graded(self, k: int) -> Subquotient:
        """Graded piece as a subquotient"""  # noqa: DOC201
        return Subquotient.of(*self.graded_piece(k))

    def graded_dims(self) -> dict[int, int]:
        """Dimension of every nonzero graded piece"""  # noqa: DOC201
        dims = {}
        for k in self.jumps():
            sub, quot = self.graded_piece(k)
            dims[k] = sub.dim - quot.dim
        return dims

    def window(self, pad: int = 0) -> range:
        """Indices from below the lowest jump to above the highest"""  # noqa: DOC201
        jumps = self.jumps()
        if not jumps:
            return range(0)
        return range(jumps[0] - 1 - pad, jumps[-1] + 2 + pad)

    # transformations

    def _rebuild(self, steps: Iterable[tuple[int, Subspace]], n: int, field):
        return Filtration.model_construct(
            ambient_dim=n,
            field=field,
            direction=self.direction,
            steps=_normalise(steps, n, field),
        )

    def shift(self, offset: int) -> Filtration:
        """Move every index by offset: the result at k + offset is this at k"""  # noqa: DOC201
        sign = 1 if self.increasing else -1
        return self._rebuild(
            ((i + sign * offset, s) for i, s in self.steps), self.ambient_dim, self.field
        )

    def to_field(self, field: ScalarField) -> Filtration:
        """Change the scalar field of every step"""  # noqa: DOC201
        if field is self.field:
            return self
        return self._rebuild(self.steps, self.ambient_dim, field)

    def conjugate(self) -> Filtration:
        """Complex conjugate filtration"""  # noqa: DOC201
        return self._rebuild(
            ((i, s.conjugate()) for i, s in self.steps), self.ambient_dim, self.field
        )

    def induced_on(self, sq: Subquotient) -> Filtration:
        """Filtration induced on a subquotient, in its complement coordinates"""  # noqa: DOC201
        field = common_field(self.field, sq.field)
        return self._rebuild(
            ((i, sq.project(s.to_field(field))) for i, s in self.steps), sq.dim, field
        )

    def image_under(self, f: LinearMap, target: Subquotient) -> Filtration:
        """Steps f(F_k) in the coordinates of a subquotient containing f's image"""  # noqa: DOC201
        field = common_field(self.field, f.field, target.field)
        return self._rebuild(
            ((i, target.project(image_of(f, s.to_field(field)))) for i, s in self.steps),
            target.dim,
            field,
        )

    def transported(self, g: LinearMap) -> Filtration:
        """Image under an automorphism g"""  # noqa: DOC201
        field = common_field(self.field, g.field)
        return self._rebuild(
            ((i, image_of(g, s)) for i, s in self.steps), self.ambient_dim, field
        )

    def is_preserved_by(self, f: LinearMap, shift: int = 0) -> bool:
        """Whether f maps each step k into step k + shift"""  # noqa: DOC201
        if f.shape != (self.ambient_dim, self.ambient_dim):
            raise DimensionMismatch(
                f"map of shape {f.shape} on a filtration of dimension {self.ambient_dim}"
            )
        return all(image_of(f, self.at(k)) <= self.at(k + shift) for k in self.jumps())


def graded_piece(f: Filtration, k: int) -> tuple[Subspace, Subspace]:
    """(W_k, W_{k-1}) for increasing and (F^k, F^{k+1}) for decreasing filtrations"""  # noqa: DOC201
    return f.graded_piece(k)


def direct_sum(*filtrations: Filtration) -> Filtration:
    """Direct sum of filtrations of the same direction

    Returns
    -------
    :
        The filtration of the direct sum space

    Raises
    ------
    DimensionMismatch
        Directions differ
    """
    if len({f.direction for f in filtrations}) > 1:
        raise DimensionMismatch("cannot sum filtrations of different directions")
    direction = filtrations[0].direction if filtrations else Direction.INCREASING
    field = common_field(*(f.field for f in filtrations))
    n = sum(f.ambient_dim for f in filtrations)
    indices = sorted({k for f in filtrations for k in f.jumps()})
    steps = {}
    for k in indices:
        vectors, offset = [], 0
        for f in filtrations:
            for v in f.at(k).to_field(field).basis:
                vectors.append(
                    (field.zero,) * offset
                    + tuple(v)
                    + (field.zero,) * (n - offset - f.ambient_dim)
                )
            offset += f.ambient_dim
        steps[k] = Subspace.span(vectors, n, field)
    return Filtration.from_subspaces(steps, n, field, direction)


# monodromy filtrations


def _check_nilpotent(n: LinearMap):
    if not n.is_square:
        raise DimensionMismatch(f"endomorphism of shape {n.shape} is not square")
    if not is_nilpotent(n):
        raise NotNilpotent("endomorphism is not nilpotent")


def _ladder(
    n: LinearMap, upper: Subspace, lower: Subspace, center: int
) -> dict[int, Subspace]:
    """Monodromy filtration of N on upper/lower centred at center

    Steps are subspaces between lower and upper; indices not listed read as the
    nearest listed index below, or lower below all of them.
    """
    steps: dict[int, Subspace] = {}
    while upper != lower:
        power, nu = upper, 0
        while not power <= lower:
            power = image_of(n, power)
            nu += 1
            if nu > upper.ambient_dim:
                raise NotNilpotent("endomorphism is not nilpotent on the subquotient")
        ell = nu - 1
        steps[center + ell] = upper
        steps[center - ell - 1] = lower
        if ell == 0:
            break
        n_ell = n.power(ell)
        upper, lower = (
            intersect(upper, preimage(n_ell, lower)),
            subspace_sum(image_of(n_ell, upper), lower),
        )
        steps[center + ell - 1] = upper
        steps[center - ell] = lower
    log.debug(f"monodromy ladder centred at {center} with {len(steps)} steps")
    return steps


def _read(steps: Mapping[int, Subspace], k: int, floor: Subspace) -> Subspace:
    found = floor
    for index in sorted(steps):
        if index > k:
            break
        found = steps[index]
    return found


def monodromy_filtration(n: LinearMap, m: int) -> Filtration:
    """The monodromy weight filtration M(N)[m] centred at m

    Returns
    -------
    :
        The unique increasing filtration with N M_k in M_{k-2} and
        N^k: Gr_{m+k} -> Gr_{m-k} an isomorphism

    Raises
    ------
    NotNilpotent
        N is not nilpotent
    """
    _check_nilpotent(n)
    dim = n.rows
    steps = _ladder(n, Subspace.full(dim, n.field), Subspace.zero(dim, n.field), m)
    return Filtration.from_subspaces(steps, dim, n.field)


def _lefschetz_clauses(
    n: LinearMap, m: int, weight: Filtration
) -> tuple[Clause, Clause]:
    shift_ok = weight.is_preserved_by(n, -2)
    failures = []
    reach = max((abs(k - m) for k in weight.jumps()), default=0)
    for k in range(1, reach + 1):
        try:
            induced = induced_map(
                n.power(k), *weight.graded_piece(m + k), *weight.graded_piece(m - k)
            )
        except WellDefinednessViolation:
            failures.append(k)
            continue
        if not induced.is_invertible():
            failures.append(k)
    return (
        Clause(name="shift", passed=shift_ok, witness=weight.graded_dims()),
        Clause(name="lefschetz", passed=not failures, witness=failures),
    )


def is_monodromy_filtration(n: LinearMap, m: int, weight: Filtration) -> CheckReport:
    """Check the two characterising properties of M(N)[m]"""  # noqa: DOC201
    _check_nilpotent(n)
    if weight.ambient_dim != n.rows or not weight.increasing:
        return CheckReport.of([Clause(name="shape", passed=False)])
    return CheckReport.of(_lefschetz_clauses(n, m, weight))


class PrimitivePart(MHSBaseModel):
    """Primitive subspace P of Gr^M_{m+k}, in the graded piece's coordinates"""

    k: int
    graded: Subquotient
    space: Subspace


def primitive_decomposition(n: LinearMap, m: int) -> list[PrimitivePart]:
    """Primitive parts P_k = ker(N^{k+1}: Gr_{m+k} -> Gr_{m-k-2}) for k >= 0

    Returns
    -------
    :
        One part per nonnegative graded index

    Raises
    ------
    ValueError
        The graded dimensions are not the sum of the primitive ones
    """
    weight = monodromy_filtration(n, m)
    parts = []
    for j in weight.jumps():
        k = j - m
        if k < 0:
            continue
        graded = weight.graded(m + k)
        induced = induced_map(
            n.power(k + 1), *weight.graded_piece(m + k), *weight.graded_piece(m - k - 2)
        )
        parts.append(PrimitivePart(k=k, graded=graded, space=kernel(induced)))
    primitive = {p.k: p.space.dim for p in parts}
    for j, dim in weight.graded_dims().items():
        k = j - m
        first = max(0, -k)
        strings = range(first, first + n.rows + 1)
        if dim != sum(primitive.get(k + 2 * i, 0) for i in strings):
            raise ValueError(f"primitive dimensions do not add up on Gr_{j}")
    return parts


# relative monodromy


class FilteredSpaceWithNilpotent(MHSBaseModel):
    """Increasing filtration W with a nilpotent N preserving it"""

    W: Filtration  # noqa: N815
    N: LinearMap  # noqa: N815

    @model_validator(mode="after")
    def _check(self):
        if not self.W.increasing:
            raise DimensionMismatch("W must be increasing")
        if self.N.shape != (self.W.ambient_dim, self.W.ambient_dim):
            raise DimensionMismatch(
                f"N of shape {self.N.shape} on W of dimension {self.W.ambient_dim}"
            )
        _check_nilpotent(self.N)
        if not self.W.is_preserved_by(self.N):
            raise FiltrationNotPreserved("N does not preserve W")
        return self

    @property
    def dim(self) -> int:
        """Ambient dimension"""  # noqa: DOC201
        return self.W.ambient_dim


def is_relative_monodromy_filtration(
    x: FilteredSpaceWithNilpotent, weight: Filtration
) -> CheckReport:
    """Check N M_k in M_{k-2} and that M induces M(Gr N)[k] on every Gr^W_k"""  # noqa: DOC201
    shift = Clause(
        name="shift",
        passed=weight.is_preserved_by(x.N, -2),
        witness=weight.graded_dims(),
    )
    mismatched = []
    for k in x.W.jumps():
        graded = x.W.graded(k)
        induced_n = induced_map(x.N, graded.sub, graded.quot, graded.sub, graded.quot)
        if weight.induced_on(graded) != monodromy_filtration(induced_n, k).to_field(
            weight.field
        ):
            mismatched.append(k)
    return CheckReport.of(
        [shift, Clause(name="graded", passed=not mismatched, witness=mismatched)]
    )


def relative_monodromy_filtration(
    x: FilteredSpaceWithNilpotent,
) -> Filtration | NotExists:
    """The relative monodromy filtration of (W, N) if it exists

    Built jump by jump along W: the monodromy filtration of N on each graded
    piece is lifted by choosing, for every primitive vector, a representative
    whose N-string lands in the filtration already built below. The result is
    verified against the defining conditions before it is returned.

    Returns
    -------
    :
        The filtration, or NotExists naming the obstruction
    """
    n, dim, field = x.N, x.dim, x.W.field
    below = Subspace.zero(dim, field)
    built: dict[int, Subspace] = {}
    for b in x.W.jumps():
        top = x.W.at(b)
        ladder = _ladder(n, top, below, b)

        def at(k, ladder=ladder, floor=below):
            return _read(ladder, k, floor)

        strings: list[tuple[int, tuple]] = []
        reach = max(k - b for k in ladder)
        for ell in range(reach + 1):
            graded = Subquotient.of(at(b + ell), at(b + ell - 1))
            if graded.dim == 0:
                continue
            power = n.power(ell + 1)
            primitive = kernel(
                induced_map(
                    power, graded.sub, graded.quot, at(b - ell - 2), at(b - ell - 3)
                )
            )
            if primitive.is_zero():
                continue
            target = _read(built, b - ell - 2, Subspace.zero(dim, field))
            lifts = intersect(at(b + ell), preimage(power, target))
            coords = graded.projection @ lifts.inclusion()
            for p in primitive.basis:
                c = solve(coords, p)
                if c is None:
                    log.debug(f"no lift of a primitive vector at {b}+{ell}")
                    return NotExists(
                        reason=f"primitive class of Gr^W_{b} at level {b + ell} "
                        "has no admissible lift"
                    )
                u = lifts.inclusion().apply(c)
                for i in range(ell + 1):
                    strings.append((b + ell - 2 * i, u))
                    u = n.apply(u)
        levels = sorted(set(built) | {lv for lv, _ in strings})
        built = {
            k: subspace_sum(
                _read(built, k, Subspace.zero(dim, field)),
                Subspace.span([v for lv, v in strings if lv <= k], dim, field),
            )
            for k in levels
        }
        below = top
    weight = Filtration.from_subspaces(built, dim, field)
    report = is_relative_monodromy_filtration(x, weight)
    if not report:
        return NotExists(reason=f"candidate fails clauses {report.failed()}")
    return weight


def push_weight(
    n: LinearMap, weight: Filtration, relative: Filtration | NotExists
) -> Filtration | NotExists:
    """The pushed weight filtration N_*W

    (N_*W)_{k-1} = N W_k + M_{k-1} cap W_{k-1}, where M is the relative monodromy
    filtration of (W, N).

    Returns
    -------
    :
        The filtration, or the NotExists of the relative monodromy filtration
    """
    if isinstance(relative, NotExists):
        return relative
    indices = sorted(set(weight.jumps()) | set(relative.jumps()))
    if not indices:
        return weight
    steps = {
        j: subspace_sum(
            image_of(n, weight.at(j + 1)), intersect(relative.at(j), weight.at(j))
        )
        for j in range(indices[0] - 2, indices[-1] + 2)
    }
    return Filtration.from_subspaces(steps, weight.ambient_dim, weight.field)
