# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
"""Mixed Hodge data, purity and mixed Hodge structure checks, twists and morphisms"""

from __future__ import annotations

import logging

from pydantic import field_serializer, field_validator, model_validator

from mhslib.base import CheckReport, Clause, DimensionMismatch, MHSBaseModel
from mhslib.filtrations import Filtration
from mhslib.linalg.maps import LinearMap
from mhslib.linalg.scalars import ScalarField
from mhslib.linalg.subspaces import (
    Subquotient,
    Subspace,
    image,
    image_of,
    intersect,
    kernel,
)

__all__ = [
    "MixedHodgeData",
    "MorphismCheck",
    "TateTwistCounter",
    "check_mhs",
    "check_pure",
    "cokernel_mhs",
    "hodge_decomposition",
    "kernel_mhs",
    "morphism_check",
    "opposed_failures",
    "tate_twist",
]

log = logging.getLogger(__name__)

GAUSSIAN = ScalarField.GAUSSIAN


class TateTwistCounter(MHSBaseModel):
    """Symbolic power j of the twisting factor (2 pi i)^j"""

    j: int = 0

    @model_validator(mode="before")
    @classmethod
    def _from_int(cls, data):
        if isinstance(data, int):
            return {"j": data}
        return data

    def __add__(self, other: int | TateTwistCounter) -> TateTwistCounter:  # noqa: D105
        step = other.j if isinstance(other, TateTwistCounter) else other
        return TateTwistCounter(j=self.j + step)


class MixedHodgeData(MHSBaseModel):
    """Rational space with a rational weight filtration W and Hodge filtration F

    Serialised as ``{"dim", "W", "F", "twist"}``. F is held over Q(i); a rational
    F is promoted on input.
    """

    dim: int
    W: Filtration  # noqa: N815
    F: Filtration  # noqa: N815
    twist: TateTwistCounter = TateTwistCounter()

    @field_validator("W", mode="after")
    @classmethod
    def _rational_weight(cls, value: Filtration) -> Filtration:
        if not value.increasing:
            raise DimensionMismatch("W must be an increasing filtration")
        return value.to_field(ScalarField.RATIONAL)

    @field_validator("F", mode="after")
    @classmethod
    def _gaussian_hodge(cls, value: Filtration) -> Filtration:
        if value.increasing:
            raise DimensionMismatch("F must be a decreasing filtration")
        return value.to_field(GAUSSIAN)

    @model_validator(mode="after")
    def _dimensions(self):
        if self.W.ambient_dim != self.dim or self.F.ambient_dim != self.dim:
            raise DimensionMismatch(
                f"W on {self.W.ambient_dim} and F on {self.F.ambient_dim}, "
                f"expected {self.dim}"
            )
        return self

    @field_serializer("twist")
    def _twist_as_int(self, twist: TateTwistCounter) -> int:
        return twist.j

    @classmethod
    def pure(
        cls, weight: int, hodge: Filtration, twist: int = 0
    ) -> MixedHodgeData:
        """Data with W a single jump at the given weight"""  # noqa: DOC201
        n = hodge.ambient_dim
        return cls(
            dim=n,
            W=Filtration.trivial(n, weight),
            F=hodge,
            twist=TateTwistCounter(j=twist),
        )

    def with_weight(self, weight: Filtration) -> MixedHodgeData:
        """Same F with another weight filtration"""  # noqa: DOC201
        return MixedHodgeData(dim=self.dim, W=weight, F=self.F, twist=self.twist)

    def graded(self, k: int) -> tuple[Subquotient, Filtration]:
        """Gr^W_k with the induced Hodge filtration"""  # noqa: DOC201
        sub, quot = self.W.graded_piece(k)
        sq = Subquotient.of(sub.to_field(GAUSSIAN), quot.to_field(GAUSSIAN))
        return sq, self.F.induced_on(sq)

    def induced_on(self, sq: Subquotient) -> MixedHodgeData:
        """W and F induced on a rational subquotient, in its complement coordinates"""  # noqa: DOC201
        gaussian = Subquotient.of(sq.sub.to_field(GAUSSIAN), sq.quot.to_field(GAUSSIAN))
        return MixedHodgeData(
            dim=sq.dim,
            W=self.W.induced_on(sq),
            F=self.F.induced_on(gaussian),
            twist=self.twist,
        )

    def pure_weight(self) -> int | None:
        """The weight if W has a single jump"""  # noqa: DOC201
        jumps = self.W.jumps()
        return jumps[0] if len(jumps) == 1 else None


def _opposed_window(hodge: Filtration, m: int) -> range:
    jumps = hodge.jumps()
    if not jumps:
        return range(0)
    low = min(jumps[0], m + 1 - jumps[-1]) - 1
    high = max(jumps[-1], m + 1 - jumps[0]) + 1
    return range(low, high + 1)


def opposed_failures(hodge: Filtration, m: int) -> list[int]:
    """Indices p where F^p and conj F^{m-p+1} are not complementary"""  # noqa: DOC201
    conj = hodge.conjugate()
    failures = []
    for p in _opposed_window(hodge, m):
        a, b = hodge.at(p), conj.at(m - p + 1)
        if a.dim + b.dim != hodge.ambient_dim or not intersect(a, b).is_zero():
            failures.append(p)
    return failures


def hodge_decomposition(
    h: MixedHodgeData, m: int | None = None
) -> dict[tuple[int, int], Subspace]:
    """Nonzero pieces H^{pq} = F^p cap conj F^q with p + q = m

    Returns
    -------
    :
        Pieces keyed by (p, q)

    Raises
    ------
    ValueError
        No weight given and W has more than one jump
    """
    m = h.pure_weight() if m is None else m
    if m is None:
        raise ValueError("weight must be given for data that is not pure")
    return _bigrading(h.F, m)


def _bigrading(hodge: Filtration, m: int) -> dict[tuple[int, int], Subspace]:
    conj = hodge.conjugate()
    pieces = {}
    for p in _opposed_window(hodge, m):
        piece = intersect(hodge.at(p), conj.at(m - p))
        if not piece.is_zero():
            pieces[p, m - p] = piece
    return pieces


def _pure_clauses(hodge: Filtration, m: int) -> list[Clause]:
    failures = opposed_failures(hodge, m)
    return [
        Clause(name="opposed", passed=not failures, witness=failures),
        Clause(
            name="hodge_numbers",
            passed=not failures,
            witness={
                f"{p},{q}": s.dim for (p, q), s in _bigrading(hodge, m).items()
            },
        ),
    ]


def check_pure(h: MixedHodgeData, m: int) -> CheckReport:
    """Whether F defines a pure Hodge structure of weight m

    Returns
    -------
    :
        Clauses ``weight`` (W has its only jump at m), ``opposed``
        (F^p + conj F^{m-p+1} is a direct sum decomposition) and
        ``hodge_numbers`` (dimensions of the H^{pq})
    """
    jumps = h.W.jumps()
    single = Clause(name="weight", passed=jumps in ([], [m]), witness=jumps)
    return CheckReport.of([single, *_pure_clauses(h.F, m)])


def check_mhs(h: MixedHodgeData) -> CheckReport:
    """Whether F induces a pure structure of weight k on every Gr^W_k"""  # noqa: DOC201
    clauses = []
    for k in h.W.jumps():
        _, induced = h.graded(k)
        failures = opposed_failures(induced, k)
        clauses.append(
            Clause(
                name=f"Gr{k}",
                passed=not failures,
                witness={"dim": induced.ambient_dim, "failing_p": failures},
            )
        )
    return CheckReport.of(clauses)


def tate_twist(h: MixedHodgeData, j: int) -> MixedHodgeData:
    """H(j): weights move by -2j, Hodge indices by -j"""  # noqa: DOC201
    return MixedHodgeData(
        dim=h.dim, W=h.W.shift(-2 * j), F=h.F.shift(-j), twist=h.twist + j
    )


class MorphismCheck(MHSBaseModel):
    """Filtration compatibility of a linear map between mixed Hodge data"""

    is_morphism: bool
    is_strict_F: bool  # noqa: N815
    is_strict_W: bool  # noqa: N815

    def __bool__(self) -> bool:  # noqa: D105
        return self.is_morphism and self.is_strict_F and self.is_strict_W


def _indices(a: Filtration, b: Filtration) -> list[int]:
    return sorted(set(a.window()) | set(b.window()))


def _compatible(f: LinearMap, a: Filtration, b: Filtration) -> tuple[bool, bool]:
    im = image(f)
    preserves, strict = True, True
    for k in _indices(a, b):
        pushed = image_of(f, a.at(k))
        preserves &= pushed <= b.at(k)
        strict &= pushed == intersect(im, b.at(k))
    return preserves, strict


def morphism_check(f: LinearMap, a: MixedHodgeData, b: MixedHodgeData) -> MorphismCheck:
    """Whether f preserves W and F, and whether it is strict for each

    Returns
    -------
    :
        The three flags

    Raises
    ------
    DimensionMismatch
        f is not a map from a to b
    """
    if f.shape != (b.dim, a.dim):
        raise DimensionMismatch(f"map of shape {f.shape} from {a.dim} to {b.dim}")
    w_ok, w_strict = _compatible(f, a.W, b.W)
    f_ok, f_strict = _compatible(f.to_field(GAUSSIAN), a.F, b.F)
    return MorphismCheck(
        is_morphism=w_ok and f_ok, is_strict_F=f_strict, is_strict_W=w_strict
    )


def kernel_mhs(f: LinearMap, a: MixedHodgeData, b: MixedHodgeData) -> MixedHodgeData:
    """Filtrations induced on ker f, in its echelon coordinates"""  # noqa: DOC201
    if f.shape != (b.dim, a.dim):
        raise DimensionMismatch(f"map of shape {f.shape} from {a.dim} to {b.dim}")
    return a.induced_on(Subquotient.of(kernel(f)))


def cokernel_mhs(f: LinearMap, a: MixedHodgeData, b: MixedHodgeData) -> MixedHodgeData:
    """Filtrations induced on coker f, in complement coordinates"""  # noqa: DOC201
    if f.shape != (b.dim, a.dim):
        raise DimensionMismatch(f"map of shape {f.shape} from {a.dim} to {b.dim}")
    return b.induced_on(Subquotient.of(Subspace.full(b.dim), image(f)))

