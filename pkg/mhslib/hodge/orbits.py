# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
"""
Nilpotent orbits and mixed nilpotent orbits.

The graded forms of a mixed orbit are given in the complement coordinates of
the graded pieces Gr^W_k, the coordinates produced by ``Filtration.graded``.
"""

from __future__ import annotations

import logging
from functools import reduce
from itertools import combinations, product

from pydantic import field_validator, model_validator
from sympy.polys.domains import QQ

from mhslib.base import CheckReport, Clause, MHSBaseModel, NotExists, NotOrbit
from mhslib.filtrations import (
    FilteredSpaceWithNilpotent,
    Filtration,
    monodromy_filtration,
    primitive_decomposition,
    relative_monodromy_filtration,
)
from mhslib.hodge.polarization import PolarizedCandidate, check_polarization
from mhslib.hodge.structures import MixedHodgeData, check_mhs
from mhslib.linalg.maps import LinearMap
from mhslib.linalg.scalars import ScalarField
from mhslib.linalg.spectral import is_nilpotent
from mhslib.linalg.subspaces import Subquotient, induced_on

__all__ = [
    "MixedNilpotentOrbitData",
    "NilpotentOrbitData",
    "SAMPLE_SCALES",
    "is_mixed_nilpotent_orbit",
    "is_nilpotent_orbit",
    "orbit_sum",
]

log = logging.getLogger(__name__)

SAMPLE_SCALES = (QQ(1), QQ(2), QQ(1, 2), QQ(3), QQ(1, 3))


def orbit_sum(ns: tuple[LinearMap, ...], n: int, scales=None) -> LinearMap:
    """Sum of t_i N_i, t_i = 1 by default"""  # noqa: DOC201
    scales = scales or (QQ(1),) * len(ns)
    return reduce(
        lambda acc, pair: acc + pair[1].scale(pair[0]),
        zip(scales, ns, strict=True),
        LinearMap.zeros(n, n),
    )


def _check_nilpotents(ns: tuple[LinearMap, ...], n: int, hodge: Filtration):
    for i, a in enumerate(ns):
        if a.shape != (n, n):
            raise NotOrbit(f"N_{i} has shape {a.shape}, expected {(n, n)}")
        if not is_nilpotent(a):
            raise NotOrbit(f"N_{i} is not nilpotent")
        if not hodge.is_preserved_by(a.to_field(ScalarField.GAUSSIAN), -1):
            raise NotOrbit(f"N_{i} is not horizontal: N F^p is not in F^(p-1)")
    for (i, a), (j, b) in combinations(enumerate(ns), 2):
        if a @ b != b @ a:
            raise NotOrbit(f"N_{i} and N_{j} do not commute")


class NilpotentOrbitData(MHSBaseModel):
    """Pure candidate H of weight m, commuting nilpotents N_i and a form Q"""

    H: MixedHodgeData  # noqa: N815
    m: int
    Ns: tuple[LinearMap, ...] = ()  # noqa: N815
    Qform: LinearMap | None = None  # noqa: N815

    @field_validator("Ns", mode="after")
    @classmethod
    def _rational(cls, value):
        try:
            return tuple(a.to_field(ScalarField.RATIONAL) for a in value)
        except ValueError:
            raise NotOrbit("the N_i must be rational") from None

    @model_validator(mode="after")
    def _axioms(self):
        n = self.H.dim
        if self.H.W.jumps() not in ([], [self.m]):
            raise NotOrbit(f"W must be pure of weight {self.m}")
        _check_nilpotents(self.Ns, n, self.H.F)
        if self.Qform is not None:
            if self.Qform.shape != (n, n):
                raise NotOrbit(f"form of shape {self.Qform.shape} on dimension {n}")
            for i, a in enumerate(self.Ns):
                if not (a.transpose() @ self.Qform + self.Qform @ a).is_zero():
                    raise NotOrbit(f"N_{i} is not an infinitesimal isometry of Q")
        return self

    @property
    def N(self) -> LinearMap:  # noqa: N802
        """Sum of the N_i"""  # noqa: DOC201
        return orbit_sum(self.Ns, self.H.dim)


def _independence(d: NilpotentOrbitData) -> Clause:
    reference = monodromy_filtration(d.N, d.m)
    varying = []
    for scales in product(SAMPLE_SCALES, repeat=len(d.Ns)):
        weight = monodromy_filtration(orbit_sum(d.Ns, d.H.dim, scales), d.m)
        if weight != reference:
            varying.append([str(s) for s in scales])
    samples = len(SAMPLE_SCALES) ** len(d.Ns) if d.Ns else 0
    return Clause(
        name="independence",
        passed=not varying,
        witness={"samples": samples, "differing": varying},
    )


def _primitive_polarization(d: NilpotentOrbitData, weight: Filtration) -> Clause:
    if d.Qform is None:
        log.warning("no polarizing form given, primitive polarization not checked")
        return Clause(name="polarization", passed=True, witness="skipped")
    failing = []
    total = d.N
    for part in primitive_decomposition(total, d.m):
        if part.space.is_zero():
            continue
        sub, quot = weight.graded_piece(d.m + part.k)
        graded = Subquotient.of(
            sub.to_field(ScalarField.GAUSSIAN), quot.to_field(ScalarField.GAUSSIAN)
        )
        primitive = Subquotient.of(part.space.to_field(ScalarField.GAUSSIAN))
        hodge = d.H.F.induced_on(graded).induced_on(primitive)
        vectors = part.graded.lift @ part.space.inclusion()
        form = vectors.transpose() @ d.Qform @ total.power(part.k) @ vectors
        try:
            candidate = PolarizedCandidate(
                hodge=MixedHodgeData.pure(d.m + part.k, hodge),
                Qform=form,
                m=d.m + part.k,
            )
        except ValueError:
            failing.append(part.k)
            continue
        if not check_polarization(candidate):
            failing.append(part.k)
    return Clause(name="polarization", passed=not failing, witness=failing)


def is_nilpotent_orbit(d: NilpotentOrbitData) -> CheckReport:
    """Check the nilpotent orbit criterion

    Clauses: ``independence`` (M(sum t_i N_i)[m] does not depend on the sampled
    positive t_i), ``mhs`` ((H, F, M) is a mixed Hodge structure) and
    ``polarization`` (Q(., N^k .) polarizes every primitive piece of weight m + k).

    Returns
    -------
    :
        The report
    """
    weight = monodromy_filtration(d.N, d.m)
    mhs = check_mhs(d.H.with_weight(weight))
    clauses = [
        _independence(d),
        Clause(name="mhs", passed=mhs.passed, witness=mhs.failed()),
    ]
    if mhs:
        clauses.append(_primitive_polarization(d, weight))
    else:
        clauses.append(Clause(name="polarization", passed=False, witness="not mixed"))
    return CheckReport.of(clauses)


class MixedNilpotentOrbitData(MHSBaseModel):
    """Mixed Hodge data with commuting nilpotents and forms on each Gr^W_k"""

    H: MixedHodgeData  # noqa: N815
    Ns: tuple[LinearMap, ...] = ()  # noqa: N815
    graded_forms: dict[int, LinearMap | None] = {}

    @field_validator("Ns", mode="after")
    @classmethod
    def _rational(cls, value):
        try:
            return tuple(a.to_field(ScalarField.RATIONAL) for a in value)
        except ValueError:
            raise NotOrbit("the N_i must be rational") from None

    @model_validator(mode="after")
    def _axioms(self):
        _check_nilpotents(self.Ns, self.H.dim, self.H.F)
        for i, a in enumerate(self.Ns):
            if not self.H.W.is_preserved_by(a):
                raise NotOrbit(f"N_{i} does not preserve W")
        return self

    @property
    def N(self) -> LinearMap:  # noqa: N802
        """Sum of the N_i"""  # noqa: DOC201
        return orbit_sum(self.Ns, self.H.dim)

    def graded_orbit(self, k: int) -> NilpotentOrbitData:
        """The induced data on Gr^W_k

        Returns
        -------
        :
            The pure candidate of weight k

        Raises
        ------
        pydantic.ValidationError
            The induced data violates the orbit axioms
        """
        graded = self.H.W.graded(k)
        _, hodge = self.H.graded(k)
        return NilpotentOrbitData(
            H=MixedHodgeData.pure(k, hodge, self.H.twist.j),
            m=k,
            Ns=tuple(induced_on(a, graded, graded) for a in self.Ns),
            Qform=self.graded_forms.get(k),
        )

    def relative_filtration(
        self, indices: tuple[int, ...] | None = None
    ) -> Filtration | NotExists:
        """Relative monodromy filtration of (W, sum of the chosen N_i)"""  # noqa: DOC201
        indices = range(len(self.Ns)) if indices is None else indices
        total = orbit_sum(tuple(self.Ns[i] for i in indices), self.H.dim)
        return relative_monodromy_filtration(
            FilteredSpaceWithNilpotent(W=self.H.W, N=total)
        )


def is_mixed_nilpotent_orbit(d: MixedNilpotentOrbitData) -> CheckReport:
    """Check the mixed nilpotent orbit conditions

    Clauses: ``graded_orbits`` (every Gr^W_k with its form is a nilpotent orbit of
    weight k) and ``relative_monodromy`` (for every nonempty subset of the N_i
    the relative monodromy filtration of their sum exists and each N_i in the
    subset lowers it by two).

    Returns
    -------
    :
        The report
    """
    failing = {}
    for k in d.H.W.jumps():
        try:
            report = is_nilpotent_orbit(d.graded_orbit(k))
        except ValueError as exc:
            failing[str(k)] = [str(exc).splitlines()[0]]
            continue
        if not report:
            failing[str(k)] = report.failed()
    missing = []
    for size in range(1, len(d.Ns) + 1):
        for subset in combinations(range(len(d.Ns)), size):
            weight = d.relative_filtration(subset)
            if isinstance(weight, NotExists) or not all(
                weight.is_preserved_by(d.Ns[i], -2) for i in subset
            ):
                missing.append(list(subset))
    return CheckReport.of(
        [
            Clause(name="graded_orbits", passed=not failing, witness=failing),
            Clause(name="relative_monodromy", passed=not missing, witness=missing),
        ]
    )
