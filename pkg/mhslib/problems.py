# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
"""
Declarative problem files and their verification reports.

A problem file is a JSON object ``{"version": "1", "kind": ..., "payload": ...}``.
The payload of each kind is parsed into the library type it describes and
handed to the matching checker.
"""

from __future__ import annotations

import logging
import time
from collections.abc import Callable
from enum import Enum
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, field_validator, model_validator

from mhslib.base import (
    CheckReport,
    Clause,
    MHSBaseModel,
    NotExists,
    UnsupportedKind,
    parses_raw,
)
from mhslib.filtrations import (
    Filtration,
    FilteredSpaceWithNilpotent,
    is_monodromy_filtration,
    is_relative_monodromy_filtration,
    monodromy_filtration,
    relative_monodromy_filtration,
)
from mhslib.hodge import (
    MixedHodgeData,
    MixedNilpotentOrbitData,
    NilpotentOrbitData,
    PolarizedCandidate,
    check_mhs,
    check_polarization,
    check_pure,
    is_mixed_nilpotent_orbit,
    is_nilpotent_orbit,
)
from mhslib.linalg.maps import LinearMap
from mhslib.linalg.scalars import ScalarField, format_scalar
from mhslib.quivers import (
    PerverseQuiver1D,
    PerverseQuiver2D,
    check_push_symmetry,
    check_tilde_w_purity,
    is_ic_sum,
    tilde_w_1d,
    tilde_w_2d,
    validate,
)
from mhslib.specseq import DoubleComplex, FilteredComplex, check_spectral_sequence
from mhslib.tools.serialisation import (
    canonical_json,
    read_json_object,
    sha256_canonical_json,
)
from mhslib.vfilt import (
    VModel,
    can_map,
    check_hodge_sectors,
    gr_v,
    jump_set,
    to_quiver,
    var_adjust,
    var_map,
)

__all__ = [
    "MHSCheckPayload",
    "MonodromyPayload",
    "ProblemFile",
    "ProblemKind",
    "QuiverPayload",
    "Report",
    "SpecSeqPayload",
    "VFiltPayload",
    "Verdict",
    "run",
]

log = logging.getLogger(__name__)

FORMAT_VERSION = "1"


class ProblemKind(str, Enum):
    """Supported problem kinds"""

    MHS_CHECK = "mhs-check"
    POLARIZATION = "polarization"
    MONODROMY_FILTRATION = "monodromy-filtration"
    RELATIVE_MONODROMY = "relative-monodromy"
    NILPOTENT_ORBIT = "nilpotent-orbit"
    MIXED_ORBIT = "mixed-orbit"
    QUIVER = "quiver"
    TILDE_W = "tilde-w"
    VFILT = "vfilt"
    SPECSEQ = "specseq"


# payloads without a library type of their own


class MHSCheckPayload(MHSBaseModel):
    """Mixed Hodge data, checked as pure of ``weight`` when one is given"""

    hodge: MixedHodgeData
    weight: int | None = None


class MonodromyPayload(MHSBaseModel):
    """A nilpotent N, a centre m and optionally the expected M(N)[m]"""

    N: LinearMap  # noqa: N815
    m: int
    expected: Filtration | None = None


class QuiverPayload(MHSBaseModel):
    """A 1D or 2D perverse quiver with an optional expected IC verdict"""

    quiver: PerverseQuiver1D | PerverseQuiver2D
    ic_sum: bool | None = None


class VFiltPayload(VModel):
    """A V-filtration model with optional Hodge filtrations keyed by alpha"""

    hodge: dict[str, Filtration] = {}

    @model_validator(mode="before")
    @classmethod
    @parses_raw
    def _decreasing(cls, data):
        if isinstance(data, dict) and data.get("hodge"):
            data = dict(data)
            data["hodge"] = {
                alpha: {"direction": "decreasing", **f} if isinstance(f, dict) else f
                for alpha, f in data["hodge"].items()
            }
        return data


class SpecSeqPayload(MHSBaseModel):
    """A filtered complex, or a double complex with the filtration to put on it"""

    complex: FilteredComplex | None = None
    double: DoubleComplex | None = None
    filtration: Literal["column", "leray"] = "leray"

    @model_validator(mode="after")
    def _one_source(self):
        if (self.complex is None) == (self.double is None):
            raise ValueError("give exactly one of 'complex' and 'double'")
        return self

    def filtered(self) -> FilteredComplex:
        """The filtered complex to examine"""  # noqa: DOC201
        if self.complex is not None:
            return self.complex
        if self.filtration == "column":
            return self.double.column_filtration()
        return self.double.leray_filtration()


# solvers


def _mhs_check(p: MHSCheckPayload) -> CheckReport:
    if p.weight is None:
        return check_mhs(p.hodge)
    return check_pure(p.hodge, p.weight)


def _monodromy(p: MonodromyPayload) -> CheckReport:
    weight = monodromy_filtration(p.N, p.m)
    report = is_monodromy_filtration(p.N, p.m, weight)
    if p.expected is None:
        return report
    matches = weight == p.expected.to_field(weight.field)
    return report.merge(
        CheckReport.of(
            [Clause(name="expected", passed=matches, witness=weight.graded_dims())]
        )
    )


def _relative(p: FilteredSpaceWithNilpotent) -> CheckReport | NotExists:
    weight = relative_monodromy_filtration(p)
    if isinstance(weight, NotExists):
        return weight
    return is_relative_monodromy_filtration(p, weight)


def _quiver(p: QuiverPayload) -> CheckReport:
    report = validate(p.quiver)
    if p.ic_sum is None:
        return report
    ic = is_ic_sum(p.quiver)
    return report.merge(
        CheckReport.of(
            [
                Clause(
                    name="ic_sum",
                    passed=bool(ic) is p.ic_sum,
                    witness={c.name: c.witness for c in ic},
                )
            ]
        )
    )


def _tilde_w(p: MixedNilpotentOrbitData) -> CheckReport | NotExists:
    if len(p.Ns) == 2:  # noqa: PLR2004
        fq = tilde_w_2d(p)
        if isinstance(fq, NotExists):
            return fq
        return check_tilde_w_purity(fq).merge(check_push_symmetry(p))
    fq = tilde_w_1d(p)
    if isinstance(fq, NotExists):
        return fq
    return check_tilde_w_purity(fq)


def _vfilt(p: VFiltPayload) -> CheckReport:
    quiver = to_quiver(p)
    failing = []
    for alpha, _ in jump_set(p):
        # d/dt t - t d/dt on Gr_alpha
        bracket = can_map(p, alpha - 1) - can_map(p, alpha)
        if bracket != LinearMap.identity(gr_v(p, alpha).dim):
            failing.append(format_scalar(alpha, ScalarField.RATIONAL))
    # the unipotent sector is the first block of the quiver
    block = range(gr_v(p, 0).dim)
    recovered = var_adjust(can_map(p, 0), quiver.v.submatrix(block, block))
    clauses = [
        Clause(name="commutator", passed=not failing, witness=failing),
        Clause(
            name="var",
            passed=recovered == var_map(p, 0),
            witness=recovered.model_dump()["entries"],
        ),
    ]
    report = validate(quiver).merge(CheckReport.of(clauses))
    if p.hodge:
        report = report.merge(check_hodge_sectors(p, p.hodge))
    return report


def _specseq(p: SpecSeqPayload) -> CheckReport:
    return check_spectral_sequence(p.filtered())


_PROBLEMS: dict[ProblemKind, tuple[type[BaseModel], Callable]] = {
    ProblemKind.MHS_CHECK: (MHSCheckPayload, _mhs_check),
    ProblemKind.POLARIZATION: (PolarizedCandidate, check_polarization),
    ProblemKind.MONODROMY_FILTRATION: (MonodromyPayload, _monodromy),
    ProblemKind.RELATIVE_MONODROMY: (FilteredSpaceWithNilpotent, _relative),
    ProblemKind.NILPOTENT_ORBIT: (NilpotentOrbitData, is_nilpotent_orbit),
    ProblemKind.MIXED_ORBIT: (MixedNilpotentOrbitData, is_mixed_nilpotent_orbit),
    ProblemKind.QUIVER: (QuiverPayload, _quiver),
    ProblemKind.TILDE_W: (MixedNilpotentOrbitData, _tilde_w),
    ProblemKind.VFILT: (VFiltPayload, _vfilt),
    ProblemKind.SPECSEQ: (SpecSeqPayload, _specseq),
}


class ProblemFile(MHSBaseModel):
    """Versioned, kind-tagged problem"""

    version: Literal["1"] = FORMAT_VERSION
    kind: ProblemKind
    payload: dict[str, Any]

    @field_validator("kind", mode="before")
    @classmethod
    def _supported(cls, value):
        if isinstance(value, str) and value not in {k.value for k in ProblemKind}:
            raise UnsupportedKind(f"unsupported problem kind '{value}'")
        return value

    @classmethod
    def read(cls, path: Path | str) -> ProblemFile:
        """Read and schema-validate a problem file

        Returns
        -------
        :
            The problem

        Raises
        ------
        ProblemFileError
            The file is not a JSON object
        pydantic.ValidationError
            The file does not match the schema
        """
        return cls.model_validate(read_json_object(path))

    def parsed(self) -> BaseModel:
        """The payload as its library type

        Returns
        -------
        :
            The parsed payload

        Raises
        ------
        pydantic.ValidationError
            The payload is malformed or violates an invariant of its type
        """
        model, _ = _PROBLEMS[self.kind]
        return model.model_validate(self.payload)

    def canonical(self) -> dict[str, Any]:
        """The problem with its payload re-serialised from the parsed form"""  # noqa: DOC201
        return {
            "version": self.version,
            "kind": self.kind.value,
            "payload": self.parsed().model_dump(mode="json"),
        }

    def to_json(self) -> str:
        """Indented canonical JSON"""  # noqa: DOC201
        return canonical_json(self.canonical(), indent=2) + "\n"

    def digest(self) -> str:
        """sha256 of the canonical JSON"""  # noqa: DOC201
        return sha256_canonical_json(self.canonical())


class Verdict(str, Enum):
    """Overall outcome of a check"""

    PASS = "pass"  # noqa: S105
    FAIL = "fail"
    NOT_EXISTS = "not-exists"


class Report(MHSBaseModel):
    """Verdict, clauses and provenance of a checked problem"""

    kind: ProblemKind
    verdict: Verdict
    clauses: tuple[Clause, ...] = ()
    reason: str | None = None
    digest: str
    timing: float | None = None

    @property
    def exit_code(self) -> int:
        """0 on pass, 1 otherwise"""  # noqa: DOC201
        return 0 if self.verdict is Verdict.PASS else 1

    @classmethod
    def from_result(
        cls,
        kind: ProblemKind,
        result: CheckReport | NotExists,
        digest: str,
        timing: float | None = None,
    ) -> Report:
        """Wrap a checker result"""  # noqa: DOC201
        if isinstance(result, NotExists):
            return cls(
                kind=kind,
                verdict=Verdict.NOT_EXISTS,
                reason=result.reason,
                digest=digest,
                timing=timing,
            )
        return cls(
            kind=kind,
            verdict=Verdict.PASS if result.passed else Verdict.FAIL,
            clauses=result.clauses,
            digest=digest,
            timing=timing,
        )

    def to_machine(self) -> str:
        """Indented canonical JSON"""  # noqa: DOC201
        return canonical_json(self, indent=2) + "\n"

    def to_text(self) -> str:
        """Human readable rendering"""  # noqa: DOC201
        lines = [
            f"kind: {self.kind.value}",
            f"verdict: {self.verdict.value}",
            f"digest: {self.digest}",
        ]
        if self.reason is not None:
            lines.append(f"reason: {self.reason}")
        for clause in self.clauses:
            mark = "pass" if clause.passed else "FAIL"
            lines.append(f"  [{mark}] {clause.name}: {canonical_json(clause.witness)}")
        if self.timing is not None:
            lines.append(f"timing: {self.timing:.6f} s")
        return "\n".join(lines) + "\n"


def run(problem: ProblemFile, *, include_timing: bool = True) -> Report:
    """Parse the payload, dispatch to its checker and assemble the report

    Returns
    -------
    :
        The report

    Raises
    ------
    pydantic.ValidationError
        The payload is malformed
    ValueError
        The checker rejected its input
    """
    _, solver = _PROBLEMS[problem.kind]
    parsed = problem.parsed()
    digest = problem.digest()
    start = time.perf_counter()
    result = solver(parsed)
    elapsed = time.perf_counter() - start
    report = Report.from_result(
        problem.kind, result, digest, elapsed if include_timing else None
    )
    log.info(f"{problem.kind.value}: {report.verdict.value}")
    return report
