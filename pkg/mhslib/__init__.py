# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later

"""
The mhslib package provides exact linear algebra for mixed Hodge theory.

It covers monodromy weight filtrations, Hodge structure and polarization
checks, quiver models of perverse sheaves on the disk and bidisk with their
weight filtrations, a graded model of the V-filtration and spectral sequences
of filtered complexes, all over the rationals and Gaussian rationals.
"""

import logging

from mhslib.base import CheckReport, Clause, NotExists
from mhslib.filtrations import (
    Filtration,
    monodromy_filtration,
    relative_monodromy_filtration,
)
from mhslib.hodge import MixedHodgeData, check_mhs, check_polarization
from mhslib.linalg import LinearMap, ScalarField, Subspace
from mhslib.problems import ProblemFile, Report, run

__all__ = [
    "CheckReport",
    "Clause",
    "Filtration",
    "LinearMap",
    "MixedHodgeData",
    "NotExists",
    "ProblemFile",
    "Report",
    "ScalarField",
    "Subspace",
    "check_mhs",
    "check_polarization",
    "monodromy_filtration",
    "relative_monodromy_filtration",
    "run",
]

log = logging.getLogger(__name__)
log.setLevel(logging.INFO)
