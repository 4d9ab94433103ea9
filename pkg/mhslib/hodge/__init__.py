# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
"""Hodge structures, polarizations and nilpotent orbits"""

from mhslib.hodge.orbits import (
    MixedNilpotentOrbitData,
    NilpotentOrbitData,
    is_mixed_nilpotent_orbit,
    is_nilpotent_orbit,
    orbit_sum,
)
from mhslib.hodge.polarization import PolarizedCandidate, check_polarization
from mhslib.hodge.structures import (
    MixedHodgeData,
    MorphismCheck,
    TateTwistCounter,
    check_mhs,
    check_pure,
    cokernel_mhs,
    hodge_decomposition,
    kernel_mhs,
    morphism_check,
    tate_twist,
)

__all__ = [
    "MixedHodgeData",
    "MixedNilpotentOrbitData",
    "MorphismCheck",
    "NilpotentOrbitData",
    "PolarizedCandidate",
    "TateTwistCounter",
    "check_mhs",
    "check_polarization",
    "check_pure",
    "cokernel_mhs",
    "hodge_decomposition",
    "is_mixed_nilpotent_orbit",
    "is_nilpotent_orbit",
    "kernel_mhs",
    "morphism_check",
    "orbit_sum",
    "tate_twist",
]
