# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
"""Perverse quivers, Hodge quivers and their weight filtrations"""

from mhslib.quivers.hodge import (
    HodgeQuiver1D,
    HodgeQuiver2D,
    HodgeVertex,
    check_pure_hodge_quiver,
    hodge_quiver_from_orbit,
)
from mhslib.quivers.perverse import (
    PerverseQuiver1D,
    PerverseQuiver2D,
    Sector,
    cohomology_1d,
    decompose_1d,
    direct_sum,
    from_local_system,
    is_ic_sum,
    monodromy,
    restrict_to_sector,
    validate,
)
from mhslib.quivers.weights import (
    FilteredHodgeQuiver1D,
    FilteredHodgeQuiver2D,
    FilteredVertex,
    check_push_symmetry,
    check_tilde_w_purity,
    tilde_w_1d,
    tilde_w_2d,
)

__all__ = [
    "FilteredHodgeQuiver1D",
    "FilteredHodgeQuiver2D",
    "FilteredVertex",
    "HodgeQuiver1D",
    "HodgeQuiver2D",
    "HodgeVertex",
    "PerverseQuiver1D",
    "PerverseQuiver2D",
    "Sector",
    "check_pure_hodge_quiver",
    "check_push_symmetry",
    "check_tilde_w_purity",
    "cohomology_1d",
    "decompose_1d",
    "direct_sum",
    "from_local_system",
    "hodge_quiver_from_orbit",
    "is_ic_sum",
    "monodromy",
    "restrict_to_sector",
    "tilde_w_1d",
    "tilde_w_2d",
    "validate",
]
