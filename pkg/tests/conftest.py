# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
import pytest

from mhslib.hodge import MixedHodgeData, NilpotentOrbitData
from tests import I, decreasing, eye, increasing, mat


@pytest.fixture
def q_plus_q1():
    """Q + Q(-1): e1 of type (0, 0), e2 of type (1, 1)"""
    return MixedHodgeData(
        dim=2,
        W=increasing(2, {0: [[1, 0]], 2: eye(2)}),
        F=decreasing(2, {0: eye(2), 1: [[0, 1]]}),
    )


@pytest.fixture
def curve():
    """Weight one, F^1 spanned by e1 + i e2"""
    return MixedHodgeData.pure(1, decreasing(2, {0: eye(2), 1: [[1, I]]}))


@pytest.fixture
def degeneration():
    """Limit of a curve: N e2 = e1, F^1 spanned by e2"""
    return NilpotentOrbitData(
        H=MixedHodgeData.pure(1, decreasing(2, {0: eye(2), 1: [[0, 1]]})),
        m=1,
        Ns=(mat([0, 1], [0, 0]),),
        Qform=mat([0, -1], [1, 0]),
    )


def pytest_addoption(parser):
    """
    Adds the options to run the large suites and to rerecord stored reports.
    """
    parser.addoption(
        "--slow",
        action="store_true",
        default=False,
        help="also run the large randomized suites",
    )
    parser.addoption(
        "--record-reports",
        action="store_true",
        default=False,
        help="rewrite the stored machine reports under tests/data/reports",
    )


def pytest_configure(config):
    """
    Deselects slow tests unless asked for.
    """
    if not config.option.slow and not config.getoption("markexpr", None):
        config.option.markexpr = "not slow"
