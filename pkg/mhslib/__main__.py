# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
"""``python -m mhslib``"""

from mhslib.cli import main

if __name__ == "__main__":
    raise SystemExit(main())
