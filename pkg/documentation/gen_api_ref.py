# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>  # noqa: INP001
#
# SPDX-License-Identifier: LGPL-2.1-or-later

"""Write one mkdocstrings page per public mhslib module and the reference nav."""

from pathlib import Path

import mkdocs_gen_files
from mkdocs_gen_files.nav import Nav

ROOT = Path(__file__).parent.parent
PACKAGE = ROOT / "mhslib"
REFERENCE = Path("source", "reference")
SKIPPED = {"__main__", "_version"}

nav = Nav()

for path in sorted(PACKAGE.rglob("*.py")):
    module = path.relative_to(ROOT).with_suffix("")
    parts = tuple(module.parts)
    if parts[-1] in SKIPPED:
        continue
    # subpackages are documented on the page of their __init__
    if parts[-1] == "__init__":
        parts = parts[:-1]
        page = Path(*parts, "index.md")
    else:
        page = module.with_suffix(".md")

    nav[parts] = page.as_posix()
    with mkdocs_gen_files.open(REFERENCE / page, "w") as fd:
        fd.write(f"::: {'.'.join(parts)}\n")
    mkdocs_gen_files.set_edit_path(REFERENCE / page, path.relative_to(ROOT))

with mkdocs_gen_files.open(REFERENCE / "overview.md", "w") as nav_file:
    nav_file.writelines(nav.build_literate_nav())
