"""Access to the data tables shipped with the package.

The DP1_DATA environment variable, when set, points at a directory whose
files override the packaged ones (same filenames).  Used by the CLI and by
tests that exercise deliberately corrupted tables.
"""

from __future__ import annotations

import json
import os
from importlib import resources


def text(name: str) -> str:
    override = os.environ.get("DP1_DATA")
    if override:
        path = os.path.join(override, name)
        if os.path.exists(path):
            with open(path, "r", encoding="utf-8") as fh:
                return fh.read()
    return resources.files("dp1.data").joinpath(name).read_text(encoding="utf-8")


def load_json(name: str):
    return json.loads(text(name))
