"""Bundled algorithm specs shipped with the package."""

from __future__ import annotations

import json
from importlib import resources

from .algorithm import SlowAlgorithm, validate

BUNDLED = (
    "ceiling", "gauss", "farey", "flip",
    "pythagorean", "index4", "quad_fail", "quad_hold", "eight_cell",
)


def bundled_spec(name: str) -> dict:
    if name not in BUNDLED:
        raise KeyError(f"no bundled spec {name!r}; choose from {', '.join(BUNDLED)}")
    text = resources.files("serretlab.data").joinpath(f"{name}.json").read_text()
    return json.loads(text)


def load_bundled(name: str) -> SlowAlgorithm:
    return validate(bundled_spec(name))
