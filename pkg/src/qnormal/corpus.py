"""Bundled triangulations and their recorded expected results.

Each ``<name>.tri`` in ``qnormal/data`` has a sidecar
``<name>.expected.json`` written by ``scripts/make_sidecars.py``.
"""

from __future__ import annotations

import json
from importlib import resources

from .triangulation import Triangulation, parse_triangulation

_DATA = resources.files("qnormal") / "data"


def names() -> list[str]:
    return sorted(p.name[:-4] for p in _DATA.iterdir() if p.name.endswith(".tri"))


def path(name: str):
    p = _DATA / f"{name}.tri"
    if not p.is_file():
        raise KeyError(f"no bundled triangulation {name!r}; have {', '.join(names())}")
    return p


def load(name: str) -> Triangulation:
    return parse_triangulation(path(name).read_text())


def expected(name: str) -> dict:
    return json.loads((_DATA / f"{name}.expected.json").read_text())
