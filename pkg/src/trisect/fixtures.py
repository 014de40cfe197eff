"""Bundled example diagrams."""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .diagram import Diagram, parse_diagram

FIXTURES = ("s4", "s1xs3", "cp2", "s2s2", "paper-sec9")
BASES = ("sec9-basis",)


def fixture_text(name: str) -> str:
    if name not in FIXTURES + BASES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES + BASES)}")
    return resources.files("trisect").joinpath("data").joinpath(f"{name}.json").read_text(encoding="utf-8")


def load_fixture(name: str) -> Diagram:
    return parse_diagram(fixture_text(name))


def load_diagram(arg: str) -> Diagram:
    """A diagram from a file path or a bundled fixture name."""
    p = Path(arg)
    if p.is_file():
        return parse_diagram(p.read_text(encoding="utf-8"))
    return load_fixture(arg)


def load_json_arg(arg: str) -> dict:
    p = Path(arg)
    if p.is_file():
        return json.loads(p.read_text(encoding="utf-8"))
    return json.loads(fixture_text(arg))
