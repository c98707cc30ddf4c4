"""Flat-file formats and bundled examples."""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .errors import GraphError
from .graph import Graph
from .groups import GraphOfGroups

__all__ = [
    "load_json",
    "load_graph",
    "load_generators",
    "load_gog",
    "dumps",
    "example74",
    "bundled",
]


def load_json(path: str | Path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise GraphError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from None


def load_graph(path: str | Path) -> Graph:
    return Graph.from_json(load_json(path))


def load_generators(path: str | Path) -> list[list[int]]:
    """Generators file: a JSON list of image arrays."""
    data = load_json(path)
    if isinstance(data, dict):
        data = data.get("generators")
    if not isinstance(data, list) or not all(
        isinstance(g, list) and all(isinstance(v, int) for v in g) for g in data
    ):
        raise GraphError(f"{path}: generators must be a list of integer image arrays")
    return data


def load_gog(path: str | Path) -> GraphOfGroups:
    return GraphOfGroups.from_json(load_json(path))


def dumps(obj) -> str:
    """Stable JSON text (sorted keys) so repeated runs are byte-identical."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def bundled(name: str) -> dict:
    return json.loads(resources.files("jsjtree.data").joinpath(name).read_text(encoding="utf-8"))


def example74() -> dict:
    """Refinement instance: the chain B -E- A -D- C and the decomposition of A.

    Keys: ``gamma``, ``vertex`` (the vertex to refine) and ``delta``.
    """
    return bundled("example74.json")
