"""
Load JSON inputs for the CLI.

--input may name a single JSON document, a JSON file holding a list of documents, or a
directory of JSON files (read in sorted filename order). Batch results are reported in
this order.
"""

import json
import os
from typing import Any, Callable

from loguru import logger

from cone_duality.data.read_instance import parse_instance
from cone_duality.data.read_polyhedron import parse_polyhedron
from cone_duality.data.read_quadruple import parse_quadruple


def load_documents(path: str) -> list[tuple[str, Any]]:
    """
    :param path: file or directory
    :return: (label, parsed JSON) pairs; labels are file names, with [i] for list entries
    """
    if os.path.isdir(path):
        files = sorted(f for f in os.listdir(path) if f.endswith(".json"))
        if not files:
            logger.warning(f"No JSON files found in {path}")
        documents = []
        for name in files:
            documents += load_documents(os.path.join(path, name))
        return documents

    with open(path) as f:
        content = json.load(f)
    if isinstance(content, list):
        return [(f"{path}[{i}]", document) for i, document in enumerate(content)]
    return [(path, content)]


def parse_document(kind: str, document: dict, **kwargs):
    """
    Parse one document of the given kind.

    :param kind: "polyhedron", "quadruple" or "instance"
    """
    parsers: dict[str, Callable] = {
        "polyhedron": parse_polyhedron,
        "quadruple": parse_quadruple,
        "instance": parse_instance,
    }
    if kind not in parsers:
        raise ValueError(f"Unknown input kind {kind}, expected one of {sorted(parsers)}")
    if not isinstance(document, dict):
        raise ValueError(f"Expected a JSON object for a {kind}, got {type(document).__name__}")
    return parsers[kind](document, **kwargs)
