"""Python bindings for the neutro C++ library."""

import json

from ._core import (
    NeutroError,
    check_chain_closed,
    classify,
    classify_threshold,
    commands,
    make_triplet,
    random_triplet,
    string_relation,
)
from ._core import run as _run

__all__ = [
    "NeutroError",
    "check_chain_closed",
    "classify",
    "classify_threshold",
    "commands",
    "make_triplet",
    "random_triplet",
    "run",
    "string_relation",
]


def run(command, document, **options):
    """Run a CLI command on a document given as a dict.

    Returns ``(exit_code, output_dict)``; options mirror the CLI flags
    (seed, bound, horizon, count, threshold).
    """
    code, text = _run(command, json.dumps(document), **options)
    return code, json.loads(text)
