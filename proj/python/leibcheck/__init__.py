"""Exact verification of derived-bracket Leibniz transfer constructions.

Thin wrapper over the C++ core: load description files, run the verification
suites, and inspect the computed transfer tables.
"""

import json

from ._core import (
    DescriptionError,
    ValidationError,
    b_tables_report,
    insertion_sign,
    koszul_sign,
    respectful_blocks,
    respectful_count,
    run_report,
    session_report,
    suite_names,
)

__all__ = [
    "DescriptionError",
    "ValidationError",
    "b_tables",
    "insertion_sign",
    "koszul_sign",
    "respectful_blocks",
    "respectful_count",
    "run",
    "session",
    "suite_names",
]


def run(path, suites=(), max_arity=5, seed=1, truncation=None, validate=True):
    """Run verification suites on a description file.

    Returns the report as a dict; report["exit_code"] is 0 exactly when every
    selected check passed.
    """
    report, exit_code = run_report(
        str(path), list(suites), max_arity, seed, truncation, validate
    )
    parsed = json.loads(report)
    assert parsed["exit_code"] == exit_code
    return parsed


def b_tables(path, max_arity=4, truncation=None):
    """Transfer Taylor tables of a description file, as nested dicts."""
    return json.loads(b_tables_report(str(path), max_arity, truncation))


def session(path, validate=True):
    """Load and reserialize a description file (validation included)."""
    return json.loads(session_report(str(path), validate))
