"""Shared exception types."""

from __future__ import annotations


class InputError(ValueError):
    """Invalid user-supplied data: malformed files, bad parameters, singular
    metrics, out-of-range indices.  CLI maps this to exit code 2."""
