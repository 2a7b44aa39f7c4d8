"""Enumeration bounds. ``RIBBONKIT_LIMIT`` overrides the quasi-tree bound."""

from __future__ import annotations

import os

from .errors import SizeLimitExceeded

DEFAULT_ENUMERATION_LIMIT = 20


def enumeration_limit() -> int:
    raw = os.environ.get("RIBBONKIT_LIMIT")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_ENUMERATION_LIMIT


def check_size(n: int, limit: int | None, what: str) -> None:
    bound = enumeration_limit() if limit is None else limit
    if n > bound:
        raise SizeLimitExceeded(f"{what}: size {n} exceeds limit {bound}")
