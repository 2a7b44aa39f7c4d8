"""Edge-label ordering shared by every module."""

from __future__ import annotations

from typing import Iterable


def label_key(label: str) -> tuple:
    """Sort key placing numeric labels first, in numeric order."""
    if label.isdigit():
        return (0, int(label), label)
    return (1, 0, label)


def sort_labels(labels: Iterable[str]) -> list[str]:
    return sorted(labels, key=label_key)


def fmt_set(labels: Iterable[str]) -> str:
    """Compact display: ``{}`` for the empty set, else labels joined by spaces."""
    items = sort_labels(labels)
    return " ".join(items) if items else "{}"
