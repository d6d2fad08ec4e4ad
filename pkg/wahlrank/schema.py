from __future__ import annotations

from typing import Any, Dict, List


# Canonical column schemas for the report streams. Keys are the JSON field
# names and fix the JSON field order; "export" marks the CSV columns and
# "visible" the columns of the text table.
PLANE_COLUMNS: List[Dict[str, Any]] = [
    {"key": "d", "label": "d", "visible": True, "export": True},
    {"key": "k", "label": "k", "visible": True, "export": True},
    {"key": "genus", "label": "genus", "visible": True, "export": True},
    {"key": "domain_dim", "label": "domain_dim", "visible": True, "export": True},
    {"key": "rank", "label": "rank", "visible": True, "export": True},
    {"key": "codomain_dim", "label": "codomain_dim", "visible": True, "export": True},
    {"key": "corank", "label": "corank", "visible": True, "export": True},
    {"key": "predicted_rank", "label": "predicted_rank", "visible": True, "export": True},
    {"key": "predicted_corank", "label": "predicted_corank", "visible": True, "export": True},
    {"key": "in_theorem_range", "label": "in_theorem_range", "visible": True, "export": True},
    {"key": "match", "label": "match", "visible": True, "export": True},
    # JSON only
    {"key": "arithmetic", "label": "arithmetic", "visible": False, "export": False},
]

P1_COLUMNS: List[Dict[str, Any]] = [
    {"key": "a", "label": "a", "visible": True, "export": True},
    {"key": "b", "label": "b", "visible": True, "export": True},
    {"key": "k", "label": "k", "visible": True, "export": True},
    {"key": "domain_dim", "label": "domain_dim", "visible": True, "export": True},
    {"key": "rank", "label": "rank", "visible": True, "export": True},
    {"key": "codomain_dim", "label": "codomain_dim", "visible": True, "export": True},
    {"key": "surjective", "label": "surjective", "visible": True, "export": True},
    {"key": "prediction", "label": "prediction", "visible": True, "export": True},
    {"key": "agree", "label": "agree", "visible": True, "export": True},
]

STREAMS = {"plane": PLANE_COLUMNS, "p1": P1_COLUMNS}


def _stream(stream: str) -> List[Dict[str, Any]]:
    try:
        return STREAMS[stream]
    except KeyError:
        raise ValueError(f"unknown report stream: {stream!r}") from None


def keys(stream: str = "plane") -> List[str]:
    """Canonical keys in schema order."""
    return [c["key"] for c in _stream(stream)]


def labels(stream: str = "plane") -> List[str]:
    """Column labels in schema order."""
    return [c["label"] for c in _stream(stream)]


def export_keys(stream: str = "plane") -> List[str]:
    """CSV columns in schema order."""
    return [c["key"] for c in _stream(stream) if c.get("export", True)]


TABLE_LABELS = {
    "domain_dim": "dom",
    "codomain_dim": "codom",
    "predicted_rank": "pred rank",
    "predicted_corank": "pred corank",
    "in_theorem_range": "in range",
    "surjective": "surj",
    "prediction": "predicted",
}


def table_label(key: str) -> str:
    """Compact label for the text table only."""
    return TABLE_LABELS.get(key, key)


def visible_keys(stream: str = "plane") -> List[str]:
    """Keys shown in the text table."""
    return [c["key"] for c in _stream(stream) if c.get("visible", True)]


def columns(stream: str = "plane") -> List[Dict[str, Any]]:
    """Raw schema (do not mutate in-place)."""
    return [dict(c) for c in _stream(stream)]
