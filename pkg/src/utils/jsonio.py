"""
Canonical JSON helpers.

- Canonical JSON via orjson with sorted keys, so reruns are byte-identical
- Floats use the shortest round-trip repr (at most 17 significant digits)
- numpy scalars and arrays are serialized natively
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

import orjson

_OPTIONS = orjson.OPT_SORT_KEYS | orjson.OPT_SERIALIZE_NUMPY | orjson.OPT_INDENT_2


def _default(obj: Any) -> Any:
    if hasattr(obj, "model_dump"):
        return obj.model_dump(mode="json")
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if hasattr(obj, "item"):
        return obj.item()
    raise TypeError(f"Type is not JSON serializable: {type(obj).__name__}")


def canonical_json(obj: Any) -> bytes:
    """
    Return canonical JSON bytes with sorted keys.
    """
    return orjson.dumps(obj, default=_default, option=_OPTIONS) + b"\n"


def write_json(path: Path | str, obj: Any) -> None:
    """
    Write canonical JSON to a file, creating parent directories.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(canonical_json(obj))


def read_json(path: Path | str) -> Any:
    return orjson.loads(Path(path).read_bytes())
