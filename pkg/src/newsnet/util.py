"""Small shared helpers: deterministic seed derivation, medians, CSV writing."""

from __future__ import annotations

import csv
import hashlib
from pathlib import Path


def derive_seed(*parts) -> int:
    """Stable 64-bit seed from a tuple of descriptors (platform independent)."""
    payload = "\x1f".join(str(p) for p in parts)
    digest = hashlib.sha256(payload.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def median(values) -> float:
    """Midpoint of the two central order statistics; 0.0 for an empty sequence."""
    vs = sorted(values)
    n = len(vs)
    if n == 0:
        return 0.0
    mid = n // 2
    if n % 2 == 1:
        return float(vs[mid])
    return (float(vs[mid - 1]) + float(vs[mid])) / 2.0


def safe_ratio(num, den) -> float:
    return float(num) / float(den) if den else 0.0


def _cell(value) -> str:
    # repr() of a Python float is the shortest round-trip form, so re-runs
    # produce byte-identical CSV output.
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    if hasattr(value, "item"):  # numpy scalar
        return _cell(value.item())
    return str(value)


def write_csv(path, header, rows) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(list(header))
        for row in rows:
            writer.writerow([_cell(v) for v in row])
