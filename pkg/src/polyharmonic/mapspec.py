"""JSON map documents.

Two shapes are accepted::

    {"p": 2, "layers": [{"h": [[1, 0]], "g": []},
                        {"h": [], "g": [[0, 0], [-0.1666, 0]]}]}

    {"builtin": "F3", "C": 1.0, "J": 512}

Coefficient lists start at the power z^1 and are zero-padded to a common order.
"""
from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

from . import catalog
from .core import PolyharmonicMap
from .errors import MapSpecError


def _pair(value: Any, where: str) -> complex:
    if (
        not isinstance(value, list)
        or len(value) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value)
    ):
        raise MapSpecError(f"{where}: expected a [re, im] pair of numbers, got {value!r}")
    re, im = float(value[0]), float(value[1])
    if not (math.isfinite(re) and math.isfinite(im)):
        raise MapSpecError(f"{where}: coefficients must be finite")
    return complex(re, im)


def _coeff_list(value: Any, where: str) -> list[complex]:
    if not isinstance(value, list):
        raise MapSpecError(f"{where}: expected an array of [re, im] pairs")
    return [_pair(v, f"{where}[{i}]") for i, v in enumerate(value)]


def from_document(doc: Any, default_order: int = catalog.DEFAULT_ORDER) -> PolyharmonicMap:
    """Build a map from an already-decoded document."""
    if not isinstance(doc, dict):
        raise MapSpecError("top level: expected an object")
    if "builtin" in doc:
        unknown = set(doc) - {"builtin", "C", "J"}
        if unknown:
            raise MapSpecError(f"top level: unexpected keys {sorted(unknown)}")
        J = doc.get("J", default_order)
        C = doc.get("C", 1.0)
        if not isinstance(J, int) or isinstance(J, bool):
            raise MapSpecError(f"J: expected an integer, got {J!r}")
        if not isinstance(C, (int, float)) or isinstance(C, bool):
            raise MapSpecError(f"C: expected a number, got {C!r}")
        try:
            return catalog.make(doc["builtin"], J=J, C=float(C))
        except ValueError as exc:
            raise MapSpecError(f"builtin: {exc}") from None
    unknown = set(doc) - {"p", "layers"}
    if unknown:
        raise MapSpecError(f"top level: unexpected keys {sorted(unknown)}")
    if "layers" not in doc:
        raise MapSpecError("top level: need either 'builtin' or 'layers'")
    layers = doc["layers"]
    if not isinstance(layers, list) or not layers:
        raise MapSpecError("layers: expected a non-empty array")
    p = doc.get("p", len(layers))
    if not isinstance(p, int) or isinstance(p, bool) or p < 1:
        raise MapSpecError(f"p: expected a positive integer, got {p!r}")
    if p != len(layers):
        raise MapSpecError(f"p: declares {p} layers but {len(layers)} are given")
    parsed = []
    for k, layer in enumerate(layers):
        where = f"layers[{k}]"
        if not isinstance(layer, dict) or set(layer) - {"h", "g"}:
            raise MapSpecError(f"{where}: expected an object with keys 'h' and 'g'")
        h = _coeff_list(layer.get("h", []), f"{where}.h")
        g = _coeff_list(layer.get("g", []), f"{where}.g")
        parsed.append((h, g))
    try:
        return PolyharmonicMap.from_layers(parsed, label="map")
    except ValueError as exc:
        raise MapSpecError(f"layers: {exc}") from None


def loads(text: str, default_order: int = catalog.DEFAULT_ORDER) -> PolyharmonicMap:
    """Parse a JSON document; syntax errors carry line and column."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MapSpecError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return from_document(doc, default_order)


def load(path: str | Path, default_order: int = catalog.DEFAULT_ORDER) -> PolyharmonicMap:
    return loads(Path(path).read_text(encoding="utf-8"), default_order)


def to_document(F: PolyharmonicMap) -> dict:
    """Explicit-layer document for ``F`` (tail information is not serialized)."""
    return {
        "p": F.p,
        "layers": [
            {
                "h": [[float(c.real), float(c.imag)] for c in a],
                "g": [[float(c.real), float(c.imag)] for c in b],
            }
            for a, b in F.layers
        ],
    }
