"""Deterministic report serialization.

Reports are emitted with fixed field order (insertion order of the dicts
built here) and floats formatted to 12 significant digits, so identical
inputs produce byte-identical JSON.
"""

from __future__ import annotations

import json
from dataclasses import asdict, is_dataclass
from fractions import Fraction

from .cyclotomic import CycNumber
from .matgrp import DensityProfile


def _convert(value):
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, float):
        return float(format(value, ".12g"))
    if isinstance(value, complex):
        return {"re": float(format(value.real, ".12g")),
                "im": float(format(value.imag, ".12g"))}
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, CycNumber):
        return value.as_text()
    if isinstance(value, DensityProfile):
        return [str(value.values[i]) for i in range(value.order)]
    if is_dataclass(value):
        return {k: _convert(v) for k, v in asdict(value).items()}
    if isinstance(value, dict):
        return {str(k): _convert(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_convert(v) for v in value]
    return value


def to_json(value, indent=None) -> str:
    return json.dumps(_convert(value), indent=indent)
