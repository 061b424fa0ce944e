"""Curve dataset ingestion and the coefficient disk cache.

The dataset is a JSON-lines file, one curve per line; all fields beyond
label/ainvs/conductor are optional.  Coefficient caches live one file per
curve ("<label>.an", lines "n,a_n") with a trailing checksum line; a
mismatch raises CorruptCache and the caller rebuilds.
"""

from __future__ import annotations

import json
import os
import zlib
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional

from . import lseries
from .curves import CurveData, ValidationError


class ParseError(ValueError):
    pass


class CorruptCache(ValueError):
    pass


def _curve_from_record(rec: dict) -> CurveData:
    known = {"label", "ainvs", "conductor", "root_number", "c0", "lratio",
             "galois3", "no_isogeny", "bsd_quotient", "kn_supported"}
    unknown = set(rec) - known
    if unknown:
        raise ValidationError(f"unknown fields {sorted(unknown)}")
    return CurveData(
        label=rec["label"],
        ainvs=tuple(rec["ainvs"]),
        conductor=rec["conductor"],
        root_number=rec.get("root_number"),
        manin_c0=rec.get("c0", 1),
        lratio_hint=Fraction(rec["lratio"]) if "lratio" in rec else None,
        galois3=rec.get("galois3"),
        no_isogeny=frozenset(rec.get("no_isogeny", [])),
        bsd_quotient=Fraction(rec["bsd_quotient"])
        if "bsd_quotient" in rec else None,
        kn_supported=rec.get("kn_supported", True),
    )


def ingest_dataset(path) -> dict[str, CurveData]:
    """Validated curves from a JSON-lines file, keyed by label."""
    curves: dict[str, CurveData] = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"{path}:{lineno}: {exc}") from None
            try:
                curve = _curve_from_record(rec)
            except (ValidationError, KeyError, TypeError) as exc:
                raise ValidationError(f"{path}:{lineno}: {exc}") from None
            if curve.label in curves:
                raise ValidationError(f"{path}:{lineno}: duplicate label {curve.label}")
            curves[curve.label] = curve
    return curves


def bundled_dataset() -> dict[str, CurveData]:
    with resources.as_file(resources.files("lcongr.data") / "curves.jsonl") as p:
        return ingest_dataset(p)


# -- coefficient cache ---------------------------------------------------------

def cache_dir() -> Optional[Path]:
    d = os.environ.get("LCONGR_CACHE_DIR")
    return Path(d) if d else None


def _cache_path(root: Path, label: str) -> Path:
    return root / f"{label}.an"


def write_cache(root: Path, curve: CurveData, nmax: int):
    root.mkdir(parents=True, exist_ok=True)
    values = lseries.coefficients(curve, nmax)
    body = "".join(f"{n},{a}\n" for n, a in enumerate(values, start=1))
    crc = zlib.crc32(body.encode())
    _cache_path(root, curve.label).write_text(body + f"#,{crc}\n")


def read_cache(root: Path, label: str) -> list[int]:
    path = _cache_path(root, label)
    if not path.exists():
        raise FileNotFoundError(path)
    text = path.read_text()
    lines = text.splitlines()
    if not lines or not lines[-1].startswith("#,"):
        raise CorruptCache(f"{path}: missing checksum line")
    body = "".join(l + "\n" for l in lines[:-1])
    if zlib.crc32(body.encode()) != int(lines[-1][2:]):
        raise CorruptCache(f"{path}: checksum mismatch")
    values = []
    for i, line in enumerate(lines[:-1], start=1):
        n_s, a_s = line.split(",")
        if int(n_s) != i:
            raise CorruptCache(f"{path}: line {i} indexes n = {n_s}")
        values.append(int(a_s))
    return values


def warm(root: Path, curve: CurveData, nmax: int) -> list[int]:
    """Load the cache if valid, else (re)build it; preloads the memory cache."""
    try:
        values = read_cache(root, curve.label)
        if len(values) < nmax:
            raise FileNotFoundError  # too short: extend by rebuilding
    except (FileNotFoundError, CorruptCache):
        write_cache(root, curve, nmax)
        values = read_cache(root, curve.label)
    lseries.preload_coefficients(curve, values)
    return values
