"""JSON-lines datasets and the versioned index container.

Index file layout::

    FRECHET-RANGE-INDEX\n
    {"format_version": 1, "engine": ..., "rho": ..., ...}\n
    <pickle payload>

Only load index files you produced yourself: the payload is a pickle.
"""

import json
import pickle
from typing import List

from .engine import FrechetIndex, PointStoreIndex
from .errors import IndexFormatError, InvalidSeries
from .series import TimeSeries

MAGIC = b"FRECHET-RANGE-INDEX\n"
FORMAT_VERSION = 1


def parse_record(line: str, lineno: int = 0) -> TimeSeries:
    try:
        rec = json.loads(line)
    except json.JSONDecodeError as e:
        raise InvalidSeries(f"line {lineno}: not valid JSON ({e.msg})") from None
    if not isinstance(rec, dict) or "id" not in rec or "values" not in rec:
        raise InvalidSeries(f"line {lineno}: expected an object with 'id' and 'values'")
    vals = rec["values"]
    if not isinstance(vals, list) or not all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in vals
    ):
        raise InvalidSeries(f"line {lineno}: 'values' must be a list of numbers")
    return TimeSeries(str(rec["id"]), vals)


def read_dataset(path) -> List[TimeSeries]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if line.strip():
                out.append(parse_record(line, lineno))
    return out


def record_line(ts: TimeSeries) -> str:
    # repr of a float round-trips exactly; json uses it
    return json.dumps({"id": ts.id, "values": list(ts.values)})


def write_dataset(path, series) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for ts in series:
            fh.write(record_line(ts) + "\n")


def header_of(index) -> dict:
    engine = "stab" if isinstance(index, FrechetIndex) else "pointstore"
    return {
        "format_version": FORMAT_VERSION,
        "engine": engine,
        "rho": index.rho,
        "t_q": index.t_q,
        "t_s": index.t_s,
        "backend": index.backend,
        "n": len(index),
    }


def save_index(index, path) -> None:
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(json.dumps(header_of(index), sort_keys=True).encode() + b"\n")
        pickle.dump(index, fh, protocol=pickle.HIGHEST_PROTOCOL)


def load_index(path):
    with open(path, "rb") as fh:
        if fh.readline() != MAGIC:
            raise IndexFormatError(f"{path}: not an index file")
        try:
            header = json.loads(fh.readline())
        except json.JSONDecodeError:
            raise IndexFormatError(f"{path}: corrupt header") from None
        if header.get("format_version") != FORMAT_VERSION:
            raise IndexFormatError(
                f"{path}: format version {header.get('format_version')} != {FORMAT_VERSION}"
            )
        index = pickle.load(fh)
    if not isinstance(index, (FrechetIndex, PointStoreIndex)) or header_of(index) != header:
        raise IndexFormatError(f"{path}: payload does not match header")
    return index
