"""Deterministic report and data serialization.

JSON output is canonical: keys sorted, floats printed with 17 significant
digits, no locale or hash-order dependence, so identical inputs give
byte-identical reports.
"""
from __future__ import annotations

import json
import math

import numpy as np

from .sequences import LogWeightSequence


def _float_str(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    s = format(x, ".17g")
    # make sure the token parses as a JSON number
    if "e" not in s and "." not in s and "n" not in s:
        s += ".0"
    return s


def dumps_canonical(obj, indent: int = 0) -> str:
    pad = "  " * indent
    pad1 = "  " * (indent + 1)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _float_str(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=True)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = sorted(obj.items(), key=lambda kv: str(kv[0]))
        body = ",\n".join(
            f"{pad1}{json.dumps(str(k))}: {dumps_canonical(v, indent + 1)}"
            for k, v in items
        )
        return "{\n" + body + "\n" + pad + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        body = ",\n".join(
            f"{pad1}{dumps_canonical(v, indent + 1)}" for v in seq
        )
        return "[\n" + body + "\n" + pad + "]"
    if hasattr(obj, "to_json"):
        return dumps_canonical(obj.to_json(), indent)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def write_report(path: str | None, report: dict) -> str:
    text = dumps_canonical(report) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    return text


# -- CSV ----------------------------------------------------------------

def write_columns_csv(path: str, header: tuple[str, ...], *cols) -> None:
    arrs = [np.asarray(c) for c in cols]
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in zip(*arrs):
            fh.write(
                ",".join(
                    str(int(v)) if float(v).is_integer() and h == "p"
                    else format(float(v), ".17g")
                    for h, v in zip(header, row)
                )
                + "\n"
            )


def write_sequence_csv(path: str, seq: LogWeightSequence) -> None:
    write_columns_csv(
        path, ("p", "logM"), np.arange(seq.P + 1), seq.L
    )


def read_sequence_csv(path: str) -> LogWeightSequence:
    with open(path) as fh:
        header = fh.readline().strip()
        if header.replace(" ", "") != "p,logM":
            raise ValueError(f"expected header 'p,logM', got {header!r}")
        ps, vals = [], []
        for line in fh:
            line = line.strip()
            if not line:
                continue
            a, b = line.split(",")
            ps.append(int(a))
            vals.append(float(b))
    if ps != list(range(len(ps))):
        raise ValueError("indices must be 0,1,2,... without gaps")
    return LogWeightSequence(tuple(vals), None, 0, path)


def flatten_report(report: dict, prefix: str = "") -> list[tuple[str, str]]:
    """Depth-first (path, scalar) pairs for CSV report export."""
    rows: list[tuple[str, str]] = []
    for k in sorted(report, key=str):
        v = report[k]
        path = f"{prefix}.{k}" if prefix else str(k)
        if isinstance(v, dict):
            rows.extend(flatten_report(v, path))
        elif isinstance(v, (list, tuple)):
            rows.append((path, ";".join(str(x) for x in v)))
        else:
            rows.append((path, str(v)))
    return rows


def write_report_csv(path: str, report: dict) -> None:
    with open(path, "w") as fh:
        fh.write("key,value\n")
        for k, v in flatten_report(report):
            fh.write(f"{json.dumps(k)},{json.dumps(str(v))}\n")
