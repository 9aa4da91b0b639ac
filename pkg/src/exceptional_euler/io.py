"""Versioned JSON and CSV output with fixed 17-significant-digit numbers.

Numbers are written with ``format(x, ".17g")``; parsing and re-emitting a
document therefore reproduces it byte for byte.  NaN and infinities are
rejected.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .config import SCHEMA_VERSION


class NonFiniteOutput(ValueError):
    pass


def _num(x) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise NonFiniteOutput(f"refusing to write {x}")
    s = format(x, ".17g")
    return "0" if s == "-0" else s


def _emit(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, np.ndarray):
        return _emit(obj.tolist(), indent, level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_emit(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in obj):
            return "[" + ", ".join(_emit(v, indent, level + 1) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + _emit(v, indent, level + 1) for v in obj) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 1) -> str:
    return _emit(obj, indent, 0) + "\n"


def loads(text: str):
    return json.loads(text)


def document(kind: str, payload: dict) -> dict:
    return {"schema": f"exceptional-euler/{kind}", "version": SCHEMA_VERSION, **payload}


def array_field(a) -> dict:
    """Dense row-major array with its shape; complex arrays carry real and imag parts."""
    a = np.asarray(a)
    out = {"shape": list(a.shape), "dtype": "complex" if np.iscomplexobj(a) else "real"}
    if np.iscomplexobj(a):
        out["real"] = a.real.ravel().tolist()
        out["imag"] = a.imag.ravel().tolist()
    else:
        out["data"] = a.ravel().astype(float).tolist()
    return out


def read_array(field_: dict) -> np.ndarray:
    shape = tuple(field_["shape"])
    if field_["dtype"] == "complex":
        return (np.array(field_["real"], float) + 1j * np.array(field_["imag"], float)).reshape(shape)
    return np.array(field_["data"], float).reshape(shape)


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_num(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def write_text(text: str, path: Path | None) -> None:
    if path is None:
        import sys
        sys.stdout.write(text)
        return
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
