"""JSON literals for vectors, sparse sequences and coderivative sets."""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .coderivative_sets import Box, BoxProduct, Equal, Zero
from .cone_core import as_vec
from .errors import InputError
from .l2_model import SeqBoxProduct, SparseSeq


def _reject_constant(name):
    raise InputError(f"non-finite literal {name!r} is not allowed")


def _no_duplicates(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise InputError(f"duplicate key {k!r}")
        out[k] = v
    return out


def loads(text: str):
    """`json.loads` that refuses NaN/Infinity and duplicate object keys."""
    try:
        return json.loads(text, parse_constant=_reject_constant, object_pairs_hook=_no_duplicates)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from None


def read_literal(arg: str) -> str:
    """Resolve ``@path`` indirection to the file's contents."""
    if arg.startswith("@"):
        try:
            return Path(arg[1:]).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {arg[1:]}: {exc.strerror}") from None
    return arg


def _number(v, where: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise InputError(f"{where}: expected a number, got {v!r}")
    try:
        v = float(v)
    except OverflowError:
        v = math.inf
    if not math.isfinite(v):
        raise InputError(f"{where}: number out of range")
    return v


def parse_vec(arg: str, name: str = "x") -> np.ndarray:
    data = loads(read_literal(arg))
    if not isinstance(data, list):
        raise InputError(f"{name}: expected a JSON array")
    return as_vec([_number(v, name) for v in data], name)


def parse_sparse(arg: str, name: str = "x") -> SparseSeq:
    data = loads(read_literal(arg))
    if not isinstance(data, dict):
        raise InputError(f"{name}: expected a JSON object of index -> value")
    entries = {}
    for k, v in data.items():
        if not (k.isascii() and k.isdigit()):
            raise InputError(f"{name}: key {k!r} is not a nonnegative integer")
        i = int(k)
        if i in entries:
            raise InputError(f"{name}: index {i} given twice")
        v = _number(v, f"{name}[{k}]")
        if v == 0.0:
            raise InputError(f"{name}[{k}]: sparse values must be nonzero")
        entries[i] = v
    return SparseSeq(entries)


def vec_to_json(v) -> list:
    return [float(c) + 0.0 for c in v]


def constraint_to_json(c) -> dict:
    if isinstance(c, Equal):
        return {"kind": "equal", "value": float(c.value)}
    if isinstance(c, Zero):
        return {"kind": "zero"}
    return {"kind": "box", "lo": 0.0, "hi": float(c.hi)}


def constraint_from_json(d):
    if not isinstance(d, dict):
        raise InputError("constraint must be an object")
    kind = d.get("kind")
    if kind == "equal":
        return Equal(_number(d.get("value"), "value"))
    if kind == "zero":
        return Zero()
    if kind == "box":
        if _number(d.get("lo", 0.0), "lo") != 0.0:
            raise InputError("box constraints must have lo = 0")
        return Box(_number(d.get("hi"), "hi"))
    raise InputError(f"unknown constraint kind {kind!r}")


def box_product_to_json(s: BoxProduct) -> dict:
    return {"constraints": [constraint_to_json(c) for c in s.constraints], "empty": s.is_empty()}


def box_product_from_json(d) -> BoxProduct:
    return BoxProduct([constraint_from_json(c) for c in d["constraints"]])


def seq_box_product_to_json(s: SeqBoxProduct) -> dict:
    return {
        "explicit": {str(i): constraint_to_json(c) for i, c in s.explicit.items()},
        "tail": "zero",
        "empty": s.is_empty(),
    }


def seq_box_product_from_json(d) -> SeqBoxProduct:
    if d.get("tail") != "zero":
        raise InputError("only the zero tail is supported")
    return SeqBoxProduct({int(k): constraint_from_json(c) for k, c in d["explicit"].items()})


def sparse_to_json(x: SparseSeq) -> dict:
    return {str(i): v for i, v in x.entries.items()}


def dumps(obj) -> str:
    return json.dumps(obj, allow_nan=False)
