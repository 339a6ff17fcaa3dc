"""JSON function descriptors shared by every CLI subcommand.

Complex numbers are two-element arrays ``[re, im]``; coefficient lists are in
ascending powers.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .core import (
    BlaschkeProduct,
    PartialFraction,
    PoleBasis,
    PolyRatio,
    TaylorPoly,
    koebe,
)
from .errors import MalformedFunction


def encode_complex(z):
    z = complex(z)
    return [z.real, z.imag]


def decode_complex(v):
    if isinstance(v, (int, float)):
        return complex(v)
    if len(v) != 2:
        raise MalformedFunction(f"complex value must be [re, im], got {v!r}")
    return complex(float(v[0]), float(v[1]))


def _clist(values):
    return [decode_complex(v) for v in values]


def _elist(values):
    return [encode_complex(v) for v in np.asarray(values).reshape(-1)]


def from_dict(d):
    kind = d.get("kind")
    if kind == "pole_basis":
        return PoleBasis(
            decode_complex(d.get("constant", 0.0)),
            _clist(d["points"]),
            _clist(d["coefficients"]),
        )
    if kind == "poly_ratio":
        return PolyRatio(_clist(d["numerator"]), _clist(d["denominator"]))
    if kind == "taylor":
        return TaylorPoly(_clist(d["coefficients"]))
    if kind == "blaschke":
        return BlaschkeProduct(_clist(d["zeros"]))
    if kind == "partial_fraction":
        return PartialFraction(
            decode_complex(d.get("constant", 0.0)),
            _clist(d["poles"]),
            [_clist(row) for row in d["coefficients"]],
        )
    if kind == "koebe":
        return koebe()
    raise MalformedFunction(f"unknown descriptor kind {kind!r}")


def to_dict(fn):
    form = fn.form
    if form == "pole_basis":
        return {
            "kind": "pole_basis",
            "constant": encode_complex(fn.constant),
            "points": _elist(fn.points),
            "coefficients": _elist(fn.coefficients),
        }
    if form == "poly_ratio":
        return {
            "kind": "poly_ratio",
            "numerator": _elist(fn.numerator),
            "denominator": _elist(fn.denominator),
        }
    if form == "taylor":
        return {"kind": "taylor", "coefficients": _elist(fn.coefficients)}
    if form == "blaschke":
        return {"kind": "blaschke", "zeros": _elist(fn.zeros)}
    if form == "partial_fraction":
        return {
            "kind": "partial_fraction",
            "constant": encode_complex(fn.constant),
            "poles": _elist(fn.centers),
            "coefficients": [_elist(row) for row in fn.coefficients],
        }
    raise MalformedFunction(f"cannot serialize form {form!r}")


def load(path):
    return from_dict(json.loads(Path(path).read_text()))


def dump(fn, path):
    Path(path).write_text(json.dumps(to_dict(fn), indent=1) + "\n")


def load_coefficients(path, count=None):
    """Taylor coefficients a_1, a_2, ... from a file.

    Accepts a bare list of complex values (a_1 first) or a descriptor; for a
    descriptor the constant term is dropped. ``koebe`` yields a_j = j.
    """
    data = json.loads(Path(path).read_text())
    if isinstance(data, list):
        return np.array(_clist(data), dtype=complex)
    if data.get("kind") == "koebe":
        if count is None:
            raise MalformedFunction("koebe coefficients need an explicit count")
        return np.arange(1, count + 1, dtype=complex)
    fn = from_dict(data)
    if count is None:
        if fn.form != "taylor":
            raise MalformedFunction("a coefficient count is needed for non-polynomial input")
        count = fn.degree
    return fn.taylor_coefficients(count + 1)[1:]
