"""Deterministic JSON serialization shared by reports and the CLI.

Floats are written with 12 significant digits so that golden files compare
byte-for-byte; fractions become ``{"num": p, "den": q}``.
"""
from fractions import Fraction
import json
import math

import numpy as np


def normalize(obj):
    if hasattr(obj, "to_dict"):
        return normalize(obj.to_dict())
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if not math.isfinite(v):
            return None
        return float(format(v, ".12g"))
    if isinstance(obj, Fraction):
        return {"num": obj.numerator, "den": obj.denominator}
    if isinstance(obj, dict):
        return {str(k): normalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [normalize(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent=2):
    return json.dumps(normalize(obj), indent=indent, sort_keys=False) + "\n"
