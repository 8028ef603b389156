import json
import math
from enum import Enum
from typing import Any

import numpy as np


class NumpyEncoder(json.JSONEncoder):
    def default(self, obj):
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.floating):
            return float(obj)
        if isinstance(obj, np.bool_):
            return bool(obj)
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        if isinstance(obj, complex):
            return {"re": obj.real, "im": obj.imag}
        if isinstance(obj, Enum):
            return obj.value
        return json.JSONEncoder.default(self, obj)


def sanitize(obj: Any) -> Any:
    """Troca floats não finitos por None, recursivamente"""
    if isinstance(obj, (float, np.floating)):
        return float(obj) if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {str(k): sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [sanitize(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return sanitize(obj.tolist())
    return obj


def serialize_to_json(obj: Any, indent: int | None = 2) -> str:
    """
    Serializa um objeto para JSON com chaves ordenadas, sem NaN/Infinity.
    """
    return json.dumps(
        sanitize(obj), cls=NumpyEncoder, indent=indent, sort_keys=True, allow_nan=False
    )
