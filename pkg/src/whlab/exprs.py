"""Restricted numpy expression evaluation for config files.

Config expressions run with no builtins and a fixed whitelist of numpy
functions plus the coordinate arrays, which is the usual arrangement for
trusted local run configs.
"""

from __future__ import annotations

import numpy as np

from .errors import ValidationError

__all__ = ["evaluate_expression"]

_NAMESPACE = {
    "abs": np.abs,
    "exp": np.exp,
    "log": np.log,
    "sqrt": np.sqrt,
    "sin": np.sin,
    "cos": np.cos,
    "tan": np.tan,
    "arctan": np.arctan,
    "atan2": np.arctan2,
    "hypot": np.hypot,
    "sign": np.sign,
    "minimum": np.minimum,
    "maximum": np.maximum,
    "clip": np.clip,
    "where": np.where,
    "power": np.power,
    "pi": np.pi,
    "e": np.e,
}


def evaluate_expression(expr: str, **coords):
    """Evaluate ``expr`` with the whitelist namespace and ``coords``."""
    if not isinstance(expr, str) or not expr.strip():
        raise ValidationError("expression must be a non-empty string")
    if "__" in expr:
        raise ValidationError("expression may not contain double underscores")
    try:
        code = compile(expr, "<config expression>", "eval")
        return eval(code, {"__builtins__": {}}, {**_NAMESPACE, **coords})
    except ValidationError:
        raise
    except Exception as exc:
        raise ValidationError(f"expression {expr!r} failed to evaluate: {exc}") from exc
