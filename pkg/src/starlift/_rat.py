"""Exact rational scalars.

gmpy2.mpq when available (about 6x faster on bracket-heavy workloads),
fractions.Fraction otherwise. Both parse "p/q" strings and print the same
canonical form (reduced, denominator positive, "p" when integral).
"""
from __future__ import annotations

import re

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover
    from fractions import Fraction as QQ

ZERO = QQ(0)
ONE = QQ(1)

_RAT_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def rat(value) -> "QQ":
    """Coerce an int, rational, or canonical "p/q" string to a scalar."""
    if isinstance(value, str):
        if not _RAT_RE.match(value):
            raise ValueError(f"malformed rational literal: {value!r}")
        return QQ(value)
    if isinstance(value, float):
        raise TypeError("floats are not allowed; use 'p/q' strings")
    return QQ(value)


def rat_str(value) -> str:
    """Canonical string form: "p/q" with q > 1, else "p"."""
    return str(QQ(value))
