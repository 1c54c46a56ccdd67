"""Plain-text superposition files and 17-digit number formatting.

File format: one component per line as three whitespace-separated reals
``px py pz``.  Lines starting with ``#`` are comments, blank lines are
skipped.
"""

import math
from pathlib import Path

import numpy as np

from .errors import InvalidSuperpositionError
from .kinematics import Superposition


def fmt(x) -> str:
    """Locale-independent decimal with 17 significant digits (round-trips a double)."""
    return format(float(x), ".17g")


def parse_superposition(text: str) -> Superposition:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 3:
            raise InvalidSuperpositionError(f"expected 3 numbers, found {len(fields)}", line=lineno)
        try:
            row = [float(f) for f in fields]
        except ValueError:
            raise InvalidSuperpositionError(f"not a number in {line!r}", line=lineno) from None
        if not all(math.isfinite(v) for v in row):
            raise InvalidSuperpositionError("non-finite momentum component", line=lineno)
        if math.hypot(*row) == 0.0:
            raise InvalidSuperpositionError("zero-magnitude component", line=lineno)
        rows.append(row)
    if not rows:
        raise InvalidSuperpositionError("no components found")
    return Superposition(np.array(rows))


def read_superposition(path) -> Superposition:
    return parse_superposition(Path(path).read_text(encoding="utf-8"))


def format_superposition(s: Superposition, comments=()) -> str:
    lines = [f"# {c}" for c in comments]
    lines += [" ".join(fmt(v) for v in row) for row in s.momenta]
    return "\n".join(lines) + "\n"


def write_superposition(s: Superposition, path, comments=()) -> None:
    Path(path).write_text(format_superposition(s, comments), encoding="utf-8")
