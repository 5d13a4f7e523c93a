"""Pure-Python squeeze kernel; same contract as the compiled ``_squeeze``.

Theories are bitmasks over alphabet positions, stored in ``uint64`` arrays.
"""

import numpy as np

_EMPTY = np.empty(0, dtype=np.uint64)


def disjoint_unions(xs, ys):
    """``x | y`` for every ``(x, y)`` in ``xs × ys`` with ``x & y == 0``.

    Output order is row-major over ``xs`` then ``ys``.
    """
    ys_list = ys.tolist()
    out = [x | y for x in xs.tolist() for y in ys_list if not x & y]
    if not out:
        return _EMPTY.copy()
    return np.array(out, dtype=np.uint64)


def merge_unique(level, candidates):
    """Append each candidate not already present; return ``(merged, duplicates)``."""
    seen = dict.fromkeys(level.tolist())
    before = len(seen)
    cand = candidates.tolist()
    seen.update(dict.fromkeys(cand))
    duplicates = len(cand) - (len(seen) - before)
    return np.fromiter(seen, dtype=np.uint64, count=len(seen)), duplicates
