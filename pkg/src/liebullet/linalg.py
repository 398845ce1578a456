"""Exact incremental row reduction over sparse rational vectors."""

from __future__ import annotations

from .rational import ZERO


class RowReducer:
    """Maintains a reduced basis of the span of the vectors fed to :meth:`add`.

    Vectors are dicts ``key -> rational``; keys must be mutually comparable so
    pivot choice (the smallest key) is deterministic.
    """

    def __init__(self):
        self._pivots: dict = {}

    def __len__(self):
        return len(self._pivots)

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def reduce(self, vector: dict) -> dict:
        v = {k: c for k, c in vector.items() if c}
        pivots = self._pivots
        # rows are fully reduced, so eliminating one pivot never reintroduces another
        for p in [k for k in v if k in pivots]:
            f = v[p]
            for k, c in pivots[p].items():
                nv = v.get(k, ZERO) - f * c
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def add(self, vector: dict) -> bool:
        """Insert ``vector``; return True iff it was independent of the basis."""
        v = self.reduce(vector)
        if not v:
            return False
        p = min(v)
        inv = 1 / v[p]
        v = {k: c * inv for k, c in v.items()}
        # keep pivot columns clean in the other rows
        for q, row in self._pivots.items():
            f = row.get(p)
            if f:
                for k, c in v.items():
                    nv = row.get(k, ZERO) - f * c
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        self._pivots[p] = v
        return True


def rank(vectors) -> int:
    r = RowReducer()
    for v in vectors:
        r.add(v)
    return r.rank
