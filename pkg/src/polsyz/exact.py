"""Exact linear algebra over the rationals.

Vectors are either dense sequences or sparse ``{column: value}`` dicts.
Everything is computed with :class:`fractions.Fraction`; nothing here ever
touches floating point.
"""

from fractions import Fraction


def _sparse(vec):
    if isinstance(vec, dict):
        return {c: Fraction(v) for c, v in vec.items() if v}
    return {c: Fraction(v) for c, v in enumerate(vec) if v}


class RowSpace:
    """Incrementally maintained reduced row-echelon basis of a subspace of Q^d.

    Every stored row has a pivot entry 1 and zeros in the pivot columns of
    all other rows, so membership is a single reduction pass.
    """

    def __init__(self, rows=()):
        self._rows = {}
        for row in rows:
            self.add(row)

    def __len__(self):
        return len(self._rows)

    @property
    def rank(self):
        return len(self._rows)

    def reduce(self, vec):
        v = _sparse(vec)
        for p, row in self._rows.items():
            c = v.get(p)
            if c:
                for col, val in row.items():
                    nv = v.get(col, 0) - c * val
                    if nv:
                        v[col] = nv
                    else:
                        v.pop(col, None)
        return v

    def add(self, vec):
        """Insert ``vec``; return True iff it enlarged the space."""
        v = self.reduce(vec)
        if not v:
            return False
        p = min(v)
        inv = 1 / v[p]
        v = {c: val * inv for c, val in v.items()}
        for q, row in self._rows.items():
            c = row.get(p)
            if c:
                for col, val in v.items():
                    nv = row.get(col, 0) - c * val
                    if nv:
                        row[col] = nv
                    else:
                        row.pop(col, None)
        self._rows[p] = v
        return True

    def __contains__(self, vec):
        return not self.reduce(vec)

    def extend(self, vecs):
        for v in vecs:
            self.add(v)
        return self

    def copy(self):
        other = RowSpace()
        other._rows = {p: dict(row) for p, row in self._rows.items()}
        return other

    def basis(self):
        return [dict(self._rows[p]) for p in sorted(self._rows)]


def rank(rows):
    """Rank over Q of a list of vectors."""
    return RowSpace(rows).rank


def nullspace(matrix, ncols=None):
    """Basis of ``{x : matrix @ x = 0}`` as a list of dense Fraction lists.

    ``matrix`` is a list of rows; ``ncols`` is needed only when there are no
    rows.
    """
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    rs = RowSpace(matrix)
    pivots = sorted(rs._rows)
    free = [c for c in range(ncols) if c not in rs._rows]
    basis = []
    for fc in free:
        x = [Fraction(0)] * ncols
        x[fc] = Fraction(1)
        for p in pivots:
            x[p] = -rs._rows[p].get(fc, Fraction(0))
        basis.append(x)
    return basis
