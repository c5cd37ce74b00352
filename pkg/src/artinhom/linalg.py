"""Sparse exact linear algebra: maps, inverses and ranks.

Vectors are dicts ``index -> scalar`` with no stored zeros.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .exactfield import FieldCtx


def add_into(acc: dict, vec: dict, scale=None):
    """acc += scale * vec, dropping zeros."""
    for k, v in vec.items():
        if scale is not None:
            v = v * scale
        cur = acc.get(k)
        if cur is None:
            if v:
                acc[k] = v
        else:
            s = cur + v
            if s:
                acc[k] = s
            else:
                del acc[k]
    return acc


@dataclass(frozen=True, eq=False)
class LinearMap:
    """A rows x cols matrix over ``ctx``, stored sparsely."""

    rows: int
    cols: int
    entries: dict
    ctx: FieldCtx
    _columns: dict = dc_field(default=None, repr=False, compare=False)

    def __post_init__(self):
        clean = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError(f"entry ({r}, {c}) outside a {self.rows}x{self.cols} map")
            v = self.ctx.coerce(v)
            if v:
                clean[(r, c)] = v
        object.__setattr__(self, "entries", clean)
        cols = {}
        for (r, c), v in sorted(clean.items(), key=lambda e: (e[0][1], e[0][0])):
            cols.setdefault(c, {})[r] = v
        object.__setattr__(self, "_columns", cols)

    @classmethod
    def identity(cls, n: int, ctx: FieldCtx) -> LinearMap:
        return cls(n, n, {(i, i): ctx.one() for i in range(n)}, ctx)

    @classmethod
    def from_dense(cls, rows, ctx: FieldCtx) -> LinearMap:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols,
                   {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v}, ctx)

    @classmethod
    def scalar(cls, value, ctx: FieldCtx) -> LinearMap:
        return cls(1, 1, {(0, 0): value}, ctx)

    def column(self, c: int) -> dict:
        return self._columns.get(c, {})

    def apply(self, vec: dict) -> dict:
        out = {}
        for c, v in vec.items():
            col = self._columns.get(c)
            if col:
                add_into(out, col, v)
        return out

    def compose(self, other: LinearMap) -> LinearMap:
        """self o other."""
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in composition")
        entries = {}
        for c in range(other.cols):
            for r, v in self.apply(other.column(c)).items():
                entries[(r, c)] = v
        return LinearMap(self.rows, other.cols, entries, self.ctx)

    def __matmul__(self, other):
        return self.compose(other)

    def scale(self, s) -> LinearMap:
        return LinearMap(self.rows, self.cols, {k: v * s for k, v in self.entries.items()}, self.ctx)

    def __neg__(self):
        return self.scale(-1)

    def transpose(self) -> LinearMap:
        return LinearMap(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()}, self.ctx)

    def to_dense(self):
        zero = self.ctx.zero()
        return [[self.entries.get((r, c), zero) for c in range(self.cols)] for r in range(self.rows)]

    def inverse(self) -> LinearMap:
        if self.rows != self.cols:
            raise ValueError("only square maps can be inverted")
        n = self.rows
        a = self.to_dense()
        inv = [[self.ctx.one() if i == j else self.ctx.zero() for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col]), None)
            if piv is None:
                raise ZeroDivisionError("singular map")
            a[col], a[piv] = a[piv], a[col]
            inv[col], inv[piv] = inv[piv], inv[col]
            s = a[col][col].inv()
            a[col] = [x * s for x in a[col]]
            inv[col] = [x * s for x in inv[col]]
            for r in range(n):
                if r != col and a[r][col]:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                    inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
        return LinearMap.from_dense(inv, self.ctx)

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))


def rank(columns, fraction_free: bool = False) -> int:
    """Rank of a list of sparse vectors.

    Gaussian elimination on rows, always pivoting in the shortest
    remaining row.  With ``fraction_free`` rows are combined by
    cross-multiplication and never divided.
    """
    rows: dict = {}
    for c, col in enumerate(columns):
        for r, v in col.items():
            if v:
                rows.setdefault(r, {})[c] = v
    col_index: dict = {}
    for r, row in rows.items():
        for c in row:
            col_index.setdefault(c, set()).add(r)
    active = set(rows)
    found = 0
    while active:
        r = min(active, key=lambda k: (len(rows[k]), k))
        row = rows[r]
        active.discard(r)
        if not row:
            continue
        c = min(row, key=lambda k: (len(col_index[k]), k))
        pv = row[c]
        found += 1
        for other in list(col_index[c]):
            if other == r or other not in active:
                continue
            orow = rows[other]
            f = orow[c]
            if fraction_free:
                old = set(orow)
                new = {k: v * pv for k, v in orow.items()}
                add_into(new, row, -f)
            else:
                old = set(orow)
                new = dict(orow)
                add_into(new, row, -(f / pv))
            new.pop(c, None)
            for k in old - set(new):
                col_index[k].discard(other)
            for k in set(new) - old:
                col_index.setdefault(k, set()).add(other)
            rows[other] = new
        for k in row:
            col_index[k].discard(r)
    return found
