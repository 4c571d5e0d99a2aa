"""Exact linear algebra over GF(2) and GF(4).

Scalars are small ints encoding coefficients in the basis {1, a} of GF(4)
(a^2 = a + 1): 0 -> 0, 1 -> 1, 2 -> a, 3 -> b = a + 1.  GF(2) uses {0, 1}.
Rows are bit-packed: one machine word (Python int) per coefficient plane,
so GF(2) rows are single ints and GF(4) rows are (lo, hi) plane pairs.
All arithmetic is exact; there is no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import FieldMismatch, MalformedInput

GF2 = 2
GF4 = 4

_SYMBOLS = {0: "0", 1: "1", 2: "a", 3: "b"}
_VALUES = {"0": 0, "1": 1, "a": 2, "b": 3}
_INVERSE = {1: 1, 2: 3, 3: 2}


def scalar_add(x: int, y: int) -> int:
    return x ^ y


def scalar_mul(x: int, y: int) -> int:
    x0, x1 = x & 1, x >> 1
    y0, y1 = y & 1, y >> 1
    lo = (x0 & y0) ^ (x1 & y1)
    hi = (x0 & y1) ^ (x1 & y0) ^ (x1 & y1)
    return lo | (hi << 1)


def scalar_inverse(x: int) -> int:
    """Multiplicative inverse of a nonzero scalar."""
    return _INVERSE[x]


def conjugate(x: int) -> int:
    """The conjugation automorphism: fixes 0 and 1, swaps a and b."""
    return ((x & 1) ^ (x >> 1)) | (x & 2)


@dataclass(frozen=True)
class Scalar:
    """A field element tagged with its field, for the public arithmetic API."""

    field: int
    symbol: str

    def __post_init__(self):
        if self.field not in (GF2, GF4):
            raise FieldMismatch(f"unknown field {self.field}")
        if self.symbol not in _VALUES or (self.field == GF2 and self.symbol in "ab"):
            raise FieldMismatch(f"{self.symbol!r} is not a GF({self.field}) value")

    @property
    def value(self) -> int:
        return _VALUES[self.symbol]


def field_arith(op: str, x: Scalar, y: Scalar | None = None) -> Scalar:
    """Scalar arithmetic dispatch: op in {add, mul, inv_automorphism}."""
    if op in ("add", "mul"):
        if y is None:
            raise FieldMismatch(f"{op} needs two operands")
        if x.field != y.field:
            raise FieldMismatch(f"operands in GF({x.field}) and GF({y.field})")
        fn = scalar_add if op == "add" else scalar_mul
        return Scalar(x.field, _SYMBOLS[fn(x.value, y.value)])
    if op == "inv_automorphism":
        return Scalar(x.field, _SYMBOLS[conjugate(x.value)])
    raise FieldMismatch(f"unknown op {op!r}")


def _scale_row(c: int, lo: int, hi: int) -> tuple[int, int]:
    """Word-parallel scalar * row over GF(4)."""
    if c == 0:
        return 0, 0
    if c == 1:
        return lo, hi
    if c == 2:  # a
        return hi, lo ^ hi
    return lo ^ hi, lo  # b


class GFMatrix:
    """Immutable matrix over GF(2) or GF(4) with bit-packed rows."""

    __slots__ = ("field", "rows", "cols", "row_lo", "row_hi", "_cols_packed")

    def __init__(self, field: int, rows: int, cols: int,
                 row_lo: Sequence[int], row_hi: Sequence[int] | None = None):
        if field not in (GF2, GF4):
            raise FieldMismatch(f"unknown field {field}")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.row_lo = tuple(row_lo)
        self.row_hi = tuple(row_hi) if row_hi is not None else (0,) * rows
        if len(self.row_lo) != rows or len(self.row_hi) != rows:
            raise MalformedInput("row count mismatch")
        self._cols_packed = None

    @classmethod
    def from_entries(cls, field: int, entries: Sequence[Sequence[int]],
                     cols: int | None = None) -> "GFMatrix":
        rows = len(entries)
        if cols is None:
            cols = len(entries[0]) if rows else 0
        lo, hi = [], []
        for row in entries:
            rl = rh = 0
            for j, e in enumerate(row):
                if e not in (0, 1, 2, 3) or (field == GF2 and e > 1):
                    raise FieldMismatch(f"entry {e} not in GF({field})")
                rl |= (e & 1) << j
                rh |= (e >> 1) << j
            lo.append(rl)
            hi.append(rh)
        return cls(field, rows, cols, lo, hi)

    @classmethod
    def zero(cls, field: int, rows: int, cols: int) -> "GFMatrix":
        return cls(field, rows, cols, [0] * rows, [0] * rows)

    @classmethod
    def identity(cls, field: int, n: int) -> "GFMatrix":
        return cls(field, n, n, [1 << i for i in range(n)], [0] * n)

    def entry(self, i: int, j: int) -> int:
        return ((self.row_lo[i] >> j) & 1) | (((self.row_hi[i] >> j) & 1) << 1)

    def row_entries(self, i: int) -> list[int]:
        return [self.entry(i, j) for j in range(self.cols)]

    def to_entries(self) -> list[list[int]]:
        return [self.row_entries(i) for i in range(self.rows)]

    def columns_packed(self) -> tuple[tuple[int, int], ...]:
        """Columns packed over rows as (lo, hi) pairs; cached."""
        if self._cols_packed is None:
            packed = []
            for j in range(self.cols):
                lo = hi = 0
                for i in range(self.rows):
                    lo |= ((self.row_lo[i] >> j) & 1) << i
                    hi |= ((self.row_hi[i] >> j) & 1) << i
                packed.append((lo, hi))
            self._cols_packed = tuple(packed)
        return self._cols_packed

    def column(self, j: int) -> tuple[int, int]:
        return self.columns_packed()[j]

    def transpose(self) -> "GFMatrix":
        cols = self.columns_packed()
        return GFMatrix(self.field, self.cols, self.rows,
                        [c[0] for c in cols], [c[1] for c in cols])

    def conjugate(self) -> "GFMatrix":
        """Entry-wise conjugation (identity on GF(2))."""
        return GFMatrix(self.field, self.rows, self.cols,
                        [lo ^ hi for lo, hi in zip(self.row_lo, self.row_hi)],
                        self.row_hi)

    def hstack(self, other: "GFMatrix") -> "GFMatrix":
        if self.field != other.field or self.rows != other.rows:
            raise FieldMismatch("hstack: incompatible matrices")
        s = self.cols
        return GFMatrix(self.field, self.rows, s + other.cols,
                        [a | (b << s) for a, b in zip(self.row_lo, other.row_lo)],
                        [a | (b << s) for a, b in zip(self.row_hi, other.row_hi)])

    def add(self, other: "GFMatrix") -> "GFMatrix":
        if (self.field, self.rows, self.cols) != (other.field, other.rows, other.cols):
            raise FieldMismatch("add: incompatible matrices")
        return GFMatrix(self.field, self.rows, self.cols,
                        [a ^ b for a, b in zip(self.row_lo, other.row_lo)],
                        [a ^ b for a, b in zip(self.row_hi, other.row_hi)])

    def select_columns(self, indices: Sequence[int]) -> "GFMatrix":
        packed = self.columns_packed()
        lo = [0] * self.rows
        hi = [0] * self.rows
        for jj, j in enumerate(indices):
            clo, chi = packed[j]
            for i in range(self.rows):
                lo[i] |= ((clo >> i) & 1) << jj
                hi[i] |= ((chi >> i) & 1) << jj
        return GFMatrix(self.field, self.rows, len(indices), lo, hi)

    def is_zero(self) -> bool:
        return not any(self.row_lo) and not any(self.row_hi)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GFMatrix)
                and (self.field, self.rows, self.cols) == (other.field, other.rows, other.cols)
                and self.row_lo == other.row_lo and self.row_hi == other.row_hi)

    def __hash__(self) -> int:
        return hash((self.field, self.rows, self.cols, self.row_lo, self.row_hi))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(_SYMBOLS[e] for e in self.row_entries(i))
                         for i in range(self.rows))
        return f"GFMatrix(GF({self.field}), {self.rows}x{self.cols}: {body})"


def rank_of_vectors(field: int, vectors: Iterable[tuple[int, int]]) -> int:
    """Rank of packed (lo, hi) vectors; GF(2) vectors carry hi == 0."""
    if field == GF2:
        table: dict[int, int] = {}
        r = 0
        for lo, _ in vectors:
            v = lo
            while v:
                h = v.bit_length() - 1
                b = table.get(h)
                if b is None:
                    table[h] = v
                    r += 1
                    break
                v ^= b
        return r
    basis: dict[int, tuple[int, int]] = {}
    r = 0
    for lo, hi in vectors:
        for p, (blo, bhi) in basis.items():
            c = ((lo >> p) & 1) | (((hi >> p) & 1) << 1)
            if c:
                slo, shi = _scale_row(c, blo, bhi)
                lo ^= slo
                hi ^= shi
        if lo | hi:
            p = (lo | hi).bit_length() - 1
            c = ((lo >> p) & 1) | (((hi >> p) & 1) << 1)
            lo, hi = _scale_row(scalar_inverse(c), lo, hi)
            basis[p] = (lo, hi)
            r += 1
    return r


def rank(m: GFMatrix) -> int:
    return rank_of_vectors(m.field, zip(m.row_lo, m.row_hi))


def nullity(m: GFMatrix) -> int:
    return m.cols - rank(m)


def rref(m: GFMatrix) -> tuple[GFMatrix, tuple[int, ...]]:
    """Reduced row echelon form and its pivot columns (ascending)."""
    lo = list(m.row_lo)
    hi = list(m.row_hi)
    pivots = []
    r = 0
    for col in range(m.cols):
        pivot = None
        for i in range(r, m.rows):
            if ((lo[i] >> col) & 1) | ((hi[i] >> col) & 1):
                pivot = i
                break
        if pivot is None:
            continue
        lo[r], lo[pivot] = lo[pivot], lo[r]
        hi[r], hi[pivot] = hi[pivot], hi[r]
        c = ((lo[r] >> col) & 1) | (((hi[r] >> col) & 1) << 1)
        if c != 1:
            lo[r], hi[r] = _scale_row(scalar_inverse(c), lo[r], hi[r])
        for i in range(m.rows):
            if i == r:
                continue
            c = ((lo[i] >> col) & 1) | (((hi[i] >> col) & 1) << 1)
            if c:
                slo, shi = _scale_row(c, lo[r], hi[r])
                lo[i] ^= slo
                hi[i] ^= shi
        pivots.append(col)
        r += 1
        if r == m.rows:
            break
    return GFMatrix(m.field, m.rows, m.cols, lo, hi), tuple(pivots)


def null_space(m: GFMatrix) -> list[tuple[int, ...]]:
    """Canonical right-kernel basis.

    One vector per free column, free columns in ascending index order; each
    vector has entry 1 at its free column and its remaining support on pivot
    columns (reduced column echelon form of the kernel).
    """
    red, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        vec = [0] * m.cols
        vec[f] = 1
        for i, p in enumerate(pivots):
            vec[p] = red.entry(i, f)  # -x == x in characteristic 2
        basis.append(tuple(vec))
    return basis


def mat_vec(m: GFMatrix, vec: Sequence[int]) -> list[int]:
    out = []
    for i in range(m.rows):
        acc = 0
        lo, hi = m.row_lo[i], m.row_hi[i]
        for j, x in enumerate(vec):
            if x:
                e = ((lo >> j) & 1) | (((hi >> j) & 1) << 1)
                acc ^= scalar_mul(e, x)
        out.append(acc)
    return out


def symbol(value: int) -> str:
    return _SYMBOLS[value]


def parse_symbol(text: str, field: int) -> int:
    v = _VALUES.get(text)
    if v is None or (field == GF2 and v > 1):
        raise MalformedInput(f"bad GF({field}) entry {text!r}")
    return v


def parse_gfmat(text: str) -> GFMatrix:
    """Parse the .gfmat text format.

    Line 1: "field 2" or "field 4"; line 2: "<rows> <cols>"; then one row per
    line with entries from {0, 1, a, b} separated by spaces.
    """
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) < 2:
        raise MalformedInput("gfmat: missing header")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "field" or head[1] not in ("2", "4"):
        raise MalformedInput(f"gfmat: bad field line {lines[0]!r}")
    field = int(head[1])
    dims = lines[1].split()
    if len(dims) != 2:
        raise MalformedInput(f"gfmat: bad dimension line {lines[1]!r}")
    try:
        rows, cols = int(dims[0]), int(dims[1])
    except ValueError:
        raise MalformedInput(f"gfmat: bad dimension line {lines[1]!r}")
    if rows < 0 or cols < 0:
        raise MalformedInput("gfmat: negative dimensions")
    if len(lines) != 2 + rows:
        raise MalformedInput(f"gfmat: expected {rows} rows, got {len(lines) - 2}")
    entries = []
    for ln in lines[2:]:
        toks = ln.split()
        if len(toks) != cols:
            raise MalformedInput(f"gfmat: row {ln!r} has {len(toks)} entries, want {cols}")
        entries.append([parse_symbol(t, field) for t in toks])
    return GFMatrix.from_entries(field, entries, cols=cols)


def format_gfmat(m: GFMatrix) -> str:
    lines = [f"field {m.field}", f"{m.rows} {m.cols}"]
    for i in range(m.rows):
        lines.append(" ".join(_SYMBOLS[e] for e in m.row_entries(i)))
    return "\n".join(lines) + "\n"
