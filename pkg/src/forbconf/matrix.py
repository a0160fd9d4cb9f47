"""Immutable r-matrices: construction operators, column encoding and text I/O."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

MAX_ALPHABET = 10

Column = tuple[int, ...]


class MatrixFormatError(ValueError):
    """Raised when matrix text cannot be parsed."""


@dataclass(frozen=True)
class RMatrix:
    """An m x n matrix over the alphabet {0, ..., r-1}.

    ``rows`` holds the entries row by row. Because a 0-rowed matrix still has
    a column count, ``n`` is stored explicitly rather than derived.
    """

    m: int
    n: int
    r: int
    rows: tuple[tuple[int, ...], ...] = field(repr=False)

    def __post_init__(self) -> None:
        if not 2 <= self.r <= MAX_ALPHABET:
            raise ValueError(f"alphabet size must be in [2, {MAX_ALPHABET}], got {self.r}")
        if self.m < 0 or self.n < 0:
            raise ValueError("dimensions must be non-negative")
        if len(self.rows) != self.m:
            raise ValueError(f"expected {self.m} rows, got {len(self.rows)}")
        for i, row in enumerate(self.rows):
            if len(row) != self.n:
                raise ValueError(f"row {i} has length {len(row)}, expected {self.n}")
            for x in row:
                if not 0 <= x < self.r:
                    raise ValueError(f"symbol {x} outside alphabet of size {self.r}")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], r: int | None = None, n: int | None = None) -> RMatrix:
        """Build from nested rows; ``r`` defaults to max(2, largest symbol + 1)."""
        tup = tuple(tuple(int(x) for x in row) for row in rows)
        if n is None:
            n = len(tup[0]) if tup else 0
        if r is None:
            r = max(2, max((x for row in tup for x in row), default=0) + 1)
        return cls(len(tup), n, r, tup)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]], m: int, r: int) -> RMatrix:
        rows = tuple(tuple(col[i] for col in cols) for i in range(m))
        return cls(m, len(cols), r, rows)

    @cached_property
    def columns(self) -> tuple[Column, ...]:
        return tuple(tuple(row[j] for row in self.rows) for j in range(self.n))

    @cached_property
    def column_ids(self) -> tuple[int, ...]:
        return tuple(encode_column(c, self.r) for c in self.columns)

    @cached_property
    def symbol_bits(self) -> tuple[tuple[int, ...], ...]:
        """``symbol_bits[i][s]`` is the bitset of columns holding symbol s in row i."""
        out = []
        for row in self.rows:
            bits = [0] * self.r
            for j, x in enumerate(row):
                bits[x] |= 1 << j
            out.append(tuple(bits))
        return tuple(out)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.m, self.n)

    def symbols(self) -> set[int]:
        return {x for row in self.rows for x in row}

    def with_alphabet(self, r: int) -> RMatrix:
        return RMatrix(self.m, self.n, r, self.rows)

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.rows]

    def __str__(self) -> str:
        return format_matrix(self)


def encode_column(col: Sequence[int], r: int) -> int:
    """Radix-r value of a column, row 0 being the least significant digit."""
    value = 0
    for x in reversed(col):
        value = value * r + x
    return value


def decode_column(value: int, m: int, r: int) -> Column:
    if not 0 <= value < r**m:
        raise ValueError(f"column id {value} out of range for m={m}, r={r}")
    out = []
    for _ in range(m):
        value, d = divmod(value, r)
        out.append(d)
    return tuple(out)


def is_simple(A: RMatrix) -> bool:
    return len(set(A.columns)) == A.n


def dedup_columns(A: RMatrix) -> RMatrix:
    """One copy of each distinct column, sorted by column id."""
    ids = sorted(set(A.column_ids))
    cols = [decode_column(v, A.m, A.r) for v in ids]
    return RMatrix.from_columns(cols, A.m, A.r)


def complement01(A: RMatrix) -> RMatrix:
    if any(x > 1 for row in A.rows for x in row):
        raise ValueError("(0,1)-complement is only defined for (0,1)-matrices")
    return RMatrix(A.m, A.n, A.r, tuple(tuple(1 - x for x in row) for row in A.rows))


def product(A: RMatrix, B: RMatrix) -> RMatrix:
    """Every column of A stacked on every column of B (A outer, B inner)."""
    if A.r != B.r:
        raise ValueError(f"alphabet mismatch: {A.r} vs {B.r}")
    cols = [ca + cb for ca in A.columns for cb in B.columns]
    return RMatrix.from_columns(cols, A.m + B.m, A.r)


def concat_copies(F: RMatrix, t: int) -> RMatrix:
    if t < 1:
        raise ValueError("t must be positive")
    return RMatrix(F.m, F.n * t, F.r, tuple(row * t for row in F.rows))


def hconcat(*mats: RMatrix) -> RMatrix:
    if not mats:
        raise ValueError("need at least one matrix")
    m, r = mats[0].m, max(M.r for M in mats)
    if any(M.m != m for M in mats):
        raise ValueError("row counts differ")
    rows = tuple(sum((M.rows[i] for M in mats), ()) for i in range(m))
    return RMatrix(m, sum(M.n for M in mats), r, rows)


def ones_count(col: Sequence[int]) -> int:
    # only the symbol 1 counts; 2's and higher never do
    return sum(1 for x in col if x == 1)


def restrict_rows(A: RMatrix, S: Sequence[int]) -> RMatrix:
    if len(set(S)) != len(S):
        raise ValueError("duplicated row index")
    for i in S:
        if not 0 <= i < A.m:
            raise ValueError(f"row index {i} out of range")
    return RMatrix(len(S), A.n, A.r, tuple(A.rows[i] for i in S))


def select_columns(A: RMatrix, cols: Sequence[int]) -> RMatrix:
    return RMatrix(A.m, len(cols), A.r, tuple(tuple(row[j] for j in cols) for row in A.rows))


def submatrix(A: RMatrix, rows: Sequence[int], cols: Sequence[int]) -> RMatrix:
    return RMatrix(len(rows), len(cols), A.r, tuple(tuple(A.rows[i][j] for j in cols) for i in rows))


def delete_row(A: RMatrix, i: int) -> RMatrix:
    return restrict_rows(A, [k for k in range(A.m) if k != i])


def format_matrix(A: RMatrix) -> str:
    lines = [f"{A.m} {A.n} {A.r}"]
    lines += ["".join(str(x) for x in row) for row in A.rows]
    return "\n".join(lines) + "\n"


def parse_matrices(text: str) -> list[RMatrix]:
    """Parse zero or more matrices in the text format.

    Lines starting with ``#`` are comments. Blank lines are skipped between
    matrices; inside a body they are taken as rows (a 0-column matrix has
    empty rows).
    """
    lines = text.splitlines()
    out = []
    i = 0
    while i < len(lines):
        line = lines[i].strip()
        i += 1
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3 or not all(p.isdigit() for p in parts):
            raise MatrixFormatError(f"malformed header {line!r}; expected 'm n r'")
        m, n, r = (int(p) for p in parts)
        if not 2 <= r <= MAX_ALPHABET:
            raise MatrixFormatError(f"alphabet size {r} out of range")
        rows = []
        while len(rows) < m:
            if i >= len(lines):
                raise MatrixFormatError(f"expected {m} rows, found {len(rows)}")
            body = lines[i].strip()
            i += 1
            if body.startswith("#"):
                continue
            if len(body) != n or not all(ch.isdigit() for ch in body):
                raise MatrixFormatError(f"row {len(rows)} is {body!r}; expected {n} digits")
            row = tuple(int(ch) for ch in body)
            if any(x >= r for x in row):
                raise MatrixFormatError(f"symbol >= {r} in row {len(rows)}")
            rows.append(row)
        out.append(RMatrix(m, n, r, tuple(rows)))
    return out


def parse_matrix(text: str) -> RMatrix:
    mats = parse_matrices(text)
    if len(mats) != 1:
        raise MatrixFormatError(f"expected exactly one matrix, found {len(mats)}")
    return mats[0]
