"""Configuration containment, canonical forms, and the named matrix families."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from forbconf.matrix import Column, RMatrix, decode_column, ones_count

CANONICAL_MAX_DIM = 8


@dataclass(frozen=True)
class Witness:
    """Row and column injections certifying ``F`` as a configuration of ``A``.

    ``row_map[i]`` is the row of A playing F's row i; likewise for columns.
    """

    row_map: tuple[int, ...]
    col_map: tuple[int, ...]

    def verify(self, A: RMatrix, F: RMatrix) -> bool:
        if len(self.row_map) != F.m or len(self.col_map) != F.n:
            return False
        if len(set(self.row_map)) != F.m or len(set(self.col_map)) != F.n:
            return False
        if any(not 0 <= a < A.m for a in self.row_map) or any(not 0 <= c < A.n for c in self.col_map):
            return False
        return all(
            A.rows[self.row_map[i]][self.col_map[j]] == F.rows[i][j] for i in range(F.m) for j in range(F.n)
        )

    def to_json(self) -> dict:
        return {"row_map": list(self.row_map), "col_map": list(self.col_map)}


# -- containment -------------------------------------------------------------


def _distinct_column_groups(F: RMatrix) -> dict[Column, list[int]]:
    groups: dict[Column, list[int]] = {}
    for j, col in enumerate(F.columns):
        groups.setdefault(col, []).append(j)
    return groups


def _row_order(F: RMatrix) -> list[int]:
    return sorted(range(F.m), key=lambda i: (-len(set(F.rows[i])), i))


def _match(slots: list[tuple[list[int], int]], n_f: int) -> list[int] | None:
    """Assign each F-column a distinct A-column from its compatibility bitset.

    Plain augmenting-path bipartite matching; slots carry the F-column
    indices sharing one compatibility set.
    """
    owner: dict[int, int] = {}  # A-column -> F-column
    compat = [0] * n_f
    for idxs, bits in slots:
        for j in idxs:
            compat[j] = bits

    def augment(j: int, seen: set[int]) -> bool:
        bits = compat[j]
        while bits:
            low = bits & -bits
            a = low.bit_length() - 1
            bits ^= low
            if a in seen:
                continue
            seen.add(a)
            if a not in owner or augment(owner[a], seen):
                owner[a] = j
                return True
        return False

    for j in range(n_f):
        if not augment(j, set()):
            return None
    col_map = [0] * n_f
    for a, j in owner.items():
        col_map[j] = a
    return col_map


def embed(
    bits: Sequence[Sequence[int]],
    F: RMatrix,
    avail: int,
    forced: tuple[int, Column] | None = None,
) -> Witness | None:
    """Search for F inside the columns ``avail`` of a matrix given by row bitsets.

    ``bits[a][s]`` is the set of columns carrying symbol s in row a. If
    ``forced`` is ``(c, col)``, one copy of F's column ``col`` must land on
    column c and no other F-column may use c.
    """
    a_m = len(bits)
    if F.m > a_m:
        return None
    groups = _distinct_column_groups(F)
    slots: list[tuple[list[int], int]] = []
    if forced is None:
        for idxs in groups.values():
            slots.append((idxs, avail))
    else:
        c, fcol = forced
        cbit = 1 << c
        if fcol not in groups or not avail & cbit:
            return None
        rest = avail & ~cbit
        for col, idxs in groups.items():
            if col == fcol:
                slots.append((idxs[:1], cbit))
                if len(idxs) > 1:
                    slots.append((idxs[1:], rest))
            else:
                slots.append((idxs, rest))
    if any(b.bit_count() < len(idxs) for idxs, b in slots):
        return None

    order = _row_order(F)
    row_map = [0] * F.m

    def rec(depth: int, compat: list[int], used: int) -> list[int] | None:
        if depth == F.m:
            return _match(list(zip((s[0] for s in slots), compat)), F.n)
        i = order[depth]
        frow = F.rows[i]
        syms = [frow[idxs[0]] for idxs, _ in slots]
        for a in range(a_m):
            if used >> a & 1:
                continue
            brow = bits[a]
            new = []
            for (idxs, _), cp, s in zip(slots, compat, syms):
                nb = cp & brow[s] if s < len(brow) else 0
                if nb.bit_count() < len(idxs):
                    break
                new.append(nb)
            else:
                row_map[i] = a
                found = rec(depth + 1, new, used | (1 << a))
                if found is not None:
                    return found
        return None

    col_map = rec(0, [b for _, b in slots], 0)
    if col_map is None:
        return None
    return Witness(tuple(row_map), tuple(col_map))


def contains(A: RMatrix, F: RMatrix) -> Witness | None:
    """Return a witness for F being a configuration of A, or None."""
    if F.m > A.m or F.n > A.n:
        return None
    if any(x >= A.r for row in F.rows for x in row):
        return None
    return embed(A.symbol_bits, F, (1 << A.n) - 1)


def _multiset_le(small: Column, big: Column) -> bool:
    counts: dict[int, int] = {}
    for x in big:
        counts[x] = counts.get(x, 0) + 1
    for x in small:
        k = counts.get(x, 0)
        if not k:
            return False
        counts[x] = k - 1
    return True


def contains_using(
    bits: Sequence[Sequence[int]], col_value: Column, c: int, F: RMatrix, avail: int
) -> Witness | None:
    """Embedding of F into ``avail`` whose column image includes column c."""
    for fcol in _distinct_column_groups(F):
        if not _multiset_le(fcol, col_value):
            continue
        w = embed(bits, F, avail, forced=(c, fcol))
        if w is not None:
            return w
    return None


# -- canonical forms ---------------------------------------------------------


def canonical_config(F: RMatrix) -> RMatrix:
    """Lexicographically least row-major reading over all row and column permutations.

    For a fixed row order the best column order is the lexicographic sort
    of the columns, so only row orders are searched; prefixes whose leading
    block is not minimal are dropped level by level.
    """
    if F.m > CANONICAL_MAX_DIM or F.n > CANONICAL_MAX_DIM:
        raise ValueError(f"canonical form limited to {CANONICAL_MAX_DIM}x{CANONICAL_MAX_DIM}")
    cols = F.columns
    # state: ordered row prefix -> each column's prefix tuple
    frontier: dict[tuple, tuple[int, ...]] = {(tuple(() for _ in cols), frozenset()): ()}
    best_block: tuple = ()
    for _ in range(F.m):
        best_block = None
        nxt: dict[tuple, tuple[int, ...]] = {}
        for (col_prefixes, chosen), prefix in frontier.items():
            for i in range(F.m):
                if i in chosen:
                    continue
                cp = tuple(t + (col[i],) for t, col in zip(col_prefixes, cols))
                ordered = sorted(cp)
                block = tuple(t[k] for k in range(len(prefix) + 1) for t in ordered)
                if best_block is None or block < best_block:
                    best_block = block
                    nxt = {}
                if block == best_block:
                    nxt.setdefault((cp, chosen | {i}), prefix + (i,))
        frontier = nxt
    if F.m == 0:
        return RMatrix(0, F.n, F.r, ())
    rows = tuple(tuple(best_block[k * F.n:(k + 1) * F.n]) for k in range(F.m))
    return RMatrix(F.m, F.n, F.r, rows)


def config_equal(F: RMatrix, G: RMatrix) -> bool:
    if F.shape != G.shape:
        return False
    if sorted(x for row in F.rows for x in row) != sorted(x for row in G.rows for x in row):
        return False
    return canonical_config(F).rows == canonical_config(G).rows


# -- families ----------------------------------------------------------------


@dataclass(frozen=True)
class ConfigFamily:
    """A set of configurations over alphabet {0..r-1}, deduplicated up to
    row and column permutation. Members are stored in canonical form."""

    r: int
    members: tuple[RMatrix, ...] = ()

    @classmethod
    def of(cls, mats: Iterable[RMatrix], r: int | None = None) -> ConfigFamily:
        mats = list(mats)
        if r is None:
            r = max([2] + [M.r for M in mats])
        seen = set()
        out = []
        for M in mats:
            if M.n == 0:
                raise ValueError("a 0-column configuration is contained in every matrix")
            if any(x >= r for row in M.rows for x in row):
                raise ValueError(f"member uses a symbol outside alphabet of size {r}")
            C = canonical_config(M).with_alphabet(r)
            key = (C.m, C.n, C.rows)
            if key not in seen:
                seen.add(key)
                out.append(C)
        return cls(r, tuple(out))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[RMatrix]:
        return iter(self.members)

    def _keys(self) -> set:
        return {(M.m, M.n, M.rows) for M in self.members}

    def __contains__(self, F: RMatrix) -> bool:
        C = canonical_config(F)
        return (C.m, C.n, C.rows) in self._keys()

    def union(self, other: ConfigFamily) -> ConfigFamily:
        return ConfigFamily.of(self.members + other.members, max(self.r, other.r))

    def minus(self, other: ConfigFamily) -> ConfigFamily:
        drop = other._keys()
        keep = [M for M in self.members if (M.m, M.n, M.rows) not in drop]
        return ConfigFamily(max(self.r, other.r), tuple(M.with_alphabet(max(self.r, other.r)) for M in keep))

    def with_alphabet(self, r: int) -> ConfigFamily:
        return ConfigFamily.of(self.members, r)

    def canonical_key(self) -> str:
        return ";".join(sorted("/".join("".join(map(str, row)) or "-" for row in M.rows) + f"#{M.n}"
                               for M in self.members))


def family_minus(A: ConfigFamily, B: ConfigFamily) -> ConfigFamily:
    return A.minus(B)


def find_violation(A: RMatrix, fam: ConfigFamily) -> tuple[RMatrix, Witness] | None:
    for F in fam:
        w = contains(A, F)
        if w is not None:
            return F, w
    return None


def avoids(A: RMatrix, fam: ConfigFamily) -> bool:
    return find_violation(A, fam) is None


# -- generators --------------------------------------------------------------


def _alphabet(r: int | None, *symbols: int) -> int:
    top = max(symbols) + 1
    if r is None:
        return max(2, top)
    if top > r:
        raise ValueError(f"symbol {top - 1} outside alphabet of size {r}")
    return r


def gen_I(ell: int, a: int, b: int, r: int | None = None) -> RMatrix:
    """ell x ell with a on the diagonal, b elsewhere."""
    if ell < 1:
        raise ValueError("ell must be positive")
    if a == b:
        raise ValueError("generalized identity needs a != b")
    r = _alphabet(r, a, b)
    return RMatrix(ell, ell, r, tuple(tuple(a if i == j else b for j in range(ell)) for i in range(ell)))


def gen_T3(ell: int, a: int, b: int, c: int, r: int | None = None) -> RMatrix:
    """a below the diagonal, b on it, c above it."""
    if ell < 1:
        raise ValueError("ell must be positive")
    r = _alphabet(r, a, b, c)
    rows = tuple(tuple(a if i > j else b if i == j else c for j in range(ell)) for i in range(ell))
    return RMatrix(ell, ell, r, rows)


def gen_T(ell: int, a: int, b: int, r: int | None = None) -> RMatrix:
    return gen_T3(ell, a, b, b, r)


def gen_Tfam(ell: int, r: int) -> ConfigFamily:
    if ell < 1 or r < 2:
        raise ValueError("need ell >= 1 and r >= 2")
    mats = []
    for a in range(r):
        for b in range(r):
            if a != b:
                mats.append(gen_I(ell, a, b, r))
                mats.append(gen_T(ell, a, b, r))
    return ConfigFamily.of(mats, r)


def gen_Fabcd(a: int, b: int, c: int, d: int) -> RMatrix:
    if min(a, b, c, d) < 0:
        raise ValueError("block sizes must be non-negative")
    if a + b + c + d < 1:
        raise ValueError("F_{a,b,c,d} needs at least one row")
    rows = [(1, 1)] * a + [(1, 0)] * b + [(0, 1)] * c + [(0, 0)] * d
    return RMatrix(len(rows), 2, 2, tuple(rows))


def gen_H() -> RMatrix:
    return RMatrix.from_rows([[0, 1, 0], [0, 0, 1]], r=2)


def gen_K2() -> RMatrix:
    return RMatrix.from_rows([[0, 0, 1, 1], [0, 1, 0, 1]], r=2)


def half_triangular(T: RMatrix) -> RMatrix:
    """Odd-indexed rows and even-indexed columns (1-based) of a 2k x 2k matrix."""
    if T.m != T.n or T.m % 2:
        raise ValueError("half_triangular needs a square matrix of even order")
    k = T.m // 2
    rows = tuple(tuple(T.rows[2 * i][2 * j + 1] for j in range(k)) for i in range(k))
    return RMatrix(k, k, T.r, rows)


def all_columns(m: int, r: int, k: int | None = None) -> RMatrix:
    """Every r-ary column on m rows, optionally only those with exactly k ones."""
    if k is not None and not 0 <= k <= m:
        raise ValueError("need 0 <= k <= m")
    cols = [decode_column(v, m, r) for v in range(r**m)]
    if k is not None:
        cols = [c for c in cols if ones_count(c) == k]
    return RMatrix.from_columns(cols, m, r)
