"""Checkable combinatorial operations used to bound forb.

Covers the recurrence f and its multinomial bound, decomposition of a simple
matrix by one row, the standard decomposition B(i), C_{a,b}(i), P-templates
and their extraction into triangular/identity configurations via
monochromatic cliques, 0/1 pair counting, and the density split of columns.
"""

from __future__ import annotations

import itertools
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from forbconf.matrix import RMatrix, dedup_columns, delete_row, product, submatrix
from forbconf.patterns import (
    Witness,
    canonical_config,
    contains,
    gen_I,
    gen_T,
    gen_T3,
    half_triangular,
)

INT_LIMIT = 2**63 - 1


def _checked(value: int, limit: int | None, what: str) -> int:
    if limit is not None and value > limit:
        raise OverflowError(f"{what} exceeds the integer limit {limit}")
    return value


# -- recurrence --------------------------------------------------------------


def _check_pvector(p: Sequence[int]) -> tuple[int, ...]:
    p = tuple(int(x) for x in p)
    if not p or any(x < 1 for x in p):
        raise ValueError(f"p-vector entries must be positive integers, got {p}")
    return p


@lru_cache(maxsize=None)
def _f(p: tuple[int, ...]) -> int:
    if 1 in p:
        return 1
    return sum(_f(p[:i] + (p[i] - 1,) + p[i + 1:]) for i in range(len(p)))


def f_recurrence(p: Sequence[int], limit: int | None = INT_LIMIT) -> int:
    """f(p) = sum_i f(p with p_i decreased by one); f = 1 once some p_i is 1."""
    p = _check_pvector(p)
    depth = sum(p) - len(p)
    if depth + 200 > sys.getrecursionlimit():
        sys.setrecursionlimit(depth + 200)
    return _checked(_f(p), limit, f"f{p}")


def multinomial_bound(p: Sequence[int], limit: int | None = INT_LIMIT) -> int:
    p = _check_pvector(p)
    num = math.factorial(sum(p) - len(p))
    den = math.prod(math.factorial(x - 1) for x in p)
    return _checked(num // den, limit, f"multinomial bound for {p}")


def ramsey_upper(p: int, t: int, limit: int | None = INT_LIMIT) -> int:
    """The crude bound 2^(p t) on the p-colour Ramsey number R_p(t, ..., t)."""
    if p < 1 or t < 1:
        raise ValueError("p and t must be positive")
    return _checked(2 ** (p * t), limit, f"2^({p}*{t})")


# -- decompositions ----------------------------------------------------------


def decompose_by_row_w(A: RMatrix, w: int) -> list[RMatrix]:
    """G_s: the other rows under the columns carrying symbol s in row w."""
    if not 0 <= w < A.m:
        raise ValueError(f"row {w} out of range")
    rest = delete_row(A, w)
    return [
        RMatrix.from_columns([c for c, full in zip(rest.columns, A.columns) if full[w] == s], A.m - 1, A.r)
        for s in range(A.r)
    ]


@dataclass
class StandardDecomposition:
    row: int
    B: RMatrix
    C_parts: dict[tuple[int, int], RMatrix]
    n_columns: int
    triple_repeats: int = 0

    @property
    def rhs(self) -> int:
        return self.B.n + sum(C.n for C in self.C_parts.values())

    @property
    def inequality_holds(self) -> bool:
        return self.n_columns <= self.rhs

    def to_json(self) -> dict:
        from forbconf.matrix import format_matrix

        return {
            "row": self.row,
            "n_columns": self.n_columns,
            "B_columns": self.B.n,
            "C_columns": {f"{a},{b}": C.n for (a, b), C in self.C_parts.items()},
            "rhs": self.rhs,
            "inequality_holds": self.inequality_holds,
            "triple_repeats": self.triple_repeats,
            "B": format_matrix(self.B),
            "C": {f"{a},{b}": format_matrix(C) for (a, b), C in self.C_parts.items()},
        }


def standard_decomposition(A: RMatrix, i: int, check: bool = True) -> StandardDecomposition:
    """Delete row i; B is what remains deduplicated, C_{a,b} the remaining
    columns that occur under both a and b in row i."""
    if len(set(A.columns)) != A.n:
        raise ValueError("standard decomposition needs a simple matrix")
    if not 0 <= i < A.m:
        raise ValueError(f"row {i} out of range")
    rest = delete_row(A, i)
    under: dict[tuple[int, ...], set[int]] = {}
    for col, full in zip(rest.columns, A.columns):
        under.setdefault(col, set()).add(full[i])
    C_parts = {}
    for a, b in itertools.combinations(range(A.r), 2):
        cols = [c for c, syms in under.items() if a in syms and b in syms]
        C_parts[(a, b)] = dedup_columns(RMatrix.from_columns(cols, A.m - 1, A.r))
    dec = StandardDecomposition(
        row=i,
        B=dedup_columns(rest),
        C_parts=C_parts,
        n_columns=A.n,
        triple_repeats=sum(1 for syms in under.values() if len(syms) >= 3),
    )
    if check and not dec.inequality_holds:
        raise AssertionError(f"decomposition inequality fails: {A.n} > {dec.rhs}")
    return dec


def pair_times(a: int, b: int, C: RMatrix) -> RMatrix:
    """[a b] x C, the configuration each C_{a,b}(i) certifies inside A."""
    return product(RMatrix(1, 2, C.r, ((a, b),)), C)


def identity_precondition(A: RMatrix, S: Sequence[int]) -> bool:
    """[0 | I_|S|] is a configuration of A restricted to S, and no two rows
    of S carry a [1 over 1]."""
    S = list(S)
    k = len(S)
    if k == 0:
        return True
    from forbconf.matrix import restrict_rows

    target = RMatrix(k, k + 1, A.r, tuple((0,) + tuple(1 if j == t else 0 for j in range(k)) for t in range(k)))
    if contains(restrict_rows(A, S), target) is None:
        return False
    for x, y in itertools.combinations(S, 2):
        if any(A.rows[x][j] == 1 and A.rows[y][j] == 1 for j in range(A.n)):
            return False
    return True


# -- P-templates -------------------------------------------------------------


def is_P_template(G: RMatrix, x: int, s: int | None = None) -> tuple[bool, tuple[int, ...]]:
    """Check the template shape: x strictly below the diagonal, no x on it.

    With ``s`` given, a template whose x is one of 0..s-1 must also have every
    diagonal symbol in s..r-1. Returns (ok, diagonal symbols).
    """
    if G.m != G.n:
        return False, ()
    diag = tuple(G.rows[j][j] for j in range(G.m))
    if any(y == x for y in diag):
        return False, diag
    if any(G.rows[i][j] != x for i in range(G.m) for j in range(i)):
        return False, diag
    if s is not None and x < s and any(y < s for y in diag):
        return False, diag
    return True, diag


def find_P_template(
    A: RMatrix,
    x: int,
    t: int,
    s: int | None = None,
    exhaustive: bool = False,
    node_limit: int = 10_000,
) -> tuple[list[int], list[int]] | None:
    """Grow a template column by column.

    At stage k the chosen columns c_1..c_k have rows r_1..r_k with
    A[r_j][c_j] != x, and ``pool`` is the set of rows where every chosen
    column reads x; the next pivot row must come from the pool. Columns
    leaving the largest pool are tried first. Without ``exhaustive`` the
    search gives up after ``node_limit`` nodes, so None is not a proof of
    absence.
    """
    if t < 1:
        raise ValueError("t must be positive")
    if exhaustive and (t > 6 or A.m > 12):
        raise ValueError("exhaustive template search is capped at t <= 6 and m <= 12")
    nodes = 0

    def ok_diag(y: int) -> bool:
        return y != x and not (s is not None and x < s and y < s)

    def rec(rows: list[int], cols: list[int], pool: frozenset[int]):
        nonlocal nodes
        if len(cols) == t:
            return rows, cols
        nodes += 1
        if not exhaustive and nodes > node_limit:
            return None
        options = []
        for c in range(A.n):
            if c in cols:
                continue
            col = [A.rows[i][c] for i in range(A.m)]
            for pr in sorted(pool):
                if not ok_diag(col[pr]):
                    continue
                new_pool = frozenset(i for i in pool if i != pr and col[i] == x)
                options.append((-len(new_pool), c, pr, new_pool))
        options.sort(key=lambda o: o[:3])
        for _, c, pr, new_pool in options:
            if len(new_pool) < t - len(cols) - 1:
                continue
            found = rec(rows + [pr], cols + [c], new_pool)
            if found is not None:
                return found
        return None

    return rec([], [], frozenset(range(A.m)))


# -- Ramsey cliques ----------------------------------------------------------


@dataclass
class EdgeColoring:
    """Colour of every unordered pair of vertices 0..n-1."""

    n: int
    colors: dict[tuple[int, int], int] = field(default_factory=dict)
    palette: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        norm = {}
        for (u, v), c in self.colors.items():
            if u == v or not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"bad edge {(u, v)}")
            norm[(min(u, v), max(u, v))] = c
        self.colors = norm
        missing = [e for e in itertools.combinations(range(self.n), 2) if e not in norm]
        if missing:
            raise ValueError(f"uncoloured edges, e.g. {missing[0]}")
        if self.palette is not None and any(c not in self.palette for c in norm.values()):
            raise ValueError("colour outside the declared palette")

    def color(self, u: int, v: int) -> int:
        return self.colors[(min(u, v), max(u, v))]


def mono_clique(col: EdgeColoring, c: int, size: int) -> list[int] | None:
    """Exact search for ``size`` vertices whose edges all have colour c."""
    if size < 1:
        raise ValueError("size must be positive")
    if size > col.n:
        return None
    if size == 1:
        return [0]
    adj = [0] * col.n
    for (u, v), k in col.colors.items():
        if k == c:
            adj[u] |= 1 << v
            adj[v] |= 1 << u

    def rec(chosen: list[int], cand: int) -> list[int] | None:
        if len(chosen) == size:
            return chosen
        if len(chosen) + cand.bit_count() < size:
            return None
        while cand:
            if len(chosen) + cand.bit_count() < size:
                return None
            low = cand & -cand
            v = low.bit_length() - 1
            cand &= ~low
            found = rec(chosen + [v], cand & adj[v])
            if found is not None:
                return found
        return None

    return rec([], (1 << col.n) - 1)


# -- extraction ---------------------------------------------------------------


@dataclass
class Extraction:
    """Outcome of running the template extraction on a concrete matrix."""

    found: RMatrix | None
    witness: Witness | None
    kind: str  # "T", "I", "T-halved", "exception" or "none"
    in_target: bool  # member of T_l(r) minus T_l(s)
    diagonal_symbol: int | None = None
    clique_color: int | None = None
    clique: list[int] = field(default_factory=list)
    diagonal_count: int = 0
    ramsey_estimate: int = 0
    below_threshold: bool = True

    @property
    def success(self) -> bool:
        return self.found is not None

    def to_json(self) -> dict:
        from forbconf.matrix import format_matrix

        return {
            "success": self.success,
            "kind": self.kind,
            "in_target": self.in_target,
            "found": format_matrix(self.found) if self.found is not None else None,
            "witness": self.witness.to_json() if self.witness else None,
            "diagonal_symbol": self.diagonal_symbol,
            "clique_color": self.clique_color,
            "clique": self.clique,
            "diagonal_count": self.diagonal_count,
            "ramsey_estimate": self.ramsey_estimate,
            "below_threshold": self.below_threshold,
        }


def _in_target(F: RMatrix, s: int) -> bool:
    # members of T_l(r) minus T_l(s): some entry outside 0..s-1
    return any(v >= s for row in F.rows for v in row)


def extract_config_from_template(G: RMatrix, x: int, ell: int, s: int) -> Extraction:
    """Pigeonhole a frequent diagonal symbol z, colour pairs of those rows by
    the entry above the diagonal, and turn a monochromatic clique into a
    configuration.

    Clique colour u = z gives T_l(x, z); u = x gives I_l(z, x); any other u
    gives T_2l(x, z, u), halved to T_l(x, u). When x and u both lie in 0..s-1
    the halved matrix would be a (0,1)-pattern, so T_l(x, z, u) is returned
    as the exception instead. Small inputs below the Ramsey threshold are
    still tried; failure is reported, not raised.
    """
    ok, diag = is_P_template(G, x, s)
    if not ok:
        raise ValueError("G is not a P-template for this x (and s)")
    if ell < 1:
        raise ValueError("ell must be positive")
    r = G.r
    counts: dict[int, int] = {}
    for y in diag:
        counts[y] = counts.get(y, 0) + 1
    ramsey = ramsey_upper(r, 2 * ell, limit=None)
    fallback: Extraction | None = None
    for z in sorted(counts, key=lambda y: (-counts[y], y)):
        verts = [j for j, y in enumerate(diag) if y == z]
        coloring = EdgeColoring(
            len(verts), {(a, b): G.rows[verts[a]][verts[b]] for a, b in itertools.combinations(range(len(verts)), 2)}
        )
        info = dict(diagonal_symbol=z, diagonal_count=counts[z], ramsey_estimate=ramsey,
                    below_threshold=counts[z] < ramsey)
        order = [z, x] + [u for u in range(r) if u not in (x, z)]
        for u in order:
            exceptional = u not in (x, z) and x < s and u < s
            need = ell if u in (x, z) or exceptional else 2 * ell
            clique = mono_clique(coloring, u, need) if len(verts) >= need else None
            if clique is None:
                continue
            rows = [verts[a] for a in clique]
            if u == z:
                kind, rmap, cmap = "T", rows, rows
            elif u == x:
                kind, rmap, cmap = "I", rows, rows
            elif exceptional:
                kind, rmap, cmap = "exception", rows, rows
            else:
                kind, rmap, cmap = "T-halved", rows[0::2], rows[1::2]
            F = submatrix(G, rmap, cmap)
            res = Extraction(F, Witness(tuple(rmap), tuple(cmap)),
                             kind, kind != "exception" and _in_target(F, s), clique_color=u, clique=rows, **info)
            if res.in_target:
                return res
            if fallback is None:
                fallback = res
    if fallback is not None:
        return fallback
    top = max(counts, key=lambda y: (counts[y], -y)) if counts else None
    return Extraction(None, None, "none", False, diagonal_symbol=top,
                      diagonal_count=counts.get(top, 0), ramsey_estimate=ramsey,
                      below_threshold=True)


def expected_extraction(x: int, z: int, u: int, ell: int, s: int, r: int) -> RMatrix:
    """The configuration the case split predicts for diagonal z and clique colour u."""
    if u == z:
        return gen_T(ell, x, z, r)
    if u == x:
        return gen_I(ell, z, x, r)
    if x < s and u < s:
        return gen_T3(ell, x, z, u, r)
    return half_triangular(gen_T3(2 * ell, x, z, u, r))


def same_config(F: RMatrix, G: RMatrix) -> bool:
    return F.shape == G.shape and canonical_config(F).rows == canonical_config(G).rows


# -- counting -----------------------------------------------------------------


def count_01_pairs(col: Sequence[int]) -> int:
    """Ordered row pairs (i, j) with 0 in row i and 1 in row j."""
    zeros = sum(1 for v in col if v == 0)
    ones = sum(1 for v in col if v == 1)
    return zeros * ones


def best_row_pair(A: RMatrix) -> tuple[int, int, int]:
    """Ordered pair (i, j) maximising the columns with 0 in row i and 1 in row j.

    Ties go to the lexicographically first pair; needs at least two rows.
    """
    if A.m < 2:
        raise ValueError("need at least two rows")
    bits = A.symbol_bits
    best = (-1, 0, 0)
    for i in range(A.m):
        for j in range(A.m):
            if i != j:
                cnt = (bits[i][0] & bits[j][1]).bit_count()
                if cnt > best[0]:
                    best = (cnt, i, j)
    return best[1], best[2], best[0]


def split_by_density(
    A: RMatrix, eps: float | Fraction | None = None, ell: int = 2
) -> tuple[RMatrix, RMatrix]:
    """Drop all-2 rows, then split columns on their count of 0's and 1's.

    A column goes to the first part iff that count is at most floor(eps * t),
    t being the number of surviving rows; the rest go to the second part.
    ``eps`` defaults to 1/(4 R) with R = ramsey_upper(3, 2 ell).
    """
    if eps is None:
        eps = Fraction(1, 4 * ramsey_upper(3, 2 * ell))
    eps = Fraction(str(eps)) if isinstance(eps, float) else Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError("eps must lie strictly between 0 and 1")
    keep = [i for i in range(A.m) if any(v != 2 for v in A.rows[i])]
    t = len(keep)
    cut = math.floor(eps * t)
    from forbconf.matrix import restrict_rows

    Ak = restrict_rows(A, keep)
    dense, sparse = [], []
    for col in Ak.columns:
        (sparse if sum(1 for v in col if v != 2) <= cut else dense).append(col)
    return RMatrix.from_columns(sparse, t, A.r), RMatrix.from_columns(dense, t, A.r)
