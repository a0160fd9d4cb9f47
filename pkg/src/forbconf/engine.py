"""Exact forb, forb_k and forbmax by branch-and-bound over column sets.

Feasibility (avoiding every member of the family) is closed under taking
subsets, so the search only ever extends feasible sets. Candidates are
tried in ascending column-id order. Two bounds prune a node: the plain
candidate count, and a greedy colouring of the pairwise-compatibility graph
on the candidates (a feasible set is a clique in that graph). When every
member has at most two columns, feasibility is exactly pairwise and no
containment test is needed during the search.
"""

from __future__ import annotations

import itertools
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from forbconf.matrix import RMatrix, decode_column, ones_count
from forbconf.patterns import ConfigFamily, canonical_config, contains, contains_using, find_violation


@dataclass(frozen=True)
class SearchConfig:
    node_budget: int | None = None
    time_budget: float | None = None  # seconds
    jobs: int = 1
    symbol_symmetry: bool = False

    def __post_init__(self) -> None:
        if self.node_budget is not None and self.node_budget <= 0:
            raise ValueError("node budget must be positive")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ValueError("time budget must be positive")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")


@dataclass
class ForbResult:
    value: int
    extremal: RMatrix
    m: int
    r: int
    family: str = ""
    k: int | None = None
    nodes: int = 0
    elapsed: float = 0.0
    exact: bool = True

    def to_json(self) -> dict:
        from forbconf.matrix import format_matrix

        return {
            "m": self.m,
            "r": self.r,
            "family": self.family,
            "k": self.k,
            "value": self.value,
            "extremal": format_matrix(self.extremal),
            "nodes": self.nodes,
            "elapsed_ms": round(self.elapsed * 1000, 3),
            "exact": self.exact,
        }


class _BudgetExhausted(Exception):
    pass


class _Incumbent:
    """Best (value, branch) pair shared by concurrent top-level branches."""

    def __init__(self, value: int, mask: int):
        self.lock = threading.Lock()
        self.value = value
        self.branch = -1
        self.mask = mask

    def offer(self, value: int, branch: int, mask: int) -> None:
        with self.lock:
            if value > self.value or (value == self.value and branch < self.branch):
                self.value, self.branch, self.mask = value, branch, mask

    def beats(self, bound: int, branch: int) -> bool:
        # True when a subtree of `branch` with this bound cannot improve the answer
        v, b = self.value, self.branch
        return bound < v or (bound == v and (b == -1 or b <= branch))


class _Search:
    def __init__(self, m: int, r: int, fam: ConfigFamily, k: int | None, cfg: SearchConfig):
        self.m, self.r, self.fam, self.k, self.cfg = m, r, fam, k, cfg
        universe = [decode_column(v, m, r) for v in range(r**m)]
        if k is not None:
            universe = [c for c in universe if ones_count(c) == k]
        # columns that alone already contain a member never enter the search
        singles = [M for M in fam if M.n <= 1]
        self.cols = [c for c in universe if not any(contains(RMatrix.from_columns([c], m, r), M) for M in singles)]
        n = len(self.cols)
        self.n = n
        self.bits = [[0] * r for _ in range(m)]
        for j, c in enumerate(self.cols):
            for i, x in enumerate(c):
                self.bits[i][x] |= 1 << j
        self.big = [M for M in fam if M.n > 2]
        pairs = [M for M in fam if M.n == 2]
        self.adj = [0] * n
        for u, v in itertools.combinations(range(n), 2):
            pair = RMatrix.from_columns([self.cols[u], self.cols[v]], m, r)
            if not any(contains(pair, M) for M in pairs):
                self.adj[u] |= 1 << v
                self.adj[v] |= 1 << u
        self.nodes = 0
        self.lock = threading.Lock()
        self.deadline = time.monotonic() + cfg.time_budget if cfg.time_budget else None

    def _tick(self) -> None:
        with self.lock:
            self.nodes += 1
            nodes = self.nodes
        if self.cfg.node_budget is not None and nodes > self.cfg.node_budget:
            raise _BudgetExhausted
        if self.deadline is not None and nodes % 256 == 0 and time.monotonic() > self.deadline:
            raise _BudgetExhausted

    def color_bound(self, cand: int) -> int:
        adj = self.adj
        colors = 0
        while cand:
            colors += 1
            q = cand
            while q:
                low = q & -q
                v = low.bit_length() - 1
                cand &= ~low
                q &= ~low & ~adj[v]
        return colors

    def feasible_with(self, mask: int, v: int) -> bool:
        for M in self.big:
            if contains_using(self.bits, self.cols[v], v, M, mask) is not None:
                return False
        return True

    def expand(self, mask: int, size: int, cand: int, inc: _Incumbent, branch: int) -> None:
        self._tick()
        if size >= inc.value:
            inc.offer(size, branch, mask)
        while cand:
            if inc.beats(size + cand.bit_count(), branch):
                return
            if inc.beats(size + self.color_bound(cand), branch):
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand &= ~low
            new_mask = mask | low
            if self.big and not self.feasible_with(new_mask, v):
                continue
            # only later columns: column symmetry is broken by treating solutions as sets
            self.expand(new_mask, size + 1, cand & self.adj[v], inc, branch)

    def roots(self) -> list[int]:
        if not self.cfg.symbol_symmetry:
            return list(range(self.n))
        perms = symbol_symmetries(self.fam, self.r, fix_one=self.k is not None)
        index = {c: j for j, c in enumerate(self.cols)}
        out = []
        for j, c in enumerate(self.cols):
            images = [index.get(tuple(p[x] for x in c)) for p in perms]
            # a column is a root only if it is least in its orbit
            if all(img is None or img >= j for img in images):
                out.append(j)
        return out

    def run(self) -> tuple[int, int, bool]:
        inc = _Incumbent(0, 0)
        exact = True
        roots = self.roots()
        full = (1 << self.n) - 1

        def branch(idx: int) -> None:
            v = roots[idx]
            higher = full & ~((1 << (v + 1)) - 1)
            self._tick()
            if self.big and not self.feasible_with(1 << v, v):
                return
            self.expand(1 << v, 1, higher & self.adj[v], inc, idx)

        try:
            if self.cfg.jobs == 1:
                for idx in range(len(roots)):
                    if inc.beats(self.n - roots[idx], idx):
                        break
                    branch(idx)
            else:
                with ThreadPoolExecutor(max_workers=self.cfg.jobs) as pool:
                    futures = [pool.submit(branch, idx) for idx in range(len(roots))]
                    for f in futures:
                        f.result()
        except _BudgetExhausted:
            exact = False
        return inc.value, inc.mask, exact


def symbol_symmetries(fam: ConfigFamily, r: int, fix_one: bool = False) -> list[tuple[int, ...]]:
    """Non-identity symbol permutations mapping the family onto itself."""
    keys = {(M.m, M.n, M.rows) for M in fam}
    out = []
    for p in itertools.permutations(range(r)):
        if p == tuple(range(r)) or (fix_one and r > 1 and p[1] != 1):
            continue
        ok = True
        for M in fam:
            img = RMatrix(M.m, M.n, r, tuple(tuple(p[x] for x in row) for row in M.rows))
            C = canonical_config(img)
            if (C.m, C.n, C.rows) not in keys:
                ok = False
                break
        if ok:
            out.append(p)
    return out


def _check_family(m: int, r: int, fam: ConfigFamily) -> None:
    if m < 0:
        raise ValueError("m must be >= 0")
    if r < 2:
        raise ValueError("r must be >= 2")
    if fam.r > r:
        for M in fam:
            if any(x >= r for row in M.rows for x in row):
                raise ValueError(f"family alphabet exceeds r={r}")


def _solve(m: int, r: int, fam: ConfigFamily, k: int | None, cfg: SearchConfig | None, label: str) -> ForbResult:
    cfg = cfg or SearchConfig()
    _check_family(m, r, fam)
    t0 = time.perf_counter()
    search = _Search(m, r, fam, k, cfg)
    value, mask, exact = search.run()
    cols = [search.cols[j] for j in range(search.n) if mask >> j & 1]
    return ForbResult(
        value=value,
        extremal=RMatrix.from_columns(cols, m, r),
        m=m,
        r=r,
        family=label,
        k=k,
        nodes=search.nodes,
        elapsed=time.perf_counter() - t0,
        exact=exact,
    )


def forb_exact(m: int, r: int, fam: ConfigFamily, cfg: SearchConfig | None = None, label: str = "") -> ForbResult:
    """Maximum column count of a simple m-rowed r-matrix avoiding ``fam``.

    If a budget runs out, the returned result has ``exact=False`` and its
    value is only a lower bound.
    """
    return _solve(m, r, fam, None, cfg, label)


def forb_k_exact(
    m: int, r: int, fam: ConfigFamily, k: int, cfg: SearchConfig | None = None, label: str = ""
) -> ForbResult:
    """As :func:`forb_exact`, with every column holding exactly k ones."""
    if not 0 <= k <= m:
        raise ValueError("need 0 <= k <= m")
    return _solve(m, r, fam, k, cfg, label)


@dataclass
class ForbmaxReport:
    results: list[ForbResult] = field(default_factory=list)

    @property
    def values(self) -> list[int]:
        return [res.value for res in self.results]

    @property
    def value(self) -> int:
        return max(self.values)

    @property
    def exact(self) -> bool:
        return all(res.exact for res in self.results)

    @property
    def monotone(self) -> bool:
        v = self.values
        return all(a <= b for a, b in zip(v, v[1:]))


def forbmax(m: int, r: int, fam: ConfigFamily, cfg: SearchConfig | None = None, label: str = "") -> ForbmaxReport:
    """forb for every m' = 1..m (just m'=0 when m == 0) plus the running max."""
    ms = range(1, m + 1) if m > 0 else [0]
    return ForbmaxReport([forb_exact(mm, r, fam, cfg, label) for mm in ms])


class ValidationError(AssertionError):
    pass


def validate_result(res: ForbResult, fam: ConfigFamily, *, raise_on_fail: bool = False) -> bool:
    """Re-check simplicity, avoidance, cardinality and 1-maximality.

    Global optimality is not re-proved. On failure either returns False or
    raises :class:`ValidationError` naming the first failed check.
    """
    A = res.extremal

    def fail(msg: str) -> bool:
        if raise_on_fail:
            raise ValidationError(msg)
        return False

    if len(set(A.columns)) != A.n:
        return fail("extremal matrix is not simple")
    hit = find_violation(A, fam)
    if hit is not None:
        return fail(f"extremal matrix contains a family member (witness {hit[1]})")
    if A.n != res.value:
        return fail(f"cardinality {A.n} != value {res.value}")
    present = set(A.columns)
    pool = [decode_column(v, A.m, A.r) for v in range(A.r**A.m)]
    if res.k is not None:
        pool = [c for c in pool if ones_count(c) == res.k]
    for c in pool:
        if c in present:
            continue
        bigger = RMatrix.from_columns(list(A.columns) + [c], A.m, A.r)
        if find_violation(bigger, fam) is None:
            return fail(f"not 1-maximal: column {c} can be added")
    return True
