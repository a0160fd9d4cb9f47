"""The thirteen acceptance criteria, one test each.

Each test records a [PASS]/[FAIL] line (shown in the terminal summary) and
checks its own wall-clock limit.
"""

import itertools
import json
import math
import random
import time
from fractions import Fraction

from oracles import brute_contains, brute_forb

from forbconf.cli import main
from forbconf.engine import forb_exact, forb_k_exact, validate_result
from forbconf.family_spec import parse_family
from forbconf.growth import ResultCache, cached_forb, run_growth
from forbconf.matrix import RMatrix, dedup_columns, encode_column
from forbconf.patterns import (
    ConfigFamily,
    all_columns,
    avoids,
    contains,
    family_minus,
    gen_T,
    gen_T3,
    gen_Tfam,
    half_triangular,
)
from forbconf.prooflab import (
    best_row_pair,
    count_01_pairs,
    extract_config_from_template,
    f_recurrence,
    multinomial_bound,
    pair_times,
    standard_decomposition,
)


def rand_matrix(rng, m, n, r):
    return RMatrix(m, n, r, tuple(tuple(rng.randrange(r) for _ in range(n)) for _ in range(m)))


def test_01_containment_oracle(acceptance_log):
    rng = random.Random(2024)
    t0 = time.perf_counter()
    agree = 0
    for _ in range(200):
        A = rand_matrix(rng, rng.randint(1, 5), rng.randint(1, 7), 3)
        F = rand_matrix(rng, rng.randint(1, 3), rng.randint(1, 3), 3)
        w = contains(A, F)
        o = brute_contains(A.rows, F.rows, A.n, F.n)
        if (w is None) == (o is None) and (w is None or w.verify(A, F)):
            agree += 1
    dt = time.perf_counter() - t0
    acceptance_log("1 containment vs brute force", agree == 200 and dt < 60, f"{agree}/200 agree in {dt:.1f}s")


def test_02_identity_two(acceptance_log):
    fam = parse_family("I(2,1,0)")
    members = [(F.rows, F.n) for F in fam]
    got, slowest, ok = [], 0.0, True
    for m in range(1, 6):
        t0 = time.perf_counter()
        res = forb_exact(m, 2, fam)
        slowest = max(slowest, time.perf_counter() - t0)
        got.append(res.value)
        ok &= res.exact and res.value == m + 1 and validate_result(res, fam)
        if m <= 4:
            ok &= brute_forb(m, 2, members) == m + 1
    acceptance_log("2 forb(m,2,{I2}) = m+1, m=1..5", ok and slowest < 30, f"values {got}, slowest {slowest:.2f}s")


def test_03_empty_family(acceptance_log):
    ok, got = True, []
    for m in range(1, 5):
        res = forb_exact(m, 2, ConfigFamily(2))
        got.append(res.value)
        ok &= res.value == 2**m and set(res.extremal.columns) == set(all_columns(m, 2).columns)
    acceptance_log("3 forb(m,2,empty) = 2^m with full column set", ok, f"values {got}")


def test_04_tfam_plateau(acceptance_log):
    fam = gen_Tfam(2, 2)
    t0 = time.perf_counter()
    vals = [forb_exact(m, 2, fam).value for m in (4, 5, 6)]
    dt = time.perf_counter() - t0
    acceptance_log("4 Tfam(2,2) plateau at m=4,5,6", len(set(vals)) == 1 and dt < 300, f"values {vals} in {dt:.1f}s")


def test_05_all_01_columns_avoid(acceptance_log):
    fam = family_minus(gen_Tfam(2, 3), gen_Tfam(2, 2))
    t0 = time.perf_counter()
    ok = all(avoids(all_columns(m, 2).with_alphabet(3), fam) for m in (3, 4, 5))
    dt = time.perf_counter() - t0
    acceptance_log("5 all (0,1)-columns avoid Tfam(2,3)-Tfam(2,2), m=3,4,5", ok and dt < 60, f"{dt:.2f}s")


def test_06_halving(acceptance_log):
    bad = [
        (ell, a, b, c)
        for ell in range(1, 5)
        for a, b, c in itertools.product(range(3), repeat=3)
        if half_triangular(gen_T3(2 * ell, a, b, c, 3)) != gen_T(ell, a, c, 3)
    ]
    acceptance_log("6 halving identity, r=3, l<=4", not bad, f"{4 * 27 - len(bad)}/108 exact")


def slow_f(p):
    if 1 in p:
        return 1
    return sum(slow_f(p[:i] + (p[i] - 1,) + p[i + 1:]) for i in range(len(p)))


def test_07_recurrence(acceptance_log):
    t0 = time.perf_counter()
    checked, ok = 0, True
    for r in range(1, 5):
        for p in itertools.product(range(1, 13), repeat=r):
            if sum(p) > 12:
                continue
            v = f_recurrence(p)
            ok &= v == slow_f(p) and v <= multinomial_bound(p)
            checked += 1
    dt = time.perf_counter() - t0
    acceptance_log("7 recurrence vs unmemoized and bound", ok and dt < 10, f"{checked} vectors in {dt:.2f}s")


def test_08_standard_decomposition(acceptance_log):
    rng = random.Random(8)
    t0 = time.perf_counter()
    ok, strict = True, 0
    for _ in range(100):
        m = rng.randint(1, 6)
        pool = list(range(3**m))
        ids = rng.sample(pool, rng.randint(1, min(len(pool), 40)))
        A = dedup_columns(RMatrix.from_columns([tuple(v // 3**i % 3 for i in range(m)) for v in ids], m, 3))
        dec = standard_decomposition(A, rng.randrange(m), check=False)
        ok &= dec.inequality_holds
        strict += dec.n_columns < dec.rhs
        for (a, b), C in dec.C_parts.items():
            if C.n:
                w = contains(A, pair_times(a, b, C))
                ok &= w is not None and w.verify(A, pair_times(a, b, C))
    dt = time.perf_counter() - t0
    acceptance_log("8 standard decomposition inequality and [a b]xC in A", ok and dt < 120,
                   f"100 matrices, {strict} strict, {dt:.2f}s")


def test_09_pair_counting(acceptance_log):
    rng = random.Random(9)
    t0 = time.perf_counter()
    ok = True
    for _ in range(1000):
        col = [rng.randrange(3) for _ in range(rng.randint(0, 12))]
        ok &= count_01_pairs(col) == col.count(0) * col.count(1)
    for _ in range(100):
        A = rand_matrix(rng, rng.randint(2, 6), rng.randint(1, 12), 3)
        table = {
            (i, j): sum(1 for c in A.columns if c[i] == 0 and c[j] == 1)
            for i, j in itertools.permutations(range(A.m), 2)
        }
        i, j, cnt = best_row_pair(A)
        ok &= cnt == max(table.values()) == table[(i, j)]
    dt = time.perf_counter() - t0
    acceptance_log("9 pair counting and best row pair", ok and dt < 10, f"{dt:.2f}s")


def test_10_extraction_round_trip(acceptance_log):
    rng = random.Random(10)
    target = family_minus(gen_Tfam(2, 3), gen_Tfam(2, 2))
    s, t = 2, 8
    t0 = time.perf_counter()
    ok, pure_hits, n = True, 0, 0
    # ten pure plants: a single diagonal symbol z and above-diagonal colour in {x, z}
    pure = [(x, z, u) for x in range(3) for z in range(3) if z != x and not (x < s and z < s) for u in (x, z)]
    for x, z, u in pure[:10]:
        G = gen_T3(t, x, z, u)
        res = extract_config_from_template(G, x, 2, s)
        valid = res.success and contains(G, res.found) is not None and res.witness.verify(G, res.found)
        in_target = valid and res.found in target
        pure_hits += in_target
        ok &= in_target
        n += 1
    # ten mixed plants with random diagonals and above-diagonal entries
    while n < 20:
        x = rng.randrange(3)
        allowed = [y for y in range(3) if y != x and not (x < s and y < s)]
        rows = [[x if i > j else (rng.choice(allowed) if i == j else rng.randrange(3)) for j in range(t)]
                for i in range(t)]
        G = RMatrix.from_rows(rows, r=3)
        res = extract_config_from_template(G, x, 2, s)
        ok &= res.success and contains(G, res.found) is not None and res.witness.verify(G, res.found)
        n += 1
    dt = time.perf_counter() - t0
    acceptance_log("10 extraction round trip on planted templates", ok and dt < 60,
                   f"20 plants, {pure_hits}/{len(pure[:10])} pure plants in target, {dt:.2f}s")


def test_11_forb_k(acceptance_log):
    fam = parse_family("I(2,1,0)")
    ok = all(forb_k_exact(m, 2, fam, k).value == 1 for m in range(2, 6) for k in range(1, m))
    ok &= all(forb_k_exact(m, 2, ConfigFamily(2), k).value == math.comb(m, k) for m in range(1, 6) for k in range(m + 1))
    acceptance_log("11 forb_k sanity", ok)


def test_12_growth_fit(acceptance_log):
    t0 = time.perf_counter()
    rep = run_growth("Fabcd(0,2,2,0)", 2, range(3, 7))
    dt = time.perf_counter() - t0
    ok = (
        all(e for _, _, e in rep.points)
        and rep.exponent is not None
        and 1.0 <= rep.exponent <= 3.0
        and "desk-scale" in rep.note
        and "not an asymptotic" in rep.note
        and dt < 600
    )
    acceptance_log("12 Fabcd(0,2,2,0) exponent in [1,3]", ok,
                   f"points {[v for _, v, _ in rep.points]}, exponent {rep.exponent}, {dt:.1f}s")


def test_13_determinism_and_cache(tmp_path, capsys, acceptance_log):
    spec = "Fabcd(0,2,2,0)"
    plain = [forb_exact(5, 2, parse_family(spec)) for _ in range(2)]
    cache = ResultCache(tmp_path / "cache.jsonl")
    first = cached_forb(5, 2, spec, cache=cache)
    second = cached_forb(5, 2, spec, cache=ResultCache(tmp_path / "cache.jsonl"))
    argv = ["forb", "--m", "5", "--r", "2", "--family", spec, "--cache", str(tmp_path / "cli.jsonl")]
    outs = []
    for _ in range(2):
        assert main(argv) == 0
        outs.append(json.loads(capsys.readouterr().out))
    same = lambda a, b: (a["value"], a["extremal"]) == (b["value"], b["extremal"])  # noqa: E731
    ok = (
        plain[0].value == plain[1].value
        and plain[0].extremal == plain[1].extremal
        and same(first.to_json(), second.to_json())
        and same(first.to_json(), plain[0].to_json())
        and second.nodes == 0
        and first.nodes > 0
        and same(outs[0], outs[1])
        and outs[1]["nodes"] == 0
    )
    acceptance_log("13 determinism and cache", ok, f"first run {first.nodes} nodes, cached run {second.nodes}")
