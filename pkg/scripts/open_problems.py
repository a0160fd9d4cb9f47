"""Probe the families whose linear growth is conjectured but unproved
(K2, F_{0,2,1,0}, F_{1,1,1,0}) plus F_{1,1,1,1}, whose known bound carries a
log factor. Prints forb values and the increments between consecutive m;
a bounded increment is consistent with linear growth.

    python3 scripts/open_problems.py --m-to 6
"""

import argparse

from forbconf.engine import SearchConfig
from forbconf.growth import CLAIMS, ResultCache, cached_forb, with_tfam

PROBES = ["K2", "F0210", "F1110", "F1111"]


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--m-to", type=int, default=6)
    ap.add_argument("--budget-seconds", type=float, default=120.0)
    ap.add_argument("--r3", action="store_true", help="also run the Tfam(2,3)-Tfam(2,2)+F variant")
    args = ap.parse_args()

    cfg = SearchConfig(time_budget=args.budget_seconds)
    cache = ResultCache()
    variants = [(2, lambda s: s)] + ([(3, with_tfam)] if args.r3 else [])
    for name in PROBES:
        for r, wrap in variants:
            spec = wrap(CLAIMS[name].family)
            vals = []
            for m in range(1, args.m_to + 1):
                res = cached_forb(m, r, spec, cfg=cfg, cache=cache)
                vals.append((res.value, res.exact))
                if not res.exact:
                    break
            shown = [f"{v}{'' if e else '?'}" for v, e in vals]
            steps = [b[0] - a[0] for a, b in zip(vals, vals[1:])]
            print(f"{name:6s} r={r} {spec:40s} forb={shown} increments={steps}")


if __name__ == "__main__":
    main()
