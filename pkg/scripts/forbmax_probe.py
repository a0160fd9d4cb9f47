"""Check whether forb(m', F) is non-decreasing in m' for small families, i.e.
whether forbmax and forb already agree at desk scale.

    python3 scripts/forbmax_probe.py --m 5
"""

import argparse

from forbconf.engine import SearchConfig, forbmax
from forbconf.family_spec import parse_family

FAMILIES = ["I(2,1,0)", "T(2,0,1)", "H", "K2", "Fabcd(0,2,2,0)", "Fabcd(1,1,1,1)", "Tfam(2,2)"]


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--m", type=int, default=5)
    ap.add_argument("--budget-seconds", type=float, default=60.0)
    ap.add_argument("families", nargs="*", default=FAMILIES)
    args = ap.parse_args()

    cfg = SearchConfig(time_budget=args.budget_seconds)
    for spec in args.families:
        rep = forbmax(args.m, 2, parse_family(spec, 2), cfg, label=spec)
        flag = "monotone" if rep.monotone else "NOT monotone"
        exact = "" if rep.exact else " (some values are lower bounds)"
        print(f"{spec:18s} forb={rep.values} forbmax={rep.value} {flag}{exact}")


if __name__ == "__main__":
    main()
