"""Run every growth preset at desk scale and print one summary line each.

    python3 scripts/run_growth_presets.py --m-to 6 --budget-seconds 60
"""

import argparse
import json

from forbconf.engine import SearchConfig
from forbconf.growth import CLAIMS, ResultCache, run_growth, with_tfam


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m-from", type=int, default=2)
    ap.add_argument("--m-to", type=int, default=6)
    ap.add_argument("--budget-seconds", type=float, default=60.0, help="per forb call")
    ap.add_argument("--with-tfam", action="store_true", help="r=3 variant: Tfam(2,3)-Tfam(2,2)+F")
    ap.add_argument("--presets", nargs="*", default=sorted(CLAIMS))
    ap.add_argument("--json", help="write all reports here")
    args = ap.parse_args()

    cfg = SearchConfig(time_budget=args.budget_seconds)
    cache = ResultCache()
    reports = {}
    for name in args.presets:
        claim = CLAIMS[name]
        spec, r = (with_tfam(claim.family), 3) if args.with_tfam else (claim.family, 2)
        rep = run_growth(spec, r, range(args.m_from, args.m_to + 1), cfg, cache, claim=name)
        reports[name] = rep.to_json()
        vals = " ".join(f"{v}{'' if e else '?'}" for _, v, e in rep.points)
        print(f"{name:6s} {spec:40s} [{vals}] exponent={rep.exponent} ({rep.fit_status}) "
              f"claimed {claim.growth}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(reports, fh, indent=2, sort_keys=True)


if __name__ == "__main__":
    main()
