"""Growth experiments: forb over a range of m, a log-log exponent fit, and a
JSON-lines cache so repeated runs recompute nothing."""

from __future__ import annotations

import csv
import io
import json
import math
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from forbconf.engine import ForbResult, SearchConfig, forb_exact, forb_k_exact
from forbconf.family_spec import normalize_spec, parse_family
from forbconf.matrix import parse_matrix

CACHE_ENV = "FORBCONF_CACHE"
DEFAULT_CACHE = ".forbcache.jsonl"
SCALE_NOTE = "desk-scale fit over small m; not an asymptotic estimate"


@dataclass(frozen=True)
class Claim:
    family: str
    exponent: float | None
    growth: str
    note: str = ""


# expected growth of forb(m, F) for (0,1)-configurations F; the same exponent
# is claimed for the 3-matrix family Tfam(l,3) - Tfam(l,2) + F
CLAIMS: dict[str, Claim] = {
    "I2": Claim("Fabcd(0,1,1,0)", 1.0, "Theta(m)"),
    "F0220": Claim("Fabcd(0,2,2,0)", 2.0, "Theta(m^2)", "F_{0,b,b,0} grows like m^b"),
    "F0330": Claim("Fabcd(0,3,3,0)", 3.0, "Theta(m^3)", "F_{0,b,b,0} grows like m^b"),
    "F1221": Claim("Fabcd(1,2,2,1)", 2.0, "Theta(m^2)", "F_{a,b,b,a}, a>=1, b>=2 grows like m^(a+b-1)"),
    "F1331": Claim("Fabcd(1,3,3,1)", 3.0, "Theta(m^3)", "F_{a,b,b,a}, a>=1, b>=2 grows like m^(a+b-1)"),
    "H": Claim("H", 1.0, "Theta(m)"),
    "2H": Claim("times(2,H)", 2.0, "Theta(m^2)"),
    "F1111": Claim("Fabcd(1,1,1,1)", 1.0, "log-corrected",
                   "proved O(m log m); O(m) suspected, not adjudicated here"),
    "K2": Claim("K2", 1.0, "O(m) conjectured", "open problem"),
    "F0210": Claim("Fabcd(0,2,1,0)", 1.0, "O(m) conjectured", "open problem"),
    "F1110": Claim("Fabcd(1,1,1,0)", 1.0, "O(m) conjectured", "open problem"),
}


def with_tfam(spec: str, ell: int = 2) -> str:
    return f"Tfam({ell},3)-Tfam({ell},2)+{normalize_spec(spec)}"


def match_claim(spec: str) -> tuple[str, Claim] | None:
    norm = normalize_spec(spec)
    for name, claim in CLAIMS.items():
        base = normalize_spec(claim.family)
        if norm == base or (norm.startswith("Tfam(") and norm.endswith("+" + base)):
            return name, claim
    return None


# -- cache -------------------------------------------------------------------


def cache_path(path: str | os.PathLike | None = None) -> Path:
    return Path(path or os.environ.get(CACHE_ENV) or DEFAULT_CACHE)


class ResultCache:
    """Append-only JSON-lines store of exact results keyed by (m, r, family, k)."""

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = cache_path(path)
        self._index: dict[tuple, dict] | None = None

    @staticmethod
    def key(m: int, r: int, family: str, k: int | None) -> tuple:
        return (m, r, normalize_spec(family), "all" if k is None else k)

    def _load(self) -> dict[tuple, dict]:
        if self._index is None:
            self._index = {}
            if self.path.exists():
                with self.path.open() as fh:
                    for line in fh:
                        line = line.strip()
                        if not line:
                            continue
                        rec = json.loads(line)
                        if rec.get("exact"):
                            self._index[self.key(rec["m"], rec["r"], rec["family"], rec["k"])] = rec
        return self._index

    def get(self, m: int, r: int, family: str, k: int | None = None) -> ForbResult | None:
        rec = self._load().get(self.key(m, r, family, k))
        if rec is None:
            return None
        return ForbResult(
            value=rec["value"],
            extremal=parse_matrix(rec["extremal"]),
            m=rec["m"],
            r=rec["r"],
            family=rec["family"],
            k=rec["k"],
            nodes=0,
            elapsed=0.0,
            exact=True,
        )

    def put(self, res: ForbResult) -> None:
        if not res.exact:
            return
        rec = res.to_json()
        rec["family"] = normalize_spec(res.family)
        key = self.key(res.m, res.r, res.family, res.k)
        index = self._load()
        if key in index:
            return
        index[key] = rec
        if self.path.parent != Path(""):
            self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a") as fh:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")


def cached_forb(
    m: int,
    r: int,
    spec: str,
    k: int | None = None,
    cfg: SearchConfig | None = None,
    cache: ResultCache | None = None,
) -> ForbResult:
    """forb (or forb_k) for a family spec, looking in the cache first."""
    label = normalize_spec(spec)
    if cache is not None:
        hit = cache.get(m, r, label, k)
        if hit is not None:
            return hit
    fam = parse_family(spec, r)
    if k is None:
        res = forb_exact(m, r, fam, cfg, label=label)
    else:
        res = forb_k_exact(m, r, fam, k, cfg, label=label)
    if cache is not None:
        cache.put(res)
    return res


# -- growth ------------------------------------------------------------------


@dataclass
class GrowthReport:
    family: str
    r: int
    points: list[tuple[int, int, bool]] = field(default_factory=list)
    exponent: float | None = None
    r_squared: float | None = None
    fit_status: str = "insufficient data"
    expected: float | None = None
    claim: str | None = None
    claim_growth: str | None = None
    note: str = SCALE_NOTE

    def to_json(self) -> dict:
        d = asdict(self)
        d["points"] = [{"m": m, "value": v, "exact": e} for m, v, e in self.points]
        return d

    @classmethod
    def from_json(cls, d: dict) -> GrowthReport:
        d = dict(d)
        d["points"] = [(p["m"], p["value"], p["exact"]) for p in d["points"]]
        return cls(**d)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["m", "value", "exact"])
        for m, v, e in self.points:
            w.writerow([m, v, str(e).lower()])
        return buf.getvalue()


def read_csv_points(text: str) -> list[tuple[int, int, bool]]:
    rows = csv.DictReader(io.StringIO(text))
    return [(int(row["m"]), int(row["value"]), row["exact"] == "true") for row in rows]


def fit_exponent(points: list[tuple[int, int, bool]]) -> tuple[float | None, float | None, str]:
    """Least-squares slope of log(value) against log(m).

    Only exact points with m >= 2 and value >= 2 are used, and at least three
    are required. A series whose semi-log fit is perfect-or-better than the
    log-log fit while its local slopes keep increasing is flagged as
    super-polynomial.
    """
    pts = [(m, v) for m, v, exact in points if exact and m >= 2 and v >= 2]
    if len(pts) < 3:
        return None, None, "insufficient data"
    x = np.log([m for m, _ in pts])
    y = np.log([v for _, v in pts])
    slope, intercept = np.polyfit(x, y, 1)
    r2 = _r_squared(x, y, slope, intercept)
    ms = np.array([m for m, _ in pts], dtype=float)
    s2, i2 = np.polyfit(ms, y, 1)
    r2_semi = _r_squared(ms, y, s2, i2)
    local = np.diff(y) / np.diff(x)
    if r2_semi >= r2 and len(local) >= 2 and np.all(np.diff(local) > 1e-9):
        return float(slope), r2, "super-polynomial"
    return float(slope), r2, "ok"


def _r_squared(x, y, slope, intercept) -> float:
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0.0:
        return 1.0
    return 1.0 - float(np.sum(resid**2)) / ss_tot


def run_growth(
    spec: str,
    r: int,
    m_range,
    cfg: SearchConfig | None = None,
    cache: ResultCache | None = None,
    claim: str | None = None,
    window: int | None = None,
) -> GrowthReport:
    """forb over ``m_range`` and an exponent fit; ``window`` restricts the fit
    to the last that-many exact points."""
    if window is not None and window < 3:
        raise ValueError("fit window must be at least 3 points")
    ms = list(m_range)
    if not ms:
        raise ValueError("empty m range")
    parse_family(spec, r)  # fail early on a bad spec
    report = GrowthReport(family=normalize_spec(spec), r=r)
    for m in ms:
        res = cached_forb(m, r, spec, None, cfg, cache)
        report.points.append((m, res.value, res.exact))
    if not any(e for _, _, e in report.points):
        report.fit_status = "refused: no exact values"
    else:
        pts = report.points
        if window is not None:
            pts = [p for p in pts if p[2]][-window:]
        slope, r2, status = fit_exponent(pts)
        report.exponent = None if slope is None or math.isnan(slope) else round(slope, 6) + 0.0
        report.r_squared = None if r2 is None else round(r2, 6)
        report.fit_status = status
    found = (claim, CLAIMS[claim]) if claim else match_claim(spec)
    if found is not None:
        report.claim, c = found
        report.expected = c.exponent
        report.claim_growth = c.growth
    return report
