"""Vertex error, fold width and timing of folded regular polygons."""
import math
import time
from dataclasses import dataclass

from _config import parse
from nfold.geom import Tolerance
from nfold.polygon import build_polygon, check_polygon
from nfold.trace import verify


@dataclass
class Config:
    """Build every m-gon in [lo, hi] allowed by the fold budget."""
    lo: int = 3
    hi: int = 60
    folds: int = 9
    tol: float = 1e-9


def vertex_error(res):
    return max(math.hypot(v.x - math.cos(2 * math.pi * k / res.m), v.y - math.sin(2 * math.pi * k / res.m))
               for k, v in enumerate(res.vertices))


def main(cfg: Config):
    tol = Tolerance.from_incidence(cfg.tol)
    print(f"{'m':>4} {'need n':>6} {'width':>5} {'folds':>5} {'vertex err':>10} {'verified':>8} {'ms':>7}")
    skipped = []
    for m in range(cfg.lo, cfg.hi + 1):
        if not check_polygon(m, cfg.folds):
            skipped.append(m)
            continue
        t0 = time.perf_counter()
        res = build_polygon(m, tol)
        ms = 1e3 * (time.perf_counter() - t0)
        ok = verify(res.trace, tol).ok
        print(f"{m:>4} {res.report.required_n:>6} {res.fold_width:>5} {res.fold_count:>5} "
              f"{vertex_error(res):>10.2e} {str(ok):>8} {ms:>7.1f}")
    if skipped:
        print(f"needs more than {cfg.folds} folds: {skipped}")


if __name__ == "__main__":
    main(parse(Config))
