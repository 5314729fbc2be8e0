"""Error of folded m-sections over a grid of angles and part counts."""
import math
import time
from dataclasses import dataclass

import numpy as np

from _config import parse
from nfold.section import m_sect
from nfold.trace import verify


@dataclass
class Config:
    """Angles are spread evenly over (0, max_deg)."""
    angles: int = 36
    max_deg: float = 180.0
    max_parts: int = 20


def main(cfg: Config):
    thetas = np.radians(np.linspace(0, cfg.max_deg, cfg.angles + 2)[1:-1])
    print(f"{'m':>3} {'width':>5} {'folds':>5} {'max |m*a - theta|':>18} {'ms/run':>7}")
    for m in range(2, cfg.max_parts + 1):
        worst, folds, width, bad = 0.0, 0, 0, 0
        t0 = time.perf_counter()
        for th in thetas:
            a, trace, plan = m_sect(float(th), m)
            worst = max(worst, abs(m * a - th))
            folds, width = max(folds, trace.fold_count), trace.fold_width
            bad += not verify(trace).ok
        ms = 1e3 * (time.perf_counter() - t0) / len(thetas)
        flag = f"  ({bad} unverified)" if bad else ""
        print(f"{m:>3} {width:>5} {folds:>5} {worst:>18.2e} {ms:>7.1f}{flag}")
    print(f"60 deg / 3 = {math.degrees(m_sect(math.radians(60), 3)[0]):.15f} deg")


if __name__ == "__main__":
    main(parse(Config))
