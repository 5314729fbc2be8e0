"""Lill-fold roots against an independent bisection oracle on random polynomials."""
import math
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
from oracles import real_roots  # noqa: E402

from _config import parse  # noqa: E402
from nfold.lill import MAX_SHOT_ANGLE, Polynomial, lill_trace, solve_real_roots  # noqa: E402
from nfold.trace import verify  # noqa: E402


@dataclass
class Config:
    """Random polynomials with uniform coefficients."""
    trials: int = 1000
    min_degree: int = 2
    max_degree: int = 9
    coeff_range: float = 10.0
    seed: int = 0


def main(cfg: Config):
    rng = np.random.default_rng(cfg.seed)
    bound = math.tan(MAX_SHOT_ANGLE)
    by_degree: dict[int, list[float]] = {}
    count_mismatch = unverified = 0
    t0 = time.perf_counter()
    done = 0
    while done < cfg.trials:
        d = int(rng.integers(cfg.min_degree, cfg.max_degree + 1))
        c = rng.uniform(-cfg.coeff_range, cfg.coeff_range, d + 1)
        want = real_roots(c)
        if any(abs(r) >= bound for r in want):
            continue
        done += 1
        sols = solve_real_roots(Polynomial(c))
        if len(sols) != len(want):
            count_mismatch += 1
            continue
        errs = by_degree.setdefault(d, [])
        for s, w in zip(sols, want):
            errs.append(abs(s.root - w))
            unverified += not verify(lill_trace(s)).ok
    dt = time.perf_counter() - t0
    print(f"{'degree':>6} {'roots':>6} {'median err':>11} {'max err':>10}")
    for d in sorted(by_degree):
        e = np.array(by_degree[d]) if by_degree[d] else np.zeros(1)
        print(f"{d:>6} {len(by_degree[d]):>6} {np.median(e):>11.2e} {e.max():>10.2e}")
    print(f"count mismatches {count_mismatch}, unverified traces {unverified}, {dt:.1f}s")


if __name__ == "__main__":
    main(parse(Config))
