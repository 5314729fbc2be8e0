"""Write SVG and JSON traces for a handful of constructions."""
import math
from dataclasses import dataclass
from pathlib import Path

from _config import parse
from nfold.lill import Polynomial, lill_trace, solve_real_roots
from nfold.polygon import build_polygon
from nfold.section import m_sect, p_sect
from nfold.serialize import emit_json, emit_svg


@dataclass
class Config:
    out: str = "gallery"


def main(cfg: Config):
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    traces = {
        "trisect_60": p_sect(math.radians(60), 3)[1],
        "quintisect_100": m_sect(math.radians(100), 5)[1],
        "cube_root_2": lill_trace(solve_real_roots(Polynomial((1, 0, 0, -2)))[0]),
        "fifth_root_32": lill_trace(solve_real_roots(Polynomial((1, 0, 0, 0, 0, -32)))[0]),
        "heptagon": build_polygon(7).trace,
        "hendecagon": build_polygon(11).trace,
    }
    for name, tr in traces.items():
        (out / f"{name}.svg").write_bytes(emit_svg(tr))
        (out / f"{name}.json").write_bytes(emit_json(tr))
        print(f"{name:>16}: width {tr.fold_width}, {tr.fold_count} folds")
    print(f"wrote {2 * len(traces)} files to {out}/")


if __name__ == "__main__":
    main(parse(Config))
