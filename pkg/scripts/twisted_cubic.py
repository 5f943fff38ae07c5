"""Degree-difference check on the twisted cubic (y - x^2, z - x^3) under a budget.

Writes the full report, including both window traces, as JSON.

    python3 scripts/twisted_cubic.py --budget 1800 --out cubic.json [--original-coordinates | --straighten]
"""

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass

from derham_lc.algebra import VariableContext
from derham_lc.derham import WindowSchedule
from derham_lc.groebner import Ideal
from derham_lc.theorems import verify_thm26


@dataclass
class RunConfig:
    budget: float = 1800.0
    max_windows: int = 12
    seed: int = 0
    original_coordinates: bool = False
    straighten: bool = False
    out: str = "twisted_cubic.json"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--budget", type=float, default=RunConfig.budget)
    ap.add_argument("--max-windows", type=int, default=RunConfig.max_windows)
    ap.add_argument("--seed", type=int, default=RunConfig.seed)
    ap.add_argument("--original-coordinates", action="store_true")
    ap.add_argument("--straighten", action="store_true")
    ap.add_argument("--out", default=RunConfig.out)
    cfg = RunConfig(**vars(ap.parse_args(argv)))
    logging.basicConfig(level=logging.INFO, stream=sys.stderr,
                        format="%(asctime)s %(message)s")
    x, y, z = VariableContext(("x", "y", "z")).gens()
    P = Ideal(x.ctx, (y - x ** 2, z - x ** 3))
    t = time.perf_counter()
    rep = verify_thm26(P, seed=cfg.seed, schedule=WindowSchedule(max_windows=cfg.max_windows),
                       max_seconds=cfg.budget, original_coordinates=cfg.original_coordinates,
                       straighten=cfg.straighten)
    seconds = time.perf_counter() - t
    with open(cfg.out, "w") as fh:
        json.dump({"config": vars(cfg), "seconds": round(seconds, 1), "report": rep.as_dict()},
                  fh, indent=2)
    print(f"verdict {rep.verdict}: left {rep.left}, degree {rep.right}, {seconds:.0f}s -> {cfg.out}")
    return {"pass": 0, "fail": 1}.get(rep.verdict, 2)


if __name__ == "__main__":
    raise SystemExit(main())
