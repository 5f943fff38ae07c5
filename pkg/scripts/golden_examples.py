"""Window homology of the small reference modules, one line each.

    python3 scripts/golden_examples.py [--json out.json]
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass
from typing import List, Optional

from derham_lc.algebra import VariableContext
from derham_lc.derham import WindowSchedule, derham_homology
from derham_lc.locmod import LocalizedModuleSpec


@dataclass
class Row:
    name: str
    expected: List[int]
    dims: Optional[List[int]]
    chi: Optional[int]
    windows: int
    seconds: float

    @property
    def ok(self):
        return self.dims == self.expected


def cases():
    x, y = VariableContext(("x", "y")).gens()
    X, Z = VariableContext(("x", "z")).gens()
    (z,) = VariableContext(("z",)).gens()
    L = LocalizedModuleSpec
    return [
        ("H^1 of (xy+1)", L.local_cohomology([x * y + 1]), [1, 1, 0]),
        ("H^1 of (y+x)", L.local_cohomology([y + x]), [0, 1, 0]),
        ("H^1 of (y+x^2-1)", L.local_cohomology([y + x ** 2 - 1]), [0, 1, 0]),
        ("H^2 of (x,y)", L.local_cohomology([x, y]), [1, 0, 0]),
        ("K[x,y]", L.polynomial_ring(x.ctx), [0, 0, 1]),
        ("K[x,y] at y+x", L.localization([y + x]), [0, 1, 1]),
        ("K[x][z,1/z]", L.localization([Z]), [0, 1, 1]),
        ("K[z,1/z]", L.localization([z]), [1, 1]),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--json", help="also write the rows here")
    ap.add_argument("--schedule", help="k0,D0,dk,dD,p,s")
    args = ap.parse_args(argv)
    sched = WindowSchedule.parse(args.schedule) if args.schedule else WindowSchedule()
    rows = []
    for name, spec, expected in cases():
        t = time.perf_counter()
        res = derham_homology(spec, sched)
        rows.append(Row(name, expected, res.dims, res.chi, len(res.window_trace),
                        round(time.perf_counter() - t, 2)))
    for r in rows:
        mark = "ok " if r.ok else "BAD"
        print(f"{mark} {r.name:<20} dims {r.dims} (expected {r.expected}) chi {r.chi} "
              f"windows {r.windows} {r.seconds:.2f}s")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([asdict(r) for r in rows], fh, indent=2)
    return 0 if all(r.ok for r in rows) else 1


if __name__ == "__main__":
    raise SystemExit(main())
