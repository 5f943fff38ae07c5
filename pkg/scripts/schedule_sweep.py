"""How the stabilized dims and the cost depend on the window schedule.

    python3 scripts/schedule_sweep.py --ideal "[x*y+1]" --vars x,y
"""

import argparse
import itertools
import time

from derham_lc.algebra import VariableContext
from derham_lc.derham import WindowSchedule, derham_homology
from derham_lc.locmod import LocalizedModuleSpec
from derham_lc.parsing import parse_ideal, parse_variables


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ideal", default="[x*y+1]")
    ap.add_argument("--vars", default="x,y")
    ap.add_argument("--k0", default="2,3,4")
    ap.add_argument("--probe", default="1,2,3")
    ap.add_argument("--span", default="2,3")
    args = ap.parse_args(argv)
    ctx = VariableContext(parse_variables(args.vars))
    spec = LocalizedModuleSpec.local_cohomology(parse_ideal(args.ideal, ctx).gens)
    ints = lambda s: [int(v) for v in s.split(",")]
    print("k0 probe span | dims chi windows seconds")
    for k0, p, s in itertools.product(ints(args.k0), ints(args.probe), ints(args.span)):
        sched = WindowSchedule(k0=k0, probe=p, span=s)
        t = time.perf_counter()
        res = derham_homology(spec, sched)
        print(f"{k0:>2} {p:>5} {s:>4} | {res.dims} {res.chi} {len(res.window_trace)} "
              f"{time.perf_counter() - t:.2f}")


if __name__ == "__main__":
    main()
