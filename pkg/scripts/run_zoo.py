"""Run the full check catalog over the default zoo and print a table of outcomes."""

import argparse
import time

from engel_lab.config import Limits
from engel_lab.verify import CATALOG, DEFAULT_ZOO, GroupContext, run_check


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=512)
    args = ap.parse_args()
    limits = Limits(seed=args.seed, samples=args.samples)
    failures = []
    for spec in DEFAULT_ZOO + ("gl(p=2,k=3)",):
        t0 = time.perf_counter()
        ctx = GroupContext(spec, limits)
        results = [run_check(cid, ctx) for cid in CATALOG]
        counts = {o: sum(r.outcome == o for r in results) for o in ("pass", "fail", "skipped")}
        print(f"{spec:22s} pass {counts['pass']:2d}  fail {counts['fail']}  skipped {counts['skipped']:2d}"
              f"  {time.perf_counter() - t0:5.1f}s")
        failures += [r for r in results if r.outcome == "fail"]
    for r in failures:
        print(f"FAIL {r.check_id} on {r.group}: {r.witness}  {r.stats}")


if __name__ == "__main__":
    main()
