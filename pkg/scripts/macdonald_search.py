"""Bounded search for right 3-Engel elements whose inverse is not right 3-Engel
(and the R_n / L_n variant) over a zoo of constructed 2-groups."""

import argparse
import json

from engel_lab.config import Limits
from engel_lab.verify import SEARCH_PREDICATES, SEARCH_ZOO_2GROUPS, load_zoo, search_report


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--zoo", default=None, help="file with one spec per line (default: built-in 2-groups)")
    args = ap.parse_args()
    zoo = load_zoo(args.zoo) if args.zoo else list(SEARCH_ZOO_2GROUPS)
    for predicate in SEARCH_PREDICATES:
        rep = search_report(predicate, zoo, limits=Limits())
        print(json.dumps(rep.to_dict(), indent=2))


if __name__ == "__main__":
    main()
