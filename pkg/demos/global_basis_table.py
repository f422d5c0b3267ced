"""Tabulate the lower global basis on every small weight block.

For each block the bar matrix is solved for bar-invariant vectors congruent
to the crystal basis modulo q. The largest q-degree seen in the off-diagonal
coordinates is reported at the end.
"""

import argparse
from collections import defaultdict

from symcrystal.globalbasis import check_lower, lower_global_block
from symcrystal.multiseg import enumerate_theta_restricted, theta_weight


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--content-bound", type=int, default=4)
    parser.add_argument("--index-bound", type=int, default=5)
    parser.add_argument("--show", type=int, default=6, help="number of nontrivial elements to print")
    args = parser.parse_args()

    blocks = defaultdict(list)
    for m in enumerate_theta_restricted(args.content_bound, args.index_bound):
        blocks[theta_weight(m)].append(m)

    shown, widest = 0, 0
    for mu in blocks:
        for g in lower_global_block(mu):
            problem = check_lower(g)
            if problem:
                raise SystemExit(f"check failed for {g.top}: {problem}")
            widest = max(widest, g.degree_span())
            if len(g.coords) > 1 and shown < args.show:
                print(f"G({g.top}) = {g.vector()}")
                shown += 1

    print(f"\n{len(blocks)} weight blocks checked; largest coefficient degree {widest}")


if __name__ == "__main__":
    main()
