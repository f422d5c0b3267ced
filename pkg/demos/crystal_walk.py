"""Walk the symmetric crystal from the empty multisegment and back.

Prints the lowering moves out of a few vertices, the signature each move
was read from, and the path that returns every vertex to the empty one.
"""

import argparse

from symcrystal.crystal import (
    crystal_graph,
    highest_weight_path,
    theta_E,
    theta_epsilon,
    theta_F,
    theta_signature,
)
from symcrystal.multiseg import EMPTY


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--content-bound", type=int, default=3)
    parser.add_argument("--index-bound", type=int, default=3)
    args = parser.parse_args()

    verts, edges = crystal_graph(args.content_bound, args.index_bound)
    print(f"{len(verts)} vertices, {len(edges)} edges")

    m = EMPTY
    for k in (-1, 1, -1, 3):
        nxt = theta_F(k, m)
        print(f"F~_{k:+d}: {m or '∅'} -> {nxt}   signature {theta_signature(k, m)}")
        m = nxt

    print()
    for v in verts[-5:]:
        path = highest_weight_path(v)
        back = v
        for k in path:
            back = theta_E(k, back)
        eps = {k: theta_epsilon(k, v) for k in (1, -1, 3, -3)}
        print(f"{v}: raise along {path} (epsilon {eps}), reaches {back or '∅'}")


if __name__ == "__main__":
    main()
