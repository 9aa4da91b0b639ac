"""Haar sampling: character moments for each compact group.

<tr g> counts trivial summands of the matrix representation; <|tr g|^2> counts
its self-intertwiners.
"""

import sys

from exceptional_euler import euler as E
from exceptional_euler.groups import CATALOG


def main(n: int = 2000, seed: int = 0):
    print(f"{'group':8s} {'<tr g>':>12s} {'se':>9s} {'<|tr g|^2>':>12s} {'se':>9s}")
    for name, spec in CATALOG.items():
        if not spec.compact:
            continue
        m = E.character_moments(E.sample_haar(spec.schedule(), seed, n))
        print(f"{name:8s} {abs(m.mean_trace):12.5f} {m.se_trace:9.5f} {m.mean_trace_sq:12.5f} {m.se_trace_sq:9.5f}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 2000)
