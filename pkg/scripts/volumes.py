"""Euler-angle volumes against Macdonald's formula for every compact group."""

import time

from exceptional_euler import euler as E
from exceptional_euler.groups import CATALOG, macdonald


def main():
    print(f"{'group':8s} {'schedule':10s} {'quadrature':>24s} {'Macdonald':>24s} {'m':>14s} {'sec':>6s}")
    for name, spec in CATALOG.items():
        if not spec.compact:
            continue
        for kind in sorted(set(spec.schedules) - {"default"}) or ["default"]:
            s = spec.schedule(kind)
            t = time.perf_counter()
            vol = E.volume(s, s.density_form)
            mac = macdonald(name)
            print(f"{name:8s} {kind:10s} {vol:24.17g} {mac:24.17g} {vol / mac:14.10f} {time.perf_counter() - t:6.2f}")
            print(f"{'':19s}closed form {s.volume_tag}")


if __name__ == "__main__":
    main()
