"""Roots, simple roots and Cartan matrices extracted from each generator basis."""

import numpy as np

from exceptional_euler.groups import CATALOG, root_system


def main():
    np.set_printoptions(precision=6, suppress=True)
    for name in CATALOG:
        rs = root_system(name)
        print(f"{name}: rank {rs.rank}, {len(rs.roots)} roots")
        print("  simple roots\n" + "\n".join("    " + str(r) for r in rs.simple))
        print("  Cartan matrix\n" + "\n".join("    " + " ".join(f"{v:3d}" for v in row) for row in rs.cartan_matrix))


if __name__ == "__main__":
    main()
