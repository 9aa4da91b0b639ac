"""Exceptional Lie groups G2, F4, E6 and split G2 as explicit matrices.

Generalized Euler parametrizations with Haar densities and volumes, root
systems with Macdonald's volume formula, the Iwasawa chart of G2(2), and
coset metrics with curvature checks.
"""

from .derivations import e6_generators, f4_generators, g2_golden, split_g2_generators, solve_derivations
from .euler import SCHEDULES, covering_multiplicity, haar_density, sample_haar, volume
from .groups import CATALOG, group, macdonald, root_system
from .iwasawa import iwasawa_compose, iwasawa_coset_vielbein, nilpotent_currents, weyl_trick
from .coset import coset_metric, ricci_fd, sphere_isometry_check

__version__ = "0.1.0"

__all__ = [
    "CATALOG", "SCHEDULES", "coset_metric", "covering_multiplicity", "e6_generators", "f4_generators",
    "g2_golden", "group", "haar_density", "iwasawa_compose", "iwasawa_coset_vielbein", "macdonald",
    "nilpotent_currents", "ricci_fd", "root_system", "sample_haar", "solve_derivations",
    "sphere_isometry_check", "split_g2_generators", "volume", "weyl_trick",
]
