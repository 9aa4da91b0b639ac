"""Split G2: Iwasawa currents, unipotency and the Einstein constant of G2(2)/SO(4)."""

import numpy as np

from exceptional_euler import coset as CS
from exceptional_euler import iwasawa as IW


def main(seed: int = 0):
    rng = np.random.default_rng(seed)
    data = IW.iwasawa_data()
    print(f"root sign {data.root_sign():+.0f}, eigen residual {data.eigen_residual():.2e}, "
          f"nilpotency residual {data.nilpotency_residual():.2e}")
    worst_current, worst_unip = 0.0, 0.0
    for _ in range(20):
        x = rng.uniform(-1, 1, 6)
        worst_current = max(worst_current, float(np.abs(IW.nilpotent_currents(x) - IW.numeric_nilpotent_currents(x)).max()))
        worst_unip = max(worst_unip, IW.unipotency_residual(x))
    print(f"printed vs numeric currents  {worst_current:.2e}")
    print(f"scaled (N - I)^7             {worst_unip:.2e}")
    points = [rng.uniform(-0.5, 0.5, 8) for _ in range(4)]
    rep = CS.einstein_check(CS.iwasawa_metric_fn, points)
    print(f"Ric = lambda g: lambda = {rep.mean:.9f}, spread {rep.spread:.2e}")


if __name__ == "__main__":
    main()
