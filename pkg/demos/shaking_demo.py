"""Shaking a profile: exact flattenings and the discrete shake of the limit curve.

Run with ``python3 demos/shaking_demo.py``.
"""

import numpy as np

from regshape import Omega, Partition, omega_e, profile_of
from regshape.shaking import (
    difference_range,
    discrete_shake,
    flatten_inner,
    flatten_outer,
    profile_curve,
    shake_equivalence_check,
)


if __name__ == "__main__":
    lam, e = Partition((4, 4, 2, 1)), 3
    p = profile_of(lam)
    g = profile_curve(p)
    outer, inner = flatten_outer(p, e), flatten_inner(p, e)
    print(f"profile of {lam.parts}: {g.points()}")
    print(f"outer flattening meets the profile at {[str(m) for m in outer.meets]}")
    print(f"inner flattening meets the profile at {[str(m) for m in inner.meets]}")
    print(f"outer - profile ranges over {tuple(map(str, difference_range(outer, g)))}")
    print(f"inner - profile ranges over {tuple(map(str, difference_range(inner, g)))}")

    # A partition and its regularisation shake to the same region.
    report = shake_equivalence_check(Partition((4, 4, 3, 3, 3, 3, 3, 1)), 4)
    print(f"\nshake equivalence of (4,4,3,3,3,3,3,1) and its 4-regularisation: {report}")

    # Slicing the region above Omega and sliding each slice left reproduces Omega_e.
    sh = omega_e(e)
    grid = -2.5 + 1e-3 * np.arange(3001)
    curve = discrete_shake(Omega(), sh.alpha, grid)
    xs = np.asarray(curve.xs, dtype=float)
    err = np.max(np.abs(np.asarray(curve.ys, dtype=float) - sh.evaluate(xs)))
    print(f"\ndiscrete shake of Omega with {len(xs)} vertices, sup error vs Omega_{e}: {err:.2e}")
