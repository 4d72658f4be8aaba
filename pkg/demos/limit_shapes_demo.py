"""The shaken limit curves and their landmarks for a few values of e.

The right support endpoint of each curve is compared with the closed form
``(2e/pi) sin(pi/e)``, the scaled limit of the first column length.

Run with ``python3 demos/limit_shapes_demo.py``.
"""

import math

from regshape import omega_e


if __name__ == "__main__":
    print(f"{'e':>3} {'alpha':>8} {'x_minus':>9} {'x_plus':>8} {'s_alpha':>9} {'closed':>9} {'u_alpha':>8}")
    for e in range(2, 9):
        sh = omega_e(e)
        lm = sh.landmarks()
        closed = 2 * e / math.pi * math.sin(math.pi / e)
        print(
            f"{e:>3} {lm['alpha']:>8.4f} {lm['x_minus']:>9.4f} {lm['x_plus']:>8.4f}"
            f" {lm['s_alpha']:>9.5f} {closed:>9.5f} {lm['u_alpha']:>8.4f}"
        )

    sh = omega_e(3)
    print("\nOmega_3 on a coarse grid:")
    for x in (-3, -2, -1, 0, 0.5, 1, 1.5, 2):
        print(f"  {x:>5}: {sh(x):.6f}")
