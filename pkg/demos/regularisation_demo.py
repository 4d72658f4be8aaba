"""Regularising a partition: ladders, counts and the resulting e-regular shape.

Run with ``python3 demos/regularisation_demo.py``.
"""

from regshape import Partition, is_e_regular, ladder_counts, regularise
from regshape.partitions import ladder_number


def ladder_picture(lam: Partition, e: int) -> str:
    """Each node labelled by its ladder number."""
    return "\n".join(
        " ".join(f"{ladder_number((a, b), e):>2}" for b in range(1, part + 1))
        for a, part in enumerate(lam.parts, start=1)
    )


if __name__ == "__main__":
    lam, e = Partition((4, 4, 3, 3, 3, 3, 3, 1)), 4
    print(f"lambda = {lam.parts}, e = {e}, e-regular: {is_e_regular(lam, e)}")
    print("ladder numbers of the nodes:")
    print(ladder_picture(lam, e))

    mu = regularise(lam, e)
    print(f"\nregularised: {mu.parts}, e-regular: {is_e_regular(mu, e)}")
    print(ladder_picture(mu, e))

    same = ladder_counts(lam, e) == ladder_counts(mu, e)
    print(f"\nladder counts preserved: {same}")
    print("regularising again changes nothing:", regularise(mu, e) == mu)
