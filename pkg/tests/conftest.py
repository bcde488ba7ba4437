import random
from fractions import Fraction

from symclone import RatMatrix, SkewForm


def random_skew_form(dim: int, rng: random.Random, max_num: int = 5, max_den: int = 3) -> SkewForm:
    """Random nondegenerate rational skew form of the given even dimension."""
    while True:
        a = RatMatrix(
            [
                [Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den)) for _ in range(dim)]
                for _ in range(dim)
            ]
        )
        s = a - a.T
        if s.rank() == dim:
            return SkewForm(s)
