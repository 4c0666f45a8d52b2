import random
from fractions import Fraction

from hypothesis import strategies as st

from kslie.ratlin import Mat, det


def random_invertible(n, seed, bound=3):
    """Invertible rational n x n matrix determined by ``seed``."""
    rng = random.Random(seed)
    while True:
        p = Mat(n, n, [[Fraction(rng.randint(-bound, bound), rng.randint(1, 2)) for _ in range(n)]
                       for _ in range(n)])
        if det(p):
            return p


def basis_changes(n):
    return st.integers(0, 2 ** 32).map(lambda s: random_invertible(n, s))
