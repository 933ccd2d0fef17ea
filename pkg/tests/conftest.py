"""Shared fixtures and deterministic random-series helpers."""

from fractions import Fraction
import random

from fpslab.series import Series


def random_normalized(rng: random.Random, order: int, span: int = 5,
                      max_den: int = 4) -> Series:
    """x + sum of random small-rational coefficients up to `order`."""
    terms = {1: 1}
    for e in range(2, order + 1):
        terms[e] = Fraction(rng.randint(-span, span), rng.randint(1, max_den))
    return Series.from_terms(terms, order)


def seeded(seed: int = 20240915) -> random.Random:
    return random.Random(seed)
