"""Shared test helpers: seeded random generators independent of the package's
own sampling code, so equivalence tests do not reuse the machinery under test.
"""

import random
from fractions import Fraction

from linvote.core import Histogram, Profile, Space, profile_from_masks


def random_histogram(rng, m, n):
    """Uniform random ballot types, independent of the package sampler."""
    counts = {}
    for _ in range(n):
        ballot = rng.randrange(1 << m)
        counts[ballot] = counts.get(ballot, 0) + 1
    return Histogram(m, counts)


def random_approval_profile(rng, space, n):
    masks = [rng.randrange(1 << space.m) for _ in range(n)]
    return profile_from_masks(space, masks)


def random_ranking_profile(rng, space, n):
    base = list(range(1, space.m + 1))
    entries = []
    for _ in range(n):
        order = base[:]
        rng.shuffle(order)
        entries.append((tuple(order), 1))
    return Profile(space, entries, "ranking")


def random_rational(rng, max_den=9, lo=0, hi=1):
    den = rng.randint(1, max_den)
    num = rng.randint(lo * den, hi * den)
    return Fraction(num, den)
