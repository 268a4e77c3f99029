"""Deterministic seeded randomness for experiments and general position.

Every random draw in the library goes through an rng derived from a user
seed and a string label via sha256, so runs are reproducible across
processes and platforms (no dependence on hash randomization).
"""

import hashlib
import random
from fractions import Fraction

from .clusters import WeightedCluster, single_chain

DEFAULT_HEIGHT = 100


def rng_from(seed, *labels):
    digest = hashlib.sha256(
        ("nearpoints:%d:%s" % (int(seed), ":".join(map(str, labels)))).encode()
    ).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def rand_fraction(rng, height=DEFAULT_HEIGHT, nonzero=False, forbid=()):
    """Uniform-ish rational of height <= height (numerator and denominator
    bounded by height), avoiding the values in forbid."""
    while True:
        v = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if nonzero and v == 0:
            continue
        if v in forbid:
            continue
        return v


def rand_int(rng, height=DEFAULT_HEIGHT, nonzero=False):
    while True:
        v = rng.randint(-height, height)
        if nonzero and v == 0:
            continue
        return v


def distinct_points(rng, count, height=DEFAULT_HEIGHT):
    """Distinct integer base points (integers are height-bounded rationals;
    integral bases keep downstream matrices integral)."""
    seen = set()
    out = []
    while len(out) < count:
        pt = (Fraction(rng.randint(-height, height)),
              Fraction(rng.randint(-height, height)))
        if pt in seen:
            continue
        seen.add(pt)
        out.append(pt)
    return out


def random_chain(rng, npoints, satellite_prob=0.35):
    """Random valid single-chain proximity structure."""
    extras = [None, None]
    for k in range(2, npoints):
        choices = [k - 2]
        if extras[k - 1] is not None:
            choices.append(extras[k - 1])
        if rng.random() < satellite_prob:
            extras.append(rng.choice(choices))
        else:
            extras.append(None)
    return single_chain(extras[:npoints])


def random_weighted_chain(rng, max_points=6, mult_range=(0, 4),
                          satellite_prob=0.35):
    npoints = rng.randint(1, max_points)
    cluster = random_chain(rng, npoints, satellite_prob)
    mults = tuple(rng.randint(*mult_range) for _ in range(npoints))
    return WeightedCluster(cluster, mults)
