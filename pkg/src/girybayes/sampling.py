"""Random and exhaustive instances for the law checks.

All randomness goes through a caller-supplied :class:`random.Random`, so a
seed fixes every instance.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .giry import Kernel, Map, MetaDist
from .inference import BayesModel, DeterministicModel
from .measure import Dist, Space


def space(label: str, n: int, prefix: str | None = None) -> Space:
    prefix = label.lower() if prefix is None else prefix
    return Space(label, tuple(f"{prefix}{i}" for i in range(1, n + 1)))


def random_space(rng: random.Random, label: str, max_points: int) -> Space:
    return space(label, rng.randint(1, max_points))


def random_dist(rng: random.Random, S: Space, max_den: int = 64) -> Dist:
    """Weights ``k_i / d`` with ``d <= max_den``; zeros occur naturally."""
    d = rng.randint(1, max_den)
    cuts = sorted(rng.randint(0, d) for _ in range(len(S) - 1))
    bounds = [0, *cuts, d]
    return Dist(S, tuple(Fraction(b - a, d) for a, b in zip(bounds, bounds[1:])))


def random_map(rng: random.Random, X: Space, Y: Space) -> Map:
    return Map(X, Y, tuple(rng.choice(Y.points) for _ in X.points))


def random_kernel(rng: random.Random, X: Space, Y: Space, max_den: int = 64) -> Kernel:
    return Kernel(X, Y, tuple(random_dist(rng, Y, max_den) for _ in X.points))


def random_metadist(rng: random.Random, S: Space, depth: int = 2,
                    max_outer: int = 4, max_den: int = 64) -> MetaDist:
    """A finitely supported element of ``G^depth(S)``."""
    index = space("I", rng.randint(1, max_outer), "i")
    if depth == 2:
        inners = tuple(random_dist(rng, S, max_den) for _ in index.points)
    else:
        inners = tuple(random_metadist(rng, S, depth - 1, max_outer, max_den)
                       for _ in index.points)
    return MetaDist(random_dist(rng, index, max_den), inners)


def random_model(rng: random.Random, max_points: int = 4, max_den: int = 64,
                 deterministic: bool | None = None):
    """A random Bayesian model; deterministic ones come back as DeterministicModel."""
    X = random_space(rng, "X", max_points)
    Y = random_space(rng, "Y", max_points)
    prior = random_dist(rng, X, max_den)
    if deterministic is None:
        deterministic = rng.random() < 0.5
    if deterministic:
        return DeterministicModel(prior, random_map(rng, X, Y))
    return BayesModel(prior, random_kernel(rng, X, Y, max_den))


def grid(S: Space, max_den: int) -> list[Dist]:
    """Every distribution on ``S`` whose weights have denominator ``<= max_den``."""
    seen = {}
    n = len(S)
    for d in range(1, max_den + 1):
        for cuts in itertools.combinations_with_replacement(range(d + 1), n - 1):
            bounds = [0, *cuts, d]
            ws = tuple(Fraction(b - a, d) for a, b in zip(bounds, bounds[1:]))
            seen.setdefault(ws, None)
    return [Dist(S, ws) for ws in seen]


def all_maps(X: Space, Y: Space) -> list[Map]:
    return [Map(X, Y, imgs) for imgs in itertools.product(Y.points, repeat=len(X))]


def all_kernels(X: Space, Y: Space, max_den: int) -> list[Kernel]:
    rows = grid(Y, max_den)
    return [Kernel(X, Y, combo) for combo in itertools.product(rows, repeat=len(X))]
