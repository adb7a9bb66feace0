"""Random valid slow algorithms, for property sweeps and demos.

Algorithms are grown as mediant-splitting trees, so validity is by
construction; orientations are chosen per branch.
"""

from __future__ import annotations

import random

from .algorithm import SlowAlgorithm, validate
from .exact import QuadIrr


def random_branch_words(rng: random.Random, max_branches: int = 8,
                        max_depth: int = 5) -> list[str]:
    """Leaf words of a random binary splitting tree, in cell order."""
    n = rng.randint(2, max_branches)
    leaves = [""]
    while len(leaves) < n:
        candidates = [w for w in leaves if len(w) < max_depth]
        if not candidates:
            break
        w = rng.choice(candidates)
        leaves.remove(w)
        leaves.extend([w + "L", w + "N"])
    leaves.sort(key=lambda w: [0 if ch == "L" else 1 for ch in w])
    return leaves


def random_algorithm(rng: random.Random, max_branches: int = 8,
                     max_depth: int = 5,
                     orientation_preserving: bool = False) -> SlowAlgorithm:
    words = random_branch_words(rng, max_branches, max_depth)
    branches = []
    for w in words:
        if not orientation_preserving and rng.random() < 0.5:
            w += "F"
        branches.append(w)
    return validate(branches)


def random_quadirr_pool(rng: random.Random, size: int,
                        ds=(2, 3, 5, 6, 7, 10, 11, 13)) -> list:
    """Small positive quadratic irrationals with cheap expansions."""
    pool = []
    seen = set()
    while len(pool) < size:
        d = rng.choice(ds)
        p = rng.randint(-4, 6)
        q = rng.choice([1, 1, 1, 2, -1])
        r = rng.randint(1, 5)
        x = QuadIrr(p, q, r, d)
        if x.sign() <= 0:
            x = -x
        if x in seen:
            continue
        seen.add(x)
        pool.append(x)
    return pool
