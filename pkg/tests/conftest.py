"""Independent oracles shared by the tests.

Nothing here calls the library's planarity, enumeration, or counting code, so
agreement with the library is a genuine cross-check.
"""

from __future__ import annotations

import math
import random
from itertools import permutations, product

import pytest


def oracle_catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def oracle_motzkin(n: int) -> int:
    # Direct count of step words in {-1, 0, 1}^n that stay non-negative and end at 0.
    total = 0
    for word in product((-1, 0, 1), repeat=n):
        h = 0
        for s in word:
            h += s
            if h < 0:
                break
        else:
            total += h == 0
    return total


def oracle_arcs(images) -> list[tuple[int, int]]:
    # White i sits at 2i, black j at 2j - 1.
    return [tuple(sorted((2 * i, 2 * j - 1))) for i, j in enumerate(images, 1)]


def oracle_planar(images) -> bool:
    """Pairwise interleaving test: no two arcs a < c < b < d."""
    arcs = oracle_arcs(images)
    for (a, b) in arcs:
        for (c, d) in arcs:
            if a < c < b < d:
                return False
    return True


def oracle_stabilized_intervals(images) -> list[tuple[int, int]]:
    n = len(images)
    out = []
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            if (a, b) == (1, n):
                continue
            if {images[i - 1] for i in range(a, b + 1)} == set(range(a, b + 1)):
                out.append((a, b))
    return out


def oracle_sif(images) -> bool:
    return not oracle_stabilized_intervals(images)


def oracle_expectation(sigma_white, sigma_black) -> int:
    """Count pairings pi over all of S_n with upper and lower both planar."""
    n = len(sigma_black)
    sb_inv = [0] * n
    for i, x in enumerate(sigma_black, 1):
        sb_inv[x - 1] = i
    count = 0
    for pi in permutations(range(1, n + 1)):
        if not oracle_planar(pi):
            continue
        lower = [sb_inv[pi[w - 1] - 1] for w in sigma_white]
        count += oracle_planar(lower)
    return count


def oracle_components(upper, lower) -> int:
    """Connected components of the graph on 2n points with both arc sets."""
    n = len(upper)
    parent = list(range(2 * n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in oracle_arcs(upper) + oracle_arcs(lower):
        parent[find(a)] = find(b)
    return len({find(p) for p in range(1, 2 * n + 1)})


def random_planar(n: int, rng: random.Random) -> tuple[int, ...]:
    """Uniform planar configuration via the cycle lemma and a stack matching."""
    word = [1] * n + [-1] * (n + 1)
    rng.shuffle(word)
    # Rotate to start right after the first minimum of the prefix sums.
    h, low, cut = 0, 0, 0
    for i, s in enumerate(word):
        h += s
        if h < low:
            low, cut = h, i + 1
    word = (word[cut:] + word[:cut])[:-1]
    images = [0] * n
    stack = []
    for pos, s in enumerate(word, 1):
        if s == 1:
            stack.append(pos)
            continue
        a, b = stack.pop(), pos
        white, black = (a, b) if a % 2 == 0 else (b, a)
        images[white // 2 - 1] = (black + 1) // 2
    return tuple(images)


def random_perm(n: int, rng: random.Random) -> tuple[int, ...]:
    images = list(range(1, n + 1))
    rng.shuffle(images)
    return tuple(images)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)
