"""Gaussian expectation values of permutation-labeled invariants.

A Wick pairing ``pi`` on labels (sigma_white, sigma_black) contributes
N^(2 - 2 g12 - 2 g34).  At leading order only pairings with both the upper
configuration ``pi`` and the lower configuration
``sigma_black^-1 . pi . sigma_white`` planar survive, so the leading
coefficient counts meandric systems.

Face counts use the shift direction fixed by the edge rule "color 2 joins
white j to black j + 1": following colors (0, 2) from a white vertex gives
``f02 = z(shift(-1) . pi)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Any, Sequence

import numpy as np

from .arch import TABLE_MAX_N, enumerate_planar, is_planar_images, planar_table
from .perm import (
    Permutation,
    PermutationError,
    all_permutations,
    count_cycles,
    cycle_count,
    identity,
    inverse,
)

__all__ = [
    "FaceCounts",
    "ExpansionCoefficients",
    "SizeLimitError",
    "DEFAULT_MAX_N",
    "face_counts",
    "traced_face_counts",
    "genera",
    "wick_exponent",
    "expectation_leading",
    "expectation_leading_single",
    "full_expansion",
    "census_by_cycles",
]

# Guard for loops over all of S_n.
DEFAULT_MAX_N = 10


class SizeLimitError(ValueError):
    """Raised when a factorial-cost computation exceeds its size guard."""


@dataclass(frozen=True)
class FaceCounts:
    f01: int
    f02: int
    f03: int
    f04: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return self.f01, self.f02, self.f03, self.f04


@dataclass
class ExpansionCoefficients:
    """Coefficients of <P> = N^2 * sum_k C_k N^-k, keyed by even k."""

    n: int
    coeffs: dict[int, int] = field(default_factory=dict)
    omega: int = 2

    @property
    def total(self) -> int:
        return sum(self.coeffs.values())

    @property
    def leading(self) -> int:
        return self.coeffs.get(0, 0)

    def merge(self, other: "ExpansionCoefficients") -> "ExpansionCoefficients":
        if other.n != self.n:
            raise ValueError("cannot merge expansions of different order")
        merged = Counter(self.coeffs)
        merged.update(other.coeffs)
        return ExpansionCoefficients(self.n, dict(sorted(merged.items())), self.omega)

    def to_json(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "omega": self.omega,
            "coeffs": {str(k): str(v) for k, v in sorted(self.coeffs.items())},
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "ExpansionCoefficients":
        coeffs = {int(k): int(v) for k, v in data["coeffs"].items()}
        return cls(int(data["n"]), dict(sorted(coeffs.items())), int(data.get("omega", 2)))


def _check_sizes(*perms: Permutation) -> int:
    n = perms[0].n
    if any(p.n != n for p in perms):
        raise PermutationError("permutations must have equal sizes")
    return n


def _lower_images(sw: Sequence[int], sb_inv: Sequence[int], pi: Sequence[int]) -> list[int]:
    return [sb_inv[pi[x - 1] - 1] for x in sw]


def _back_shift(images: Sequence[int], n: int) -> list[int]:
    # shift(-1) after images
    return [(x - 2) % n + 1 for x in images]


def _faces(sw: Sequence[int], sb_inv: Sequence[int], pi: Sequence[int]) -> tuple[int, int, int, int]:
    n = len(pi)
    lower = _lower_images(sw, sb_inv, pi)
    return (
        count_cycles(pi),
        count_cycles(_back_shift(pi, n)),
        count_cycles(lower),
        count_cycles(_back_shift(lower, n)),
    )


def face_counts(sigma_white: Permutation, sigma_black: Permutation, pi: Permutation) -> FaceCounts:
    _check_sizes(sigma_white, sigma_black, pi)
    return FaceCounts(*_faces(sigma_white.images, inverse(sigma_black).images, pi.images))


def traced_face_counts(
    sigma_white: Permutation, sigma_black: Permutation, pi: Permutation
) -> FaceCounts:
    """Face counts by walking (0, i)-colored cycles of the 5-colored graph.

    Vertex ``j - 1`` is white j and ``n + j - 1`` is black j.  Edges: color 0
    joins white j to black pi(j); color 1 white j to black j; color 2 white j
    to black j + 1; color 3 white sigma_white(j) to black sigma_black(j);
    color 4 white sigma_white(j) to black sigma_black(j + 1).
    """
    n = _check_sizes(sigma_white, sigma_black, pi)
    sw, sb, pim = sigma_white.images, sigma_black.images, pi.images

    def neighbours(pairs: list[tuple[int, int]]) -> list[int]:
        nb = [0] * (2 * n)
        for w, b in pairs:
            nb[w - 1] = n + b - 1
            nb[n + b - 1] = w - 1
        return nb

    colors = [
        neighbours([(j, pim[j - 1]) for j in range(1, n + 1)]),
        neighbours([(j, j) for j in range(1, n + 1)]),
        neighbours([(j, j % n + 1) for j in range(1, n + 1)]),
        neighbours([(sw[j - 1], sb[j - 1]) for j in range(1, n + 1)]),
        neighbours([(sw[j - 1], sb[j % n]) for j in range(1, n + 1)]),
    ]
    zero = colors[0]
    counts = []
    for other in colors[1:]:
        seen = [False] * (2 * n)
        faces = 0
        for start in range(2 * n):
            if seen[start]:
                continue
            faces += 1
            v = start
            while not seen[v]:
                seen[v] = True
                u = zero[v]
                seen[u] = True
                v = other[u]
        counts.append(faces)
    return FaceCounts(*counts)


def _genus(n: int, fa: int, fb: int) -> int:
    twice = n + 1 - fa - fb
    if twice < 0 or twice % 2:
        raise ArithmeticError(f"face counts {fa}, {fb} violate the Euler relation for n={n}")
    return twice // 2


def genera(sigma_white: Permutation, sigma_black: Permutation, pi: Permutation) -> tuple[int, int]:
    """(g12, g34) from 2 - 2g = 1 + f0a + f0b - n."""
    n = _check_sizes(sigma_white, sigma_black, pi)
    f = face_counts(sigma_white, sigma_black, pi)
    return _genus(n, f.f01, f.f02), _genus(n, f.f03, f.f04)


def wick_exponent(sigma_white: Permutation, sigma_black: Permutation, pi: Permutation) -> int:
    """Power of N contributed by the pairing ``pi``."""
    n = _check_sizes(sigma_white, sigma_black, pi)
    f = face_counts(sigma_white, sigma_black, pi)
    omega = sum(f.as_tuple()) - 2 * n
    g12, g34 = _genus(n, f.f01, f.f02), _genus(n, f.f03, f.f04)
    if omega != 2 - 2 * g12 - 2 * g34:
        raise ArithmeticError("face sum and genus forms of the exponent disagree")
    return omega


@lru_cache(maxsize=8)
def _planar_codes(n: int) -> tuple[np.ndarray, np.ndarray]:
    weights = n ** np.arange(n, dtype=np.int64)
    codes = np.sort((planar_table(n) - 1) @ weights)
    return weights, codes


def _count_planar_rows(uppers: np.ndarray, sw: Sequence[int], sb_inv: Sequence[int], n: int) -> int:
    weights, codes = _planar_codes(n)
    sw_idx = np.asarray(sw, dtype=np.int64) - 1
    sb_inv_arr = np.asarray(sb_inv, dtype=np.int64)
    lower = sb_inv_arr[uppers[:, sw_idx] - 1]
    query = (lower - 1) @ weights
    idx = np.searchsorted(codes, query)
    idx[idx == len(codes)] = 0
    return int(np.count_nonzero(codes[idx] == query))


def expectation_leading(
    sigma_white: Permutation,
    sigma_black: Permutation,
    upper_prefix: Sequence[int] = (),
) -> int:
    """Number of planar pairings whose lower configuration is planar too.

    Iterates only over the C_n planar upper configurations.  ``upper_prefix``
    restricts to one Dyck-prefix slice so that slices can be summed.
    """
    n = _check_sizes(sigma_white, sigma_black)
    sw = sigma_white.images
    sb_inv = inverse(sigma_black).images
    if n <= TABLE_MAX_N:
        if upper_prefix:
            rows = [p.images for p in enumerate_planar(n, upper_prefix)]
            if not rows:
                return 0
            uppers = np.array(rows, dtype=np.int64).reshape(-1, n)
        else:
            uppers = planar_table(n)
        return _count_planar_rows(uppers, sw, sb_inv, n)
    return sum(
        1
        for upper in enumerate_planar(n, upper_prefix)
        if is_planar_images(_lower_images(sw, sb_inv, upper.images))
    )


def expectation_leading_single(sigma: Permutation, upper_prefix: Sequence[int] = ()) -> int:
    return expectation_leading(identity(sigma.n), sigma, upper_prefix)


def _guard(n: int, max_n: int) -> None:
    if n > max_n:
        raise SizeLimitError(f"n={n} exceeds the size guard max_n={max_n}")


def full_expansion(
    sigma_white: Permutation,
    sigma_black: Permutation,
    max_n: int = DEFAULT_MAX_N,
    first_image: int | None = None,
) -> ExpansionCoefficients:
    """All 1/N coefficients by summing over every Wick pairing in S_n.

    ``first_image`` restricts to pairings with pi(1) equal to it; the n slices
    merge by addition.
    """
    n = _check_sizes(sigma_white, sigma_black)
    _guard(n, max_n)
    sw = sigma_white.images
    sb_inv = inverse(sigma_black).images
    if first_image is None:
        pairings = permutations(range(1, n + 1))
    else:
        if not 1 <= first_image <= n:
            raise ValueError(f"first_image must lie in [1, {n}]")
        rest = [x for x in range(1, n + 1) if x != first_image]
        pairings = ((first_image,) + tail for tail in permutations(rest))
    counts: Counter[int] = Counter()
    for pi in pairings:
        f01, f02, f03, f04 = _faces(sw, sb_inv, pi)
        k = 2 * (_genus(n, f01, f02) + _genus(n, f03, f04))
        counts[k] += 1
    return ExpansionCoefficients(n, dict(sorted(counts.items())))


def census_by_cycles(n: int, max_n: int = DEFAULT_MAX_N) -> dict[int, int]:
    """k -> sum of leading expectations over sigma with k cycles."""
    _guard(n, max_n)
    census: Counter[int] = Counter()
    for sigma in all_permutations(n):
        census[cycle_count(sigma)] += expectation_leading_single(sigma)
    return dict(sorted(census.items(), reverse=True))

