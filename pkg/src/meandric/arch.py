"""Arch configurations of permutations.

A permutation ``rho`` on [1, n] is drawn on 2n points of a line.  Black vertex
``i`` sits at position ``2i - 1`` and white vertex ``i`` at position ``2i``;
arc ``i`` joins white ``i`` to black ``rho(i)``.  Every module uses this
convention for crossing tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .perm import Permutation, PermutationError, _trusted

__all__ = [
    "ArchConfiguration",
    "DyckPath",
    "black_position",
    "white_position",
    "arch_configuration",
    "is_planar",
    "is_planar_images",
    "enumerate_planar",
    "dyck_prefixes",
    "planar_images",
    "planar_table",
    "to_dyck",
    "from_dyck",
]

UP, DOWN = 1, -1

# Largest n for which the dense table of planar permutations is kept in memory.
TABLE_MAX_N = 13


def black_position(i: int) -> int:
    return 2 * i - 1


def white_position(i: int) -> int:
    return 2 * i


@dataclass(frozen=True)
class ArchConfiguration:
    perm: Permutation

    @property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        """Arcs as sorted position pairs, listed by white vertex."""
        out = []
        for i, j in enumerate(self.perm.images, 1):
            w, b = 2 * i, 2 * j - 1
            out.append((w, b) if w < b else (b, w))
        return tuple(out)

    @property
    def planar(self) -> bool:
        return is_planar_images(self.perm.images)


@dataclass(frozen=True)
class DyckPath:
    """Heights after steps 1..2n-1 of a Dyck path of length 2n."""

    heights: tuple[int, ...]

    @property
    def n(self) -> int:
        return (len(self.heights) + 1) // 2

    def steps(self) -> tuple[int, ...]:
        full = (0,) + tuple(self.heights) + (0,)
        return tuple(b - a for a, b in zip(full, full[1:]))


def arch_configuration(rho: Permutation) -> ArchConfiguration:
    return ArchConfiguration(rho)


def _partners(images: Sequence[int]) -> list[int]:
    n = len(images)
    partner = [0] * (2 * n + 1)
    for i, j in enumerate(images, 1):
        w, b = 2 * i, 2 * j - 1
        partner[w] = b
        partner[b] = w
    return partner


def is_planar_images(images: Sequence[int]) -> bool:
    partner = _partners(images)
    stack = []
    for pos in range(1, len(partner)):
        other = partner[pos]
        if other > pos:
            stack.append(pos)
        elif stack.pop() != other:
            return False
    return True


def is_planar(rho: Permutation) -> bool:
    return is_planar_images(rho.images)


def _steps_to_images(steps: Sequence[int]) -> tuple[int, ...]:
    n = len(steps) // 2
    images = [0] * n
    stack = []
    for pos, step in enumerate(steps, 1):
        if step == UP:
            stack.append(pos)
            continue
        opener = stack.pop()
        # A noncrossing matching pairs positions of opposite parity.
        if pos % 2 == 0:
            images[pos // 2 - 1] = (opener + 1) // 2
        else:
            images[opener // 2 - 1] = (pos + 1) // 2
    return tuple(images)


def _dyck_words(n: int, prefix: Sequence[int]) -> Iterator[list[int]]:
    # Lexicographic with UP before DOWN.
    word = list(prefix)
    height = sum(word)
    ups = word.count(UP)
    if height < 0 or ups > n or any(sum(word[: k + 1]) < 0 for k in range(len(word))):
        return
    total = 2 * n

    def rec(ups: int, height: int) -> Iterator[list[int]]:
        if len(word) == total:
            yield word
            return
        if ups < n:
            word.append(UP)
            yield from rec(ups + 1, height + 1)
            word.pop()
        if height > 0:
            word.append(DOWN)
            yield from rec(ups, height - 1)
            word.pop()

    yield from rec(ups, height)


def dyck_prefixes(n: int, length: int) -> list[tuple[int, ...]]:
    """All valid Dyck-word prefixes of the given length, in enumeration order.

    The planar streams restricted to these prefixes partition the full stream.
    """
    length = max(0, min(length, 2 * n))
    out = []
    word: list[int] = []

    def rec(ups: int, height: int) -> None:
        if len(word) == length:
            out.append(tuple(word))
            return
        if ups < n:
            word.append(UP)
            rec(ups + 1, height + 1)
            word.pop()
        if height > 0:
            word.append(DOWN)
            rec(ups, height - 1)
            word.pop()

    rec(0, 0)
    return out


def enumerate_planar(n: int, prefix: Sequence[int] = ()) -> Iterator[Permutation]:
    """Yield every planar permutation of [1, n] once.

    Order is lexicographic on the Dyck step sequence (up before down).  With a
    ``prefix`` only the permutations whose Dyck word starts with it are yielded.
    """
    if n < 1:
        raise PermutationError("n must be positive")
    for word in _dyck_words(n, prefix):
        yield _trusted(_steps_to_images(word))


@lru_cache(maxsize=None)
def planar_images(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(_steps_to_images(w) for w in _dyck_words(n, ()))


@lru_cache(maxsize=8)
def planar_table(n: int) -> np.ndarray:
    """Read-only (C_n, n) array of planar permutations, 1-based images."""
    if n > TABLE_MAX_N:
        raise ValueError(f"planar table limited to n <= {TABLE_MAX_N}")
    table = np.array(planar_images(n), dtype=np.int64).reshape(-1, n)
    table.setflags(write=False)
    return table


def to_dyck(rho: Permutation) -> DyckPath:
    if not is_planar(rho):
        raise ValueError("to_dyck needs a planar permutation")
    partner = _partners(rho.images)
    heights = []
    h = 0
    for pos in range(1, len(partner) - 1):
        h += 1 if partner[pos] > pos else -1
        heights.append(h)
    return DyckPath(tuple(heights))


def from_dyck(d: DyckPath | Sequence[int]) -> Permutation:
    heights = tuple(d.heights if isinstance(d, DyckPath) else d)
    if len(heights) % 2 == 0:
        raise ValueError("a Dyck profile has odd length 2n - 1")
    full = (0,) + heights + (0,)
    steps = []
    for a, b in zip(full, full[1:]):
        if b < 0:
            raise ValueError("negative height in Dyck profile")
        if b - a not in (UP, DOWN):
            raise ValueError("Dyck profile heights must change by 1")
        steps.append(b - a)
    return _trusted(_steps_to_images(steps))
