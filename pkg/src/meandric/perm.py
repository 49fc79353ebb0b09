"""Permutations on [1, n] in one-line form.

All values use 1-based semantics: ``p.images[i - 1]`` is the image of ``i``.
Composition follows function notation, ``compose(a, b)(i) == a(b(i))``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Iterator, Sequence

__all__ = [
    "PermutationError",
    "Permutation",
    "BlockDecomposition",
    "make_permutation",
    "identity",
    "parse",
    "format_oneline",
    "format_cycles",
    "compose",
    "inverse",
    "cycles",
    "cycle_count",
    "shift",
    "conjugate_by_shift",
    "is_connected",
    "connected_blocks",
    "stabilized_proper_interval",
    "is_sif",
    "all_permutations",
    "sif_permutations",
    "count_cycles",
]


class PermutationError(ValueError):
    """Raised for malformed permutation input."""


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(x) for x in self.images)
        n = len(images)
        if n == 0:
            raise PermutationError("empty permutation")
        seen = [False] * (n + 1)
        for x in images:
            if not 1 <= x <= n:
                raise PermutationError(f"value {x} outside [1, {n}]")
            if seen[x]:
                raise PermutationError(f"value {x} repeated")
            seen[x] = True
        object.__setattr__(self, "images", images)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __len__(self) -> int:
        return len(self.images)

    def __str__(self) -> str:
        return format_cycles(self)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


@dataclass(frozen=True)
class BlockDecomposition:
    """Finest splitting of a permutation into stabilized consecutive intervals.

    ``cuts`` holds 1 = i_1 < ... < i_{p+1} = n + 1 and ``blocks[j]`` is the
    restriction of the source to ``[cuts[j], cuts[j+1] - 1]``, relabeled to
    start at 1.
    """

    cuts: tuple[int, ...]
    blocks: tuple[Permutation, ...]

    @property
    def p(self) -> int:
        return len(self.blocks)

    def reassemble(self) -> Permutation:
        images: list[int] = []
        for start, block in zip(self.cuts, self.blocks):
            images.extend(x + start - 1 for x in block.images)
        return Permutation(tuple(images))


def _trusted(images: Sequence[int]) -> Permutation:
    # Skips validation; only for images built from valid permutations.
    p = object.__new__(Permutation)
    object.__setattr__(p, "images", tuple(images))
    return p


def make_permutation(images: Iterable[int]) -> Permutation:
    return Permutation(tuple(images))


def identity(n: int) -> Permutation:
    if n < 1:
        raise PermutationError("n must be positive")
    return _trusted(range(1, n + 1))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _split_numbers(text: str) -> list[int]:
    tokens = [t for t in re.split(r"[\s,]+", text.strip()) if t]
    try:
        return [int(t) for t in tokens]
    except ValueError as exc:
        raise PermutationError(f"malformed permutation text: {text!r}") from exc


def parse(text: str, n: int | None = None) -> Permutation:
    """Parse one-line ("4 2 3 5 1") or cycle ("(1 4 5)(2)(3)") notation.

    Cycle notation needs ``n``; points not mentioned are fixed.  For n <= 9 a
    cycle may be written without separators, as in "(145)(2)(3)".

    >>> parse("(1 4 5)", 5).images
    (4, 2, 3, 5, 1)
    >>> parse("2 1").images
    (2, 1)
    """
    text = text.strip()
    if not text:
        raise PermutationError("empty permutation text")
    if "(" not in text and ")" not in text:
        perm = Permutation(tuple(_split_numbers(text)))
        if n is not None and perm.n != n:
            raise PermutationError(f"expected {n} values, got {perm.n}")
        return perm

    if n is None:
        raise PermutationError("cycle notation requires n")
    if n < 1:
        raise PermutationError("n must be positive")
    if _CYCLE_RE.sub("", text).strip():
        raise PermutationError(f"malformed cycle text: {text!r}")
    images = list(range(1, n + 1))
    used: set[int] = set()
    for body in _CYCLE_RE.findall(text):
        body = body.strip()
        if n <= 9 and body.isdigit() and len(body) > 1:
            # Compact form such as "(145)".
            cycle = [int(ch) for ch in body]
        else:
            cycle = _split_numbers(body)
        if not cycle:
            raise PermutationError("empty cycle")
        for x in cycle:
            if not 1 <= x <= n:
                raise PermutationError(f"cycle element {x} outside [1, {n}]")
            if x in used:
                raise PermutationError(f"element {x} repeated")
            used.add(x)
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            images[a - 1] = b
    return _trusted(images)


def format_oneline(p: Permutation) -> str:
    return " ".join(str(x) for x in p.images)


def format_cycles(p: Permutation) -> str:
    """Cycle notation with every fixed point written out."""
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles(p))


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Return ``a`` after ``b``."""
    if a.n != b.n:
        raise PermutationError(f"size mismatch: {a.n} vs {b.n}")
    ai = a.images
    return _trusted([ai[x - 1] for x in b.images])


def inverse(a: Permutation) -> Permutation:
    inv = [0] * a.n
    for i, x in enumerate(a.images, 1):
        inv[x - 1] = i
    return _trusted(inv)


def cycles(p: Permutation) -> list[tuple[int, ...]]:
    """Disjoint cycles, each starting at its least element, sorted by it."""
    seen = [False] * (p.n + 1)
    out = []
    for start in range(1, p.n + 1):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = p.images[x - 1]
        out.append(tuple(cyc))
    return out


def count_cycles(images: Sequence[int]) -> int:
    """Cycle count of a raw 1-based image sequence."""
    n = len(images)
    seen = [False] * (n + 1)
    z = 0
    for start in range(1, n + 1):
        if seen[start]:
            continue
        z += 1
        x = start
        while not seen[x]:
            seen[x] = True
            x = images[x - 1]
    return z


def cycle_count(a: Permutation) -> int:
    return count_cycles(a.images)


def shift(n: int, p: int) -> Permutation:
    """The cyclic shift i -> i + p (mod n), with values in [1, n]."""
    if n < 1:
        raise PermutationError("n must be positive")
    return _trusted([(i + p) % n + 1 for i in range(n)])


def conjugate_by_shift(sigma: Permutation, k: int) -> Permutation:
    """Return shift(-k) after sigma after shift(k)."""
    n = sigma.n
    im = sigma.images
    return _trusted([(im[(i + k) % n] - 1 - k) % n + 1 for i in range(n)])


def _prefix_cuts(images: Sequence[int]) -> list[int]:
    # Positions k (1-based) after which the prefix [1, k] is stabilized.
    cuts = []
    running_max = 0
    for k, x in enumerate(images, 1):
        if x > running_max:
            running_max = x
        if running_max == k:
            cuts.append(k)
    return cuts


def is_connected(sigma: Permutation) -> bool:
    return _prefix_cuts(sigma.images) == [sigma.n]


def connected_blocks(sigma: Permutation) -> BlockDecomposition:
    ends = _prefix_cuts(sigma.images)
    cuts = [1] + [k + 1 for k in ends]
    blocks = []
    for start, stop in zip(cuts, cuts[1:]):
        blocks.append(_trusted([x - start + 1 for x in sigma.images[start - 1 : stop - 1]]))
    return BlockDecomposition(tuple(cuts), tuple(blocks))


def _least_stabilized_interval(images: Sequence[int]) -> tuple[int, int] | None:
    n = len(images)
    for a in range(1, n + 1):
        lo = hi = images[a - 1]
        for b in range(a, n + 1):
            x = images[b - 1]
            if x < lo:
                lo = x
            elif x > hi:
                hi = x
            # An interval mapped into itself is mapped onto itself.
            if lo == a and hi == b and (a, b) != (1, n):
                return a, b
            if lo < a:
                break
    return None


def stabilized_proper_interval(sigma: Permutation) -> tuple[int, int] | None:
    """Least proper [a, b] (smallest a, then b) with sigma([a, b]) = [a, b]."""
    return _least_stabilized_interval(sigma.images)


def is_sif(sigma: Permutation) -> bool:
    return _least_stabilized_interval(sigma.images) is None


def all_permutations(n: int) -> Iterator[Permutation]:
    """All of S_n in lexicographic one-line order."""
    for images in permutations(range(1, n + 1)):
        yield _trusted(images)


def sif_permutations(n: int, first_image: int | None = None) -> Iterator[Permutation]:
    """SIF permutations of [1, n] in lexicographic order, optionally with a fixed sigma(1)."""
    if first_image is None:
        candidates = permutations(range(1, n + 1))
    else:
        rest = [x for x in range(1, n + 1) if x != first_image]
        candidates = ((first_image,) + tail for tail in permutations(rest))
    for images in candidates:
        if n > 1 and images[0] == 1:
            continue
        if _least_stabilized_interval(images) is None:
            yield _trusted(images)
