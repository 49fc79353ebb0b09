"""Meandric systems: pairs of planar arch configurations on one line.

A system of order n stores its upper and lower arch configurations as planar
permutations.  Given labels (sigma_white, sigma_black) and a Wick pairing pi,
the upper configuration is pi and the lower one is
``sigma_black^-1 . pi . sigma_white``.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from typing import Any, Iterator, Sequence

from .arch import _partners, _steps_to_images, enumerate_planar, is_planar_images, planar_images
from .perm import (
    Permutation,
    PermutationError,
    _trusted,
    compose,
    cycle_count,
    cycles,
    identity,
    inverse,
)

__all__ = [
    "MeanderError",
    "MeandricSystem",
    "MeandricPermutation",
    "Step",
    "MotzkinPath",
    "make_system",
    "system_from_labels",
    "components_trace",
    "components_formula",
    "meandric_permutation",
    "check_rho_square",
    "reconstruct",
    "enumerate_systems",
    "systems_of",
    "count_by_components",
    "reducing_interval",
    "is_one_reducible",
    "is_two_reducible",
    "meander_to_motzkin",
    "motzkin_to_meander",
    "enumerate_motzkin",
]


class MeanderError(ValueError):
    pass


@dataclass(frozen=True)
class MeandricSystem:
    upper: Permutation
    lower: Permutation

    def __post_init__(self) -> None:
        if self.upper.n != self.lower.n:
            raise MeanderError(f"size mismatch: {self.upper.n} vs {self.lower.n}")
        if not is_planar_images(self.upper.images):
            raise MeanderError("upper configuration is not planar")
        if not is_planar_images(self.lower.images):
            raise MeanderError("lower configuration is not planar")

    @property
    def n(self) -> int:
        return self.upper.n

    def to_json(self) -> dict[str, Any]:
        return {"n": self.n, "upper": list(self.upper.images), "lower": list(self.lower.images)}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "MeandricSystem":
        try:
            system = cls(Permutation(tuple(data["upper"])), Permutation(tuple(data["lower"])))
        except (KeyError, TypeError) as exc:
            raise MeanderError(f"malformed system record: {data!r}") from exc
        if "n" in data and data["n"] != system.n:
            raise MeanderError("n does not match the configurations")
        return system


def _system(upper: Sequence[int], lower: Sequence[int]) -> MeandricSystem:
    # Skips the planarity checks; callers guarantee them.
    s = object.__new__(MeandricSystem)
    object.__setattr__(s, "upper", _trusted(upper))
    object.__setattr__(s, "lower", _trusted(lower))
    return s


def make_system(upper: Permutation, lower: Permutation) -> MeandricSystem:
    return MeandricSystem(upper, lower)


def system_from_labels(
    sigma_white: Permutation, sigma_black: Permutation, pi: Permutation
) -> MeandricSystem:
    """The system drawn by pairing ``pi``; raises if either side is non-planar."""
    lower = compose(compose(inverse(sigma_black), pi), sigma_white)
    return MeandricSystem(pi, lower)


def _trace(upper: Sequence[int], lower: Sequence[int]) -> int:
    up = _partners(upper)
    lo = _partners(lower)
    seen = [False] * len(up)
    roads = 0
    for start in range(1, len(up)):
        if seen[start]:
            continue
        roads += 1
        pos = start
        while not seen[pos]:
            seen[pos] = True
            other = up[pos]
            seen[other] = True
            pos = lo[other]
    return roads


def components_trace(s: MeandricSystem) -> int:
    """Closed roads found by walking upper and lower arcs alternately."""
    return _trace(s.upper.images, s.lower.images)


def components_formula(s: MeandricSystem) -> int:
    """Closed roads as the cycle count of lower . upper^-1."""
    return cycle_count(compose(s.lower, inverse(s.upper)))


@dataclass(frozen=True)
class MeandricPermutation:
    """Road permutation on the 2n bridge labels (odd = black, even = white)."""

    rho: Permutation

    @property
    def n(self) -> int:
        return self.rho.n // 2

    def square_split(self) -> tuple[int, int]:
        """Cycle counts of rho^2 on odd labels and on even labels."""
        sq = compose(self.rho, self.rho)
        odd = even = 0
        for c in cycles(sq):
            if all(x % 2 for x in c):
                odd += 1
            elif not any(x % 2 for x in c):
                even += 1
            else:
                raise MeanderError("rho^2 mixes black and white labels")
        return odd, even

    def satisfies_square_condition(self) -> bool:
        k = cycle_count(self.rho)
        try:
            odd, even = self.square_split()
        except MeanderError:
            return False
        return odd == even == k


def meandric_permutation(s: MeandricSystem) -> MeandricPermutation:
    """Roads cross upward at black vertices: black -> upper arc, white -> lower arc."""
    up = _partners(s.upper.images)
    lo = _partners(s.lower.images)
    rho = [up[pos] if pos % 2 else lo[pos] for pos in range(1, len(up))]
    return MeandricPermutation(_trusted(rho))


def check_rho_square(
    s: MeandricSystem,
    sigma_white: Permutation,
    sigma_black: Permutation,
    pi: Permutation,
) -> bool:
    """Check rho^2 on odd and even labels against the label permutations."""
    lower = compose(compose(inverse(sigma_black), pi), sigma_white)
    if s.upper != pi or s.lower != lower:
        raise MeanderError("system is not the one drawn by (sigma_white, sigma_black, pi)")
    rho = meandric_permutation(s).rho
    sq = compose(rho, rho).images
    odd_rule = compose(lower, inverse(pi)).images
    even_rule = compose(inverse(pi), lower).images
    for i in range(1, s.n + 1):
        if sq[2 * i - 2] != 2 * odd_rule[i - 1] - 1:
            return False
        if sq[2 * i - 1] != 2 * even_rule[i - 1]:
            return False
    return True


def reconstruct(s: MeandricSystem, sigma_white: Permutation) -> tuple[Permutation, Permutation]:
    """Recover (pi, sigma_black) drawing ``s`` for a fixed ``sigma_white``."""
    if sigma_white.n != s.n:
        raise PermutationError("size mismatch")
    pi = s.upper
    sigma_black = compose(compose(pi, sigma_white), inverse(s.lower))
    return pi, sigma_black


def enumerate_systems(n: int, upper_prefix: Sequence[int] = ()) -> Iterator[MeandricSystem]:
    """All C_n^2 ordered pairs, upper-major; ``upper_prefix`` splits the stream."""
    lowers = planar_images(n)
    for upper in enumerate_planar(n, upper_prefix):
        for lower in lowers:
            yield _system(upper.images, lower)


def systems_of(
    sigma_black: Permutation, sigma_white: Permutation | None = None
) -> Iterator[MeandricSystem]:
    """The systems counted by the labels: planar pi whose partner side is planar."""
    n = sigma_black.n
    if sigma_white is None:
        sigma_white = identity(n)
    if sigma_white.n != n:
        raise PermutationError("size mismatch")
    sb_inv = inverse(sigma_black).images
    sw = sigma_white.images
    for upper in planar_images(n):
        lower = [sb_inv[upper[sw[i] - 1] - 1] for i in range(n)]
        if is_planar_images(lower):
            yield _system(upper, lower)


def count_by_components(n: int, upper_prefix: Sequence[int] = ()) -> dict[int, int]:
    """Census k -> number of systems with k roads, counted by tracing."""
    census: Counter[int] = Counter()
    lowers = planar_images(n)
    for upper in enumerate_planar(n, upper_prefix):
        u = upper.images
        for lower in lowers:
            census[_trace(u, lower)] += 1
    return dict(sorted(census.items(), reverse=True))


def reducing_interval(s: MeandricSystem) -> tuple[int, int] | None:
    """Least proper position window [a, b] that no arc leaves, if any."""
    up = _partners(s.upper.images)
    lo = _partners(s.lower.images)
    total = len(up) - 1
    for a in range(1, total + 1):
        reach_lo, reach_hi = total + 1, 0
        for b in range(a, total + 1):
            for other in (up[b], lo[b]):
                if other < reach_lo:
                    reach_lo = other
                if other > reach_hi:
                    reach_hi = other
            if reach_lo < a:
                break
            if reach_hi <= b and (a, b) != (1, total):
                return a, b
    return None


def is_two_reducible(s: MeandricSystem) -> bool:
    return reducing_interval(s) is not None


def is_one_reducible(s: MeandricSystem) -> bool:
    """True if a single cut splits the system (a closed proper prefix exists)."""
    up = _partners(s.upper.images)
    lo = _partners(s.lower.images)
    total = len(up) - 1
    reach = 0
    for b in range(1, total):
        reach = max(reach, up[b], lo[b])
        if reach <= b:
            return True
    return False


class Step(enum.Enum):
    UP = "U"
    DOWN = "D"
    FLAT = "F"

    @property
    def delta(self) -> int:
        return {"U": 1, "D": -1, "F": 0}[self.value]


@dataclass(frozen=True)
class MotzkinPath:
    steps: tuple[Step, ...]

    def __post_init__(self) -> None:
        steps = tuple(Step(s) if not isinstance(s, Step) else s for s in self.steps)
        height = 0
        for s in steps:
            height += s.delta
            if height < 0:
                raise MeanderError("Motzkin path goes below zero")
        if height != 0:
            raise MeanderError("Motzkin path does not end at zero")
        object.__setattr__(self, "steps", steps)

    @property
    def n(self) -> int:
        return len(self.steps)

    def __str__(self) -> str:
        return "".join(s.value for s in self.steps)


def enumerate_motzkin(n: int) -> Iterator[MotzkinPath]:
    """All Motzkin paths of length n, in U < D < F order."""
    word: list[Step] = []

    def rec(height: int) -> Iterator[MotzkinPath]:
        left = n - len(word)
        if left == 0:
            if height == 0:
                yield MotzkinPath(tuple(word))
            return
        for step in (Step.UP, Step.DOWN, Step.FLAT):
            h = height + step.delta
            if 0 <= h <= left - 1:
                word.append(step)
                yield from rec(h)
                word.pop()

    yield from rec(0)


def _in_delta_minus_one(s: MeandricSystem) -> bool:
    n = s.n
    return all(lo == up % n + 1 for up, lo in zip(s.upper.images, s.lower.images))


def meander_to_motzkin(s: MeandricSystem) -> MotzkinPath:
    """Read the upper pattern at each vertex pair of a system labeled by shift(-1)."""
    if not _in_delta_minus_one(s):
        raise MeanderError("system is not labeled by the shift i -> i - 1")
    up = _partners(s.upper.images)
    steps = []
    for i in range(1, s.n + 1):
        b, w = 2 * i - 1, 2 * i
        black_right = up[b] > b
        white_right = up[w] > w
        if up[b] == w:
            steps.append(Step.FLAT)
        elif black_right and white_right:
            steps.append(Step.UP)
        elif not black_right and not white_right:
            steps.append(Step.DOWN)
        else:
            raise MeanderError(f"forbidden down-up pattern at pair {i}")
    return MotzkinPath(tuple(steps))


def motzkin_to_meander(p: MotzkinPath) -> MeandricSystem:
    if not isinstance(p, MotzkinPath):
        p = MotzkinPath(tuple(p))
    dyck = []
    for s in p.steps:
        dyck.extend({Step.UP: (1, 1), Step.DOWN: (-1, -1), Step.FLAT: (1, -1)}[s])
    upper = _steps_to_images(dyck)
    n = p.n
    lower = [x % n + 1 for x in upper]
    return MeandricSystem(_trusted(upper), _trusted(lower))
