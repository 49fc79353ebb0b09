"""Fast leading-order expectations by block factorization and SIF reduction.

A permutation that stabilizes a proper interval is conjugated by the cyclic
shift moving that interval to the front; the result splits into p >= 2
connected blocks and its value is C_p times the product of the block values.
What remains are SIF permutations: shifts have closed forms, everything else
is computed once by enumeration and cached under an orbit-canonical key.
"""

from __future__ import annotations

import hashlib
import os
import threading
from dataclasses import dataclass
from pathlib import Path

from .gauss import expectation_leading_single
from .perm import (
    BlockDecomposition,
    Permutation,
    PermutationError,
    _least_stabilized_interval,
    conjugate_by_shift,
    connected_blocks,
    inverse,
    is_sif,
    parse,
)
from .sequences import catalan, motzkin

__all__ = [
    "CacheError",
    "SifCache",
    "CONVENTION",
    "CONVENTION_HASH",
    "evaluate",
    "closed_delta",
    "delta_index",
    "canonical_key",
    "theorem1_witness",
]

CONVENTION = (
    "black(i)=2i-1;white(i)=2i;compose(a,b)=a.b;"
    "lower=sigma_black^-1.pi.sigma_white;sigma_white=id"
)
CONVENTION_HASH = hashlib.sha256(CONVENTION.encode()).hexdigest()[:16]
_HEADER = "# meandric-sif-cache"

# Environment variable naming the default on-disk cache.
CACHE_ENV = "MEANDRIC_SIF_CACHE"


class CacheError(ValueError):
    pass


def canonical_key(sigma: Permutation, use_inversion: bool = True) -> tuple[int, ...]:
    """Least one-line form over the cyclic conjugates of sigma (and of its inverse)."""
    if not is_sif(sigma):
        raise PermutationError("canonical keys are defined for SIF permutations only")
    return _orbit_min(sigma, use_inversion)


def _orbit_min(sigma: Permutation, use_inversion: bool) -> tuple[int, ...]:
    reps = [sigma, inverse(sigma)] if use_inversion else [sigma]
    return min(conjugate_by_shift(r, k).images for r in reps for k in range(sigma.n))


def delta_index(sigma: Permutation) -> int | None:
    """k in [0, n) when sigma is the shift i -> i + k, else None."""
    n = sigma.n
    k = (sigma.images[0] - 1) % n
    if all(x == (i + k) % n + 1 for i, x in enumerate(sigma.images)):
        return k
    return None


def closed_delta(n: int, k: int) -> int:
    """Leading expectation for the shift by k on [1, n]."""
    if n < 1:
        raise ValueError("n must be positive")
    k %= n
    if k == 0:
        return catalan(n)
    if k in (1, n - 1):
        return motzkin(n)
    return n


class SifCache:
    """Memo of leading expectations for SIF permutations keyed by orbit.

    Safe to share between threads.  Writing a key twice with different values
    raises, since both computations would have to agree.
    """

    def __init__(self, use_inversion: bool = True) -> None:
        self.use_inversion = use_inversion
        self._entries: dict[tuple[int, ...], int] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, key: tuple[int, ...]) -> bool:
        return tuple(key) in self._entries

    def items(self) -> list[tuple[tuple[int, ...], int]]:
        with self._lock:
            return sorted(self._entries.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def key(self, sigma: Permutation) -> tuple[int, ...]:
        return _orbit_min(sigma, self.use_inversion)

    def get(self, key: tuple[int, ...]) -> int | None:
        with self._lock:
            value = self._entries.get(tuple(key))
            if value is None:
                self.misses += 1
            else:
                self.hits += 1
            return value

    def put(self, key: tuple[int, ...], value: int) -> None:
        key = tuple(key)
        with self._lock:
            old = self._entries.setdefault(key, value)
        if old != value:
            raise CacheError(f"conflicting values for {key}: {old} vs {value}")

    def merge(self, other: "SifCache") -> None:
        for key, value in other.items():
            self.put(key, value)

    def save(self, path: str | os.PathLike) -> None:
        path = Path(path)
        lines = [f"{_HEADER}\t{CONVENTION_HASH}"]
        for key, value in self.items():
            lines.append(f"{len(key)}\t{' '.join(map(str, key))}\t{value}")
        tmp = path.with_suffix(path.suffix + ".tmp")
        tmp.write_text("\n".join(lines) + "\n")
        tmp.replace(path)

    @classmethod
    def load(cls, path: str | os.PathLike, use_inversion: bool = True) -> "SifCache":
        cache = cls(use_inversion)
        cache.update_from(path)
        return cache

    def update_from(self, path: str | os.PathLike) -> None:
        path = Path(path)
        if not path.exists():
            return
        for lineno, line in enumerate(path.read_text().splitlines(), 1):
            if not line.strip():
                continue
            if line.startswith("#"):
                parts = line.split("\t")
                if parts[0] == _HEADER and (len(parts) < 2 or parts[1] != CONVENTION_HASH):
                    raise CacheError(f"{path}: cache written under a different convention")
                continue
            try:
                n_text, key_text, value_text = line.split("\t")
                n = int(n_text)
                sigma = parse(key_text, n)
                value = int(value_text)
            except ValueError as exc:
                raise CacheError(f"{path}:{lineno}: malformed record") from exc
            if not is_sif(sigma):
                raise CacheError(f"{path}:{lineno}: key is not SIF")
            if value < 0:
                raise CacheError(f"{path}:{lineno}: negative value")
            self.put(self.key(sigma), value)


def default_cache_path() -> Path | None:
    value = os.environ.get(CACHE_ENV)
    return Path(value) if value else None


def _sif_value(sigma: Permutation, cache: SifCache) -> int:
    k = delta_index(sigma)
    if k is not None:
        return closed_delta(sigma.n, k)
    key = cache.key(sigma)
    value = cache.get(key)
    if value is None:
        value = expectation_leading_single(Permutation(key))
        cache.put(key, value)
    return value


@dataclass(frozen=True)
class Witness:
    """The shift and block split that the recursion applies at the top level."""

    shift: int
    blocks: BlockDecomposition

    @property
    def p(self) -> int:
        return self.blocks.p


def theorem1_witness(sigma: Permutation) -> tuple[BlockDecomposition, int]:
    """Connected-block decomposition of sigma and its block count."""
    blocks = connected_blocks(sigma)
    return blocks, blocks.p


def reduction_step(sigma: Permutation) -> Witness | None:
    """Shift the least stabilized proper interval to the front and split, if any."""
    interval = _least_stabilized_interval(sigma.images)
    if interval is None:
        return None
    a = interval[0]
    moved = conjugate_by_shift(sigma, a - 1)
    return Witness(a - 1, connected_blocks(moved))


def evaluate(sigma: Permutation, cache: SifCache | None = None) -> int:
    """Leading expectation of the invariant labeled by sigma (white labels trivial)."""
    if cache is None:
        cache = SifCache()
    step = reduction_step(sigma)
    if step is None:
        return _sif_value(sigma, cache)
    value = catalan(step.p)
    for block in step.blocks.blocks:
        value *= evaluate(block, cache)
        if value == 0:
            break
    return value
