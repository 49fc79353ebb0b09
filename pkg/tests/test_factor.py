import random
import threading

import pytest

from conftest import oracle_catalan, oracle_expectation, random_perm
from meandric import factor, gauss, perm
from meandric.factor import CacheError, SifCache
from meandric.perm import Permutation, PermutationError
from meandric.sequences import motzkin


def P(*xs):
    return Permutation(tuple(xs))


def test_closed_delta():
    assert factor.closed_delta(5, 0) == 42
    assert factor.closed_delta(5, 1) == motzkin(5) == 21
    assert factor.closed_delta(7, 3) == 7
    assert factor.closed_delta(5, -1) == 21
    with pytest.raises(ValueError):
        factor.closed_delta(0, 0)


def test_delta_index():
    for n in range(1, 8):
        for k in range(n):
            assert factor.delta_index(perm.shift(n, k)) == k
    assert factor.delta_index(P(2, 1, 3)) is None


def test_evaluate_examples():
    for n in range(1, 10):
        assert factor.evaluate(perm.identity(n)) == oracle_catalan(n)
    # Transposition with gap x gives 2 C_{n-x} C_x.
    for n in range(2, 8):
        for a in range(1, n + 1):
            for b in range(a + 1, n + 1):
                x = b - a
                tau = perm.parse(f"({a} {b})", n)
                assert factor.evaluate(tau) == 2 * oracle_catalan(n - x) * oracle_catalan(x)
    # Two crossing transpositions a < c < b < d.
    n = 7
    for a, c, b, d in [(1, 2, 3, 4), (1, 3, 5, 7), (2, 3, 5, 6), (1, 4, 5, 6)]:
        sigma = perm.parse(f"({a} {b})({c} {d})", n)
        C = oracle_catalan
        assert factor.evaluate(sigma) == 4 * C(n - (d - a)) * C(d - b) * C(b - c) * C(c - a)
    assert factor.evaluate(perm.parse("(1 6 3 9 7 4 8 2 5)", 9)) == 0


def test_canonical_key():
    assert factor.canonical_key(P(2, 1)) == (2, 1)
    assert factor.canonical_key(perm.shift(5, 2)) == factor.canonical_key(perm.shift(5, -2))
    with pytest.raises(PermutationError):
        factor.canonical_key(perm.identity(3))


def test_canonical_key_orbit_invariant():
    rng = random.Random(9)
    checked = 0
    while checked < 1000:
        n = rng.randint(2, 9)
        sigma = P(*random_perm(n, rng))
        if not perm.is_sif(sigma):
            continue
        checked += 1
        key = factor.canonical_key(sigma)
        orbit = [perm.conjugate_by_shift(r, k) for r in (sigma, perm.inverse(sigma)) for k in range(n)]
        assert key == min(o.images for o in orbit)
        assert all(factor.canonical_key(o) == key for o in orbit)
        assert factor.canonical_key(sigma, use_inversion=False) == min(o.images for o in orbit[:n])


def test_block_witness():
    blocks, p = factor.theorem1_witness(perm.identity(3))
    assert p == 3
    blocks, p = factor.theorem1_witness(P(2, 1, 3, 5, 4))
    assert p == 3 and blocks.blocks == (P(2, 1), P(1), P(2, 1))
    assert gauss.expectation_leading_single(P(2, 1, 3, 5, 4)) == 20 == oracle_catalan(3) * 2 * 1 * 2
    assert factor.theorem1_witness(perm.shift(5, 2))[1] == 1


def test_reduction_step_terminates():
    rng = random.Random(4)
    for _ in range(300):
        n = rng.randint(1, 9)
        sigma = P(*random_perm(n, rng))
        step = factor.reduction_step(sigma)
        if perm.is_sif(sigma):
            assert step is None
            continue
        assert step.p >= 2
        assert all(b.n < n for b in step.blocks.blocks)
        moved = perm.conjugate_by_shift(sigma, step.shift)
        assert step.blocks.reassemble() == moved


@pytest.mark.parametrize("n", range(1, 6))
def test_evaluate_matches_sn_oracle(n):
    cache = SifCache()
    for sigma in perm.all_permutations(n):
        assert factor.evaluate(sigma, cache) == oracle_expectation(perm.identity(n).images, sigma.images)


def test_evaluate_random_against_brute():
    rng = random.Random(8)
    for n in (7, 8, 9):
        cache = SifCache()
        for _ in range(150):
            sigma = P(*random_perm(n, rng))
            assert factor.evaluate(sigma, cache) == gauss.expectation_leading_single(sigma)


def test_evaluate_cold_and_warm_cache_agree():
    rng = random.Random(12)
    sigmas = [P(*random_perm(8, rng)) for _ in range(100)]
    warm = SifCache()
    first = [factor.evaluate(s, warm) for s in sigmas]
    assert [factor.evaluate(s, warm) for s in sigmas] == first
    assert [factor.evaluate(s) for s in sigmas] == first
    assert warm.hits > 0
    cyclic = SifCache(use_inversion=False)
    assert [factor.evaluate(s, cyclic) for s in sigmas] == first


def test_cache_conflict_and_merge():
    a, b = SifCache(), SifCache()
    a.put((2, 1), 2)
    a.put((2, 1), 2)
    with pytest.raises(CacheError):
        a.put((2, 1), 3)
    b.put((2, 3, 1), 4)
    a.merge(b)
    assert len(a) == 2 and (2, 3, 1) in a


def test_cache_threads_share_results():
    cache = SifCache()
    rng = random.Random(1)
    sigmas = [P(*random_perm(8, rng)) for _ in range(60)]
    expected = [factor.evaluate(s) for s in sigmas]
    results = {}

    def work(tag):
        results[tag] = [factor.evaluate(s, cache) for s in sigmas]

    threads = [threading.Thread(target=work, args=(t,)) for t in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == expected for r in results.values())


def test_cache_file_round_trip(tmp_path):
    path = tmp_path / "sif.tsv"
    cache = SifCache()
    for n in (5, 6):
        for sigma in perm.sif_permutations(n):
            factor.evaluate(sigma, cache)
    cache.save(path)
    text = path.read_text().splitlines()
    assert text[0] == f"# meandric-sif-cache\t{factor.CONVENTION_HASH}"
    n, key, value = text[1].split("\t")
    assert int(n) == len(key.split())
    loaded = SifCache.load(path)
    assert loaded.items() == cache.items()
    assert SifCache.load(tmp_path / "missing.tsv").items() == []


def test_cache_load_rekeys(tmp_path):
    path = tmp_path / "sif.tsv"
    sigma = P(3, 1, 4, 2)  # SIF, not canonical
    assert perm.is_sif(sigma)
    value = gauss.expectation_leading_single(sigma)
    path.write_text(f"# meandric-sif-cache\t{factor.CONVENTION_HASH}\n4\t3 1 4 2\t{value}\n")
    loaded = SifCache.load(path)
    assert loaded.items() == [(factor.canonical_key(sigma), value)]


@pytest.mark.parametrize(
    "body",
    [
        "# meandric-sif-cache\tdeadbeefdeadbeef\n",
        "# meandric-sif-cache\n",
        "3\t1 2 3\t5\n",
        "3\t2 2 1\t1\n",
        "3\t2 3 1\n",
        "3\t2 3 1\tx\n",
        "3\t2 3 1\t-1\n",
        "2\t2 3 1\t4\n",
    ],
)
def test_cache_load_rejects(tmp_path, body):
    path = tmp_path / "bad.tsv"
    path.write_text(body)
    with pytest.raises(CacheError):
        SifCache.load(path)


def test_cache_load_rejects_conflict(tmp_path):
    path = tmp_path / "sif.tsv"
    path.write_text("3\t2 3 1\t4\n3\t3 1 2\t5\n")
    with pytest.raises(CacheError):
        SifCache.load(path)


def test_default_cache_path(monkeypatch, tmp_path):
    monkeypatch.delenv(factor.CACHE_ENV, raising=False)
    assert factor.default_cache_path() is None
    monkeypatch.setenv(factor.CACHE_ENV, str(tmp_path / "c.tsv"))
    assert factor.default_cache_path() == tmp_path / "c.tsv"
