"""Shared test helpers: independent oracles and small random generators.

The oracles here deliberately avoid the library's search/matching code
paths: matchings are enumerated edge by edge, and best responses maximize
over all m! explicit ranking deviations.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from rrfair.mechanism import Profile, Ranking, round_robin
from rrfair.valuations import Instance, Valuation


def brute_force_matching_value(edges: list[tuple[int, object, Fraction]]) -> Fraction:
    """Max matching weight by explicit enumeration over edge subsets."""
    best = Fraction(0)

    def extend(index: int, used_left: set, used_right: set, total: Fraction) -> None:
        nonlocal best
        if total > best:
            best = total
        if index == len(edges):
            return
        left, right, weight = edges[index]
        extend(index + 1, used_left, used_right, total)
        if left not in used_left and right not in used_right:
            extend(index + 1, used_left | {left}, used_right | {right}, total + weight)

    extend(0, set(), set(), Fraction(0))
    return best


def brute_force_best_response(
    inst: Instance, agent: int, others: dict[int, Ranking]
) -> Fraction:
    """Exact best-response value by trying every one of the m! rankings."""
    v = inst.valuations[agent]
    best = Fraction(0)
    base = [others.get(i) for i in range(inst.n)]
    for perm in itertools.permutations(range(inst.m)):
        rankings = list(base)
        rankings[agent] = Ranking(perm)
        alloc, _ = round_robin(inst, Profile(tuple(rankings)))
        best = max(best, v.value(alloc.bundles[agent]))
    return best


def enumerate_reachable_bundles(
    inst: Instance, agent: int, others: dict[int, Ranking]
) -> set[frozenset[int]]:
    """All bundles `agent` can end up with, over every possible deviation."""
    m, n = inst.m, inst.n
    out: set[frozenset[int]] = set()

    def advance(available: frozenset[int], step: int) -> tuple[frozenset[int], int]:
        while step < m and step % n != agent:
            available = available - {others[step % n].top(available)}
            step += 1
        return available, step

    def explore(available: frozenset[int], bundle: frozenset[int], step: int) -> None:
        if step >= m:
            out.add(bundle)
            return
        for g in sorted(available):
            nxt, nxt_step = advance(available - {g}, step + 1)
            explore(nxt, bundle | {g}, nxt_step)

    start, step0 = advance(frozenset(range(m)), 0)
    explore(start, frozenset(), step0)
    return out


def random_ranking(rng: random.Random, m: int) -> Ranking:
    return Ranking(tuple(rng.sample(range(m), m)))


def random_profile(rng: random.Random, n: int, m: int) -> Profile:
    return Profile(tuple(random_ranking(rng, m) for _ in range(n)))


def random_monotone_table_values(rng: random.Random, m: int, hi: int = 6) -> list[Fraction]:
    """Random monotone normalized table: v(S) = max over T subset of S of r(T)."""
    raw = [Fraction(rng.randint(0, hi)) for _ in range(1 << m)]
    raw[0] = Fraction(0)
    values = list(raw)
    for mask in range(1, 1 << m):
        rest = mask
        while rest:
            bit = rest & -rest
            rest ^= bit
            if values[mask ^ bit] > values[mask]:
                values[mask] = values[mask ^ bit]
    return values


def assert_unbounded(x) -> None:
    assert x == float("inf"), f"expected unbounded, got {x}"
