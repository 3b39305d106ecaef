"""Exact best responses, equilibrium factors, and profile-space analysis.

A best response is found by depth-first search over the deviating agent's
per-turn pick choices: between her turns the other agents pick
deterministically from their fixed rankings, and any feasible pick sequence
is realizable by the ranking that lists those picks first.  The search is
therefore exact over all m! ranking deviations while visiting only the
reachable outcomes.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Mapping, NamedTuple

from .fairness import UNBOUNDED, Factor, FairnessReport, ef1_factor
from .mechanism import (
    Allocation,
    Profile,
    Ranking,
    Trace,
    pad_to_multiple,
    ranking_from_picks,
    round_robin,
    strip_padding,
)
from .valuations import (
    Instance,
    SizeGuardError,
    is_additive,
    is_cancelable,
    is_subadditive,
    is_submodular,
)

MAX_GOODS_BEST_RESPONSE = 14
MAX_EXHAUSTIVE_PROFILES = 10**6
MAX_GOODS_BOUND_CERTIFICATION = 10


@dataclass(frozen=True)
class BestResponse:
    """An exact value-maximizing deviation for one agent.

    `ranking` lists the optimal picks first (lexicographically least among
    maximizers) and the remaining goods ascending; replaying the mechanism
    with it gives `bundle` back.  `explored_states` counts search states
    actually expanded (memoized revisits excluded).
    """

    ranking: Ranking
    bundle: frozenset[int]
    value: Fraction
    explored_states: int


class AgentEquilibrium(NamedTuple):
    agent: int
    current_value: Fraction
    best_response_value: Fraction
    ratio: Factor  # current / best, UNBOUNDED when the best response is worthless


@dataclass(frozen=True)
class EquilibriumReport:
    """Per-agent deviation incentives and the profile's equilibrium factor.

    `pne_factor` is the largest a for which the profile is an a-approximate
    pure Nash equilibrium: the minimum over agents of current value divided
    by best-response value, with unbounded ratios counting as 1.
    """

    per_agent: tuple[AgentEquilibrium, ...]
    pne_factor: Fraction


def best_response(inst: Instance, agent: int, others: Mapping[int, Ranking]) -> BestResponse:
    """Maximize `agent`'s true value over all ranking deviations.

    Requires m to be a multiple of n and m within the search guard.  Ties
    in value resolve toward the lexicographically least pick sequence.
    """
    if inst.m % inst.n != 0:
        raise ValueError(f"m = {inst.m} is not a multiple of n = {inst.n}; pad first")
    if inst.m > MAX_GOODS_BEST_RESPONSE:
        raise SizeGuardError(
            f"best_response explores pick trees; m = {inst.m} exceeds the guard "
            f"{MAX_GOODS_BEST_RESPONSE}"
        )
    if set(others) != set(range(inst.n)) - {agent}:
        raise ValueError("`others` must cover exactly the agents other than `agent`")

    m, n = inst.m, inst.n
    v = inst.valuations[agent]
    order_of = {i: others[i].order for i in others}
    full = (1 << m) - 1

    def advance(avail: int, step: int) -> tuple[int, int]:
        # Apply the fixed agents' picks until it is `agent`'s turn (or the end).
        while step < m and step % n != agent:
            for g in order_of[step % n]:
                bit = 1 << g
                if avail & bit:
                    avail ^= bit
                    break
            step += 1
        return avail, step

    memo: dict[tuple[int, int], Fraction] = {}
    expanded = 0

    def solve(avail: int, bundle: int, step: int) -> Fraction:
        nonlocal expanded
        if step >= m:
            return v.value_mask(bundle)
        key = (avail, bundle)
        hit = memo.get(key)
        if hit is not None:
            return hit
        expanded += 1
        best: Fraction | None = None
        mask = avail
        while mask:
            bit = mask & -mask
            mask ^= bit
            next_avail, next_step = advance(avail ^ bit, step + 1)
            value = solve(next_avail, bundle | bit, next_step)
            if best is None or value > best:
                best = value
        assert best is not None
        memo[key] = best
        return best

    avail0, step0 = advance(full, 0)
    best_value = solve(avail0, 0, step0)

    # Reconstruct the lexicographically least optimal pick sequence.
    picks: list[int] = []
    avail, bundle, step = avail0, 0, step0
    while step < m:
        target = solve(avail, bundle, step)
        mask = avail
        while mask:
            bit = mask & -mask
            mask ^= bit
            next_avail, next_step = advance(avail ^ bit, step + 1)
            if solve(next_avail, bundle | bit, next_step) == target:
                picks.append(bit.bit_length() - 1)
                avail, bundle, step = next_avail, bundle | bit, next_step
                break
        else:
            raise AssertionError("no pick reproduces the memoized optimum")

    return BestResponse(
        ranking=ranking_from_picks(picks, m),
        bundle=frozenset(picks),
        value=best_value,
        explored_states=expanded,
    )


def pne_factor(inst: Instance, profile: Profile) -> EquilibriumReport:
    """Equilibrium factor of a reported profile under the true valuations.

    Per agent: the value she currently gets against her exact best-response
    value.  A zero best response (possible only for identically worthless
    reachable bundles) imposes no constraint and counts as ratio 1.
    """
    alloc, _ = round_robin(inst, profile)
    per_agent = []
    factor = Fraction(1)
    for i in range(inst.n):
        current = inst.valuations[i].value(alloc.bundles[i])
        br = best_response(inst, i, profile.others(i))
        if br.value == 0:
            ratio: Factor = UNBOUNDED
        else:
            ratio = current / br.value
            factor = min(factor, ratio)
        per_agent.append(AgentEquilibrium(i, current, br.value, ratio))
    return EquilibriumReport(tuple(per_agent), factor)


class ScanRecord(NamedTuple):
    profile: Profile  # over the real goods (dummies stripped)
    equilibrium: EquilibriumReport
    fairness: FairnessReport


@dataclass(frozen=True)
class ProfileEvaluation:
    """One profile pushed through the whole pipeline (padding included)."""

    allocation: Allocation  # real goods only
    trace: Trace
    fairness: FairnessReport
    equilibrium: EquilibriumReport | None
    equilibrium_skipped: str | None
    padding: int


def evaluate_profile(
    inst: Instance, profile: Profile, *, with_equilibrium: bool = True
) -> ProfileEvaluation:
    """Pad, run the mechanism, strip dummies, and score the outcome.

    `profile` ranks the real goods; dummies are appended at the end of each
    ranking.  The equilibrium report is skipped (with a reason) when the
    padded instance exceeds the best-response guard.
    """
    padded, padding = pad_to_multiple(inst)
    padded_profile = profile.extended(padded.m)
    alloc, trace = round_robin(padded, padded_profile)
    fairness = ef1_factor(inst, strip_padding(alloc, inst.m))
    equilibrium = None
    skipped = None
    if with_equilibrium:
        if padded.m > MAX_GOODS_BEST_RESPONSE:
            skipped = (
                f"size guard: padded m = {padded.m} exceeds {MAX_GOODS_BEST_RESPONSE}"
            )
        else:
            equilibrium = pne_factor(padded, padded_profile)
    return ProfileEvaluation(
        allocation=strip_padding(alloc, inst.m),
        trace=trace,
        fairness=fairness,
        equilibrium=equilibrium,
        equilibrium_skipped=skipped,
        padding=padding,
    )


def profile_orders(
    inst: Instance, *, samples: int | None = None, seed: int = 0
) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Per-agent good orders for a scan: all of them, or a seeded sample.

    Exhaustive enumeration is lexicographic and refuses instances beyond
    10^6 profiles, since a truncated scan would invalidate non-existence
    claims.
    """
    if samples is None:
        total = math.factorial(inst.m) ** inst.n
        if total > MAX_EXHAUSTIVE_PROFILES:
            raise SizeGuardError(
                f"exhaustive scan of {total} profiles exceeds {MAX_EXHAUSTIVE_PROFILES}"
            )
        yield from itertools.product(itertools.permutations(range(inst.m)), repeat=inst.n)
    else:
        rng = random.Random(seed)
        for _ in range(samples):
            yield tuple(tuple(rng.sample(range(inst.m), inst.m)) for _ in range(inst.n))


def scan_one_profile(inst: Instance, padded: Instance, orders) -> ScanRecord:
    """Evaluate a single scanned profile (equilibrium plus fairness)."""
    profile = Profile(tuple(Ranking(order) for order in orders))
    padded_profile = profile.extended(padded.m)
    equilibrium = pne_factor(padded, padded_profile)
    alloc, _ = round_robin(padded, padded_profile)
    fairness = ef1_factor(inst, strip_padding(alloc, inst.m))
    return ScanRecord(profile, equilibrium, fairness)


def profile_space_scan(
    inst: Instance, *, samples: int | None = None, seed: int = 0
) -> Iterator[ScanRecord]:
    """Evaluate profiles over the real goods, exhaustively or sampled.

    Exhaustive mode (samples=None) walks all (m!)^n profiles in
    lexicographic order; sampled mode draws `samples` uniform profiles from
    a seeded generator.  Both are deterministic.
    """
    padded, _ = pad_to_multiple(inst)
    for orders in profile_orders(inst, samples=samples, seed=seed):
        yield scan_one_profile(inst, padded, orders)


@dataclass(frozen=True)
class BoundRule:
    """The strongest equilibrium-to-fairness guarantee an instance certifies for."""

    name: str
    formula: Callable[[Fraction], Fraction]

    def __call__(self, alpha: Fraction) -> Fraction:
        return self.formula(alpha)


class NoApplicableBoundError(ValueError):
    """The instance certifies for none of the supported valuation classes."""


def applicable_bound_rule(inst: Instance) -> BoundRule:
    """Certify the instance's valuation classes and pick the strongest bound.

    Two additive agents: a/(2-a).  Subadditive cancelable agents, or two
    submodular agents: a/2.  Submodular agents: a/3.  The formulas are
    ordered pointwise on (0, 1], so the first applicable rule is strongest.

    Certification runs the exhaustive class checks, so it carries its own
    size guard, tighter than the individual checks'.
    """
    if inst.m > MAX_GOODS_BOUND_CERTIFICATION:
        raise SizeGuardError(
            f"class certification for bound selection enumerates subset pairs; "
            f"m = {inst.m} exceeds the guard {MAX_GOODS_BOUND_CERTIFICATION}"
        )
    checks = [
        (
            is_additive(v),
            bool(is_submodular(v)),
            bool(is_cancelable(v)),
            is_subadditive(v),
        )
        for v in inst.valuations
    ]
    all_additive = all(c[0] for c in checks)
    all_submodular = all(c[1] for c in checks)
    all_subadd_cancelable = all(c[2] and c[3] for c in checks)

    if all_additive and inst.n == 2:
        return BoundRule("alpha/(2-alpha) [two additive agents]", lambda a: a / (2 - a))
    if all_subadd_cancelable:
        return BoundRule("alpha/2 [subadditive cancelable agents]", lambda a: a / 2)
    if all_submodular and inst.n == 2:
        return BoundRule("alpha/2 [two submodular agents]", lambda a: a / 2)
    if all_submodular:
        return BoundRule("alpha/3 [submodular agents]", lambda a: a / 3)
    raise NoApplicableBoundError(
        "instance fits no certified class (additive / submodular / subadditive cancelable)"
    )


class BoundCheck(NamedTuple):
    alpha: Fraction          # the profile's equilibrium factor
    ef1: Factor              # the allocation's envy factor
    bound: Fraction          # guaranteed lower bound for ef1 at this alpha
    holds: bool
    rule: str


def verify_fairness_bound(
    inst: Instance, profile: Profile, *, rule: BoundRule | None = None
) -> BoundCheck:
    """Check ef1_factor >= bound(pne_factor) for one profile.

    The rule is certified from the instance unless supplied (scans certify
    once and reuse).  `profile` ranks the real goods.
    """
    if rule is None:
        rule = applicable_bound_rule(inst)
    evaluation = evaluate_profile(inst, profile)
    if evaluation.equilibrium is None:
        raise SizeGuardError(evaluation.equilibrium_skipped or "equilibrium report unavailable")
    alpha = evaluation.equilibrium.pne_factor
    ef1 = evaluation.fairness.ef1_factor
    bound = rule(alpha)
    return BoundCheck(alpha, ef1, bound, ef1 >= bound, rule.name)
