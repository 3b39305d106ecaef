"""Best responses, equilibrium factors, scans, and fairness bounds."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from conftest import brute_force_best_response, random_profile
from rrfair.equilibria import (
    NoApplicableBoundError,
    applicable_bound_rule,
    best_response,
    evaluate_profile,
    pne_factor,
    profile_space_scan,
    verify_fairness_bound,
)
from rrfair.fairness import UNBOUNDED
from rrfair.instances import (
    GeneratorSpec,
    additive_tightness_instance,
    bluff_tightness_instance,
    generate,
    no_pne_instance,
    oxs_lower_bound_instance,
)
from rrfair.mechanism import Profile, Ranking, pad_to_multiple, round_robin
from rrfair.profiles import bluff_profile, truthful_profile, truthful_ranking
from rrfair.valuations import Additive, Instance, SizeGuardError, Table

F = Fraction


def padded_with_bluff(inst):
    padded, _ = pad_to_multiple(inst)
    return padded, bluff_profile(padded)


# ---------------------------------------------------------------------------
# best responses on the benchmark constructions


def test_best_response_on_bluff_tightness():
    padded, profile = padded_with_bluff(bluff_tightness_instance())
    response = best_response(padded, 1, profile.others(1))
    assert response.value == 2 - F(1, 100) - F(2, 100)
    assert response.bundle & frozenset(range(5)) == {2, 3}
    # replay realizes the bundle
    alloc, _ = round_robin(padded, profile.replace(1, response.ranking))
    assert alloc.bundles[1] == response.bundle


def test_best_response_on_additive_tightness():
    inst = additive_tightness_instance()
    padded, _ = pad_to_multiple(inst)
    profile = Profile(
        (truthful_ranking(inst.valuations[0]), Ranking((4, 3, 0, 1, 2)))
    ).extended(padded.m)
    response = best_response(padded, 1, profile.others(1))
    d, b = F(1, 1000), F(1, 2)
    assert response.value == 3 * b + F(1, 2) + 2 * d
    assert response.bundle & frozenset(range(5)) == {1, 3}


def test_best_response_on_oxs_lower_bound():
    inst = oxs_lower_bound_instance()
    padded, _ = pad_to_multiple(inst)
    profile = Profile(
        tuple(truthful_ranking(inst.valuations[i]) for i in range(3))
        + (Ranking((2, 5, 7, 0, 1, 3, 4, 6, 8)),)
    ).extended(padded.m)
    response = best_response(padded, 3, profile.others(3))
    assert response.value == 2 * F(3, 5) + F(6, 1000)  # 2*beta + eps1


def test_best_response_never_loses_to_the_current_report():
    rng = random.Random(13)
    for cls in ("additive", "oxs", "submodular_table", "unit_demand"):
        for _ in range(5):
            n = rng.choice([2, 3])
            m = n * rng.randint(1, 3)
            inst = generate(
                GeneratorSpec(valuation_class=cls, n=n, m=m, seed=rng.randrange(10**6))
            )
            profile = random_profile(rng, n, m)
            alloc, _ = round_robin(inst, profile)
            for agent in range(n):
                response = best_response(inst, agent, profile.others(agent))
                assert response.value >= inst.valuations[agent].value(alloc.bundles[agent])


def test_best_response_matches_brute_force_over_all_rankings():
    rng = random.Random(41)
    for cls in ("additive", "oxs", "submodular_table"):
        for _ in range(3):
            n = 2
            m = 4
            inst = generate(
                GeneratorSpec(valuation_class=cls, n=n, m=m, seed=rng.randrange(10**6))
            )
            profile = random_profile(rng, n, m)
            for agent in range(n):
                others = profile.others(agent)
                assert (
                    best_response(inst, agent, others).value
                    == brute_force_best_response(inst, agent, others)
                )


def test_best_response_is_deterministic_and_lexicographic():
    padded, profile = padded_with_bluff(bluff_tightness_instance())
    first = best_response(padded, 1, profile.others(1))
    second = best_response(padded, 1, profile.others(1))
    assert first.ranking == second.ranking
    assert first.explored_states == second.explored_states
    # {g3,g4,...} and {g4,g3,...} tie in value; the pick sequence starts with g3
    assert first.ranking.order[0] == 2


def test_best_response_guards():
    inst = Instance(n=2, m=4, valuations=(Additive([1, 2, 3, 4]),) * 2)
    with pytest.raises(ValueError, match="others"):
        best_response(inst, 0, {})
    big = Instance(n=2, m=16, valuations=(Additive([1] * 16),) * 2)
    with pytest.raises(SizeGuardError):
        best_response(big, 0, {1: Ranking(tuple(range(16)))})
    odd = Instance(n=2, m=3, valuations=(Additive([1, 2, 3]),) * 2)
    with pytest.raises(ValueError, match="multiple"):
        best_response(odd, 0, {1: Ranking((0, 1, 2))})


# ---------------------------------------------------------------------------
# equilibrium factors


def test_bluff_profile_is_exact_equilibrium_for_cancelable_agents():
    rng = random.Random(70)
    for cls in ("additive", "budget_additive", "unit_demand"):
        for _ in range(6):
            n = rng.choice([2, 3])
            m = n * rng.randint(1, 3)
            inst = generate(
                GeneratorSpec(valuation_class=cls, n=n, m=m, seed=rng.randrange(10**6))
            )
            report = pne_factor(inst, bluff_profile(inst))
            assert report.pne_factor == 1, (cls, inst.description)


def test_bluff_profile_factor_on_tightness_fixture():
    padded, profile = padded_with_bluff(bluff_tightness_instance())
    report = pne_factor(padded, profile)
    assert report.pne_factor == F(100, 197)
    assert report.per_agent[0].ratio == 1
    assert report.per_agent[1].ratio == F(100, 197)


def test_bluff_profile_is_half_equilibrium_for_submodular_agents():
    rng = random.Random(71)
    for cls in ("oxs", "submodular_table"):
        for _ in range(6):
            n = rng.choice([2, 3])
            m = n * rng.randint(2, 3)
            inst = generate(
                GeneratorSpec(valuation_class=cls, n=n, m=m, seed=rng.randrange(10**6))
            )
            report = pne_factor(inst, bluff_profile(inst))
            assert report.pne_factor >= F(1, 2), (cls, inst.description)


def test_zero_value_agents_impose_no_constraint():
    inst = Instance(n=2, m=2, valuations=(Additive([0, 0]), Additive([1, 1])))
    profile = Profile((Ranking((0, 1)), Ranking((0, 1))))
    report = pne_factor(inst, profile)
    assert report.per_agent[0].ratio == UNBOUNDED
    assert report.pne_factor == 1


# ---------------------------------------------------------------------------
# profile-space scans


def test_scan_of_the_no_pne_instance():
    inst = no_pne_instance()
    records = list(profile_space_scan(inst))
    assert len(records) == 576
    best = max(r.equilibrium.pne_factor for r in records)
    assert best == F(3, 4)
    assert all(r.equilibrium.pne_factor <= F(3, 4) for r in records)


def test_single_agent_profiles_are_exact_equilibria():
    inst = Instance(n=1, m=3, valuations=(Additive([3, 1, 2]),))
    for record in profile_space_scan(inst):
        assert record.equilibrium.pne_factor == 1


def test_scan_guard_rejects_oversized_exhaustive_runs():
    inst = Instance(n=2, m=8, valuations=(Additive([1] * 8),) * 2)
    with pytest.raises(SizeGuardError):
        next(profile_space_scan(inst))


def test_sampled_scan_is_deterministic_per_seed():
    inst = no_pne_instance()
    first = [r.profile for r in profile_space_scan(inst, samples=20, seed=9)]
    second = [r.profile for r in profile_space_scan(inst, samples=20, seed=9)]
    other = [r.profile for r in profile_space_scan(inst, samples=20, seed=10)]
    assert first == second
    assert first != other


def test_submodular_scan_respects_half_bound_per_profile():
    inst = no_pne_instance()
    rule = applicable_bound_rule(inst)
    assert rule.name.startswith("alpha/2")
    for record in profile_space_scan(inst):
        alpha = record.equilibrium.pne_factor
        assert record.fairness.ef1_factor >= alpha / 2


# ---------------------------------------------------------------------------
# fairness bounds per certified class


def test_bound_rule_selection():
    assert applicable_bound_rule(additive_tightness_instance()).name.startswith("alpha/(2-alpha)")
    assert applicable_bound_rule(no_pne_instance()).name.startswith("alpha/2 [two submodular")
    assert applicable_bound_rule(oxs_lower_bound_instance()).name.startswith("alpha/3")
    three_additive = Instance(n=3, m=3, valuations=(Additive([1, 2, 3]),) * 3)
    assert applicable_bound_rule(three_additive).name.startswith("alpha/2 [subadditive")


def test_bound_rule_error_when_nothing_certifies():
    superadditive = Table(2, [0, 1, 1, 3])
    inst = Instance(n=2, m=2, valuations=(superadditive, superadditive))
    with pytest.raises(NoApplicableBoundError):
        applicable_bound_rule(inst)


def test_verify_bound_on_additive_tightness():
    inst = additive_tightness_instance()
    profile = Profile((truthful_ranking(inst.valuations[0]), Ranking((4, 3, 0, 1, 2))))
    check = verify_fairness_bound(inst, profile)
    assert check.alpha == F(1, 2)
    assert check.bound == F(1, 3)
    assert check.bound == F(1001, 3003)
    assert check.ef1 == F(1001, 3001)
    assert check.holds
    assert check.ef1 < check.bound + F(1, 100)


def test_verify_bound_on_oxs_lower_bound():
    inst = oxs_lower_bound_instance()
    profile = Profile(
        tuple(truthful_ranking(inst.valuations[i]) for i in range(3))
        + (Ranking((2, 5, 7, 0, 1, 3, 4, 6, 8)),)
    )
    check = verify_fairness_bound(inst, profile)
    alpha = F(503, 603)
    assert check.alpha == alpha
    assert check.bound == alpha / 3
    assert check.ef1 == F(1006, 2397)
    assert check.holds
    assert check.ef1 < alpha / 2 + F(1, 100)  # the alpha/2 level is not met for epsilons this small


def test_exact_equilibrium_of_two_additive_agents_gives_full_ef1():
    inst = generate(GeneratorSpec(valuation_class="additive", n=2, m=4, seed=3))
    check = verify_fairness_bound(inst, truthful_profile(inst))
    assert check.alpha == 1
    assert check.bound == 1
    assert check.holds


# ---------------------------------------------------------------------------
# shared evaluation plumbing


def test_evaluate_profile_skips_equilibrium_beyond_guard():
    inst = Instance(n=3, m=15, valuations=(Additive([1] * 15),) * 3)
    evaluation = evaluate_profile(inst, truthful_profile(inst))
    assert evaluation.equilibrium is None
    assert "size guard" in evaluation.equilibrium_skipped
    assert evaluation.fairness is not None
