import random

import pytest

from archevolve.engine import Engine, EngineConfig
from archevolve.interaction import (FeedbackBundle, FeedbackEntry,
                                    FixedComponentCountPolicy,
                                    InteractionProtocolError, NoopPolicy,
                                    ReplayPolicy, ScheduleError,
                                    TargetArchitecturePolicy, _kmeans,
                                    apply_feedback, build_schedule,
                                    policy_from_dict, select_candidates,
                                    validate_bundle)
from conftest import small_model


@pytest.fixture
def engine():
    model = small_model(3, n_classes=10)
    eng = Engine(model, EngineConfig(population_size=30, max_evaluations=400,
                                     rng_seed=1))
    eng.initialize()
    return eng


@pytest.fixture
def candidate_set(engine):
    return select_candidates(engine.population, 3, engine.rng,
                             engine.model, stop_index=0)


def test_build_schedule_exact_case():
    assert build_schedule(12, 3) == [4, 7, 10]


def test_build_schedule_endpoints():
    rng = random.Random(0)
    for _ in range(50):
        g = rng.randint(6, 5000)
        h_cap = (5 * g) // 6 - g // 3 + 1
        h = rng.randint(1, min(h_cap, 10))
        stops = build_schedule(g, h)
        assert stops[0] == g // 3
        if h > 1:
            assert stops[-1] == (5 * g) // 6
        assert stops == sorted(stops)
        assert all(0 < s < g for s in stops)


def test_build_schedule_errors():
    with pytest.raises(ScheduleError):
        build_schedule(5, 3)
    with pytest.raises(ScheduleError):
        build_schedule(12, 0)
    with pytest.raises(ScheduleError):
        build_schedule(12, 100)


def test_kmeans_assignment_shape():
    rng = random.Random(2)
    points = [(rng.random(), rng.random(), rng.random()) for _ in range(40)]
    assign = _kmeans(points, 4, rng)
    assert len(assign) == 40
    assert set(assign) <= {0, 1, 2, 3}


def test_kmeans_separated_clusters():
    rng = random.Random(3)
    points = ([(0.0, 0.0, 0.0)] * 5 + [(1.0, 1.0, 1.0)] * 5)
    assign = _kmeans(points, 2, rng)
    assert len({assign[i] for i in range(5)}) == 1
    assert assign[0] != assign[5]


def test_select_candidates_tokens_and_distinct(engine, candidate_set):
    tokens = [c.token for c in candidate_set.candidates]
    assert tokens == ["s0", "s1", "s2"]
    inds = [c.individual for c in candidate_set.candidates]
    assert len({id(i) for i in inds}) == 3
    data = candidate_set.to_dict()
    assert data["stop_index"] == 0
    assert all("phenotype" in c and "metrics" in c for c in data["candidates"])


def test_select_candidates_includes_best_f_sub(engine):
    from archevolve.preferences import Preference
    engine.store.add_interaction(
        [Preference("number_of_components", {"n": 4}, 5)])
    engine.evaluate_all()
    cs = select_candidates(engine.population, 3, engine.rng, engine.model, 0)
    eligible = [i for i in engine.population
                if i.feasible and not i.marked_for_removal] or engine.population
    best = min(eligible, key=lambda i: i.fitness.f_sub)
    assert best.fitness.f_sub == cs.candidates[-1].individual.fitness.f_sub


def test_validate_bundle_errors(candidate_set):
    with pytest.raises(InteractionProtocolError, match="stop"):
        validate_bundle(candidate_set, FeedbackBundle(5, []))
    with pytest.raises(InteractionProtocolError, match="unshown"):
        validate_bundle(candidate_set,
                        FeedbackBundle(0, [FeedbackEntry("nope")]))
    with pytest.raises(InteractionProtocolError, match="duplicate"):
        validate_bundle(candidate_set, FeedbackBundle(
            0, [FeedbackEntry("s0"), FeedbackEntry("s0")]))
    with pytest.raises(InteractionProtocolError, match="out of range"):
        validate_bundle(candidate_set, FeedbackBundle(
            0, [FeedbackEntry("s0", freeze_components=[99])]))
    from archevolve.preferences import PreferenceError
    with pytest.raises(PreferenceError):
        validate_bundle(candidate_set, FeedbackBundle(0, [
            FeedbackEntry("s0", preference={"kind": "nope", "payload": {},
                                            "confidence": 3})]))


def test_apply_feedback_actions(engine, candidate_set):
    target = candidate_set.candidates[0].individual
    removed = candidate_set.candidates[1].individual
    bundle = FeedbackBundle(0, [
        FeedbackEntry("s0", preference={
            "kind": "number_of_components", "payload": {"n": 3}, "confidence": 4},
            add_to_archive=True, freeze_components=[0]),
        FeedbackEntry("s1", remove_from_population=True),
    ])
    stop = apply_feedback(engine, candidate_set, bundle)
    assert stop is False
    assert target.preserved
    assert target.architecture.components[0].frozen
    assert target in engine.archive.individuals()
    assert removed.marked_for_removal
    assert len(engine.store) == 1

    cs2 = select_candidates(engine.population, 3, engine.rng, engine.model, 1)
    assert apply_feedback(engine, cs2, FeedbackBundle(1, [
        FeedbackEntry(cs2.candidates[0].token, stop_search=True)])) is True


def test_preserved_not_markable(engine, candidate_set):
    ind = candidate_set.candidates[0].individual
    apply_feedback(engine, candidate_set, FeedbackBundle(0, [
        FeedbackEntry("s0", add_to_archive=True)]))
    cs2 = select_candidates(engine.population, 3, engine.rng, engine.model, 1)
    for cand in cs2.candidates:
        if cand.individual is ind:
            apply_feedback(engine, cs2, FeedbackBundle(1, [
                FeedbackEntry(cand.token, remove_from_population=True)]))
            assert not ind.marked_for_removal
            break


def test_bundle_roundtrip():
    bundle = FeedbackBundle(2, [
        FeedbackEntry("s0", preference={"kind": "number_of_components",
                                        "payload": {"n": 3}, "confidence": 5},
                      add_to_archive=True, freeze_components=[1]),
        FeedbackEntry("s1", stop_search=True),
    ])
    assert FeedbackBundle.from_dict(bundle.to_dict()) == bundle


def test_policies():
    noop = policy_from_dict({"policy": "noop"})
    assert isinstance(noop, NoopPolicy)
    fixed = policy_from_dict({"policy": "fixed_nc", "n": 4, "likert": 5})
    assert isinstance(fixed, FixedComponentCountPolicy)
    target = policy_from_dict({"policy": "target_architecture",
                               "components": [["a", "b"], ["c"]]})
    assert isinstance(target, TargetArchitecturePolicy)
    replay = policy_from_dict({"policy": "replay", "bundles": [
        {"stop_index": 0, "entries": []}]})
    assert isinstance(replay, ReplayPolicy)
    with pytest.raises(InteractionProtocolError):
        policy_from_dict({"policy": "mystery"})


def test_fixed_policy_bundle_shape(candidate_set):
    bundle = FixedComponentCountPolicy(4, likert=5)(candidate_set)
    prefs = [e.preference for e in bundle.entries if e.preference]
    assert len(prefs) == 1
    assert prefs[0]["kind"] == "number_of_components"
    assert prefs[0]["payload"]["n"] == 4


def test_replay_policy_missing_stop(candidate_set):
    policy = ReplayPolicy([{"stop_index": 7, "entries": []}])
    with pytest.raises(InteractionProtocolError, match="no bundle"):
        policy(candidate_set)
