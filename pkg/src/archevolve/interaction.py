"""Interaction stops: scheduling, candidate selection, feedback handling.

The engine pauses at scheduled generations, shows a small set of
representative solutions, and receives a feedback bundle: at most one
preference per candidate plus optional actions (archive, remove, freeze,
stop). Scripted policies make the loop fully headless and reproducible.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .architecture import Architecture, Component, architecture_to_dict
from .preferences import Preference, validate_preference


class InteractionProtocolError(Exception):
    pass


class ScheduleError(Exception):
    pass


def build_schedule(g: int, h: int) -> list[int]:
    """Generation indices of the H stops.

    The first third of the run approximates the front before the first
    stop; a sixth of it remains after the last stop to propagate the
    final decisions. Stops are evenly spaced in between.
    """
    if h < 1 or g < 6:
        raise ScheduleError("need h >= 1 and g >= 6")
    first = g // 3
    last = (5 * g) // 6
    if h == 1:
        return [first]
    if h > last - first + 1:
        raise ScheduleError("more stops than distinct generations available")
    span = last - first
    stops = [first + math.floor(i * span / (h - 1) + 0.5) for i in range(h)]
    return stops


@dataclass
class Candidate:
    token: str
    individual: object  # engine.Individual
    phenotype: dict

    def to_dict(self) -> dict:
        ind = self.individual
        return {
            "token": self.token,
            "phenotype": self.phenotype,
            "metrics": {"icd": ind.metrics.icd, "erp": ind.metrics.erp,
                        "gcr": ind.metrics.gcr},
            "objectives": list(ind.objectives),
            "f_obj": ind.fitness.f_obj if ind.fitness else None,
            "f_sub": ind.fitness.f_sub if ind.fitness else None,
        }


@dataclass
class CandidateSet:
    stop_index: int
    candidates: list[Candidate]

    def to_dict(self) -> dict:
        return {"stop_index": self.stop_index,
                "candidates": [c.to_dict() for c in self.candidates]}

    def find(self, token: str) -> Candidate:
        for c in self.candidates:
            if c.token == token:
                return c
        raise InteractionProtocolError(f"feedback references unshown solution {token!r}")


def _l2sq(a, b) -> float:
    return sum((x - y) ** 2 for x, y in zip(a, b))


def _kmeans(points: list[tuple], k: int, rng: random.Random,
            max_iter: int = 50) -> list[int]:
    """k-means with D^2 seeding; returns a cluster index per point."""
    n = len(points)
    centers = [points[rng.randrange(n)]]
    while len(centers) < k:
        d2 = [min(_l2sq(p, c) for c in centers) for p in points]
        total = sum(d2)
        if total <= 0.0:
            centers.append(points[rng.randrange(n)])
            continue
        r = rng.random() * total
        acc = 0.0
        pick = n - 1
        for i, w in enumerate(d2):
            acc += w
            if acc >= r:
                pick = i
                break
        centers.append(points[pick])
    assign = [0] * n
    for _ in range(max_iter):
        changed = False
        for i, p in enumerate(points):
            best = min(range(len(centers)), key=lambda j: (_l2sq(p, centers[j]), j))
            if best != assign[i]:
                assign[i] = best
                changed = True
        for j in range(len(centers)):
            mine = [points[i] for i in range(n) if assign[i] == j]
            if mine:
                centers[j] = tuple(sum(c) / len(mine) for c in zip(*mine))
        if not changed:
            break
    return assign


def select_candidates(population: list, m: int, rng: random.Random,
                      model, stop_index: int) -> CandidateSet:
    """m-1 cluster representatives plus the best preference-satisfying one."""
    eligible = [ind for ind in population
                if ind.feasible and not ind.marked_for_removal]
    if len(eligible) < m:
        eligible = list(population)
    if len(eligible) <= m:
        chosen = list(eligible)[:m]
        return _as_candidate_set(chosen, model, stop_index)

    def pref_key(ind):
        fs = ind.fitness.f_sub if ind.fitness else None
        if fs is not None:
            return (0, fs)
        return (1, ind.fitness.f_obj if ind.fitness else 1.0)

    best = min(eligible, key=pref_key)

    points = [ind.objectives for ind in eligible]
    assign = _kmeans(points, m - 1, rng)
    centers: dict[int, tuple] = {}
    for j in set(assign):
        mine = [points[i] for i in range(len(points)) if assign[i] == j]
        centers[j] = tuple(sum(c) / len(mine) for c in zip(*mine))

    chosen: list = []
    for j in sorted(centers):
        order = sorted(
            (i for i in range(len(eligible)) if assign[i] == j),
            key=lambda i: (_l2sq(points[i], centers[j]), i),
        )
        # nearest to centroid; backfill with next-nearest on duplicates
        for i in order:
            if eligible[i] is not best and eligible[i] not in chosen:
                chosen.append(eligible[i])
                break
    chosen.append(best)
    # top up if some cluster was empty or fully deduplicated
    for ind in sorted(eligible, key=pref_key):
        if len(chosen) >= m:
            break
        if ind not in chosen:
            chosen.append(ind)
    return _as_candidate_set(chosen[:m], model, stop_index)


def _as_candidate_set(individuals: list, model, stop_index: int) -> CandidateSet:
    cands = [
        Candidate(f"s{i}", ind, architecture_to_dict(ind.architecture, model))
        for i, ind in enumerate(individuals)
    ]
    return CandidateSet(stop_index, cands)


@dataclass
class FeedbackEntry:
    candidate: str
    preference: dict | None = None  # {"kind","payload","confidence"}
    add_to_archive: bool = False
    remove_from_population: bool = False
    freeze_components: list[int] = field(default_factory=list)
    stop_search: bool = False

    def to_dict(self) -> dict:
        return {
            "candidate": self.candidate,
            "preference": self.preference,
            "actions": {
                "add_to_archive": self.add_to_archive,
                "remove_from_population": self.remove_from_population,
                "freeze_components": list(self.freeze_components),
                "stop_search": self.stop_search,
            },
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FeedbackEntry":
        actions = data.get("actions", {})
        return cls(
            candidate=data["candidate"],
            preference=data.get("preference"),
            add_to_archive=bool(actions.get("add_to_archive", False)),
            remove_from_population=bool(actions.get("remove_from_population", False)),
            freeze_components=list(actions.get("freeze_components", [])),
            stop_search=bool(actions.get("stop_search", False)),
        )


@dataclass
class FeedbackBundle:
    stop_index: int
    entries: list[FeedbackEntry] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"stop_index": self.stop_index,
                "entries": [e.to_dict() for e in self.entries]}

    @classmethod
    def from_dict(cls, data: dict) -> "FeedbackBundle":
        return cls(data["stop_index"],
                   [FeedbackEntry.from_dict(e) for e in data.get("entries", [])])


def validate_bundle(candidate_set: CandidateSet,
                    bundle: FeedbackBundle) -> list[Preference]:
    """Check a bundle against the shown candidates without touching state.

    Raises InteractionProtocolError on stale stops, unknown candidates,
    repeated candidates or invalid payloads; returns the preferences.
    """
    if bundle.stop_index != candidate_set.stop_index:
        raise InteractionProtocolError(
            f"bundle targets stop {bundle.stop_index}, "
            f"engine is at stop {candidate_set.stop_index}")
    seen: set[str] = set()
    prefs: list[Preference] = []
    for entry in bundle.entries:
        if entry.candidate in seen:
            raise InteractionProtocolError(
                f"duplicate feedback for candidate {entry.candidate!r}")
        seen.add(entry.candidate)
        cand = candidate_set.find(entry.candidate)
        n_components = cand.individual.architecture.n
        for idx in entry.freeze_components:
            if not 0 <= idx < n_components:
                raise InteractionProtocolError(
                    f"freeze target {idx} out of range for {entry.candidate!r}")
        if entry.preference is not None:
            p = entry.preference
            validate_preference(p["kind"], p.get("payload", {}), p["confidence"])
            prefs.append(Preference(p["kind"], p.get("payload", {}),
                                    p["confidence"], candidate_set.stop_index))
    return prefs


def apply_feedback(engine, candidate_set: CandidateSet,
                   bundle: FeedbackBundle) -> bool:
    """Apply a bundle to the engine state; returns True on stop request."""
    prefs = validate_bundle(candidate_set, bundle)
    stop = False
    for entry in bundle.entries:
        cand = candidate_set.find(entry.candidate)
        ind = cand.individual
        if entry.freeze_components:
            comps = list(ind.architecture.components)
            for idx in entry.freeze_components:
                comps[idx] = Component(comps[idx].classes, frozen=True)
            ind.architecture = Architecture(tuple(comps))
        if entry.add_to_archive:
            ind.preserved = True
            engine.archive.update([ind])
        if entry.remove_from_population and not ind.preserved:
            ind.marked_for_removal = True
        if entry.stop_search:
            stop = True
    engine.store.add_interaction(prefs)
    return stop


# ---------------------------------------------------------------------------
# Scripted decision makers


class ScriptedPolicy:
    """Deterministic stand-in for the human decision maker."""

    def __call__(self, candidate_set: CandidateSet) -> FeedbackBundle:
        raise NotImplementedError


class NoopPolicy(ScriptedPolicy):
    def __call__(self, candidate_set):
        entries = [FeedbackEntry(c.token) for c in candidate_set.candidates]
        return FeedbackBundle(candidate_set.stop_index, entries)


class FixedComponentCountPolicy(ScriptedPolicy):
    """Always asks for a given number of components, once per stop."""

    def __init__(self, n: int, likert: int = 5):
        self.n = n
        self.likert = likert

    def __call__(self, candidate_set):
        entries = []
        for i, c in enumerate(candidate_set.candidates):
            pref = None
            if i == 0:
                pref = {"kind": "number_of_components",
                        "payload": {"n": self.n}, "confidence": self.likert}
            entries.append(FeedbackEntry(c.token, preference=pref))
        return FeedbackBundle(candidate_set.stop_index, entries)


class TargetArchitecturePolicy(ScriptedPolicy):
    """Steers towards a reference decomposition, one component per stop."""

    def __init__(self, components: list[list[str]], likert: int = 4):
        self.components = [sorted(c) for c in components]
        self.likert = likert

    def __call__(self, candidate_set):
        ref = self.components[candidate_set.stop_index % len(self.components)]
        entries = []
        for i, c in enumerate(candidate_set.candidates):
            pref = None
            if i == 0:
                pref = {"kind": "best_component",
                        "payload": {"classes": ref}, "confidence": self.likert}
            entries.append(FeedbackEntry(c.token, preference=pref))
        return FeedbackBundle(candidate_set.stop_index, entries)


class ReplayPolicy(ScriptedPolicy):
    """Replays recorded feedback bundles verbatim."""

    def __init__(self, bundles: list[dict]):
        self.bundles = {b["stop_index"]: FeedbackBundle.from_dict(b) for b in bundles}

    def __call__(self, candidate_set):
        bundle = self.bundles.get(candidate_set.stop_index)
        if bundle is None:
            raise InteractionProtocolError(
                f"replay log has no bundle for stop {candidate_set.stop_index}")
        return bundle


def policy_from_dict(data: dict) -> ScriptedPolicy:
    kind = data.get("policy")
    if kind == "noop":
        return NoopPolicy()
    if kind == "fixed_nc":
        return FixedComponentCountPolicy(int(data["n"]), int(data.get("likert", 5)))
    if kind == "target_architecture":
        return TargetArchitecturePolicy(data["components"], int(data.get("likert", 4)))
    if kind == "replay":
        return ReplayPolicy(data["bundles"])
    raise InteractionProtocolError(f"unknown policy {kind!r}")
