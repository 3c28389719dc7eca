"""Architectural preferences: payloads, degrees of achievement, accumulation.

Each preference maps a qualitative design decision to a degree of
achievement in [0, 1] evaluated on a candidate architecture. Confidence
levels (Likert 1..5) become weights normalized within each interaction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .architecture import Architecture, ProvidedInterface

PREFERENCE_KINDS = (
    "best_component",
    "worst_component",
    "best_interface",
    "worst_interface",
    "number_of_components",
    "metric_in_range",
    "aspiration_levels",
)

METRIC_INDEX = {"icd": 0, "erp": 1, "gcr": 2}


class PreferenceError(Exception):
    pass


@dataclass(frozen=True)
class Preference:
    kind: str
    payload: dict
    confidence: int  # Likert 1..5
    interaction_index: int = 0


def validate_preference(kind: str, payload: dict, confidence: int) -> None:
    if kind not in PREFERENCE_KINDS:
        raise PreferenceError(f"unknown preference kind {kind!r}")
    if not isinstance(confidence, int) or not 1 <= confidence <= 5:
        raise PreferenceError("confidence must be an integer in 1..5")
    if kind in ("best_component", "worst_component"):
        if not payload.get("classes"):
            raise PreferenceError(f"{kind} needs a non-empty 'classes' list")
    elif kind in ("best_interface", "worst_interface"):
        if not payload.get("operations"):
            raise PreferenceError(f"{kind} needs a non-empty 'operations' list")
    elif kind == "number_of_components":
        if not isinstance(payload.get("n"), int):
            raise PreferenceError("number_of_components needs an integer 'n'")
    elif kind == "metric_in_range":
        if payload.get("metric") not in METRIC_INDEX:
            raise PreferenceError(f"unknown metric id {payload.get('metric')!r}")
        lo, hi = payload.get("min"), payload.get("max")
        if lo is None or hi is None or not 0.0 <= lo < hi <= 1.0:
            raise PreferenceError("metric_in_range needs 0 <= min < max <= 1")
    elif kind == "aspiration_levels":
        levels = payload.get("levels")
        weights = payload.get("weights", [1.0, 1.0, 1.0])
        if not levels or len(levels) != 3 or any(not 0.0 <= z <= 1.0 for z in levels):
            raise PreferenceError("aspiration_levels needs 3 levels in [0,1]")
        if len(weights) != 3 or any(w < 0 for w in weights):
            raise PreferenceError("aspiration weights must be 3 non-negative values")


def jaccard(a: frozenset | set, b: frozenset | set) -> float:
    if not a and not b:
        return 1.0
    union = len(a | b)
    return len(a & b) / union


def _clamp01(x: float) -> float:
    return 0.0 if x < 0.0 else 1.0 if x > 1.0 else x


def achievement(pref: Preference, arch: Architecture,
                interfaces: tuple[ProvidedInterface, ...],
                objectives: tuple[float, float, float],
                n_min: int, n_max: int) -> float:
    """Degree of achievement of one preference for one solution, in [0,1]."""
    kind = pref.kind
    payload = pref.payload

    if kind in ("best_component", "worst_component"):
        ref = frozenset(payload["classes"])
        best = max(jaccard(c.classes, ref) for c in arch.components)
        return best if kind == "best_component" else 1.0 - best

    if kind in ("best_interface", "worst_interface"):
        ref = frozenset(tuple(op) for op in payload["operations"])
        if not interfaces:
            return 0.0 if kind == "best_interface" else 1.0
        best = max(jaccard(i.operations, ref) for i in interfaces)
        return best if kind == "best_interface" else 1.0 - best

    if kind == "number_of_components":
        n_pref = payload["n"]
        n = arch.n
        if n < n_pref:
            return (n - n_min) / (n_pref - n_min)
        if n == n_pref:
            return 1.0
        if n == n_max:  # degenerate denominator: worst unless it matched above
            return 0.0
        return _clamp01(1.0 - (n - n_pref) / (n_max - n))

    if kind == "metric_in_range":
        m = objectives[METRIC_INDEX[payload["metric"]]]
        lo, hi = payload["min"], payload["max"]
        if m < lo or m > hi:
            return 0.0
        mid = (lo + hi) / 2.0
        half = (hi - lo) / 2.0
        return _clamp01(1.0 - abs(m - mid) / half)

    if kind == "aspiration_levels":
        levels = payload["levels"]
        weights = payload.get("weights", [1.0, 1.0, 1.0])
        asf = max(w * (f - z) for w, f, z in zip(weights, objectives, levels))
        if asf <= 0.0:
            return 1.0
        return _clamp01(1.0 - asf)

    raise PreferenceError(f"unknown preference kind {kind!r}")


def normalize_confidences(confidences: list[int]) -> list[float]:
    """Per-interaction weights: each Likert level over the interaction total."""
    total = sum(confidences)
    return [c / total for c in confidences]


@dataclass
class PreferenceStore:
    """Append-only accumulation of preferences across interactions."""
    entries: list[Preference] = field(default_factory=list)
    weights: list[float] = field(default_factory=list)
    version: int = 0

    def __len__(self) -> int:
        return len(self.entries)

    def add_interaction(self, prefs: list[Preference]) -> None:
        """Append one interaction's preferences with normalized weights."""
        if not prefs:
            return
        ws = normalize_confidences([p.confidence for p in prefs])
        self.entries.extend(prefs)
        self.weights.extend(ws)
        self.version += 1

    def subjective_fitness(self, arch: Architecture,
                           interfaces: tuple[ProvidedInterface, ...],
                           objectives: tuple[float, float, float],
                           n_min: int, n_max: int) -> float | None:
        """Eq.-style aggregate; None when no preferences exist yet."""
        if not self.entries:
            return None
        total = sum(
            w * achievement(p, arch, interfaces, objectives, n_min, n_max)
            for p, w in zip(self.entries, self.weights)
        )
        return _clamp01(1.0 - total / len(self.entries))
