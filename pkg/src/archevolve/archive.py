"""Territory-based bounded archive with preferred regions.

Non-dominated solutions are kept apart by per-region territory sizes
(rectilinear distance); territories shrink around solutions the user
likes, letting interesting regions grow denser.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fitness import dominates

# 13 fixed weight vectors over the 3 objectives: axis units, barycenter,
# denominator-3 edge points and three face-interior points.
_THIRD = 1.0 / 3.0


def region_weights() -> tuple[tuple[float, float, float], ...]:
    axis = [(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)]
    barycenter = [(_THIRD, _THIRD, _THIRD)]
    edges = [
        (2 * _THIRD, _THIRD, 0.0), (2 * _THIRD, 0.0, _THIRD),
        (_THIRD, 2 * _THIRD, 0.0), (0.0, 2 * _THIRD, _THIRD),
        (_THIRD, 0.0, 2 * _THIRD), (0.0, _THIRD, 2 * _THIRD),
    ]
    faces = [(0.5, 0.25, 0.25), (0.25, 0.5, 0.25), (0.25, 0.25, 0.5)]
    return tuple(axis + barycenter + edges + faces)


def preferred_region(vector: tuple[float, ...],
                     weights: tuple[tuple[float, ...], ...]) -> int:
    """Region minimizing the weighted Chebyshev value; ties go to lower id."""
    best_id, best_val = 0, None
    for rid, w in enumerate(weights):
        val = max(wk * vk for wk, vk in zip(w, vector))
        if best_val is None or val < best_val:
            best_id, best_val = rid, val
    return best_id


def rectilinear(a: tuple[float, ...], b: tuple[float, ...]) -> float:
    return sum(abs(x - y) for x, y in zip(a, b))


@dataclass
class ArchiveMember:
    individual: object  # engine.Individual
    region: int


@dataclass
class TerritoryArchive:
    tau_0: float = 0.05
    tau_h: float = 0.005
    decrease: float = 0.5
    weights: tuple = field(default_factory=region_weights)
    taus: list[float] = None
    members: list[ArchiveMember] = field(default_factory=list)

    def __post_init__(self):
        if self.taus is None:
            self.taus = [self.tau_0] * len(self.weights)

    def __len__(self) -> int:
        return len(self.members)

    def individuals(self):
        return [m.individual for m in self.members]

    def _contains(self, ind) -> bool:
        key = ind.architecture.sorted_key()
        return any(m.individual.architecture.sorted_key() == key for m in self.members)

    def _closest(self, vector):
        best, best_d = None, None
        for m in self.members:
            d = rectilinear(vector, m.individual.objectives)
            if best_d is None or d < best_d:
                best, best_d = m, d
        return best, best_d

    def _overlapping(self, vector) -> list[ArchiveMember]:
        return [
            m for m in self.members
            if rectilinear(vector, m.individual.objectives) < self.taus[m.region]
        ]

    def update(self, candidates: list) -> None:
        """Offer candidates for insertion (territory rules, user overrides).

        Each candidate must expose `.objectives`, `.preserved` and
        `.fitness.f_sub`.
        """
        for ind in candidates:
            if self._contains(ind):
                continue
            accept = False
            replaced = None
            v = ind.objectives
            dominated = [
                m for m in self.members
                if not m.individual.preserved and dominates(v, m.individual.objectives)
            ]
            rid = preferred_region(v, self.weights)
            tau = self.taus[rid]
            closest, d = self._closest(v)
            if ind.preserved:  # user-selected: accepted unconditionally
                accept = True
                if d is not None and d < tau:
                    self.taus[rid] = max(self.tau_h, d)
            else:
                nondominated = not any(
                    dominates(m.individual.objectives, v) for m in self.members
                )
                if nondominated:
                    if d is None or d > tau:
                        accept = True
                    else:
                        overlapping = self._overlapping(v)
                        if (len(overlapping) == 1
                                and not overlapping[0].individual.preserved
                                and _better_f_sub(ind, overlapping[0].individual)):
                            accept = True
                            replaced = overlapping[0]
            if accept:
                keep = []
                for m in self.members:
                    if m is replaced or m in dominated:
                        continue
                    keep.append(m)
                keep.append(ArchiveMember(ind, rid))
                self.members = keep

    def reduce_after_interaction(self) -> None:
        """Shrink the territory of the region holding the best-f_sub member."""
        best = None
        for m in self.members:
            fs = m.individual.fitness.f_sub if m.individual.fitness else None
            if fs is None:
                continue
            if best is None or fs < (best.individual.fitness.f_sub):
                best = m
        if best is None:
            return
        self.taus[best.region] = max(self.tau_h, self.decrease * self.taus[best.region])


def _better_f_sub(a, b) -> bool:
    """Strictly better preference satisfaction (lower f_sub); undefined
    values compare as equal."""
    fa = a.fitness.f_sub if a.fitness else None
    fb = b.fitness.f_sub if b.fitness else None
    if fa is None or fb is None:
        return False
    return fa < fb
