"""Quantitative objectives: ICD (maximize), ERP and GCR (minimize).

The engine optimizes the normalized minimization form, a vector of three
values in [0, 1]; raw values are kept for display and logging.
"""

from __future__ import annotations

from dataclasses import dataclass

from .architecture import Architecture, connected_groups
from .model import AnalysisModel

K_OBJECTIVES = 3


@dataclass(frozen=True)
class ErpWeights:
    w_as: float = 1.0
    w_ag: float = 2.0
    w_co: float = 3.0
    w_ge: float = 5.0

    def penalty(self, kind: str, navigable: bool) -> float:
        """Penalty of one cross-component relationship."""
        if kind == "ge":
            return self.w_ge
        if kind == "de" or navigable:
            return 0.0
        return {"as": self.w_as, "ag": self.w_ag, "co": self.w_co}[kind]


@dataclass(frozen=True)
class MetricVector:
    icd: float
    erp: float
    gcr: float


def compute_icd(arch: Architecture, model: AnalysisModel) -> float:
    owner = arch.component_of()
    n = arch.n
    cl_t = model.n_classes
    internal = [0] * n
    external = [0] * n
    for r in model.relationships:
        a, b = owner[r.source], owner[r.target]
        if a == b:
            internal[a] += 1
        else:
            external[a] += 1
            external[b] += 1
    total = 0.0
    for i, comp in enumerate(arch.components):
        denom = internal[i] + external[i]
        if denom == 0:
            continue
        total += ((cl_t - len(comp.classes)) / cl_t) * (internal[i] / denom)
    return total / n


def compute_erp(arch: Architecture, model: AnalysisModel, weights: ErpWeights) -> float:
    owner = arch.component_of()
    total = 0.0
    for r in model.relationships:
        if owner[r.source] != owner[r.target]:
            total += weights.penalty(r.kind, r.navigable)
    return total


def compute_gcr(arch: Architecture, model: AnalysisModel) -> float:
    groups = sum(connected_groups(c.classes, model) for c in arch.components)
    return groups / arch.n


def compute_metrics(arch: Architecture, model: AnalysisModel,
                    weights: ErpWeights) -> MetricVector:
    return MetricVector(
        icd=compute_icd(arch, model),
        erp=compute_erp(arch, model, weights),
        gcr=compute_gcr(arch, model),
    )


def erp_upper_bound(model: AnalysisModel, weights: ErpWeights) -> float:
    """Largest ERP any partition can reach: every relationship crosses."""
    return sum(weights.penalty(r.kind, r.navigable) for r in model.relationships)


def gcr_upper_bound(model: AnalysisModel, n_min: int) -> float:
    """Every class its own group, fewest possible components."""
    return model.n_classes / n_min


@dataclass(frozen=True)
class Normalization:
    """Model-level constants mapping raw metrics onto [0,1] minimization."""
    erp_max: float
    gcr_max: float

    @classmethod
    def for_model(cls, model: AnalysisModel, weights: ErpWeights, n_min: int) -> "Normalization":
        return cls(erp_upper_bound(model, weights), gcr_upper_bound(model, n_min))

    def normalize(self, mv: MetricVector) -> tuple[float, float, float]:
        f1 = 1.0 - mv.icd
        f2 = mv.erp / self.erp_max if self.erp_max > 0 else 0.0
        f3 = (mv.gcr - 1.0) / (self.gcr_max - 1.0) if self.gcr_max > 1.0 else 0.0
        return (f1, f2, f3)
