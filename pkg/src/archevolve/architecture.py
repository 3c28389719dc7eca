"""Candidate solutions: class-to-component partitions and their phenotype.

An Architecture is a flat partition of the model's classes into components.
The phenotype (provided interfaces and connectors) is derived on demand from
the navigable cross-component relationships.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .model import AnalysisModel


class ConfigurationError(Exception):
    pass


@dataclass(frozen=True)
class Component:
    classes: frozenset[str]
    frozen: bool = False


@dataclass(frozen=True)
class Architecture:
    components: tuple[Component, ...]

    @property
    def n(self) -> int:
        return len(self.components)

    def component_of(self) -> dict[str, int]:
        """Map class id -> component index (cached per architecture)."""
        cached = self.__dict__.get("_owner")
        if cached is None:
            cached = {}
            for i, comp in enumerate(self.components):
                for cid in comp.classes:
                    cached[cid] = i
            object.__setattr__(self, "_owner", cached)
        return cached

    def sorted_key(self) -> tuple:
        """Canonical, enumeration-order-independent identity of the partition."""
        return tuple(sorted(tuple(sorted(c.classes)) for c in self.components))


@dataclass(frozen=True)
class ProvidedInterface:
    provider: int
    exposed_classes: frozenset[str]
    operations: frozenset[tuple[str, str]]  # (class id, method name)
    consumers: frozenset[int]


@dataclass(frozen=True)
class FeasibilityReport:
    interfaceless_component: int
    mutual_provision_pair: int

    @property
    def feasible(self) -> bool:
        return self.interfaceless_component == 0 and self.mutual_provision_pair == 0

    @property
    def violation_count(self) -> int:
        return self.interfaceless_component + self.mutual_provision_pair


def check_partition(arch: Architecture, model: AnalysisModel) -> None:
    """Assert the partition property; raises AssertionError on violation."""
    seen: set[str] = set()
    for comp in arch.components:
        assert comp.classes, "empty component"
        assert not (comp.classes & seen), "class in more than one component"
        seen |= comp.classes
    assert seen == set(model.class_ids()), "partition does not cover the model"


def random_architecture(model: AnalysisModel, n_min: int, n_max: int,
                        rng: random.Random) -> Architecture:
    """Uniform-random partition with a uniform component count in [n_min, n_max].

    Interface/mutual-provision feasibility is deliberately not enforced here;
    infeasible individuals are handled through fitness penalties.
    """
    if n_min < 2 or n_max < n_min:
        raise ConfigurationError("need 2 <= n_min <= n_max")
    if n_min > model.n_classes:
        raise ConfigurationError("n_min exceeds the number of classes")
    n = rng.randint(n_min, min(n_max, model.n_classes))
    ids = list(model.class_ids())
    rng.shuffle(ids)
    buckets: list[list[str]] = [[] for _ in range(n)]
    for i in range(n):  # one class per component so none is empty
        buckets[i].append(ids[i])
    for cid in ids[n:]:
        buckets[rng.randrange(n)].append(cid)
    return Architecture(tuple(Component(frozenset(b)) for b in buckets))


def derive_interfaces(arch: Architecture, model: AnalysisModel) -> tuple[ProvidedInterface, ...]:
    """Provided interfaces from navigable cross-component relationships.

    Consumers reaching an identical set of provider classes share one
    interface (a single connector binds several required interfaces).
    """
    owner = arch.component_of()
    # (consumer, provider) -> set of provider-side classes reached
    reached: dict[tuple[int, int], set[str]] = {}
    for r in model.relationships:
        if not r.navigable:
            continue
        c, p = owner[r.source], owner[r.target]
        if c == p:
            continue
        reached.setdefault((c, p), set()).add(r.target)
    # merge consumers with identical (provider, exposed set)
    merged: dict[tuple[int, frozenset[str]], set[int]] = {}
    for (c, p), classes in reached.items():
        merged.setdefault((p, frozenset(classes)), set()).add(c)
    interfaces = []
    for (p, exposed), consumers in merged.items():
        ops = frozenset(
            (cid, m) for cid in exposed for m in model.class_index[cid].public_methods()
        )
        interfaces.append(ProvidedInterface(p, exposed, ops, frozenset(consumers)))
    interfaces.sort(key=lambda i: (i.provider, sorted(i.exposed_classes)))
    return tuple(interfaces)


def check_feasibility(arch: Architecture, model: AnalysisModel) -> FeasibilityReport:
    interfaces = derive_interfaces(arch, model)
    provides: set[int] = set()
    requires: set[int] = set()
    provision: set[tuple[int, int]] = set()  # (provider, consumer)
    for itf in interfaces:
        provides.add(itf.provider)
        requires |= itf.consumers
        for c in itf.consumers:
            provision.add((itf.provider, c))
    interfaceless = sum(
        1 for i in range(arch.n) if i not in provides and i not in requires
    )
    mutual = sum(
        1 for (p, c) in provision if p < c and (c, p) in provision
    )
    return FeasibilityReport(interfaceless, mutual)


def connected_groups(classes: frozenset[str], model: AnalysisModel) -> int:
    """Connected components of the undirected graph induced on `classes`.

    All relationship kinds count as edges; navigability is ignored.
    """
    assert classes
    parent = {c: c for c in classes}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for r in model.relationships:
        if r.source in classes and r.target in classes:
            a, b = find(r.source), find(r.target)
            if a != b:
                parent[a] = b
    return len({find(c) for c in classes})


def architecture_to_dict(arch: Architecture, model: AnalysisModel) -> dict:
    """Phenotype serialization used by the service, UI and logs."""
    interfaces = derive_interfaces(arch, model)
    report = check_feasibility(arch, model)
    return {
        "components": [
            {"classes": sorted(c.classes), "frozen": c.frozen} for c in arch.components
        ],
        "interfaces": [
            {
                "provider": i.provider,
                "exposed_classes": sorted(i.exposed_classes),
                "operations": sorted([list(op) for op in i.operations]),
                "consumers": sorted(i.consumers),
            }
            for i in interfaces
        ],
        "feasibility": {
            "feasible": report.feasible,
            "interfaceless_component": report.interfaceless_component,
            "mutual_provision_pair": report.mutual_provision_pair,
        },
    }


def architecture_from_dict(data: dict) -> Architecture:
    return Architecture(tuple(
        Component(frozenset(c["classes"]), bool(c.get("frozen", False)))
        for c in data["components"]
    ))
