"""Metric oracles: naive, formula-literal re-implementations."""

import random

from archevolve.architecture import random_architecture
from archevolve.metrics import (ErpWeights, Normalization, compute_erp,
                                compute_gcr, compute_icd, compute_metrics,
                                erp_upper_bound, gcr_upper_bound)
from archevolve.model import load_model
from conftest import small_model


def naive_icd(arch, model):
    cl_t = model.n_classes
    total = 0.0
    for i, comp in enumerate(arch.components):
        ci_in = sum(
            1 for r in model.relationships
            if r.source in comp.classes and r.target in comp.classes
        )
        ci_out = sum(
            1 for r in model.relationships
            if (r.source in comp.classes) != (r.target in comp.classes)
        )
        if ci_in + ci_out == 0:
            continue
        total += ((cl_t - len(comp.classes)) / cl_t) * (ci_in / (ci_in + ci_out))
    return total / arch.n


def naive_erp(arch, model, w):
    table = {"as": w.w_as, "ag": w.w_ag, "co": w.w_co}
    total = 0.0
    for r in model.relationships:
        crossing = not any(
            r.source in c.classes and r.target in c.classes for c in arch.components
        )
        if not crossing:
            continue
        if r.kind == "ge":
            total += w.w_ge
        elif r.kind != "de" and not r.navigable:
            total += table[r.kind]
    return total


def naive_gcr(arch, model):
    total = 0
    for comp in arch.components:
        labels = {c: c for c in comp.classes}

        def root(x):
            while labels[x] != x:
                x = labels[x]
            return x

        for r in model.relationships:
            if r.source in comp.classes and r.target in comp.classes:
                a, b = root(r.source), root(r.target)
                if a != b:
                    labels[a] = b
        total += len({root(c) for c in comp.classes})
    return total / arch.n


def test_metrics_match_naive_oracles():
    rng = random.Random(1)
    w = ErpWeights()
    for seed in range(10):
        model = small_model(seed)
        for _ in range(20):
            arch = random_architecture(model, 2, 6, rng)
            assert abs(compute_icd(arch, model) - naive_icd(arch, model)) < 1e-12
            assert abs(compute_erp(arch, model, w) - naive_erp(arch, model, w)) < 1e-12
            assert abs(compute_gcr(arch, model) - naive_gcr(arch, model)) < 1e-12


def test_erp_penalty_table():
    w = ErpWeights()
    assert w.penalty("as", False) == 1.0
    assert w.penalty("ag", False) == 2.0
    assert w.penalty("co", False) == 3.0
    assert w.penalty("ge", False) == 5.0
    assert w.penalty("as", True) == 0.0
    assert w.penalty("de", True) == 0.0


def test_minilib_reference_values(minilib, minilib_reference):
    from archevolve.architecture import (Architecture, Component,
                                         check_feasibility, derive_interfaces)
    arch = Architecture(tuple(
        Component(frozenset(c["classes"])) for c in minilib_reference["components"]
    ))
    mv = compute_metrics(arch, minilib, ErpWeights())
    assert abs(mv.icd - 0.3701530612244898) < 1e-12
    assert mv.erp == 0.0
    assert mv.gcr == 1.0
    assert erp_upper_bound(minilib, ErpWeights()) == 17.0
    assert check_feasibility(arch, minilib).feasible
    assert len(derive_interfaces(arch, minilib)) == 3


def test_normalization_bounds():
    rng = random.Random(2)
    w = ErpWeights()
    for seed in range(5):
        model = small_model(seed)
        norm = Normalization.for_model(model, w, 2)
        assert norm.gcr_max == gcr_upper_bound(model, 2)
        for _ in range(20):
            arch = random_architecture(model, 2, 6, rng)
            f1, f2, f3 = norm.normalize(compute_metrics(arch, model, w))
            assert 0.0 <= f1 <= 1.0
            assert 0.0 <= f2 <= 1.0
            assert 0.0 <= f3 <= 1.0


def test_normalization_degenerate_denominators():
    norm = Normalization(erp_max=0.0, gcr_max=1.0)
    from archevolve.metrics import MetricVector
    assert norm.normalize(MetricVector(0.4, 0.0, 1.0)) == (0.6, 0.0, 0.0)
