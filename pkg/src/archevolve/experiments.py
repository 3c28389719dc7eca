"""Batch experiment harness: quality indicators, baselines, sweeps, reports."""

from __future__ import annotations

import csv
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .architecture import random_architecture
from .engine import Engine, EngineConfig
from .fitness import dominates
from .interaction import policy_from_dict
from .model import AnalysisModel, load_model


def nondominated(front: list[tuple[float, ...]]) -> list[tuple[float, ...]]:
    out = []
    for i, p in enumerate(front):
        if any(dominates(q, p) for q in front):
            continue
        if p in out:
            continue
        out.append(p)
    return out


def _area2d(points: list[tuple[float, float]]) -> float:
    """Union area of [p, (1,1)] boxes in the unit square."""
    pts = [(max(0.0, x), max(0.0, y)) for x, y in points if x < 1.0 and y < 1.0]
    if not pts:
        return 0.0
    pts.sort()
    skyline = []
    best_y = math.inf
    for x, y in pts:
        if y < best_y:
            skyline.append((x, y))
            best_y = y
    area = 0.0
    for i, (x, y) in enumerate(skyline):
        next_x = skyline[i + 1][0] if i + 1 < len(skyline) else 1.0
        area += (next_x - x) * (1.0 - y)
    return area


def hypervolume(front: list[tuple[float, float, float]]) -> float:
    """Exact 3-D hypervolume against reference point (1,1,1), minimization."""
    pts = nondominated([p for p in front if all(c < 1.0 for c in p)])
    if not pts:
        return 0.0
    levels = sorted({p[2] for p in pts})
    volume = 0.0
    for i, z in enumerate(levels):
        next_z = levels[i + 1] if i + 1 < len(levels) else 1.0
        active = [(p[0], p[1]) for p in pts if p[2] <= z]
        volume += _area2d(active) * (next_z - z)
    return volume


def spacing(front: list[tuple[float, ...]]) -> float | None:
    """Schott's spacing over rectilinear nearest-neighbor distances."""
    if len(front) < 2:
        return None
    dists = []
    for i, p in enumerate(front):
        dists.append(min(
            sum(abs(a - b) for a, b in zip(p, q))
            for j, q in enumerate(front) if j != i
        ))
    mean = sum(dists) / len(dists)
    var = sum((mean - d) ** 2 for d in dists) / (len(dists) - 1)
    return math.sqrt(var)


# ---------------------------------------------------------------------------
# NSGA-II baseline (same encoding, mutation and budget; generational)


def fast_nondominated_sort(keys: list[tuple]) -> list[list[int]]:
    """Fronts of indices under constrained dominance keys (feasible, violations,
    objectives)."""
    n = len(keys)
    dominated_by: list[list[int]] = [[] for _ in range(n)]
    counts = [0] * n
    fronts: list[list[int]] = [[]]
    for p in range(n):
        for q in range(n):
            if p == q:
                continue
            if _constrained_dominates(keys[p], keys[q]):
                dominated_by[p].append(q)
            elif _constrained_dominates(keys[q], keys[p]):
                counts[p] += 1
        if counts[p] == 0:
            fronts[0].append(p)
    i = 0
    while fronts[i]:
        nxt = []
        for p in fronts[i]:
            for q in dominated_by[p]:
                counts[q] -= 1
                if counts[q] == 0:
                    nxt.append(q)
        i += 1
        fronts.append(nxt)
    return fronts[:-1]


def _constrained_dominates(a: tuple, b: tuple) -> bool:
    feas_a, viol_a, obj_a = a
    feas_b, viol_b, obj_b = b
    if feas_a and not feas_b:
        return True
    if not feas_a and feas_b:
        return False
    if not feas_a and not feas_b:
        return viol_a < viol_b
    return dominates(obj_a, obj_b)


def crowding_distance(objs: list[tuple[float, ...]]) -> list[float]:
    n = len(objs)
    dist = [0.0] * n
    if n == 0:
        return dist
    k = len(objs[0])
    for m in range(k):
        order = sorted(range(n), key=lambda i: objs[i][m])
        dist[order[0]] = dist[order[-1]] = math.inf
        span = objs[order[-1]][m] - objs[order[0]][m]
        if span <= 0:
            continue
        for idx in range(1, n - 1):
            dist[order[idx]] += (objs[order[idx + 1]][m]
                                 - objs[order[idx - 1]][m]) / span
    return dist


def run_nsga2(model: AnalysisModel, config: EngineConfig) -> list[tuple[float, float, float]]:
    """Generational NSGA-II with the same mutation operator; returns the
    final non-dominated feasible objective vectors."""
    engine = Engine(model, config)  # reused for mutation and evaluation
    rng = engine.rng
    pop = [engine.make_individual(
        random_architecture(model, config.n_min, config.n_max, rng))
        for _ in range(config.population_size)]

    def keys(individuals):
        return [(ind.feasible, ind.violation_count, ind.objectives)
                for ind in individuals]

    def rank_and_crowd(individuals):
        fronts = fast_nondominated_sort(keys(individuals))
        rank = [0] * len(individuals)
        crowd = [0.0] * len(individuals)
        for fi, front in enumerate(fronts):
            cd = crowding_distance([individuals[i].objectives for i in front])
            for i, c in zip(front, cd):
                rank[i] = fi
                crowd[i] = c
        return fronts, rank, crowd

    fronts, rank, crowd = rank_and_crowd(pop)
    while engine.evaluations_used + config.population_size <= config.max_evaluations:
        offspring = []
        for _ in range(config.population_size):
            a, b = rng.randrange(len(pop)), rng.randrange(len(pop))
            if (rank[a], -crowd[a]) <= (rank[b], -crowd[b]):
                parent = pop[a]
            else:
                parent = pop[b]
            offspring.append(engine.make_individual(engine.mutate(parent)))
        union = pop + offspring
        fronts, rank, crowd = rank_and_crowd(union)
        survivors: list[int] = []
        for front in fronts:
            if len(survivors) + len(front) <= config.population_size:
                survivors.extend(front)
            else:
                room = config.population_size - len(survivors)
                best = sorted(front, key=lambda i: -crowd[i])[:room]
                survivors.extend(best)
                break
        pop = [union[i] for i in survivors]
        fronts, rank, crowd = rank_and_crowd(pop)
    # final front: every first-rank feasible member, duplicates included
    # (front sizes are counted the way population-based MOEAs report them)
    fronts, rank, crowd = rank_and_crowd(pop)
    return [pop[i].objectives for i in fronts[0] if pop[i].feasible]


# ---------------------------------------------------------------------------
# Experiment runner


@dataclass(frozen=True)
class ExperimentSpec:
    model_paths: tuple[str, ...]
    algorithm: str = "bmoea"  # "bmoea" | "imoea" | "nsga2"
    policy: dict | None = None
    tau_values: tuple[float, ...] = (0.05,)
    seeds: tuple[int, ...] = (0,)
    max_evaluations: int = 24000
    population_size: int = 150
    workers: int = 1

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentSpec":
        return cls(
            model_paths=tuple(data["models"]),
            algorithm=data.get("algorithm", "bmoea"),
            policy=data.get("policy"),
            tau_values=tuple(data.get("tau_values", [0.05])),
            seeds=tuple(data.get("seeds", [0])),
            max_evaluations=int(data.get("max_evaluations", 24000)),
            population_size=int(data.get("population_size", 150)),
            workers=int(data.get("workers", 1)),
        )


def _single_run(args) -> dict:
    model_path, algorithm, policy, tau, seed, max_evals, pop_size = args
    model = load_model(model_path)
    config = EngineConfig(population_size=pop_size, max_evaluations=max_evals,
                          tau_0=tau, rng_seed=seed)
    start = time.monotonic()
    if algorithm == "nsga2":
        front = run_nsga2(model, config)
        size = len(front)
    else:
        engine = Engine(model, config)
        provider = None
        if algorithm == "imoea":
            pol = policy_from_dict(policy or {"policy": "noop"})
            provider = lambda cs: pol(cs)
        engine.run(feedback_provider=provider)
        front = [ind.objectives for ind in engine.archive.individuals()]
        size = len(engine.archive)
    runtime_ms = int((time.monotonic() - start) * 1000)
    hv = hypervolume(front)
    sp = spacing(front)
    return {
        "model": str(model_path), "tau": tau, "seed": seed,
        "hv": hv, "spacing": sp, "front_size": size,
        "runtime_ms": runtime_ms,
    }


def run_experiment(spec: ExperimentSpec, out_dir: str | Path) -> dict:
    """Run every (model, tau, seed) cell; write report.json and report.csv.

    The JSON report is deterministic for a fixed spec; wall-clock timings
    go to a separate timing CSV so the main report stays reproducible.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    jobs = [
        (mp, spec.algorithm, spec.policy, tau, seed,
         spec.max_evaluations, spec.population_size)
        for mp in spec.model_paths
        for tau in spec.tau_values
        for seed in spec.seeds
    ]
    if spec.workers > 1:
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            rows = list(pool.map(_single_run, jobs))
    else:
        rows = [_single_run(j) for j in jobs]

    configs: dict[tuple, list[dict]] = {}
    for row in rows:
        configs.setdefault((row["model"], row["tau"]), []).append(row)

    def agg(values):
        values = [v for v in values if v is not None]
        if not values:
            return {"mean": None, "stddev": None}
        mean = sum(values) / len(values)
        var = (sum((v - mean) ** 2 for v in values) / (len(values) - 1)
               if len(values) > 1 else 0.0)
        return {"mean": mean, "stddev": math.sqrt(var)}

    report = {
        "algorithm": spec.algorithm,
        "configurations": [
            {
                "model": model, "tau": tau,
                "runs": [
                    {k: r[k] for k in ("seed", "hv", "spacing", "front_size")}
                    for r in sorted(cell, key=lambda r: r["seed"])
                ],
                "hv": agg([r["hv"] for r in cell]),
                "spacing": agg([r["spacing"] for r in cell]),
                "front_size": agg([r["front_size"] for r in cell]),
            }
            for (model, tau), cell in sorted(configs.items())
        ],
    }
    (out / "report.json").write_text(json.dumps(report, indent=2) + "\n")
    with open(out / "report.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["model", "tau", "seed", "hv", "spacing", "front_size"])
        for row in sorted(rows, key=lambda r: (r["model"], r["tau"], r["seed"])):
            writer.writerow([row["model"], row["tau"], row["seed"],
                             row["hv"], row["spacing"], row["front_size"]])
    with open(out / "timing.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["model", "tau", "seed", "runtime_ms"])
        for row in sorted(rows, key=lambda r: (r["model"], r["tau"], r["seed"])):
            writer.writerow([row["model"], row["tau"], row["seed"], row["runtime_ms"]])
    return report
