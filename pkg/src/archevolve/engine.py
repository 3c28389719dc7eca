"""Steady-state evolutionary loop with interaction stops.

Each generation selects two parents by binary tournament (one from the
population, one from the archive), mutates them into two offspring,
applies the replacement rules and updates the territory archive. The
objective part of the fitness is population-relative, so it is refreshed
for everyone each generation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .architecture import (Architecture, Component, check_feasibility,
                           derive_interfaces, random_architecture)
from .archive import TerritoryArchive
from .fitness import (FitnessConfig, FitnessRecord, combine, maximin_against,
                      maximin_matrix)
from .interaction import (CandidateSet, FeedbackBundle, apply_feedback,
                          build_schedule, select_candidates)
from .metrics import ErpWeights, MetricVector, Normalization, compute_metrics
from .model import AnalysisModel
from .preferences import PreferenceStore


@dataclass(frozen=True)
class MutationWeights:
    add: float = 0.2
    remove: float = 0.1
    merge: float = 0.1
    split: float = 0.3
    move: float = 0.3


@dataclass(frozen=True)
class EngineConfig:
    population_size: int = 150
    max_evaluations: int = 24000
    n_min: int = 2
    n_max: int = 6
    mutation: MutationWeights = MutationWeights()
    erp_weights: ErpWeights = ErpWeights()
    fitness: FitnessConfig = FitnessConfig()
    tau_0: float = 0.05
    tau_h: float = 0.005
    tau_decrease: float = 0.5
    interactions: int = 3
    candidates_per_stop: int = 3
    rng_seed: int = 0

    def __post_init__(self):
        if self.population_size < 2:
            raise ValueError("population_size must be >= 2")
        weights = (self.mutation.add, self.mutation.remove, self.mutation.merge,
                   self.mutation.split, self.mutation.move)
        if any(w < 0 for w in weights) or sum(weights) <= 0:
            raise ValueError("mutation weights must be non-negative with positive sum")

    def to_dict(self) -> dict:
        m, e, f = self.mutation, self.erp_weights, self.fitness
        return {
            "population_size": self.population_size,
            "max_evaluations": self.max_evaluations,
            "n_min": self.n_min, "n_max": self.n_max,
            "mutation_weights": [m.add, m.remove, m.merge, m.split, m.move],
            "erp_weights": [e.w_as, e.w_ag, e.w_co, e.w_ge],
            "fitness_weights": [f.w_obj, f.w_sub],
            "tau_0": self.tau_0, "tau_h": self.tau_h,
            "tau_decrease": self.tau_decrease,
            "interactions": self.interactions,
            "candidates_per_stop": self.candidates_per_stop,
            "rng_seed": self.rng_seed,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EngineConfig":
        kwargs = dict(data)
        if "mutation_weights" in kwargs:
            kwargs["mutation"] = MutationWeights(*kwargs.pop("mutation_weights"))
        if "erp_weights" in kwargs:
            kwargs["erp_weights"] = ErpWeights(*kwargs["erp_weights"])
        if "fitness_weights" in kwargs:
            kwargs["fitness"] = FitnessConfig(*kwargs.pop("fitness_weights"))
        return cls(**kwargs)


@dataclass(eq=False)
class Individual:
    architecture: Architecture
    metrics: MetricVector
    objectives: tuple[float, float, float]
    feasible: bool
    violation_count: int
    fitness: FitnessRecord | None = None
    marked_for_removal: bool = False
    preserved: bool = False
    removal_penalized: bool = False
    # cache stamp for f_sub recomputation
    _f_sub: float | None = field(default=None, repr=False)
    _f_sub_version: int = field(default=-1, repr=False)


class Engine:
    """One evolutionary run over a model; single-threaded state owner."""

    def __init__(self, model: AnalysisModel, config: EngineConfig):
        self.model = model
        self.config = config
        self.rng = random.Random(config.rng_seed)
        self.norm = Normalization.for_model(model, config.erp_weights, config.n_min)
        self.store = PreferenceStore()
        self.archive = TerritoryArchive(config.tau_0, config.tau_h, config.tau_decrease)
        self.population: list[Individual] = []
        self.generation = 0
        self.evaluations_used = 0
        self.stopped = False
        self.total_generations = (config.max_evaluations - config.population_size) // 2

    # -- evaluation -----------------------------------------------------

    def make_individual(self, arch: Architecture) -> Individual:
        mv = compute_metrics(arch, self.model, self.config.erp_weights)
        report = check_feasibility(arch, self.model)
        self.evaluations_used += 1
        return Individual(
            architecture=arch,
            metrics=mv,
            objectives=self.norm.normalize(mv),
            feasible=report.feasible,
            violation_count=report.violation_count,
        )

    def _f_sub(self, ind: Individual) -> float | None:
        if ind._f_sub_version != self.store.version:
            interfaces = derive_interfaces(ind.architecture, self.model)
            ind._f_sub = self.store.subjective_fitness(
                ind.architecture, interfaces, ind.objectives,
                self.config.n_min, self.config.n_max)
            ind._f_sub_version = self.store.version
        return ind._f_sub

    def evaluate_all(self) -> None:
        """Refresh fitness of the population and the archive against the
        current population's objective vectors."""
        pop = self.population
        vectors = np.array([ind.objectives for ind in pop])
        f_obj = maximin_matrix(vectors)
        for ind, fo in zip(pop, f_obj):
            ind.fitness = combine(float(fo), self._f_sub(ind), self.config.fitness,
                                  ind.feasible, ind.violation_count,
                                  ind.removal_penalized)
        in_pop = {id(ind): i for i, ind in enumerate(pop)}
        outside = [ind for ind in self.archive.individuals()
                   if id(ind) not in in_pop]
        if outside:
            ext = np.array([ind.objectives for ind in outside])
            f_ext = maximin_against(ext, vectors)
            for ind, fo in zip(outside, f_ext):
                ind.fitness = combine(float(fo), self._f_sub(ind),
                                      self.config.fitness, ind.feasible,
                                      ind.violation_count, ind.removal_penalized)

    # -- initialization -------------------------------------------------

    def initialize(self) -> None:
        cfg = self.config
        self.population = [
            self.make_individual(
                random_architecture(self.model, cfg.n_min, cfg.n_max, self.rng))
            for _ in range(cfg.population_size)
        ]
        self.evaluate_all()
        self.archive.update([ind for ind in self.population if ind.feasible])

    # -- selection ------------------------------------------------------

    def _tournament(self, pool: list[Individual]) -> Individual:
        if len(pool) == 1:
            return pool[0]
        a, b = self.rng.randrange(len(pool)), self.rng.randrange(len(pool))
        ia, ib = pool[a], pool[b]
        return ia if ia.fitness.sort_key(a) <= ib.fitness.sort_key(b) else ib

    def select_parents(self) -> tuple[Individual, Individual]:
        p1 = self._tournament(self.population)
        archive_pool = self.archive.individuals()
        p2 = self._tournament(archive_pool) if archive_pool else self._tournament(self.population)
        return p1, p2

    # -- mutation -------------------------------------------------------

    def mutate(self, parent: Individual) -> Architecture:
        """Roulette over the five transformations with up to 10 attempts;
        returns the parent's architecture when no feasible mutant appears."""
        cfg = self.config
        for _ in range(10):
            mutant = self._mutate_once(parent.architecture)
            if mutant is None:
                continue
            if check_feasibility(mutant, self.model).feasible:
                return mutant
        return parent.architecture

    def _mutate_once(self, arch: Architecture) -> Architecture | None:
        cfg = self.config
        comps = list(arch.components)
        n = len(comps)
        open_idx = [i for i, c in enumerate(comps) if not c.frozen]
        big_idx = [i for i in open_idx if len(comps[i].classes) >= 2]

        ops: list[tuple[str, float]] = []
        w = cfg.mutation
        if n < cfg.n_max and big_idx:
            ops.append(("add", w.add))
            ops.append(("split", w.split))
        if n > cfg.n_min and open_idx and len(open_idx) >= 2:
            ops.append(("remove", w.remove))
            ops.append(("merge", w.merge))
        if len(open_idx) >= 2 and big_idx:
            ops.append(("move", w.move))
        total = sum(weight for _, weight in ops)
        if total <= 0:
            return None
        r = self.rng.random() * total
        acc = 0.0
        op = ops[-1][0]
        for name, weight in ops:
            acc += weight
            if r < acc:
                op = name
                break

        rng = self.rng
        if op in ("add", "split"):
            i = rng.choice(big_idx)
            classes = sorted(comps[i].classes)
            if op == "add":
                k = rng.randint(1, len(classes) - 1)
                subset = frozenset(rng.sample(classes, k))
            else:
                subset = frozenset(
                    c for c in classes if rng.random() < 0.5)
                if not subset or len(subset) == len(classes):
                    subset = frozenset([rng.choice(classes)])
            remainder = comps[i].classes - subset
            comps[i] = Component(remainder)
            comps.append(Component(subset))
        elif op == "remove":
            i = rng.choice(open_idx)
            receivers = [j for j in open_idx if j != i]
            for cid in sorted(comps[i].classes):
                j = rng.choice(receivers)
                comps[j] = Component(comps[j].classes | {cid}, comps[j].frozen)
            del comps[i]
        elif op == "merge":
            i, j = rng.sample(open_idx, 2)
            merged = Component(comps[i].classes | comps[j].classes)
            comps[min(i, j)] = merged
            del comps[max(i, j)]
        else:  # move
            sources = [i for i in big_idx]
            i = rng.choice(sources)
            cid = rng.choice(sorted(comps[i].classes))
            targets = [j for j in open_idx if j != i]
            j = rng.choice(targets)
            comps[i] = Component(comps[i].classes - {cid})
            comps[j] = Component(comps[j].classes | {cid}, comps[j].frozen)
        return Architecture(tuple(comps))

    # -- replacement ----------------------------------------------------

    def _replace(self, offspring: list[Individual]) -> None:
        pop = self.population
        # provisional fitness of offspring against the current population
        vectors = np.array([ind.objectives for ind in pop])
        off_vec = np.array([o.objectives for o in offspring])
        f_obj = maximin_against(off_vec, vectors)
        for o, fo in zip(offspring, f_obj):
            o.fitness = combine(float(fo), self._f_sub(o), self.config.fitness,
                                o.feasible, o.violation_count)

        remaining = list(offspring)
        marked = [i for i, ind in enumerate(pop)
                  if ind.marked_for_removal and not ind.preserved]
        if marked:
            # engineer-discarded solutions are removed unconditionally,
            # worst first, at most two per generation
            marked.sort(key=lambda i: pop[i].fitness.sort_key(i), reverse=True)
            for i in marked[:2]:
                if not remaining:
                    break
                pop[i] = remaining.pop(0)
            for i in marked[2:]:
                pop[i].removal_penalized = True
        for child in remaining:
            candidates = [i for i, ind in enumerate(pop) if not ind.preserved]
            if not candidates:
                break
            worst = max(candidates, key=lambda i: pop[i].fitness.sort_key(i))
            if child.fitness.sort_key(len(pop)) < pop[worst].fitness.sort_key(worst):
                pop[worst] = child

    # -- generation step ------------------------------------------------

    def step_generation(self) -> None:
        p1, p2 = self.select_parents()
        offspring = [self.make_individual(self.mutate(p)) for p in (p1, p2)]
        self._replace(offspring)
        self.evaluate_all()
        entered = [o for o in offspring if o in self.population and o.feasible]
        self.archive.update(entered)
        self.generation += 1

    # -- statistics -----------------------------------------------------

    def stats(self) -> dict:
        pop = self.population
        combined = [ind.fitness.combined for ind in pop]
        counts: dict[int, int] = {}
        for ind in pop:
            counts[ind.architecture.n] = counts.get(ind.architecture.n, 0) + 1

        def means(individuals):
            if not individuals:
                return {"icd": None, "erp": None, "gcr": None}
            k = len(individuals)
            return {
                "icd": sum(i.metrics.icd for i in individuals) / k,
                "erp": sum(i.metrics.erp for i in individuals) / k,
                "gcr": sum(i.metrics.gcr for i in individuals) / k,
            }

        return {
            "generation": self.generation,
            "evaluations": self.evaluations_used,
            "best_combined": min(combined),
            "mean_combined": sum(combined) / len(combined),
            "population_metrics": means(pop),
            "archive_metrics": means(self.archive.individuals()),
            "archive_size": len(self.archive),
            "component_counts": {str(k): v for k, v in sorted(counts.items())},
        }

    # -- full run -------------------------------------------------------

    def run(self, feedback_provider=None, stats_writer=None,
            stats_every: int = 0) -> None:
        """Run to the evaluation budget.

        `feedback_provider(candidate_set) -> FeedbackBundle` is called at
        each scheduled stop; omit it for the non-interactive baseline run.
        """
        cfg = self.config
        self.initialize()
        schedule = set()
        if feedback_provider is not None and cfg.interactions > 0:
            schedule = set(build_schedule(self.total_generations, cfg.interactions))
        stop_index = 0
        while self.generation < self.total_generations and not self.stopped:
            self.step_generation()
            if stats_writer and stats_every and self.generation % stats_every == 0:
                stats_writer(self.stats())
            if self.generation in schedule:
                candidate_set = select_candidates(
                    self.population, cfg.candidates_per_stop, self.rng,
                    self.model, stop_index)
                bundle = feedback_provider(candidate_set)
                stop = apply_feedback(self, candidate_set, bundle)
                self.evaluate_all()
                self.archive.reduce_after_interaction()
                stop_index += 1
                if stop:
                    self.stopped = True
        if stats_writer:
            stats_writer(self.stats())

    def archive_snapshot(self) -> list[dict]:
        """Serializable final archive, canonically ordered."""
        from .architecture import architecture_to_dict
        out = []
        for m in self.archive.members:
            ind = m.individual
            out.append({
                "phenotype": architecture_to_dict(ind.architecture, self.model),
                "metrics": {"icd": ind.metrics.icd, "erp": ind.metrics.erp,
                            "gcr": ind.metrics.gcr},
                "objectives": list(ind.objectives),
                "f_obj": ind.fitness.f_obj if ind.fitness else None,
                "f_sub": ind.fitness.f_sub if ind.fitness else None,
                "preserved": ind.preserved,
                "region": m.region,
            })
        out.sort(key=lambda e: (e["objectives"], e["phenotype"]["components"][0]["classes"]))
        return out
