"""scikit-learn style facade over the evolutionary engine."""

from __future__ import annotations

from sklearn.base import BaseEstimator

from .engine import Engine, EngineConfig
from .model import AnalysisModel, parse_model


class ArchitectureDiscoverer(BaseEstimator):
    """Discovers a component architecture for a class model.

    fit() accepts an AnalysisModel or a JSON document and exposes the
    final archive through `archive_` and `components_`. Feedback-driven
    runs pass a scripted policy as `feedback_provider`.
    """

    def __init__(self, population_size=150, max_evaluations=24000,
                 n_min=2, n_max=6, tau_0=0.05, tau_h=0.005,
                 tau_decrease=0.5, interactions=3, candidates_per_stop=3,
                 random_state=0):
        self.population_size = population_size
        self.max_evaluations = max_evaluations
        self.n_min = n_min
        self.n_max = n_max
        self.tau_0 = tau_0
        self.tau_h = tau_h
        self.tau_decrease = tau_decrease
        self.interactions = interactions
        self.candidates_per_stop = candidates_per_stop
        self.random_state = random_state

    def _config(self) -> EngineConfig:
        return EngineConfig(
            population_size=self.population_size,
            max_evaluations=self.max_evaluations,
            n_min=self.n_min, n_max=self.n_max,
            tau_0=self.tau_0, tau_h=self.tau_h,
            tau_decrease=self.tau_decrease,
            interactions=self.interactions,
            candidates_per_stop=self.candidates_per_stop,
            rng_seed=self.random_state,
        )

    def fit(self, X, y=None, feedback_provider=None):
        model = X if isinstance(X, AnalysisModel) else parse_model(X)
        engine = Engine(model, self._config())
        engine.run(feedback_provider=feedback_provider)
        self.engine_ = engine
        self.archive_ = engine.archive_snapshot()
        best = min(self.archive_, key=lambda e: e["f_obj"])
        self.components_ = [c["classes"] for c in best["phenotype"]["components"]]
        return self
