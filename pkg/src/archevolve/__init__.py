"""Interactive evolutionary discovery of component-based architectures."""

from .architecture import (Architecture, Component, architecture_from_dict,
                           architecture_to_dict, check_feasibility,
                           derive_interfaces, random_architecture)
from .engine import Engine, EngineConfig, Individual
from .estimator import ArchitectureDiscoverer
from .metrics import ErpWeights, MetricVector, Normalization, compute_metrics
from .model import (AnalysisModel, GeneratorSpec, ModelError, generate_model,
                    load_model, parse_model, serialize_model)
from .preferences import Preference, PreferenceStore

__version__ = "0.1.0"

__all__ = [
    "AnalysisModel", "Architecture", "ArchitectureDiscoverer", "Component",
    "Engine", "EngineConfig", "ErpWeights", "GeneratorSpec", "Individual",
    "MetricVector", "ModelError", "Normalization", "Preference",
    "PreferenceStore", "architecture_from_dict", "architecture_to_dict",
    "check_feasibility", "compute_metrics", "derive_interfaces",
    "generate_model", "load_model", "parse_model", "random_architecture",
    "serialize_model",
]
