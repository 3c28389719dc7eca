import json
import pathlib
import random

import pytest

from archevolve.model import GeneratorSpec, generate_model, load_model

DATA = pathlib.Path(__file__).resolve().parent.parent / "src" / "archevolve" / "data"

# Frozen synthetic instances used throughout the suite.
SYN25 = GeneratorSpec(25, n_as=14, n_ag=6, n_co=3, n_ge=8, n_de=5, p_nav=0.4, seed=7)
SYN40 = GeneratorSpec(40, n_as=20, n_ag=10, n_co=5, n_ge=15, n_de=8, p_nav=0.4, seed=11)


@pytest.fixture(scope="session")
def minilib_path():
    return DATA / "minilib.json"


@pytest.fixture(scope="session")
def minilib(minilib_path):
    return load_model(minilib_path)


@pytest.fixture(scope="session")
def minilib_reference():
    return json.loads((DATA / "minilib_reference.json").read_text())


@pytest.fixture(scope="session")
def syn25():
    return generate_model(SYN25)


@pytest.fixture(scope="session")
def syn40():
    return generate_model(SYN40)


def small_model(seed: int, n_classes: int | None = None):
    """A random small model for oracle sweeps."""
    rng = random.Random(seed)
    n = n_classes or rng.randint(6, 15)
    return generate_model(GeneratorSpec(
        n_classes=n,
        n_as=rng.randint(2, 2 * n),
        n_ag=rng.randint(0, n // 2),
        n_co=rng.randint(0, n // 3),
        n_ge=rng.randint(0, n // 3),
        n_de=rng.randint(1, n // 2),
        p_nav=rng.uniform(0.2, 0.8),
        seed=seed,
    ))
