"""Class-model input: types, validation, JSON parsing and synthetic generation.

The input is a class diagram reduced to what architecture discovery needs:
classes with public/nonpublic methods and typed, optionally navigable
relationships between them.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

RELATIONSHIP_KINDS = ("as", "ag", "co", "ge", "de")

# Kinds whose navigability is free; ge is never navigable, de always is.
NAVIGABILITY_BEARING = ("as", "ag", "co")


class ModelError(Exception):
    """Base error for model ingestion problems."""


class ParseError(ModelError):
    """Document is not well-formed."""


class ValidationError(ModelError):
    """Document is well-formed but violates a model invariant."""


class GenerationError(ModelError):
    """Generator spec cannot be satisfied."""


@dataclass(frozen=True)
class MethodDef:
    name: str
    visibility: str = "public"  # "public" | "nonpublic"


@dataclass(frozen=True)
class ClassDef:
    id: str
    name: str
    methods: tuple[MethodDef, ...] = ()

    def public_methods(self) -> tuple[str, ...]:
        return tuple(m.name for m in self.methods if m.visibility == "public")


@dataclass(frozen=True)
class Relationship:
    id: str
    kind: str  # one of RELATIONSHIP_KINDS
    source: str
    target: str
    navigable: bool


@dataclass(frozen=True)
class AnalysisModel:
    classes: tuple[ClassDef, ...]
    relationships: tuple[Relationship, ...]
    class_index: dict[str, ClassDef] = field(compare=False, repr=False, default=None)

    def __post_init__(self):
        object.__setattr__(
            self, "class_index", {c.id: c for c in self.classes}
        )

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    def class_ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.classes)


def _validate(classes: list[ClassDef], relationships: list[Relationship]) -> AnalysisModel:
    if len(classes) < 2:
        raise ValidationError("model must contain at least 2 classes")
    seen_cls: set[str] = set()
    for c in classes:
        if not c.name:
            raise ValidationError(f"class {c.id!r} has an empty name")
        if c.id in seen_cls:
            raise ValidationError(f"duplicate class id {c.id!r}")
        seen_cls.add(c.id)
        meth_names = [m.name for m in c.methods]
        if len(meth_names) != len(set(meth_names)):
            raise ValidationError(f"class {c.id!r} declares duplicate method names")
        for m in c.methods:
            if m.visibility not in ("public", "nonpublic"):
                raise ValidationError(
                    f"class {c.id!r} method {m.name!r}: bad visibility {m.visibility!r}"
                )
    seen_rel: set[str] = set()
    for r in relationships:
        if r.id in seen_rel:
            raise ValidationError(f"duplicate relationship id {r.id!r}")
        seen_rel.add(r.id)
        if r.kind not in RELATIONSHIP_KINDS:
            raise ValidationError(f"relationship {r.id!r}: unknown kind {r.kind!r}")
        for endpoint in (r.source, r.target):
            if endpoint not in seen_cls:
                raise ValidationError(
                    f"relationship {r.id!r} references unknown class {endpoint!r}"
                )
        if r.kind == "ge" and r.source == r.target:
            raise ValidationError(f"relationship {r.id!r}: self-generalization")
        if r.kind == "ge" and r.navigable:
            raise ValidationError(f"relationship {r.id!r}: generalizations are never navigable")
        if r.kind == "de" and not r.navigable:
            raise ValidationError(f"relationship {r.id!r}: dependencies are always navigable")
    return AnalysisModel(tuple(classes), tuple(relationships))


def _require_keys(obj: dict, allowed: set[str], required: set[str], where: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise ValidationError(f"{where}: unknown keys {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise ValidationError(f"{where}: missing keys {sorted(missing)}")


def parse_model(document: bytes | str) -> AnalysisModel:
    """Parse and validate a UTF-8 JSON model document (strict keys)."""
    if isinstance(document, bytes):
        document = document.decode("utf-8")
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")
    if not isinstance(data, dict):
        raise ValidationError("top-level value must be an object")
    _require_keys(data, {"classes", "relationships"}, {"classes", "relationships"}, "document")
    classes = []
    for i, c in enumerate(data["classes"]):
        _require_keys(c, {"id", "name", "methods"}, {"id", "name"}, f"classes[{i}]")
        methods = []
        for j, m in enumerate(c.get("methods", [])):
            _require_keys(m, {"name", "visibility"}, {"name"}, f"classes[{i}].methods[{j}]")
            methods.append(MethodDef(m["name"], m.get("visibility", "public")))
        classes.append(ClassDef(c["id"], c["name"], tuple(methods)))
    relationships = []
    for i, r in enumerate(data["relationships"]):
        _require_keys(
            r,
            {"id", "kind", "source", "target", "navigable"},
            {"id", "kind", "source", "target", "navigable"},
            f"relationships[{i}]",
        )
        relationships.append(
            Relationship(r["id"], r["kind"], r["source"], r["target"], bool(r["navigable"]))
        )
    return _validate(classes, relationships)


def serialize_model(model: AnalysisModel) -> str:
    """Canonical JSON form; parse(serialize(m)) == m."""
    doc = {
        "classes": [
            {
                "id": c.id,
                "name": c.name,
                "methods": [{"name": m.name, "visibility": m.visibility} for m in c.methods],
            }
            for c in model.classes
        ],
        "relationships": [
            {"id": r.id, "kind": r.kind, "source": r.source, "target": r.target,
             "navigable": r.navigable}
            for r in model.relationships
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def load_model(path) -> AnalysisModel:
    with open(path, "rb") as fh:
        return parse_model(fh.read())


@dataclass(frozen=True)
class GeneratorSpec:
    n_classes: int
    n_as: int = 0
    n_ag: int = 0
    n_co: int = 0
    n_ge: int = 0
    n_de: int = 0
    p_nav: float = 0.5
    seed: int = 0


def generate_model(spec: GeneratorSpec) -> AnalysisModel:
    """Synthesize a random model; pure function of the spec (seed included)."""
    if spec.n_classes < 2:
        raise GenerationError("need at least 2 classes")
    counts = {"as": spec.n_as, "ag": spec.n_ag, "co": spec.n_co,
              "ge": spec.n_ge, "de": spec.n_de}
    if any(v < 0 for v in counts.values()):
        raise GenerationError("relationship counts must be non-negative")
    rng = random.Random(spec.seed)
    width = len(str(spec.n_classes))
    classes = []
    for i in range(spec.n_classes):
        cid = f"C{i + 1:0{width}d}"
        n_methods = rng.randint(1, 3)
        methods = [MethodDef(f"op{j + 1}", "public") for j in range(n_methods)]
        if rng.random() < 0.3:
            methods.append(MethodDef("helper", "nonpublic"))
        classes.append(ClassDef(cid, f"Class{i + 1}", tuple(methods)))
    ids = [c.id for c in classes]
    relationships = []
    rid = 0
    for kind in RELATIONSHIP_KINDS:
        for _ in range(counts[kind]):
            rid += 1
            source = rng.choice(ids)
            target = rng.choice(ids)
            if kind == "ge":
                while target == source:
                    target = rng.choice(ids)
                navigable = False
            elif kind == "de":
                navigable = True
            else:
                navigable = rng.random() < spec.p_nav
            relationships.append(Relationship(f"r{rid:03d}", kind, source, target, navigable))
    return _validate(classes, relationships)


def candidate_interface_count(model: AnalysisModel) -> int:
    """Relationships that can form an interface: every navigable one."""
    return sum(1 for r in model.relationships if r.navigable)
