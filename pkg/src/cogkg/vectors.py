"""Attribute schemas and variable-dimensionality feature vectors.

A schema names each scalar dimension and bounds its range; vectors are
interpreted only against their schema. Dimensionality varies freely between
schemas, so similarity must handle partially overlapping dimension sets.
All reductions iterate dimensions in schema order, which keeps every
operation bit-deterministic.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .errors import (
    ClampWarning,
    ProjectionError,
    RangeMismatchError,
    SchemaDefinitionError,
    SchemaMismatchError,
)

__all__ = [
    "Dim",
    "AttributeSchema",
    "FeatureVector",
    "similarity",
    "prototype_update",
    "project",
]


@dataclass(frozen=True)
class Dim:
    """One named scalar dimension with an inclusive value range."""

    name: str
    min: float
    max: float

    @property
    def span(self) -> float:
        return self.max - self.min


# Names appear unquoted in snapshot records, so they must be single tokens.
def _check_token_name(name: str, what: str) -> None:
    if not name or any(c.isspace() for c in name) or ":" in name or '"' in name:
        raise SchemaDefinitionError(
            f"{what} name {name!r} must be nonempty and free of whitespace, ':' and '\"'"
        )


@dataclass(frozen=True)
class AttributeSchema:
    """Immutable ordered list of dimensions. Register via Graph.define_schema."""

    id: int
    name: str
    dims: tuple[Dim, ...]

    def __post_init__(self):
        _check_token_name(self.name, "schema")
        if not self.dims:
            raise SchemaDefinitionError(f"schema {self.name!r} has no dims")
        seen = set()
        for d in self.dims:
            _check_token_name(d.name, "dim")
            if d.name in seen:
                raise SchemaDefinitionError(f"duplicate dim name {d.name!r}")
            seen.add(d.name)
            if not (d.min < d.max):
                raise SchemaDefinitionError(
                    f"dim {d.name!r} needs min < max, got [{d.min}, {d.max}]"
                )

    def __len__(self) -> int:
        return len(self.dims)

    def dim_index(self) -> dict[str, int]:
        return {d.name: i for i, d in enumerate(self.dims)}

    def vector(self, values) -> FeatureVector:
        """Build a vector on this schema, clamping out-of-range values.

        Clamping (rather than rejecting) tolerates noisy input; each clamp
        is reported through a ClampWarning.
        """
        values = tuple(float(v) for v in values)
        if len(values) != len(self.dims):
            raise SchemaMismatchError(
                f"schema {self.name!r} has {len(self.dims)} dims, got {len(values)} values"
            )
        clamped = []
        out = []
        for d, v in zip(self.dims, values):
            if v != v or v in (float("inf"), float("-inf")):
                raise SchemaDefinitionError(f"non-finite value for dim {d.name!r}")
            if v < d.min:
                clamped.append(d.name)
                v = d.min
            elif v > d.max:
                clamped.append(d.name)
                v = d.max
            out.append(v)
        if clamped:
            warnings.warn(
                f"clamped out-of-range values for dims {clamped} on schema {self.name!r}",
                ClampWarning,
                stacklevel=2,
            )
        return FeatureVector(self, tuple(out))


@dataclass(frozen=True)
class FeatureVector:
    """Values paired with the schema they are read against. Pure value type."""

    schema: AttributeSchema
    values: tuple[float, ...]

    def __getitem__(self, dim_name: str) -> float:
        return self.values[self.schema.dim_index()[dim_name]]


def similarity(a: FeatureVector, b: FeatureVector) -> float:
    """Similarity in [0, 1] between vectors on possibly different schemas.

    Over the dims shared by name, closeness is 1 minus the mean
    range-normalized absolute difference; that closeness is scaled by
    |shared| / max(|Sa|, |Sb|) so missing dimensions cost proportionally.
    Disjoint schemas score 0. Shared dims must agree on ranges.
    """
    sa, sb = a.schema, b.schema
    if sa is sb or sa.id == sb.id:
        shared = [(i, i, d) for i, d in enumerate(sa.dims)]
    else:
        bi = sb.dim_index()
        shared = []
        for i, d in enumerate(sa.dims):
            j = bi.get(d.name)
            if j is None:
                continue
            other = sb.dims[j]
            if other.min != d.min or other.max != d.max:
                raise RangeMismatchError(d.name)
            shared.append((i, j, d))
    if not shared:
        return 0.0
    gap = 0.0
    for i, j, d in shared:
        gap += abs(a.values[i] - b.values[j]) / d.span
    closeness = 1.0 - gap / len(shared)
    overlap = len(shared) / max(len(sa), len(sb))
    return overlap * closeness


def prototype_update(proto: FeatureVector, sample: FeatureVector, n: int) -> FeatureVector:
    """Fold one sample into a running per-dim mean.

    ``n`` is the member count including the new sample; n=1 returns the
    sample itself, so a fold over k samples equals their batch mean.
    """
    if proto.schema.id != sample.schema.id:
        raise SchemaMismatchError(
            f"prototype on schema {proto.schema.name!r}, sample on {sample.schema.name!r}"
        )
    if n < 1:
        raise ValueError("n must be >= 1 (count including the new sample)")
    if n == 1:
        return sample
    values = tuple(p + (s - p) / n for p, s in zip(proto.values, sample.values))
    return FeatureVector(proto.schema, values)


def project(v: FeatureVector, target: AttributeSchema) -> FeatureVector:
    """Copy values onto ``target``'s dims, in target order.

    Every target dim must exist in the source schema with an identical range.
    """
    src_index = v.schema.dim_index()
    values = []
    for d in target.dims:
        i = src_index.get(d.name)
        if i is None:
            raise ProjectionError(
                f"dim {d.name!r} of schema {target.name!r} missing from {v.schema.name!r}"
            )
        sd = v.schema.dims[i]
        if sd.min != d.min or sd.max != d.max:
            raise RangeMismatchError(d.name)
        values.append(v.values[i])
    return FeatureVector(target, tuple(values))
