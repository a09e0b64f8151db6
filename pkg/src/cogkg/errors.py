"""Exception and warning types shared across the package."""


class CogError(Exception):
    """Base class for all cogkg errors."""


class UnknownNodeError(CogError):
    """An operation referenced a node id that is not in the graph."""

    def __init__(self, node_id: int):
        super().__init__(f"unknown node id {node_id}")
        self.node_id = node_id


class UnknownEdgeError(CogError):
    def __init__(self, edge_id: int):
        super().__init__(f"unknown edge id {edge_id}")
        self.edge_id = edge_id


class UnknownSchemaError(CogError):
    def __init__(self, schema: "int | str"):
        super().__init__(f"unknown schema {schema!r}")
        self.schema = schema


class SchemaDefinitionError(CogError):
    """Invalid schema definition: empty dims, duplicate names, bad ranges."""


class DuplicateSchemaError(CogError):
    def __init__(self, name: str):
        super().__init__(f"schema name {name!r} already registered")
        self.name = name


class RangeMismatchError(CogError):
    """A dimension shared by name has different ranges in the two schemas."""

    def __init__(self, dim_name: str):
        super().__init__(f"shared dim {dim_name!r} has mismatched ranges")
        self.dim_name = dim_name


class SchemaMismatchError(CogError):
    """Operation requires identical schemas on both vectors."""


class ProjectionError(CogError):
    """Target schema asks for a dimension the source vector does not have."""


class SnapshotError(CogError):
    """Snapshot file is malformed; carries the 1-based offending line number."""

    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class NoParseError(CogError):
    """Input is not derivable from the controlled grammar.

    ``offset`` is the character offset of the token where parsing failed.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class AmbiguousParseError(CogError):
    """More than one derivation would exist (defensive; the grammar and the
    lexicon loader are arranged so this cannot happen at parse time)."""


class LexiconError(CogError):
    """Lexicon file is malformed or contains conflicting entries."""


class ConceptFormationError(CogError):
    """Inputs to clustering/abstraction violate a precondition."""


class EdgeAlreadyInvalidWarning(UserWarning):
    """Invalidate called on an edge that is already invalid (no-op)."""


class ClampWarning(UserWarning):
    """A vector value was outside its dimension range and was clamped."""
