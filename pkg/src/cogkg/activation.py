"""Spreading activation over the graph: the short-term/working memory layer.

Levels live outside the graph in an ActivationState, so the same long-term
store can serve several attention contexts. The tick is a synchronous
two-phase update computed from a snapshot of the pre-tick levels:

1. spread: every node with level ``a`` sends ``spread_factor * a / outdeg``
   along each of its valid out-edges (taxonomy edges therefore conduct
   child -> parent, never downward);
2. decay: every post-spread level is multiplied by ``decay``;
3. clamp to [0, 1] and drop entries below the floor.

Invalid edges never conduct, so revised knowledge falls out of context.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnknownNodeError
from .graph import Graph

__all__ = ["ActivationParams", "ActivationState"]


@dataclass(frozen=True)
class ActivationParams:
    decay: float = 0.8
    spread_factor: float = 0.5
    floor: float = 0.01
    working_threshold: float = 0.1

    def __post_init__(self):
        if not (0.0 < self.decay < 1.0):
            raise ValueError(f"decay must be in (0, 1), got {self.decay}")
        if not (0.0 <= self.spread_factor < 1.0):
            raise ValueError(f"spread_factor must be in [0, 1), got {self.spread_factor}")
        if not (0.0 < self.floor < 1.0):
            raise ValueError(f"floor must be in (0, 1), got {self.floor}")
        if not (0.0 <= self.working_threshold <= 1.0):
            raise ValueError(
                f"working_threshold must be in [0, 1], got {self.working_threshold}"
            )


class ActivationState:
    """Per-node activation levels in (0, 1]; absent means 0.

    Single-owner mutable state: hand it between threads freely, never
    mutate it from two at once. ``working_set`` reads are safe concurrently
    with each other.
    """

    def __init__(self, params: ActivationParams | None = None):
        self.params = params or ActivationParams()
        self.levels: dict[int, float] = {}
        self.last_stimulated: dict[int, int] = {}
        self.tick_count = 0

    def level(self, node_id: int) -> float:
        return self.levels.get(node_id, 0.0)

    def total(self) -> float:
        return sum(self.levels.values())

    def stimulate(self, graph: Graph, node_id: int, amount: float) -> None:
        """Add ``amount`` to a node's level, saturating at 1."""
        if not graph.has_node(node_id):
            raise UnknownNodeError(node_id)
        if not (0.0 < amount <= 1.0):
            raise ValueError(f"stimulation amount must be in (0, 1], got {amount}")
        new = min(1.0, self.levels.get(node_id, 0.0) + amount)
        if new >= self.params.floor:
            self.levels[node_id] = new
        self.last_stimulated[node_id] = self.tick_count

    def tick(self, graph: Graph) -> None:
        """One synchronous spread+decay step; see module docstring."""
        params = self.params
        spread = params.spread_factor
        decay = params.decay
        floor = params.floor

        post = dict(self.levels)
        if spread > 0.0:
            for node_id, level in self.levels.items():
                out = list(graph.iter_valid_out(node_id))
                if not out:
                    continue
                share = spread * level / len(out)
                for edge in out:
                    post[edge.dst] = post.get(edge.dst, 0.0) + share

        new_levels: dict[int, float] = {}
        for node_id, level in post.items():
            level = min(1.0, level * decay)
            if level >= floor:
                new_levels[node_id] = level
        self.levels = new_levels
        self.tick_count += 1

    def working_set(
        self, k: int | None = None, threshold: float | None = None
    ) -> list[tuple[int, float]]:
        """Most-activated nodes: level >= threshold, sorted by level
        descending, then most recently stimulated, then lowest id."""
        theta = self.params.working_threshold if threshold is None else threshold
        last = self.last_stimulated
        items = [
            (node_id, level)
            for node_id, level in self.levels.items()
            if level >= theta
        ]
        items.sort(key=lambda item: (-item[1], -last.get(item[0], -1), item[0]))
        if k is not None:
            items = items[:k]
        return items

    def reset(self) -> None:
        """Clear all levels; the tick counter is preserved."""
        self.levels.clear()
        self.last_stimulated.clear()
