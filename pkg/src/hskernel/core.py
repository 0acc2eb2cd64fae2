"""Hypergraph and instance model with the incidence queries every rule uses.

Vertices are dense integers ``0..n-1``; external names survive in an optional
label table so reduced instances can be reported in the caller's vocabulary.
Hyperedges are strictly increasing vertex tuples with set semantics:
duplicate edges collapse silently at construction. Edges smaller than the
declared bound ``d`` are first-class (several reductions create them); only
the upper bound is enforced. The empty edge is permitted as an explicit
infeasibility witness and makes the instance unhittable.

All types here are immutable after construction and safe to share between
threads; every transformation produces a new value.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable

from .errors import FormatError, UnsupportedParameterError

Edge = tuple[int, ...]

#: Smallest supported edge-size bound; the kernel guarantee needs d >= 3.
MIN_D = 3


def canonical_edge(vertices: Iterable[int]) -> Edge:
    """Sorted, internally deduplicated vertex tuple."""
    return tuple(sorted(set(vertices)))


@dataclass(frozen=True)
class Hypergraph:
    """A hypergraph: ``n`` vertices, a set of edges, and the size bound ``d``.

    Edges are canonicalized (sorted, deduplicated, set semantics) at
    construction. Every edge must have at most ``d`` vertices and reference
    only ids below ``n``.
    """

    n: int
    edges: tuple[Edge, ...]
    d: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"vertex count must be non-negative, got {self.n}")
        if self.d < 1:
            raise ValueError(f"edge size bound must be positive, got {self.d}")
        canon = sorted({canonical_edge(e) for e in self.edges})
        for e in canon:
            if len(e) > self.d:
                raise FormatError(f"edge {e} has {len(e)} vertices, bound is {self.d}")
            if e and (e[0] < 0 or e[-1] >= self.n):
                raise ValueError(f"edge {e} references a vertex outside 0..{self.n - 1}")
        object.__setattr__(self, "edges", tuple(canon))

    @cached_property
    def edge_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(e) for e in self.edges)

    @cached_property
    def edge_index(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """For each vertex, the indices of the edges containing it."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            for v in e:
                inc[v].append(i)
        return tuple(tuple(ix) for ix in inc)

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)


@dataclass(frozen=True)
class Instance:
    """A hypergraph paired with the budget ``k``; the unit every rule transforms.

    ``k`` may transiently go negative inside the controller before the
    verdict check. The label table, when present, maps each dense id back to
    the caller's original vertex name; comments are provenance only and do
    not participate in equality.
    """

    hypergraph: Hypergraph
    k: int
    labels: tuple[Hashable, ...] | None = None
    comments: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if self.hypergraph.d < MIN_D:
            raise UnsupportedParameterError(
                f"d={self.hypergraph.d} unsupported: the engine requires d >= {MIN_D}"
            )
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != self.hypergraph.n:
                raise ValueError("label table must have one entry per vertex")
            if len(set(labels)) != len(labels):
                raise ValueError("label table must be a bijection")
            object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "comments", tuple(self.comments))

    @property
    def n(self) -> int:
        return self.hypergraph.n

    @property
    def m(self) -> int:
        return self.hypergraph.m

    @property
    def d(self) -> int:
        return self.hypergraph.d

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self.hypergraph.edges

    def with_k(self, k: int) -> "Instance":
        return replace(self, k=k)

    def label_of(self, v: int) -> Hashable:
        return self.labels[v] if self.labels is not None else v


def normalize(
    raw_edges: Iterable[Iterable[Hashable]],
    d: int,
    k: int,
    labels: Iterable[Hashable] | None = None,
) -> Instance:
    """Build a canonical :class:`Instance` from raw labelled edge lists.

    Dense ids are assigned in first-appearance order (the explicit ``labels``
    sequence first when given, otherwise order of appearance across edges).
    Each edge is sorted and internally deduplicated; duplicate edges collapse.
    An edge larger than ``d`` (after deduplication) is a format error. An
    empty raw edge is kept as the infeasibility witness: the controller turns
    it into an immediate no-verdict rather than raising here.
    """
    if d < MIN_D:
        raise UnsupportedParameterError(f"d={d} unsupported: the engine requires d >= {MIN_D}")
    ids: dict[Hashable, int] = {}
    if labels is not None:
        for name in labels:
            ids.setdefault(name, len(ids))
    edges: list[Edge] = []
    for raw in raw_edges:
        members = list(raw)
        seen: set[Hashable] = set()
        edge: list[int] = []
        for name in members:
            if name in seen:
                continue
            seen.add(name)
            if labels is not None and name not in ids:
                raise FormatError(f"edge vertex {name!r} is not in the declared label set")
            edge.append(ids.setdefault(name, len(ids)))
        if len(edge) > d:
            raise FormatError(f"edge {members!r} has {len(edge)} distinct vertices, bound is {d}")
        edges.append(tuple(sorted(edge)))
    table = tuple(sorted(ids, key=ids.__getitem__))
    return Instance(Hypergraph(len(ids), tuple(edges), d), k, labels=table)


def incident_edges(h: Hypergraph, subedge: Iterable[int]) -> tuple[Edge, ...]:
    """All edges of ``h`` that contain every vertex of ``subedge``."""
    s = frozenset(subedge)
    if not s:
        raise ValueError("subedge must be nonempty")
    return tuple(e for e, es in zip(h.edges, h.edge_sets) if s <= es)


def is_independent(h: Hypergraph, vertices: Iterable[int]) -> bool:
    """True iff every edge of ``h`` contains at most one vertex of the set."""
    x = frozenset(vertices)
    if any(v < 0 or v >= h.n for v in x):
        raise ValueError("vertex set contains ids outside the universe")
    return all(len(es & x) <= 1 for es in h.edge_sets)


def subedges_of(edges: Iterable[Edge], size: int) -> tuple[Edge, ...]:
    """All ``size``-vertex subsets contained in at least one of ``edges``."""
    if size < 1:
        raise ValueError("subedge size must be at least 1")
    out: set[Edge] = set()
    for e in edges:
        if len(e) >= size:
            out.update(combinations(e, size))
    return tuple(sorted(out))
