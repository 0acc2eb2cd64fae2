"""Crown decompositions of hypergraph instances as first-class objects.

A crown is an independent vertex set together with its head: the set of
subedges that complete crown vertices to full hyperedges. When every head
subedge can be matched injectively to a crown vertex along hyperedges, the
crown vertices can be deleted and the head subedges inherit their hitting
duty with the budget unchanged -- the two instances decide identically.

The crown here carries its matching as a checkable certificate; the
transformation itself never uses it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Edge, Hypergraph, Instance, canonical_edge, is_independent
from .errors import ContractError, InvalidCrownError
from .matching import BipartiteGraph, find_bipartite_crown


@dataclass(frozen=True)
class HSCrown:
    """Crown vertices, head subedges, and the injective head-to-crown matching."""

    crown: frozenset[int]
    head: frozenset[Edge]
    matching: tuple[tuple[Edge, int], ...]  # (head subedge, crown vertex)

    def __post_init__(self) -> None:
        object.__setattr__(self, "matching", tuple(sorted(self.matching)))

    def matching_map(self) -> dict[Edge, int]:
        return {y: v for y, v in self.matching}

    @property
    def strict(self) -> bool:
        return len(self.crown) >= len(self.head) + 1


@dataclass(frozen=True)
class CrownVerdict:
    """Outcome of validating a crown: the three conditions independently,
    plus whether the crown is strict."""

    independent: bool
    head_exact: bool
    matching_valid: bool
    strict: bool
    problems: tuple[str, ...]

    @property
    def valid(self) -> bool:
        return self.independent and self.head_exact and self.matching_valid


def induced_head(h: Hypergraph, crown_vertices: frozenset[int]) -> tuple[set[Edge], bool]:
    """The subedges left behind by edges through the crown.

    Returns the induced set plus a flag for the degenerate case of a unit
    edge inside the crown, whose remainder would be empty and could never
    inherit a hitting duty.
    """
    induced: set[Edge] = set()
    has_empty = False
    for e in h.edges:
        for x in e:
            if x in crown_vertices:
                rest = tuple(v for v in e if v != x)
                if rest:
                    induced.add(rest)
                else:
                    has_empty = True
    return induced, has_empty


def validate_hs_crown(h: Hypergraph, c: HSCrown) -> CrownVerdict:
    """Check the three crown conditions independently and report failures."""
    problems: list[str] = []

    independent = is_independent(h, c.crown)
    if not independent:
        problems.append("crown vertices are not independent")

    induced, has_empty = induced_head(h, c.crown)
    head_exact = not has_empty and induced == set(c.head)
    if has_empty:
        problems.append("a unit edge meets the crown; its remainder cannot carry the duty")
    elif induced != set(c.head):
        missing = induced - set(c.head)
        extra = set(c.head) - induced
        if missing:
            problems.append(f"head misses induced subedges {sorted(missing)}")
        if extra:
            problems.append(f"head contains foreign subedges {sorted(extra)}")

    mapping = dict(c.matching)
    matching_valid = True
    if set(mapping) != set(c.head):
        matching_valid = False
        problems.append("matching does not cover the head exactly")
    values = list(mapping.values())
    if len(set(values)) != len(values):
        matching_valid = False
        problems.append("matching is not injective")
    if not set(values) <= set(c.crown):
        matching_valid = False
        problems.append("matching image leaves the crown")
    for y, v in mapping.items():
        if canonical_edge((*y, v)) not in h.edge_index:
            matching_valid = False
            problems.append(f"matched pair {y} -> {v} is not a hyperedge")

    strict = len(c.crown) >= len(c.head) + 1
    return CrownVerdict(independent, head_exact, matching_valid, strict, tuple(problems))


def apply_hs_crown(inst: Instance, c: HSCrown) -> Instance:
    """Remove the crown, drop every edge it meets, and insert the head.

    The budget is unchanged and the result is renormalized to dense ids.
    Head subedges may duplicate or contain existing edges; set semantics and
    the controller's edge-domination pass clean that up, no special casing
    here. An invalid crown is rejected with its validation verdict.
    """
    verdict = validate_hs_crown(inst.hypergraph, c)
    if not verdict.valid:
        raise InvalidCrownError(verdict)
    h = inst.hypergraph
    new_edges = [e for e, es in zip(h.edges, h.edge_sets) if not (es & c.crown)]
    new_edges.extend(c.head)
    keep = [v for v in range(h.n) if v not in c.crown]
    remap = {old: new for new, old in enumerate(keep)}
    edges = tuple(tuple(sorted(remap[v] for v in e)) for e in new_edges)
    labels = tuple(inst.labels[v] for v in keep) if inst.labels is not None else None
    return Instance(
        Hypergraph(len(keep), edges, h.d), inst.k, labels=labels, comments=inst.comments
    )


def strict_crown_from_independent_set(
    h: Hypergraph, independent: frozenset[int] | set[int]
) -> HSCrown | None:
    """Extract a strict crown from a given independent set, if one exists.

    Builds the head induced by the set, matches head subedges against the
    set in the auxiliary bipartite graph (adjacent iff their union is a
    hyperedge), and keeps the alternating-reachable part when the matching
    leaves part of the set unmatched. Returns ``None`` exactly when the
    matching saturates the set.

    Requires every edge of ``h`` to have at least two vertices (the
    controller guarantees this by running the unit-edge rule first) and a
    nonempty independent input.
    """
    indep = frozenset(independent)
    if not indep:
        raise ContractError("independent set must be nonempty")
    if any(len(e) < 2 for e in h.edges):
        raise ContractError("every edge must have size >= 2 for crown extraction")
    if not is_independent(h, indep):
        raise ContractError("input vertex set is not independent")
    head, has_empty = induced_head(h, indep)
    if has_empty:
        raise ContractError("unit edge met the independent set")
    return _crown_via_matching(h, sorted(indep), sorted(head))


def _crown_via_matching(
    h: Hypergraph, candidates: list[int], subedges: list[Edge]
) -> HSCrown | None:
    """Shared finder: match subedges into candidate vertices, keep the
    Hall-deficient part, translate back to hypergraph terms."""
    sub_pos = {y: j for j, y in enumerate(subedges)}
    adjacency = []
    for v in candidates:
        row = [
            sub_pos[rest]
            for e, es in zip(h.edges, h.edge_sets)
            if v in es
            for rest in (tuple(u for u in e if u != v),)
            if rest in sub_pos
        ]
        adjacency.append(tuple(sorted(set(row))))
    found = find_bipartite_crown(
        BipartiteGraph(len(candidates), len(subedges), tuple(adjacency))
    )
    if found is None:
        return None
    crown = frozenset(candidates[i] for i in found.crown)
    head = frozenset(subedges[j] for j in found.head)
    matching = tuple((subedges[j], candidates[i]) for j, i in found.matching)
    return HSCrown(crown, head, matching)


def format_crown(c: HSCrown) -> str:
    """Debug rendering of a crown: vertices, head subedges, and the matching."""
    crown = ",".join(map(str, sorted(c.crown)))
    head = " ".join("{" + ",".join(map(str, y)) + "}" for y in sorted(c.head))
    pairs = " ".join(
        "{" + ",".join(map(str, y)) + "}->" + str(v) for y, v in sorted(c.matching)
    )
    kind = "strict" if c.strict else "non-strict"
    return f"{kind} crown [{crown}] head [{head}] matching [{pairs}]"
