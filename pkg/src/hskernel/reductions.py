"""The six reduction rules and the kernelization controller.

Each rule takes an :class:`Instance` and returns a :class:`RuleOutcome`; the
controller applies the lowest-numbered applicable rule until either a verdict
falls out or no rule applies, at which point the surviving instance is a
kernel with at most ``(2d-2)*k**(d-1) + k`` vertices.

Rule order is load-bearing: each rule's correctness may assume all previous
rules are inapplicable, and the controller enforces exactly that. Quick
verdicts (empty edge set, exhausted budget, unhittable empty edge) live in
the controller, not in any rule.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .core import Edge, Hypergraph, Instance, subedges_of
from .crown import HSCrown, apply_hs_crown, validate_hs_crown, _crown_via_matching
from .errors import InternalConsistencyError
from .lp import LPProblem, build_crown_lp, extract_crown_candidates, solve_exact
from .matching import SimpleGraph, max_extension_packing


@dataclass(frozen=True)
class TraceStep:
    """Statistics of one rule application."""

    rule: int
    vertices_removed: int
    edges_removed: int
    edges_added: int
    k_delta: int


@dataclass
class ReductionTrace:
    """Ordered log of rule applications plus the final verdict."""

    steps: list[TraceStep] = field(default_factory=list)
    verdict: str = "undecided"  # undecided | yes | no

    def rule_counts(self) -> dict[int, int]:
        counts = {r: 0 for r in range(1, 7)}
        for s in self.steps:
            counts[s.rule] += 1
        return counts


@dataclass(frozen=True)
class RuleOutcome:
    """Result of attempting one rule. ``applied`` and ``verdict_no`` are
    mutually exclusive; rule 6 additionally carries the crown it applied and
    the LP it solved, for tracing and debugging."""

    applied: bool
    new_instance: Instance | None = None
    verdict_no: bool = False
    step: TraceStep | None = None
    crown: HSCrown | None = None
    lp_problem: LPProblem | None = None

    def __post_init__(self) -> None:
        if self.applied and self.verdict_no:
            raise InternalConsistencyError("a rule cannot both apply and conclude no")


@dataclass(frozen=True)
class WeaklyRelatedFamily:
    """A maximal family of edges pairwise overlapping in at most d-2 vertices."""

    edges: tuple[Edge, ...]

    @classmethod
    def greedy(cls, h: Hypergraph) -> "WeaklyRelatedFamily":
        """Greedy maximal family in canonical edge order (deterministic)."""
        chosen: list[Edge] = []
        chosen_sets: list[frozenset[int]] = []
        for e, es in zip(h.edges, h.edge_sets):
            if all(len(es & f) <= h.d - 2 for f in chosen_sets):
                chosen.append(e)
                chosen_sets.append(es)
        return cls(tuple(chosen))


@dataclass(frozen=True)
class ReduceResult:
    """Outcome of a full reduction run: ``verdict`` is ``kernel``, ``yes`` or
    ``no``; ``instance`` is the kernel (or the state when the verdict fell)."""

    verdict: str
    instance: Instance
    trace: ReductionTrace


Observer = Callable[[int, Instance, RuleOutcome], None]

_NOT_APPLIED = RuleOutcome(applied=False)


def vertex_bound(d: int, k: int) -> int:
    """The kernel guarantee: at most ``(2d-2)*k**(d-1) + k`` vertices."""
    return (2 * d - 2) * k ** (d - 1) + k


def _rebuild(
    inst: Instance,
    rule: int,
    new_edges: Iterable[Edge],
    *,
    remove_vertices: frozenset[int] = frozenset(),
    k_delta: int = 0,
) -> RuleOutcome:
    """Assemble the successor instance and its trace step.

    ``new_edges`` is expressed in the current (old) id space; edge deltas are
    measured there, then surviving vertices are compacted to dense ids in an
    order-preserving way.
    """
    h = inst.hypergraph
    old = set(h.edges)
    new = {tuple(sorted(set(e))) for e in new_edges}
    step = TraceStep(
        rule=rule,
        vertices_removed=len(remove_vertices),
        edges_removed=len(old - new),
        edges_added=len(new - old),
        k_delta=k_delta,
    )
    if remove_vertices:
        keep = [v for v in range(h.n) if v not in remove_vertices]
        remap = {v: i for i, v in enumerate(keep)}
        edges = tuple(tuple(sorted(remap[v] for v in e)) for e in new)
        labels = tuple(inst.labels[v] for v in keep) if inst.labels is not None else None
        n = len(keep)
    else:
        edges = tuple(sorted(new))
        labels = inst.labels
        n = h.n
    successor = Instance(
        Hypergraph(n, edges, h.d), inst.k + k_delta, labels=labels, comments=inst.comments
    )
    return RuleOutcome(applied=True, new_instance=successor, step=step)


def rule1_vertex_domination(inst: Instance) -> RuleOutcome:
    """Remove a dominated vertex, shrinking the edges that contained it.

    Vertex ``x`` is dominated by ``y`` when every edge through ``x`` also
    contains ``y``; then ``x`` is never needed in a solution (``y`` covers
    strictly more). ``x`` is deleted from the vertex set and from every edge,
    so edge sizes only shrink and the budget is unchanged. The lexicographic
    lowest ``(x, y)`` pair is applied per call.
    """
    h = inst.hypergraph
    inc = [frozenset(ix) for ix in h.incidence]
    for x in range(h.n):
        ex = inc[x]
        for y in range(h.n):
            if y != x and ex <= inc[y]:
                new_edges = [tuple(v for v in e if v != x) for e in h.edges]
                return _rebuild(inst, 1, new_edges, remove_vertices=frozenset((x,)))
    return _NOT_APPLIED


def rule2_edge_domination(inst: Instance) -> RuleOutcome:
    """Remove one edge that strictly contains another (the superset is
    redundant: hitting the subset hits it too). First superset in canonical
    order is removed."""
    h = inst.hypergraph
    sets = h.edge_sets
    for j, ej in enumerate(sets):
        for i, ei in enumerate(sets):
            if i != j and ei <= ej:
                new_edges = [e for idx, e in enumerate(h.edges) if idx != j]
                return _rebuild(inst, 2, new_edges)
    return _NOT_APPLIED


def rule3_unit_edge(inst: Instance) -> RuleOutcome:
    """Take the forced vertex of a unit edge: remove it plus every edge
    through it and decrement the budget.

    Under the controller's ordering the unit edge is the only edge through
    its vertex (supersets are already gone); deleting all incident edges is
    a safety net, not a semantic change. Lowest unit edge first.
    """
    h = inst.hypergraph
    for e in h.edges:
        if len(e) == 1:
            v = e[0]
            new_edges = [f for f, fs in zip(h.edges, h.edge_sets) if v not in fs]
            return _rebuild(
                inst, 3, new_edges, remove_vertices=frozenset((v,)), k_delta=-1
            )
    return _NOT_APPLIED


def rule4_high_degree_subedge(inst: Instance) -> RuleOutcome:
    """Contract an over-packed (d-2)-subedge into an edge of its own.

    If more than ``k`` hyperedges pairwise intersect in exactly the subedge
    ``e``, any budget-k solution must hit ``e`` itself, so all edges through
    ``e`` collapse to the single new edge ``e``. Extensions of ``e`` have one
    or two vertices; with supersets already removed the packing decomposes as
    singleton count plus a maximum matching over the two-vertex extensions.
    The first triggering subedge in canonical order is applied.
    """
    h = inst.hypergraph
    k = inst.k
    for s in subedges_of(h.edges, h.d - 2):
        s_set = frozenset(s)
        singles: set[int] = set()
        pair_edges: list[tuple[int, int]] = []
        pair_vertices: set[int] = set()
        containing: list[Edge] = []
        for e, es in zip(h.edges, h.edge_sets):
            if s_set <= es:
                containing.append(e)
                ext = tuple(v for v in e if v not in s_set)
                if len(ext) == 1:
                    singles.add(ext[0])
                elif len(ext) == 2:
                    pair_edges.append(ext)
                    pair_vertices.update(ext)
        if len(containing) <= k:
            continue
        local = {v: i for i, v in enumerate(sorted(pair_vertices))}
        graph = SimpleGraph(
            len(local), tuple((local[u], local[v]) for u, v in pair_edges)
        )
        packing = max_extension_packing(singles, graph, stop_above=k)
        if packing > k:
            removed = set(containing)
            new_edges = [e for e in h.edges if e not in removed]
            new_edges.append(s)
            return _rebuild(inst, 4, new_edges)
    return _NOT_APPLIED


def rule5_weakly_related_counting(inst: Instance, last_rule: int | None) -> RuleOutcome:
    """Count subedge occurrences inside a maximal weakly related family.

    A greedy maximal family ``W`` of pairwise weakly related edges (overlap
    at most d-2) is built in canonical order; then for subedge sizes
    ``d-2`` down to ``1``, any subedge contained in more than ``k**(d-1-i)``
    family members forces itself into every budget-k solution: all edges
    through it are deleted and the subedge becomes an edge. The family is
    viewed live (deleted edges leave it; inserted subedges do not join it)
    and the budget never changes.

    The attempt itself counts as an application even when nothing changes,
    which is what gates the controller from running this rule twice in a
    row; ``last_rule == 5`` therefore reports not-applied.
    """
    if last_rule == 5:
        return _NOT_APPLIED
    h = inst.hypergraph
    k = inst.k
    family = set(WeaklyRelatedFamily.greedy(h).edges)
    live = set(h.edges)
    for i in range(h.d - 2, 0, -1):
        threshold = k ** (h.d - 1 - i)
        for s in subedges_of(sorted(family), i):
            s_set = set(s)
            count = sum(1 for f in family if s_set <= set(f))
            if count > threshold:
                hit = {f for f in live if s_set <= set(f)}
                live -= hit
                family -= hit
                live.add(s)
    return _rebuild(inst, 5, live)


def rule6_lp_crown(inst: Instance) -> RuleOutcome:
    """LP-guided crown reduction, the final rule.

    Below the vertex threshold nothing happens: the instance is already a
    kernel. Otherwise the crown LP is solved exactly; its zero vertices and
    their completing subedges feed the bipartite crown finder. A found crown
    is validated and applied (budget unchanged); when no crown exists the
    instance cannot be a yes-instance and the rule concludes no.
    """
    h = inst.hypergraph
    if h.n < vertex_bound(h.d, inst.k) + 1:
        return _NOT_APPLIED
    problem = build_crown_lp(h)
    solution = solve_exact(problem)
    candidates = extract_crown_candidates(h, solution)
    crown = _crown_via_matching(h, sorted(candidates.zeros), sorted(candidates.subedges))
    if crown is None:
        step = TraceStep(rule=6, vertices_removed=0, edges_removed=0, edges_added=0, k_delta=0)
        return RuleOutcome(applied=False, verdict_no=True, step=step, lp_problem=problem)
    verdict = validate_hs_crown(h, crown)
    if not (verdict.valid and verdict.strict and crown.crown):
        raise InternalConsistencyError(
            f"LP crown failed validation: {verdict.problems}"
        )
    removed = crown.crown
    new_edges = [e for e, es in zip(h.edges, h.edge_sets) if not (es & removed)]
    new_edges.extend(crown.head)
    outcome = _rebuild(inst, 6, new_edges, remove_vertices=removed)
    applied = apply_hs_crown(inst, crown)
    if applied != outcome.new_instance:
        raise InternalConsistencyError("crown application disagreed with the rebuild")
    return RuleOutcome(
        applied=True,
        new_instance=outcome.new_instance,
        step=outcome.step,
        crown=crown,
        lp_problem=problem,
    )


def _quick_verdict(inst: Instance) -> str | None:
    if inst.k < 0:
        return "no"
    if any(len(e) == 0 for e in inst.edges):
        return "no"
    if not inst.edges:
        return "yes"
    if inst.k == 0:
        return "no"
    return None


def kernelize(inst: Instance, observer: Observer | None = None) -> ReduceResult:
    """Run the full reduction loop to a kernel or a verdict.

    The returned kernel satisfies ``n <= (2d-2)*k**(d-1) + k`` for its final
    budget. Every pass applies the lowest-numbered applicable rule; rule 5 is
    skipped when it was the most recent rule applied. An explicit iteration
    ceiling of ``2(n+m) + n + 2m + 4`` guards termination.

    ``observer(rule, before, outcome)`` is called for every rule event,
    including no-op rule-5 attempts and rule-6 no-verdicts.
    """
    trace = ReductionTrace()
    current = inst
    last_rule: int | None = None
    ceiling = 3 * inst.n + 4 * inst.m + 4
    applications = 0
    while True:
        verdict = _quick_verdict(current)
        if verdict is not None:
            trace.verdict = verdict
            return ReduceResult(verdict, current, trace)

        outcome = None
        rule_id = 0
        for rule_id, rule in (
            (1, rule1_vertex_domination),
            (2, rule2_edge_domination),
            (3, rule3_unit_edge),
            (4, rule4_high_degree_subedge),
        ):
            attempt = rule(current)
            if attempt.applied:
                outcome = attempt
                break
        if outcome is None and last_rule != 5:
            outcome = rule5_weakly_related_counting(current, last_rule)
            rule_id = 5
        if outcome is None:
            attempt = rule6_lp_crown(current)
            if attempt.verdict_no:
                if observer is not None:
                    observer(6, current, attempt)
                trace.steps.append(attempt.step)
                trace.verdict = "no"
                return ReduceResult("no", current, trace)
            if attempt.applied:
                outcome = attempt
                rule_id = 6

        if outcome is None:
            if current.n > vertex_bound(current.d, current.k):
                raise InternalConsistencyError("exited above the kernel bound")
            return ReduceResult("kernel", current, trace)

        if observer is not None:
            observer(rule_id, current, outcome)
        trace.steps.append(outcome.step)
        current = outcome.new_instance
        last_rule = rule_id
        applications += 1
        if applications > ceiling:
            raise InternalConsistencyError("iteration ceiling exceeded; reduction diverged")
