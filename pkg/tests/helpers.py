"""Shared test oracles and instance families.

Everything here is deliberately independent of the implementation paths it
checks: matchings are maximized by exhaustive recursion, LPs by enumerating
polytope vertices from active-constraint patterns, hitting sets by subset
enumeration. Structured instance families exercise the crown rule, which
organic uniform-random instances rarely reach.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from hskernel.core import Edge, Hypergraph, Instance
from hskernel.lp import LPProblem
from hskernel.matching import BipartiteGraph
from hskernel.reductions import vertex_bound


# ---------------------------------------------------------------------------
# independent oracles


def exhaustive_min_hitting_set(h: Hypergraph) -> int | None:
    """Minimum hitting-set size by enumerating all vertex subsets; None if
    unhittable (empty edge present)."""
    if any(len(e) == 0 for e in h.edges):
        return None
    for size in range(h.n + 1):
        for subset in combinations(range(h.n), size):
            s = set(subset)
            if all(s & set(e) for e in h.edges):
                return size
    raise AssertionError("unreachable")


def exhaustive_decide(h: Hypergraph, k: int) -> bool:
    if k < 0:
        return False
    minimum = exhaustive_min_hitting_set(h)
    return minimum is not None and minimum <= k


def exhaustive_max_matching(edges: list[tuple[int, int]]) -> int:
    """Maximum matching size by take/skip recursion over the edge list,
    pruned with the trivial remaining-edges bound."""
    best = 0

    def explore(rest: list[tuple[int, int]], current: int) -> None:
        nonlocal best
        if current > best:
            best = current
        if not rest or current + len(rest) <= best:
            return
        (u, v), tail = rest[0], rest[1:]
        explore([e for e in tail if u not in e and v not in e], current + 1)
        explore(tail, current)

    explore(list(edges), 0)
    return best


def bipartite_augmenting_path_exists(g: BipartiteGraph, pairs) -> bool:
    """Alternating BFS from free left vertices to a free right vertex."""
    match_a = {a: b for a, b in pairs}
    match_b = {b: a for a, b in pairs}
    frontier = [a for a in range(g.side_a) if a not in match_a]
    seen_a = set(frontier)
    seen_b: set[int] = set()
    while frontier:
        nxt = []
        for a in frontier:
            for b in g.adjacency[a]:
                if b in seen_b:
                    continue
                seen_b.add(b)
                if b not in match_b:
                    return True
                mate = match_b[b]
                if mate not in seen_a:
                    seen_a.add(mate)
                    nxt.append(mate)
        frontier = nxt
    return False


def polytope_min_objective(problem: LPProblem) -> Fraction:
    """Exact minimum of the crown LP by brute-force vertex enumeration.

    Every basic feasible solution fixes each variable to 0, 1, or leaves it
    free, with the free ones determined by a square subsystem of tight edge
    constraints. All such candidate points are solved exactly and filtered
    for feasibility; the minimum objective over them is the LP optimum.
    """
    n = problem.var_count
    cons = [(list(vs), Fraction(rhs)) for vs, rhs in problem.constraints]
    best: Fraction | None = None

    def feasible(x: list[Fraction]) -> bool:
        if any(v < 0 or v > 1 for v in x):
            return False
        return all(sum((x[v] for v in vs), Fraction(0)) >= rhs for vs, rhs in cons)

    def consider(x: list[Fraction]) -> None:
        nonlocal best
        if feasible(x):
            total = sum(x, Fraction(0))
            if best is None or total < best:
                best = total

    for pattern in range(3**n):
        fixed: dict[int, Fraction] = {}
        free: list[int] = []
        p = pattern
        for v in range(n):
            code = p % 3
            p //= 3
            if code == 0:
                fixed[v] = Fraction(0)
            elif code == 1:
                fixed[v] = Fraction(1)
            else:
                free.append(v)
        if not free:
            consider([fixed[v] for v in range(n)])
            continue
        pos = {v: i for i, v in enumerate(free)}
        for chosen in combinations(range(len(cons)), len(free)):
            rows = []
            rhs = []
            for ci in chosen:
                vs, b = cons[ci]
                row = [Fraction(0)] * len(free)
                adjusted = b
                for v in vs:
                    if v in pos:
                        row[pos[v]] = Fraction(1)
                    else:
                        adjusted -= fixed[v]
                rows.append(row)
                rhs.append(adjusted)
            sol = _solve_square(rows, rhs)
            if sol is None:
                continue
            x = [Fraction(0)] * n
            for v in range(n):
                x[v] = sol[pos[v]] if v in pos else fixed[v]
            consider(x)
    assert best is not None, "the all-ones point is always feasible"
    return best


def _solve_square(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Gaussian elimination; None when singular."""
    size = len(rows)
    a = [row[:] + [b] for row, b in zip(rows, rhs)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if a[r][col] != 0), None)
        if pivot is None:
            return None
        a[col], a[pivot] = a[pivot], a[col]
        inv = Fraction(1) / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(size):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [vr - f * vc for vr, vc in zip(a[r], a[col])]
    return [a[r][size] for r in range(size)]


def naive_incident_edges(h: Hypergraph, subedge) -> set[Edge]:
    s = set(subedge)
    return {e for e in h.edges if s <= set(e)}


def naive_is_independent(h: Hypergraph, vertices) -> bool:
    x = set(vertices)
    return not any(len(set(e) & x) >= 2 for e in h.edges)


# ---------------------------------------------------------------------------
# structured instance families (reach the crown rule reliably)


def petal_cycle_instance(seed: int, k: int) -> Instance:
    """Yes-instance above the crown threshold on which no earlier rule fires.

    A cycle of 2k core vertices provides the head pairs; each petal vertex
    joins two vertex-disjoint pairs, so no vertex dominates another, no edge
    contains another, packings stay at most k, and family counts stay at
    most k. An alternating core cover of size k hits everything. Needs
    k >= 2: a two-vertex core has no disjoint pairs.
    """
    if k < 2:
        raise ValueError("petal-cycle construction needs k >= 2")
    rng = random.Random(seed)
    core = 2 * k
    t = vertex_bound(3, k) + 1 - core + rng.randint(0, 6)
    pairs = [(i, (i + 1) % core) for i in range(core)]
    edges = []
    for j in range(t):
        v = core + j
        p = j % core if j < core else rng.randrange(core)
        choices = [q for q in range(core) if q != p and not (set(pairs[q]) & set(pairs[p]))]
        q = rng.choice(choices)
        edges.append(tuple(sorted((*pairs[p], v))))
        edges.append(tuple(sorted((*pairs[q], v))))
    return Instance(Hypergraph(core + t, tuple(edges), 3), k)


def blob_instance(seed: int, k: int) -> Instance:
    """No-instance above the crown threshold with a fully fractional optimum.

    Disjoint 4-cliques of triples need two hits each, so b blobs cost 2b > k;
    the LP settles at two-thirds everywhere, leaving no zero vertices and no
    crown, which is exactly the no-verdict path of the final rule.
    """
    rng = random.Random(seed)
    blobs = max(2, -(-(vertex_bound(3, k) + 1) // 4)) + rng.randint(0, 2)
    edges = []
    for i in range(blobs):
        base = 4 * i
        edges.extend(combinations(range(base, base + 4), 3))
    return Instance(Hypergraph(4 * blobs, tuple(edges), 3), k)


def mixed_crown_instance(seed: int, k: int) -> Instance:
    """Petal-cycle plus a disjoint blob: the crown fires, the verdict is no."""
    petal = petal_cycle_instance(seed, k)
    offset = petal.n
    blob_edges = [
        tuple(v + offset for v in e) for e in combinations(range(4), 3)
    ]
    edges = petal.edges + tuple(blob_edges)
    return Instance(Hypergraph(offset + 4, edges, 3), k)


def blob4_instance(seed: int, k: int) -> Instance:
    """d=4 no-instance above the crown threshold: disjoint 5-cliques of
    quadruples, fractional optimum three-quarters everywhere."""
    rng = random.Random(seed)
    blobs = max(2, -(-(vertex_bound(4, k) + 1) // 5)) + rng.randint(0, 1)
    edges = []
    for i in range(blobs):
        base = 5 * i
        edges.extend(combinations(range(base, base + 5), 4))
    return Instance(Hypergraph(5 * blobs, tuple(edges), 4), k)


def double_star_instance(seed: int, k: int) -> Instance:
    """d=4 family where the weakly-related counting rule genuinely fires.

    Two hub vertices each sit in s > k*k size-4 edges that pairwise meet only
    at the hub; partner vertices are shared between the stars with shifted
    alignment so nothing is dominated and no 2-subedge packing exceeds k.
    """
    rng = random.Random(seed)
    s = k * k + 1 + rng.randint(0, 2)
    edges = []
    for i in range(s):
        a, b, c = 2 + 3 * i, 3 + 3 * i, 4 + 3 * i
        edges.append(tuple(sorted((0, a, b, c))))
    for i in range(s):
        a = 2 + 3 * i
        b = 3 + 3 * ((i + 1) % s)
        c = 4 + 3 * ((i + 2) % s)
        edges.append(tuple(sorted((1, a, b, c))))
    return Instance(Hypergraph(2 + 3 * s, tuple(edges), 4), k)


def petersen_edges() -> list[tuple[int, int]]:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return outer + spokes + inner
