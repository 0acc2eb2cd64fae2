"""Exact linear programming behind the crown-finding reduction.

The model has one variable per vertex, one constraint per hyperedge requiring
``sum(x_v for v in e) >= |e| - 1`` (each edge may leave at most one unit of
load uncovered -- deliberately NOT the hitting-set relaxation, whose right
hand side would be 1), box bounds ``0 <= x <= 1``, and objective
``min sum(x)``. The zero-valued and one-valued vertices of an optimal basic
solution seed the crown search.

Arithmetic is exact rational throughout. Zero/one membership is decided by
exact equality: a floating tolerance would misclassify the candidate sets and
silently break the crown reduction, so no rounding happens anywhere in this
module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Edge, Hypergraph, is_independent
from .errors import InternalConsistencyError

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class LPProblem:
    """One variable per vertex; per-edge constraint ``sum >= |e| - 1``;
    boxes ``[0, 1]``; objective = minimize the sum of all variables.

    ``constraints`` mirrors the source edge set one-to-one, in canonical
    edge order.
    """

    var_count: int
    constraints: tuple[tuple[Edge, int], ...]


@dataclass(frozen=True)
class ExactLPSolution:
    """An optimal basic feasible solution in exact rationals.

    ``basis`` describes the final simplex basis, one entry per tableau row;
    optimality was certified by nonnegative reduced costs at termination.
    """

    values: tuple[Fraction, ...]
    objective: Fraction
    basis: tuple[str, ...]


@dataclass(frozen=True)
class CrownCandidates:
    """LP-highlighted crown material: ``zeros`` are the vertices at exactly 0
    (always independent), ``ones`` the vertices at exactly 1, and
    ``subedges`` the edge remainders ``e - {x}`` over zero vertices ``x``."""

    zeros: frozenset[int]
    ones: frozenset[int]
    subedges: frozenset[Edge]


def build_crown_lp(h: Hypergraph) -> LPProblem:
    """Encode ``h``: one constraint per edge with right-hand side ``|e| - 1``.

    Edges of size one yield the vacuous constraint ``x >= 0`` and are legal;
    they are carried so the constraint list matches the edge set exactly.
    """
    return LPProblem(h.n, tuple((e, len(e) - 1) for e in h.edges))


class SimplexBackend:
    """Dense exact-rational primal simplex with Bland's anti-cycling rule.

    The tableau is built on complemented variables (``y_v = 1 - x_v``), which
    turns every meaningful row into ``sum(y_v for v in e) <= 1``: the
    all-slack basis is then feasible from the start and no artificial
    variables or separate feasibility phase are ever needed. Rows made
    redundant by the boxes (right-hand side <= 0 in the original orientation)
    are dropped; variables in no surviving row get an explicit ``y <= 1``
    row so the box stays active.

    Pivoting is deterministic: lowest-index entering column with a negative
    reduced cost, leaving row by minimum ratio with ties broken on the lowest
    basic variable index. Swap this class behind :func:`solve_exact` to plug
    in a different backend.
    """

    def solve(self, problem: LPProblem) -> ExactLPSolution:
        n = problem.var_count
        kept: list[Edge] = []
        covered: set[int] = set()
        for variables, rhs in problem.constraints:
            cap = len(variables) - rhs
            if cap < 0:
                raise InternalConsistencyError("constraint infeasible on its own row")
            if cap >= len(variables):
                continue  # implied by the boxes once every variable is capped
            if cap != 1:
                raise InternalConsistencyError("unexpected row capacity in crown LP")
            kept.append(tuple(variables))
            covered.update(variables)
        boxed = [v for v in range(n) if v not in covered]
        m = len(kept) + len(boxed)
        width = n + m + 1

        matrix: list[list[Fraction]] = []
        for r, variables in enumerate(kept):
            row = [_ZERO] * width
            for v in variables:
                row[v] = _ONE
            row[n + r] = _ONE
            row[-1] = _ONE
            matrix.append(row)
        for b, v in enumerate(boxed):
            row = [_ZERO] * width
            row[v] = _ONE
            row[n + len(kept) + b] = _ONE
            row[-1] = _ONE
            matrix.append(row)
        basis = [n + i for i in range(m)]
        # Reduced costs for min(-sum y); slack basis has zero cost.
        obj = [-_ONE] * n + [_ZERO] * m + [_ZERO]

        while True:
            enter = next((j for j in range(n + m) if obj[j] < 0), None)
            if enter is None:
                break
            leave = -1
            best_key: tuple[Fraction, int] | None = None
            for i in range(m):
                a = matrix[i][enter]
                if a > 0:
                    key = (matrix[i][-1] / a, basis[i])
                    if best_key is None or key < best_key:
                        best_key = key
                        leave = i
            if leave < 0:
                raise InternalConsistencyError("unbounded pivot in a boxed model")
            self._pivot(matrix, obj, basis, leave, enter)

        y = [_ZERO] * n
        for i, b in enumerate(basis):
            if b < n:
                y[b] = matrix[i][-1]
        values = tuple(_ONE - yv for yv in y)
        names = []
        for b in basis:
            if b < n:
                names.append(f"headroom[{b}]")
            elif b < n + len(kept):
                names.append(f"slack[{b - n}]")
            else:
                names.append(f"cap[{boxed[b - n - len(kept)]}]")
        return ExactLPSolution(values, sum(values, _ZERO), tuple(names))

    @staticmethod
    def _pivot(
        matrix: list[list[Fraction]],
        obj: list[Fraction],
        basis: list[int],
        prow: int,
        pcol: int,
    ) -> None:
        row = matrix[prow]
        piv = row[pcol]
        if piv != 1:
            inv = _ONE / piv
            row = [v * inv if v else v for v in row]
            matrix[prow] = row
        nonzero = [(j, vj) for j, vj in enumerate(row) if vj]
        for target in matrix:
            if target is row:
                continue
            f = target[pcol]
            if f:
                for j, vj in nonzero:
                    target[j] -= f * vj
        f = obj[pcol]
        if f:
            for j, vj in nonzero:
                obj[j] -= f * vj
        basis[prow] = pcol


def solve_exact(problem: LPProblem, backend: SimplexBackend | None = None) -> ExactLPSolution:
    """Solve to optimality in exact rationals and verify the result.

    Infeasibility is impossible by construction (the all-ones point satisfies
    every constraint); any violation detected here is an internal error. The
    per-edge deficit bound and the forcing property (a zero on an edge forces
    every other vertex of that edge to one) are asserted after every solve.
    """
    sol = (backend or SimplexBackend()).solve(problem)
    values = sol.values
    if len(values) != problem.var_count:
        raise InternalConsistencyError("solution length mismatch")
    for v in values:
        if v < 0 or v > 1:
            raise InternalConsistencyError("box bound violated")
    for variables, rhs in problem.constraints:
        total = sum((values[v] for v in variables), _ZERO)
        if total < rhs:
            raise InternalConsistencyError("constraint violated in exact arithmetic")
        deficit = sum((_ONE - values[v] for v in variables), _ZERO)
        if deficit > 1:
            raise InternalConsistencyError("per-edge deficit exceeds one")
        if any(values[v] == 0 for v in variables):
            if any(values[u] != 1 for u in variables if values[u] != 0):
                raise InternalConsistencyError("forcing property violated")
    if sol.objective != sum(values, _ZERO):
        raise InternalConsistencyError("objective does not match the assignment")
    return sol


def extract_crown_candidates(h: Hypergraph, sol: ExactLPSolution) -> CrownCandidates:
    """Split vertices by exact value and collect the candidate head subedges.

    For every edge through a zero vertex the remaining vertices must sit at
    exactly one; that consequence of the constraints is asserted, not assumed.
    A vertex with a fractional value lands in neither set.
    """
    values = sol.values
    zeros = frozenset(v for v in range(h.n) if values[v] == 0)
    ones = frozenset(v for v in range(h.n) if values[v] == 1)
    subedges: set[Edge] = set()
    for e in h.edges:
        for x in e:
            if x in zeros:
                rest = tuple(v for v in e if v != x)
                if any(u not in ones for u in rest):
                    raise InternalConsistencyError(
                        f"edge {e} has a zero vertex but a non-one companion"
                    )
                if rest:
                    subedges.add(rest)
    if not is_independent(h, zeros):
        raise InternalConsistencyError("zero-valued vertices are not independent")
    return CrownCandidates(zeros, ones, frozenset(subedges))


def format_lp(problem: LPProblem) -> str:
    """Human-readable listing of the model, one constraint per line."""
    lines = [f"minimize x[0] + ... + x[{problem.var_count - 1}]"]
    for variables, rhs in problem.constraints:
        terms = " + ".join(f"x[{v}]" for v in variables) or "0"
        lines.append(f"  {terms} >= {rhs}")
    lines.append(f"  0 <= x[v] <= 1 for all {problem.var_count} variables")
    return "\n".join(lines)
