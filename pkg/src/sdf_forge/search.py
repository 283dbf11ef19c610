"""Maximum independent set search over square-difference circulant graphs.

A set of residues is square-difference free mod m exactly when it is
independent in the circulant graph on Z_m whose connection set D contains
every d such that d or m-d is a nonzero square mod m (symmetrizing captures
both orientations of a difference). The searcher is a branch and bound over
big-integer bitmasks: candidates are pruned with a greedy clique-cover bound
(a cover of the candidate set by c cliques caps any independent subset at c
vertices), and the graph's rotation symmetry lets the root branch fix
vertex 0 without losing the maximum size.

Budgets are counted in search-tree nodes, never wall time, so equal inputs
always reproduce equal outputs.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

from .construct import exponent
from .residue import is_squarefree, squares_mod
from .verify import ResidueSet

# Dense bitmask adjacency costs O(m^2) bits; beyond this cap the builder
# refuses rather than degrade.
GRAPH_MODULUS_CAP = 10**5

# Greedy seeding scans rotations of the natural order; large graphs sample
# at most this many rotations to keep seeding linear-ish.
_MAX_SEED_ROTATIONS = 256


class CapacityError(ValueError):
    """Graph too large for the dense adjacency representation."""


@dataclass(frozen=True)
class SquareCayleyGraph:
    """Circulant graph on Z_m with connection set the symmetrized squares.

    adjacency[v] is a bitmask with bit u set iff (u - v) mod m lies in the
    connection set; every row is row 0 rotated, so the graph is
    vertex-transitive under v -> v + 1.
    """

    m: int
    connection: tuple[int, ...]
    adjacency: tuple[int, ...]

    def degree(self) -> int:
        return len(self.connection)

    def is_independent(self, elements: tuple[int, ...]) -> bool:
        mask = 0
        for v in elements:
            if self.adjacency[v] & mask:
                return False
            mask |= 1 << v
        return True


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a branch-and-bound run on one modulus."""

    m: int
    best_set: ResidueSet
    optimal: bool
    nodes_explored: int
    budget_exhausted: bool


@dataclass(frozen=True)
class RankRow:
    m: int
    size: int | None
    optimal: bool | None
    exponent: float | None
    nodes: int | None
    skipped_reason: str | None


@dataclass(frozen=True)
class RankTable:
    """Moduli ranked by the density exponent their best found set yields."""

    rows: tuple[RankRow, ...]

    def to_csv(self) -> str:
        lines = ["m,size,optimal,exponent,nodes,skipped_reason"]
        for r in self.rows:
            lines.append(
                ",".join(
                    [
                        str(r.m),
                        "" if r.size is None else str(r.size),
                        "" if r.optimal is None else str(r.optimal).lower(),
                        "" if r.exponent is None else f"{r.exponent:.6f}",
                        "" if r.nodes is None else str(r.nodes),
                        r.skipped_reason or "",
                    ]
                )
            )
        return "\n".join(lines) + "\n"


def build_graph(m: int) -> SquareCayleyGraph:
    """Build the square-difference circulant graph on Z_m (2 <= m <= cap)."""
    if m < 2:
        raise ValueError(f"m={m}; need m >= 2")
    if m > GRAPH_MODULUS_CAP:
        raise CapacityError(f"m={m} exceeds dense adjacency cap {GRAPH_MODULUS_CAP}")
    is_sq = squares_mod(m).is_square
    connection = tuple(d for d in range(1, m) if is_sq[d] or is_sq[m - d])
    row0 = 0
    for d in connection:
        row0 |= 1 << d
    full = (1 << m) - 1
    adjacency = tuple(((row0 << v) | (row0 >> (m - v))) & full for v in range(m))
    return SquareCayleyGraph(m=m, connection=connection, adjacency=adjacency)


def greedy_independent(g: SquareCayleyGraph, order: tuple[int, ...]) -> ResidueSet:
    """Maximal independent set from one left-to-right scan of ``order``."""
    if sorted(order) != list(range(g.m)):
        raise ValueError("order must be a permutation of 0..m-1")
    chosen: list[int] = []
    blocked = 0
    for v in order:
        bit = 1 << v
        if blocked & bit:
            continue
        chosen.append(v)
        blocked |= bit | g.adjacency[v]
    return ResidueSet(modulus=g.m, elements=tuple(chosen))


def _greedy_seed(g: SquareCayleyGraph) -> tuple[int, ...]:
    """Best maximal set over rotations of the natural order (deterministic)."""
    m = g.m
    step = max(1, m // _MAX_SEED_ROTATIONS)
    best: tuple[int, ...] = ()
    for r in range(0, m, step):
        order = tuple((r + i) % m for i in range(m))
        candidate = greedy_independent(g, order).elements
        if len(candidate) > len(best):
            best = candidate
    return best


class _BranchAndBound:
    """Tomita-style search state: clique-cover bound, fixed vertex order."""

    def __init__(self, g: SquareCayleyGraph, budget: int):
        self.g = g
        self.budget = budget
        self.nodes = 0
        self.exhausted = False
        m = g.m
        full = (1 << m) - 1
        self.adj = g.adjacency
        self.nonadj = tuple(full & ~(g.adjacency[v] | (1 << v)) for v in range(m))
        seed = _greedy_seed(g)
        self.best_size = len(seed)
        self.best_set = seed
        self.chosen: list[int] = []

    def run(self) -> None:
        # Any maximum independent set can be rotated to contain vertex 0,
        # so the whole search anchors it: one root branch, no exclude case.
        self.chosen = [0]
        self._expand(self.nonadj[0], 1)

    def _cover_order(self, candidates: int) -> tuple[list[int], list[int]]:
        """Greedy clique cover of the candidate mask, ascending vertex index.

        Returns vertices grouped by clique index and the matching running
        bound: for the prefix ending at position i, at most bounds[i]
        pairwise-nonadjacent vertices fit (one per clique).
        """
        adj = self.adj
        clique_members: list[list[int]] = []
        clique_common: list[int] = []  # intersection of adj[u] over the clique
        rest = candidates
        while rest:
            bit = rest & -rest
            v = bit.bit_length() - 1
            rest ^= bit
            for idx, common in enumerate(clique_common):
                if common & bit:
                    clique_members[idx].append(v)
                    clique_common[idx] = common & adj[v]
                    break
            else:
                clique_members.append([v])
                clique_common.append(adj[v])
        order: list[int] = []
        bounds: list[int] = []
        for idx, members in enumerate(clique_members):
            order.extend(members)
            bounds.extend([idx + 1] * len(members))
        return order, bounds

    def _expand(self, candidates: int, size: int) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            self.exhausted = True
            return
        if size > self.best_size:
            self.best_size = size
            self.best_set = tuple(sorted(self.chosen))
        if not candidates:
            return
        order, bounds = self._cover_order(candidates)
        rest = candidates
        for i in range(len(order) - 1, -1, -1):
            if self.exhausted:
                return
            if size + bounds[i] <= self.best_size:
                return
            v = order[i]
            rest &= ~(1 << v)
            self.chosen.append(v)
            self._expand(rest & self.nonadj[v], size + 1)
            self.chosen.pop()


def exact_mis(g: SquareCayleyGraph, budget: int) -> SearchResult:
    """Branch-and-bound maximum independent set search under a node budget.

    The result is optimal iff the tree was exhausted within budget;
    exhausting the budget is a normal outcome and is flagged, with the best
    set found so far returned.
    """
    if budget < 1:
        raise ValueError(f"budget={budget}; need budget >= 1")
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 10 * g.m + 1000))
    bnb = _BranchAndBound(g, budget)
    bnb.run()
    return SearchResult(
        m=g.m,
        best_set=ResidueSet(modulus=g.m, elements=bnb.best_set),
        optimal=not bnb.exhausted,
        nodes_explored=bnb.nodes,
        budget_exhausted=bnb.exhausted,
    )


def rank_moduli(m_lo: int, m_hi: int, budget: int) -> RankTable:
    """Search every squarefree modulus in [m_lo, m_hi] and rank by exponent.

    Non-squarefree moduli are recorded as skipped (the lifting recursion
    needs squarefree m); capacity errors are recorded per row, not fatal.
    Ranked rows are sorted by descending exponent, ties by smaller m;
    skipped rows follow, ordered by m.
    """
    if not (2 <= m_lo <= m_hi <= GRAPH_MODULUS_CAP):
        raise ValueError(f"need 2 <= m_lo <= m_hi <= {GRAPH_MODULUS_CAP}, got [{m_lo}, {m_hi}]")
    ranked: list[RankRow] = []
    skipped: list[RankRow] = []
    for m in range(m_lo, m_hi + 1):
        if not is_squarefree(m):
            skipped.append(RankRow(m, None, None, None, None, "not_squarefree"))
            continue
        try:
            g = build_graph(m)
        except CapacityError as exc:
            skipped.append(RankRow(m, None, None, None, None, f"capacity: {exc}"))
            continue
        result = exact_mis(g, budget)
        size = len(result.best_set)
        ranked.append(
            RankRow(
                m=m,
                size=size,
                optimal=result.optimal,
                exponent=exponent(m, size),
                nodes=result.nodes_explored,
                skipped_reason=None,
            )
        )
    ranked.sort(key=lambda r: (-r.exponent, r.m))
    return RankTable(rows=tuple(ranked + skipped))
