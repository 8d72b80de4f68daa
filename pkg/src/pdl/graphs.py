"""Exact solvers on small graphs stored as adjacency bitsets.

A graph is a list ``adj`` where bit ``j`` of ``adj[i]`` is set iff i ~ j.
No self loops.  Vertex order is fixed by index so results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .poset import bits, popcount


def complement(adj: list[int]) -> list[int]:
    n = len(adj)
    full = (1 << n) - 1
    return [full & ~adj[i] & ~(1 << i) for i in range(n)]


def is_independent(adj: list[int], mask: int) -> bool:
    return all(not (adj[v] & mask) for v in bits(mask))


def is_clique(adj: list[int], mask: int) -> bool:
    return all((adj[v] | (1 << v)) & mask == mask for v in bits(mask))


def greedy_clique_cover(adj: list[int], cand: int) -> list[int]:
    """Partition ``cand`` into cliques greedily (lowest index first)."""
    cliques = []
    while cand:
        v = (cand & -cand).bit_length() - 1
        clique = 1 << v
        ext = cand & adj[v]
        while ext:
            u = (ext & -ext).bit_length() - 1
            clique |= 1 << u
            ext &= adj[u]
        cliques.append(clique)
        cand &= ~clique
    return cliques


@dataclass
class SolveStats:
    nodes: int = 0


def max_independent_set(adj: list[int], stats: SolveStats | None = None) -> int:
    """Maximum independent set as a bitmask.

    Branch and bound: vertices of degree <= 1 are taken outright, the bound is
    a greedy clique cover of the candidates, branching is on a maximum-degree
    vertex (lowest index on ties).
    """
    if stats is None:
        stats = SolveStats()
    n = len(adj)
    best = [0, 0]
    # warm start: greedy by minimum degree
    cand, chosen = (1 << n) - 1, 0
    while cand:
        v = min(bits(cand), key=lambda u: (popcount(adj[u] & cand), u))
        chosen |= 1 << v
        cand &= ~adj[v] & ~(1 << v)
    best[:] = [popcount(chosen), chosen]

    def go(cand: int, chosen: int, size: int) -> None:
        stats.nodes += 1
        while True:
            forced = 0
            for v in bits(cand):
                if popcount(adj[v] & cand) <= 1:
                    forced = 1 << v
                    break
            if not forced:
                break
            v = forced.bit_length() - 1
            chosen |= forced
            size += 1
            cand &= ~adj[v] & ~forced
        if not cand:
            if size > best[0]:
                best[:] = [size, chosen]
            return
        if size + len(greedy_clique_cover(adj, cand)) <= best[0]:
            return
        v = max(bits(cand), key=lambda u: (popcount(adj[u] & cand), -u))
        go(cand & ~adj[v] & ~(1 << v), chosen | (1 << v), size + 1)
        go(cand & ~(1 << v), chosen, size)

    go((1 << n) - 1, 0, 0)
    return best[1]


def max_clique(adj: list[int], stats: SolveStats | None = None) -> int:
    return max_independent_set(complement(adj), stats)


def min_coloring(adj: list[int], lower: int = 0, initial: list[int] | None = None,
                 stats: SolveStats | None = None) -> list[int]:
    """Minimum proper colouring as a list of colour-class bitmasks.

    DSATUR branch and bound.  ``initial`` is a known colouring used as the
    incumbent; the search stops as soon as it matches ``lower``.
    """
    if stats is None:
        stats = SolveStats()
    n = len(adj)
    if n == 0:
        return []
    if initial is None:
        initial = _dsatur_greedy(adj)
    best = [len(initial), list(initial)]
    if best[0] <= lower:
        return best[1]
    classes: list[int] = []
    degree = [popcount(a) for a in adj]

    def go(uncolored: int) -> bool:
        stats.nodes += 1
        if not uncolored:
            best[:] = [len(classes), list(classes)]
            return best[0] <= lower
        # DSATUR choice: most blocked colours, then largest degree, then index
        pick, pick_key, pick_free = -1, None, None
        for v in bits(uncolored):
            free = [c for c, cls in enumerate(classes) if not (cls & adj[v])]
            key = (len(classes) - len(free), degree[v], -v)
            if pick_key is None or key > pick_key:
                pick, pick_key, pick_free = v, key, free
            if not free and len(classes) + 1 >= best[0]:
                return False
        v = pick
        bit = 1 << v
        for c in pick_free:
            classes[c] |= bit
            if go(uncolored & ~bit):
                return True
            classes[c] &= ~bit
        if len(classes) + 1 < best[0]:
            classes.append(bit)
            if go(uncolored & ~bit):
                return True
            classes.pop()
        return False

    go((1 << n) - 1)
    return best[1]


def _dsatur_greedy(adj: list[int]) -> list[int]:
    n = len(adj)
    classes: list[int] = []
    uncolored = (1 << n) - 1
    while uncolored:
        v = max(bits(uncolored), key=lambda u: (
            sum(1 for cls in classes if cls & adj[u]), popcount(adj[u]), -u))
        for c, cls in enumerate(classes):
            if not (cls & adj[v]):
                classes[c] |= 1 << v
                break
        else:
            classes.append(1 << v)
        uncolored &= ~(1 << v)
    return classes


def min_clique_cover(adj: list[int], lower: int = 0, initial: list[int] | None = None,
                     stats: SolveStats | None = None) -> list[int]:
    """Minimum partition into cliques, i.e. a minimum colouring of the complement."""
    return min_coloring(complement(adj), lower, initial, stats)
