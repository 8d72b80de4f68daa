"""Finite posets on dense integer labels, stored as bitset rows.

Element ``i`` is represented by bit ``1 << i``.  ``down[i]`` holds the set of
elements strictly below ``i`` and ``up[i]`` the set strictly above it; both are
transitively closed.  Every function here is pure; a :class:`Poset` is never
mutated after construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Sequence

from .errors import CycleDetected, EmptyLevel, IndexOutOfRange, ParseError

MAX_ELEMENTS = 64


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Poset:
    n: int
    down: tuple[int, ...]
    up: tuple[int, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if len(self.down) != self.n or len(self.up) != self.n:
            raise ValueError("row count does not match n")
        for i in range(self.n):
            if (self.down[i] >> i) & 1:
                raise CycleDetected(f"element {i} is below itself")
            for j in bits(self.down[i]):
                if not (self.up[j] >> i) & 1:
                    raise ValueError("down/up rows disagree")
                if self.down[j] & ~self.down[i]:
                    raise ValueError("relation is not transitive")
            if popcount(self.up[i]) != sum(1 for j in range(self.n) if (self.down[j] >> i) & 1):
                raise ValueError("down/up rows disagree")

    # -- basic queries -------------------------------------------------------

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def lt(self, i: int, j: int) -> bool:
        return bool((self.down[j] >> i) & 1)

    def comparable(self, i: int, j: int) -> bool:
        return self.lt(i, j) or self.lt(j, i)

    def comp(self, i: int) -> int:
        """Mask of elements comparable to ``i`` (excluding ``i``)."""
        return self.down[i] | self.up[i]

    @property
    def matrix(self) -> list[list[bool]]:
        return [[self.lt(i, j) for j in range(self.n)] for i in range(self.n)]

    def relations(self) -> list[tuple[int, int]]:
        return [(i, j) for j in range(self.n) for i in bits(self.down[j])]

    def covers(self) -> list[tuple[int, int]]:
        """Pairs of the transitive reduction (the Hasse diagram)."""
        out = []
        for j in range(self.n):
            below = self.down[j]
            redundant = 0
            for i in bits(below):
                redundant |= self.down[i]
            for i in bits(below & ~redundant):
                out.append((i, j))
        return sorted(out)

    def is_chain(self, mask: int) -> bool:
        return all((self.comp(i) | (1 << i)) & mask == mask for i in bits(mask))

    def is_antichain(self, mask: int) -> bool:
        return all(not (self.comp(i) & mask) for i in bits(mask))

    def linear_extension(self) -> list[int]:
        """A linear extension; ties are broken by lowest index."""
        order = []
        placed = 0
        remaining = self.full
        while remaining:
            for i in bits(remaining):
                if self.down[i] & ~placed == 0:
                    order.append(i)
                    placed |= 1 << i
                    remaining &= ~(1 << i)
                    break
        return order

    def induced(self, elements: Sequence[int]) -> Poset:
        """Subposet on ``elements``; element ``elements[k]`` becomes ``k``."""
        index = {e: k for k, e in enumerate(elements)}
        rel = [(index[i], index[j]) for i in elements for j in elements if self.lt(i, j)]
        return from_relations(len(elements), rel)

    def relabel(self, perm: Sequence[int], name: str | None = None) -> Poset:
        """Poset in which old element ``i`` is called ``perm[i]``."""
        rel = [(perm[i], perm[j]) for i, j in self.relations()]
        return from_relations(self.n, rel, self.name if name is None else name)

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"Poset{label}(n={self.n}, covers={self.covers()})"


# -- constructors ------------------------------------------------------------


def from_relations(n: int, pairs: Iterable[tuple[int, int]], name: str = "") -> Poset:
    """Transitive closure of ``pairs`` (i below j); rejects cycles."""
    if n < 0 or n > MAX_ELEMENTS:
        raise IndexOutOfRange(f"element count {n} outside 0..{MAX_ELEMENTS}")
    down = [0] * n
    for i, j in pairs:
        if not (0 <= i < n and 0 <= j < n):
            raise IndexOutOfRange(f"pair ({i}, {j}) outside 0..{n - 1}")
        if i == j:
            raise CycleDetected(f"loop on element {i}")
        down[j] |= 1 << i
    # Warshall on bitsets
    for k in range(n):
        bk = 1 << k
        dk = down[k]
        for j in range(n):
            if down[j] & bk:
                down[j] |= dk
    for i in range(n):
        if (down[i] >> i) & 1:
            raise CycleDetected(f"relation has a cycle through element {i}")
    up = [0] * n
    for j in range(n):
        for i in bits(down[j]):
            up[i] |= 1 << j
    return Poset(n, tuple(down), tuple(up), name)


def poset_from_covers(n: int, covers: Iterable[tuple[int, int]], name: str = "") -> Poset:
    return from_relations(n, covers, name)


def chain(n: int) -> Poset:
    return from_relations(n, [(i, i + 1) for i in range(n - 1)], f"chain:{n}")


def antichain(n: int) -> Poset:
    return from_relations(n, [], f"antichain:{n}")


def series(p: Poset, q: Poset) -> Poset:
    """Every element of ``p`` below every element of ``q``; q is shifted by |p|."""
    rel = p.relations() + [(p.n + i, p.n + j) for i, j in q.relations()]
    rel += [(i, p.n + j) for i in range(p.n) for j in range(q.n)]
    return from_relations(p.n + q.n, rel)


def parallel(p: Poset, q: Poset) -> Poset:
    rel = p.relations() + [(p.n + i, p.n + j) for i, j in q.relations()]
    return from_relations(p.n + q.n, rel)


def weak_order(level_sizes: Sequence[int]) -> Poset:
    """Ranking with the given level sizes, listed bottom-up."""
    if any(s < 1 for s in level_sizes):
        raise EmptyLevel("weak order levels must be non-empty")
    p = antichain(0)
    for s in level_sizes:
        p = series(p, antichain(s))
    return Poset(p.n, p.down, p.up, "weak:" + ",".join(map(str, level_sizes)))


def boolean_lattice(k: int) -> Poset:
    """Subsets of a k-set ordered by inclusion; element index = subset bitmask."""
    n = 1 << k
    rel = [(a, a | (1 << t)) for a in range(n) for t in range(k) if not (a >> t) & 1]
    return from_relations(n, rel, f"boolean:{k}")


def dual(p: Poset) -> Poset:
    return Poset(p.n, p.up, p.down, p.name + "^d" if p.name else "")


def is_weak_order(p: Poset) -> tuple[bool, list[int]]:
    """Whether incomparability is transitive; level sizes bottom-up when it is."""
    levels = min_antichain_partition(p)
    sizes = [len(level) for level in levels]
    for a, lower in enumerate(levels):
        for upper in levels[a + 1:]:
            for i in lower:
                for j in upper:
                    if not p.lt(i, j):
                        return False, []
    return True, sizes


# -- chains and antichains ---------------------------------------------------


def height(p: Poset) -> int:
    return len(min_antichain_partition(p))


def longest_chain_below(p: Poset) -> list[int]:
    """Size of the longest chain ending at each element (Mirsky level, 1-based)."""
    level = [0] * p.n
    for i in p.linear_extension():
        level[i] = 1 + max((level[j] for j in bits(p.down[i])), default=0)
    return level


def min_antichain_partition(p: Poset) -> list[list[int]]:
    """Mirsky layering: level k holds elements whose longest chain below has size k."""
    level = longest_chain_below(p)
    h = max(level, default=0)
    return [[i for i in range(p.n) if level[i] == k] for k in range(1, h + 1)]


def _bipartite_matching(p: Poset) -> list[int]:
    """Maximum matching in the split comparability graph (i -> j for i < j).

    Returns ``succ`` with ``succ[i]`` the matched successor of ``i`` or -1.
    """
    succ = [-1] * p.n
    pred = [-1] * p.n

    def augment(i: int, seen: list[bool]) -> bool:
        for j in bits(p.up[i]):
            if seen[j]:
                continue
            seen[j] = True
            if pred[j] == -1 or augment(pred[j], seen):
                succ[i] = j
                pred[j] = i
                return True
        return False

    for i in range(p.n):
        augment(i, [False] * p.n)
    return succ


def min_chain_partition(p: Poset) -> list[list[int]]:
    """Dilworth chain partition with exactly width(p) chains."""
    succ = _bipartite_matching(p)
    has_pred = set(j for j in succ if j != -1)
    chains = []
    for i in range(p.n):
        if i in has_pred:
            continue
        c = [i]
        while succ[c[-1]] != -1:
            c.append(succ[c[-1]])
        chains.append(c)
    chains.sort(key=lambda c: (-len(c), c))
    return chains


def max_antichain_search(p: Poset, within: int | None = None) -> int:
    """Largest antichain inside ``within`` by direct branching (independent of matching)."""
    if within is None:
        within = p.full
    best = 0

    def go(cand: int, size: int) -> None:
        nonlocal best
        if size + popcount(cand) <= best:
            return
        if not cand:
            best = max(best, size)
            return
        v = (cand & -cand).bit_length() - 1
        go(cand & ~(1 << v) & ~p.comp(v), size + 1)
        go(cand & ~(1 << v), size)

    go(within, 0)
    return best


def width(p: Poset) -> int:
    w = len(min_chain_partition(p))
    if p.n <= 15:
        assert w == max_antichain_search(p), "Dilworth equality failed"
    return w


def max_antichain(p: Poset) -> list[int]:
    """A maximum antichain (via König from the Dilworth matching)."""
    succ = _bipartite_matching(p)
    pred = [-1] * p.n
    for i, j in enumerate(succ):
        if j != -1:
            pred[j] = i
    # alternating reachability from unmatched left vertices
    left_seen = [False] * p.n
    right_seen = [False] * p.n
    stack = [i for i in range(p.n) if succ[i] == -1]
    for i in stack:
        left_seen[i] = True
    while stack:
        i = stack.pop()
        for j in bits(p.up[i]):
            if not right_seen[j]:
                right_seen[j] = True
                k = pred[j]
                if k != -1 and not left_seen[k]:
                    left_seen[k] = True
                    stack.append(k)
    # vertex cover = (left not reached) + (right reached); antichain = elements in neither
    return [i for i in range(p.n) if left_seen[i] and not right_seen[i]]


# -- canonical form -----------------------------------------------------------


def _refine(p: Poset, cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement of an ordered partition; split order is label-free."""
    while True:
        cell_of = [0] * p.n
        masks = []
        for c, cell in enumerate(cells):
            m = 0
            for e in cell:
                cell_of[e] = c
                m |= 1 << e
            masks.append(m)
        new_cells: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            groups: dict[tuple, list[int]] = {}
            for e in cell:
                d, u = p.down[e], p.up[e]
                sig = tuple((popcount(d & m), popcount(u & m)) for m in masks)
                groups.setdefault(sig, []).append(e)
            if len(groups) > 1:
                changed = True
            for sig in sorted(groups):
                new_cells.append(groups[sig])
        cells = new_cells
        if not changed:
            return cells


def _certificate(p: Poset, order: list[int]) -> bytes:
    pos = [0] * p.n
    for k, e in enumerate(order):
        pos[e] = k
    rows = []
    for e in order:
        r = 0
        for i in bits(p.down[e]):
            r |= 1 << pos[i]
        rows.append(r)
    nbytes = (p.n + 7) // 8
    return bytes([p.n]) + b"".join(r.to_bytes(nbytes, "little") for r in rows)


def canonical_labeling(p: Poset) -> tuple[bytes, list[int]]:
    """Canonical certificate and the element order that produces it.

    Individualisation-refinement: refine by counts of up/down neighbours per
    cell, then branch on the first non-singleton cell.  Twins (equal up and
    down sets) are interchangeable, so only one per twin class is tried.
    """
    if p.n == 0:
        return bytes([0]), []
    start = [[e for e in range(p.n)]]
    best: list = [None, None]

    def search(cells: list[list[int]]) -> None:
        cells = _refine(p, cells)
        for c, cell in enumerate(cells):
            if len(cell) > 1:
                break
        else:
            order = [cell[0] for cell in cells]
            cert = _certificate(p, order)
            if best[0] is None or cert < best[0]:
                best[0], best[1] = cert, order
            return
        seen = set()
        for v in cell:
            twin = (p.down[v], p.up[v])
            if twin in seen:
                continue
            seen.add(twin)
            rest = [e for e in cell if e != v]
            search(cells[:c] + [[v], rest] + cells[c + 1:])

    search(start)
    return best[0], best[1]


def canonical_form(p: Poset) -> bytes:
    return canonical_labeling(p)[0]


def canonical_poset(p: Poset) -> Poset:
    """Relabelling of ``p`` whose element order is the canonical one."""
    _, order = canonical_labeling(p)
    perm = [0] * p.n
    for k, e in enumerate(order):
        perm[e] = k
    return p.relabel(perm)


def find_isomorphism(p: Poset, q: Poset) -> list[int] | None:
    """Brute-force isomorphism search (used to check the canonical form)."""
    if p.n != q.n or len(p.relations()) != len(q.relations()):
        return None
    target = set(q.relations())
    rel = p.relations()
    for perm in permutations(range(p.n)):
        if all((perm[i], perm[j]) in target for i, j in rel):
            return list(perm)
    return None


# -- text format --------------------------------------------------------------


def parse_posets(text: str) -> list[Poset]:
    """Parse one or more ``poset ... end`` blocks."""
    out = []
    name = None
    n = None
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        key, args = line[0], line[1:]
        try:
            if key == "poset":
                if name is not None:
                    raise ParseError(f"line {lineno}: nested poset block")
                name, n, pairs = " ".join(args), None, []
            elif name is None:
                raise ParseError(f"line {lineno}: {key!r} outside a poset block")
            elif key == "elements":
                (n,) = (int(a) for a in args)
            elif key == "cover":
                i, j = (int(a) for a in args)
                pairs.append((i, j))
            elif key == "end":
                if n is None:
                    raise ParseError(f"line {lineno}: block has no 'elements' line")
                out.append(from_relations(n, pairs, name))
                name = None
            else:
                raise ParseError(f"line {lineno}: unknown keyword {key!r}")
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if name is not None:
        raise ParseError("unterminated poset block")
    return out


def parse_poset(text: str) -> Poset:
    posets = parse_posets(text)
    if len(posets) != 1:
        raise ParseError(f"expected one poset, found {len(posets)}")
    return posets[0]


def format_poset(p: Poset) -> str:
    lines = [f"poset {p.name or 'P'}", f"elements {p.n}"]
    lines += [f"cover {i} {j}" for i, j in p.covers()]
    lines.append("end")
    return "\n".join(lines) + "\n"
