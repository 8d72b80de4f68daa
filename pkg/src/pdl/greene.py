"""Greene-Kleitman invariants, Greene diagrams and decomposability witnesses."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    InternalInconsistency,
    KindMismatch,
    PreconditionViolated,
    SearchBudgetExceeded,
)
from .poset import (
    Poset,
    bits,
    height,
    longest_chain_below,
    mask_of,
    max_antichain_search,
    min_chain_partition,
    parallel,
    popcount,
    series,
    width,
)

DEFAULT_BUDGET = 10**7


# -- partitions ---------------------------------------------------------------


def conjugate(parts) -> tuple[int, ...]:
    """Ferrers transpose of a weakly decreasing sequence of positive parts."""
    parts = list(parts)
    if any(a < b for a, b in zip(parts, parts[1:])) or any(x < 1 for x in parts):
        raise ValueError(f"not a partition: {parts}")
    if not parts:
        return ()
    return tuple(sum(1 for x in parts if x > i) for i in range(parts[0]))


def prefix(parts, k: int) -> int:
    """Sum of the first ``k`` parts (all of them if k exceeds the length)."""
    return sum(parts[:k])


@dataclass(frozen=True)
class GreeneDiagram:
    lam: tuple[int, ...]
    mu: tuple[int, ...]
    n: int

    def __post_init__(self):
        if conjugate(self.lam) != self.mu or sum(self.lam) != self.n:
            raise InternalInconsistency(f"lambda={self.lam} and mu={self.mu} are not conjugate")

    @property
    def width(self) -> int:
        return len(self.lam)

    @property
    def height(self) -> int:
        return len(self.mu)

    def c(self, k: int) -> int:
        return prefix(self.lam, k)

    def d(self, k: int) -> int:
        return prefix(self.mu, k)

    @classmethod
    def from_lambda(cls, lam) -> GreeneDiagram:
        lam = tuple(lam)
        return cls(lam, conjugate(lam), sum(lam))

    def to_json(self) -> dict:
        return {"lambda": list(self.lam), "mu": list(self.mu), "n": self.n}

    def ferrers(self) -> str:
        """ASCII Ferrers grid, one row per part of lambda."""
        return "\n".join("#" * x for x in self.lam)


# -- k-antichains and k-chains --------------------------------------------------


def _height_of(p: Poset, mask: int) -> int:
    lvl = {}
    for e in p.linear_extension():
        if (mask >> e) & 1:
            lvl[e] = 1 + max((lvl[j] for j in bits(p.down[e] & mask)), default=0)
    return max(lvl.values(), default=0)


def max_k_antichain(p: Poset, k: int) -> tuple[int, int]:
    """Largest subset containing no chain of k+1 elements, as (size, mask).

    Branch and bound over a linear extension.  An element may join when the
    longest chosen chain ending at it stays within ``k``.  The bound charges
    each chain of a Dilworth partition at most ``k`` elements.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0 or p.n == 0:
        return 0, 0
    if k >= height(p):
        return p.n, p.full
    order = p.linear_extension()
    chains = min_chain_partition(p)
    chain_of = [0] * p.n
    for ci, c in enumerate(chains):
        for e in c:
            chain_of[e] = ci
    left = [len(c) for c in chains]
    room = [k] * len(chains)
    endlen = [0] * p.n
    best = [0, 0]
    root_bound = sum(min(k, len(c)) for c in chains)

    def go(t: int, chosen: int, size: int) -> bool:
        if size > best[0]:
            best[0], best[1] = size, chosen
            if size == root_bound:
                return True
        if t == len(order):
            return False
        if size + sum(min(r, x) for r, x in zip(room, left)) <= best[0]:
            return False
        e = order[t]
        ci = chain_of[e]
        left[ci] -= 1
        done = False
        below = p.down[e] & chosen
        length = 1 + max((endlen[j] for j in bits(below)), default=0)
        if length <= k and room[ci] > 0:
            endlen[e] = length
            room[ci] -= 1
            done = go(t + 1, chosen | (1 << e), size + 1)
            room[ci] += 1
        if not done:
            done = go(t + 1, chosen, size)
        left[ci] += 1
        return done

    go(0, 0, 0)
    return best[0], best[1]


def max_k_chain(p: Poset, k: int) -> tuple[int, list[list[int]]]:
    """Largest union of ``k`` disjoint chains, as (size, chains).

    Exact dynamic programme over a linear extension whose state is the
    multiset of current chain tops.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0 or p.n == 0:
        return 0, []
    order = p.linear_extension()
    m = len(order)

    @lru_cache(maxsize=None)
    def f(t: int, tails: tuple[int, ...]) -> int:
        if t == m:
            return 0
        e = order[t]
        best = f(t + 1, tails)
        tried = set()
        for idx, top in enumerate(tails):
            if top in tried or not (top == -1 or p.lt(top, e)):
                continue
            tried.add(top)
            nt = tuple(sorted(tails[:idx] + (e,) + tails[idx + 1:]))
            best = max(best, 1 + f(t + 1, nt))
        return best

    start = tuple([-1] * k)
    total = f(0, start)
    # reconstruct the chains by replaying the optimal choices
    tails = start
    chains: dict[int, list[int]] = {}
    for t in range(m):
        e = order[t]
        target = f(t, tails)
        if f(t + 1, tails) == target:
            continue
        for idx, top in enumerate(tails):
            if not (top == -1 or p.lt(top, e)):
                continue
            nt = tuple(sorted(tails[:idx] + (e,) + tails[idx + 1:]))
            if 1 + f(t + 1, nt) == target:
                chains[e] = chains.pop(top, []) + [e] if top != -1 else [e]
                tails = nt
                break
    f.cache_clear()
    out = sorted(chains.values(), key=lambda c: (-len(c), c))
    assert sum(map(len, out)) == total
    return total, out


def greene_diagram(p: Poset) -> GreeneDiagram:
    """Greene diagram from k-chain maxima, checked against k-antichain maxima."""
    w, h = width(p), height(p)
    c = [max_k_chain(p, k)[0] for k in range(w + 1)]
    d = [max_k_antichain(p, k)[0] for k in range(h + 1)]
    lam = tuple(c[k] - c[k - 1] for k in range(1, w + 1))
    mu = tuple(d[k] - d[k - 1] for k in range(1, h + 1))
    if c[w] != p.n or d[h] != p.n:
        raise InternalInconsistency("k-chain / k-antichain maxima do not reach |P|")
    if any(a < b for a, b in zip(lam, lam[1:])) or any(a < b for a, b in zip(mu, mu[1:])):
        raise InternalInconsistency(f"increments not decreasing: {lam} / {mu}")
    if conjugate(lam) != mu:
        raise InternalInconsistency(f"Greene's theorem violated: lambda={lam}, mu={mu}")
    return GreeneDiagram(lam, mu, p.n)


# -- merge diagram ------------------------------------------------------------


@dataclass(frozen=True)
class MergeDiagram:
    boxes: int
    slices_by_i: tuple[int, ...]
    slices_by_j: tuple[int, ...]


def merge_diagrams(gp: GreeneDiagram, gq: GreeneDiagram) -> MergeDiagram:
    """Boxes (i, j, k) with j <= w(P), i <= min(lambda^P_j, h_Q), k <= mu^Q_i."""
    hq = gq.height
    grid = [[gq.mu[i] for i in range(min(lj, hq))] for lj in gp.lam]
    by_j = tuple(sum(col) for col in grid)
    by_i = tuple(gp.mu[i] * gq.mu[i] for i in range(min(gp.height, hq)))
    boxes = sum(sum(col) for col in grid)
    if not (sum(by_i) == boxes == sum(by_j)):
        raise InternalInconsistency(f"merge slices disagree: {by_i} vs {by_j}")
    for lj, s in zip(gp.lam, by_j):
        assert s == gq.d(lj)
    return MergeDiagram(boxes, by_i, by_j)


# -- witnesses ----------------------------------------------------------------


@dataclass(frozen=True)
class DecompositionWitness:
    kind: str  # "d": antichain blocks matching mu, "c": chain blocks matching lambda
    blocks: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"kind": self.kind, "blocks": [list(b) for b in self.blocks]}


def verify_witness(p: Poset, w: DecompositionWitness, g: GreeneDiagram | None = None) -> bool:
    """Independent check: blocks partition P, have the right type and sizes."""
    if g is None:
        g = greene_diagram(p)
    seen = 0
    for b in w.blocks:
        m = mask_of(b)
        if popcount(m) != len(b) or seen & m:
            return False
        seen |= m
        if w.kind == "d" and not p.is_antichain(m):
            return False
        if w.kind == "c" and not p.is_chain(m):
            return False
    if seen != p.full:
        return False
    sizes = tuple(len(b) for b in w.blocks if b)
    target = g.mu if w.kind == "d" else g.lam
    return sizes == target


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def tick(self) -> None:
        self.used += 1
        if self.used > self.limit:
            raise SearchBudgetExceeded(f"search exceeded {self.limit} nodes")


def _antichains_of_size(p: Poset, within: int, s: int, budget: _Budget):
    """Antichains of exactly ``s`` elements inside ``within``, lexicographic."""
    def go(cand: int, chosen: int, size: int):
        budget.tick()
        if size == s:
            yield chosen
            return
        if size + popcount(cand) < s:
            return
        while cand:
            v = (cand & -cand).bit_length() - 1
            cand &= ~(1 << v)
            if size + 1 + popcount(cand) < s:
                break
            yield from go(cand & ~p.comp(v), chosen | (1 << v), size + 1)

    yield from go(within, 0, 0)


def _chains_of_size(p: Poset, within: int, s: int, budget: _Budget, order: list[int]):
    rank = {e: t for t, e in enumerate(order)}

    def go(cand: int, chosen: list[int]):
        budget.tick()
        if len(chosen) == s:
            yield list(chosen)
            return
        if len(chosen) + popcount(cand) < s:
            return
        for v in sorted(bits(cand), key=rank.__getitem__):
            chosen.append(v)
            yield from go(cand & p.up[v], chosen)
            chosen.pop()

    yield from go(within, [])


def d_decomposition(p: Poset, budget: int = DEFAULT_BUDGET) -> DecompositionWitness | None:
    """Antichain partition with block sizes mu, or None if none exists."""
    g = greene_diagram(p)
    sizes = g.mu
    counter = _Budget(budget)
    blocks: list[int] = []

    def go(i: int, remaining: int, prev_low: int) -> bool:
        if i == len(sizes):
            return remaining == 0
        left = len(sizes) - i
        if _height_of(p, remaining) > left:
            return False
        if max_antichain_search(p, remaining) < sizes[i]:
            return False
        for a in _antichains_of_size(p, remaining, sizes[i], counter):
            low = (a & -a).bit_length()
            if i and sizes[i] == sizes[i - 1] and low < prev_low:
                continue
            blocks.append(a)
            if go(i + 1, remaining & ~a, low):
                return True
            blocks.pop()
        return False

    if not go(0, p.full, 0):
        return None
    w = DecompositionWitness("d", tuple(tuple(bits(b)) for b in blocks))
    if not verify_witness(p, w, g):
        raise InternalInconsistency("d-witness failed verification")
    return w


def c_decomposition(p: Poset, budget: int = DEFAULT_BUDGET) -> DecompositionWitness | None:
    """Chain partition with block sizes lambda (completely saturated), or None."""
    g = greene_diagram(p)
    sizes = g.lam
    counter = _Budget(budget)
    order = p.linear_extension()
    rank = {e: t for t, e in enumerate(order)}
    blocks: list[list[int]] = []

    def go(i: int, remaining: int, prev_first: int) -> bool:
        if i == len(sizes):
            return remaining == 0
        if _height_of(p, remaining) < sizes[i]:
            return False
        if max_antichain_search(p, remaining) > len(sizes) - i:
            return False
        for c in _chains_of_size(p, remaining, sizes[i], counter, order):
            first = rank[c[0]]
            if i and sizes[i] == sizes[i - 1] and first < prev_first:
                continue
            blocks.append(c)
            if go(i + 1, remaining & ~mask_of(c), first):
                return True
            blocks.pop()
        return False

    if not go(0, p.full, -1):
        return None
    w = DecompositionWitness("c", tuple(tuple(c) for c in blocks))
    if not verify_witness(p, w, g):
        raise InternalInconsistency("c-witness failed verification")
    return w


def _minimal_levels(p: Poset, mask: int) -> list[int]:
    """Split ``mask`` into successive sets of minimal elements."""
    out = []
    while mask:
        level = 0
        for e in bits(mask):
            if not (p.down[e] & mask):
                level |= 1 << e
        out.append(level)
        mask &= ~level
    return out


def d_decomposition_width3(p: Poset) -> DecompositionWitness:
    """Constructive d-witness for posets of width at most 3.

    With a 3s and b 2s in mu, a maximum (a+b)-antichain A peels into minimal
    levels of sizes 3 and 2 only; the rest of P is split into singletons.
    """
    if width(p) > 3:
        raise PreconditionViolated("width exceeds 3")
    g = greene_diagram(p)
    a = g.mu.count(3)
    b = g.mu.count(2)
    size, big = max_k_antichain(p, a + b)
    if size != 3 * a + 2 * b:
        raise InternalInconsistency("maximum (a+b)-antichain has the wrong size")
    levels = _minimal_levels(p, big)
    sizes = sorted((popcount(x) for x in levels), reverse=True)
    if sizes != [3] * a + [2] * b:
        raise InternalInconsistency(f"peeled levels have sizes {sizes}")
    blocks = [tuple(bits(x)) for x in levels] + [(e,) for e in bits(p.full & ~big)]
    blocks.sort(key=lambda blk: (-len(blk), blk))
    w = DecompositionWitness("d", tuple(blocks))
    if not verify_witness(p, w, g):
        raise InternalInconsistency("width-3 construction failed verification")
    return w


def compose_witness(p: Poset, q: Poset, wp: DecompositionWitness, wq: DecompositionWitness,
                    mode: str) -> DecompositionWitness:
    """Witness for ``series(p, q)`` or ``parallel(p, q)`` from witnesses of the parts.

    Blocks of the same kind are sorted together when the composition adds
    heights (d, series) or widths (c, parallel); otherwise they are united
    index by index.
    """
    if wp.kind != wq.kind:
        raise KindMismatch(f"{wp.kind} vs {wq.kind}")
    if mode not in ("series", "parallel"):
        raise ValueError(f"unknown mode {mode!r}")
    shifted = [tuple(e + p.n for e in b) for b in wq.blocks]
    concatenate = (wp.kind == "d") == (mode == "series")
    if concatenate:
        blocks = sorted(list(wp.blocks) + shifted, key=len, reverse=True)
    else:
        m = max(len(wp.blocks), len(shifted))
        pad = lambda bs: list(bs) + [()] * (m - len(bs))  # noqa: E731
        blocks = [a + b for a, b in zip(pad(wp.blocks), pad(shifted))]
        if wp.kind == "d":
            blocks = [tuple(sorted(b)) for b in blocks]
        else:
            # P below Q in series, so p's chain runs first
            blocks = [tuple(b) for b in blocks]
    composed = series(p, q) if mode == "series" else parallel(p, q)
    w = DecompositionWitness(wp.kind, tuple(blocks))
    if not verify_witness(composed, w):
        raise InternalInconsistency("composed witness failed verification")
    return w


# -- nested chain partitions and rectangular posets -----------------------------


def is_nested(p: Poset, chains) -> bool:
    rank = longest_chain_below(p)
    ranks = [frozenset(rank[e] for e in c) for c in chains]
    for c1, r1 in zip(chains, ranks):
        for c2, r2 in zip(chains, ranks):
            if len(c1) <= len(c2) and not r1 <= r2:
                return False
    return True


def _chain_partitions(p: Poset, budget: _Budget):
    """Every chain partition exactly once (elements appended in a linear extension)."""
    order = p.linear_extension()
    chains: list[list[int]] = []

    def go(t: int):
        budget.tick()
        if t == len(order):
            yield chains
            return
        e = order[t]
        for c in chains:
            if p.lt(c[-1], e):
                c.append(e)
                yield from go(t + 1)
                c.pop()
        chains.append([e])
        yield from go(t + 1)
        chains.pop()

    yield from go(0)


def nested_chain_partition(p: Poset, budget: int = DEFAULT_BUDGET) -> list[list[int]] | None:
    """Chain partition whose rank sets (Mirsky levels) are nested, or None."""
    counter = _Budget(budget)
    for chains in _chain_partitions(p, counter):
        if is_nested(p, chains):
            return sorted((list(c) for c in chains), key=lambda c: (-len(c), c))
    return None


@dataclass(frozen=True)
class RectangularStructure:
    w: int
    h: int
    chains: tuple[tuple[int, ...], ...]  # w disjoint chains of h elements
    levels: tuple[tuple[int, ...], ...]  # h blocks of w elements, relations go upwards


def _equal_chain_partition(p: Poset, w: int, h: int, budget: _Budget):
    order = p.linear_extension()
    chains: list[list[int]] = []

    def go(t: int) -> bool:
        budget.tick()
        if t == len(order):
            return all(len(c) == h for c in chains)
        e = order[t]
        for c in chains:
            if len(c) < h and p.lt(c[-1], e):
                c.append(e)
                if go(t + 1):
                    return True
                c.pop()
        if len(chains) < w:
            chains.append([e])
            if go(t + 1):
                return True
            chains.pop()
        return False

    return [list(c) for c in chains] if go(0) else None


def _equal_leveling(p: Poset, w: int, h: int, budget: _Budget):
    order = p.linear_extension()
    above = [0] * p.n  # longest chain strictly above each element
    for e in reversed(order):
        above[e] = max((above[j] + 1 for j in bits(p.up[e])), default=0)
    level = [0] * p.n
    count = [0] * h

    def go(t: int) -> bool:
        budget.tick()
        if t == len(order):
            return True
        e = order[t]
        lo = max((level[j] + 1 for j in bits(p.down[e])), default=0)
        for lv in range(lo, h - above[e]):
            if count[lv] < w:
                level[e] = lv
                count[lv] += 1
                if go(t + 1):
                    return True
                count[lv] -= 1
        return False

    if not go(0):
        return None
    return [[e for e in range(p.n) if level[e] == lv] for lv in range(h)]


def rectangular_structure(p: Poset, budget: int = DEFAULT_BUDGET) -> RectangularStructure | None:
    """Chains and leveling certifying that ``p`` is rectangular, or None.

    A rectangular poset of shape (w, h) has width w and height h, so the shape
    is forced by |P| = width * height.
    """
    if p.n == 0:
        return None
    w, h = width(p), height(p)
    if w * h != p.n:
        return None
    counter = _Budget(budget)
    chains = _equal_chain_partition(p, w, h, counter)
    if chains is None:
        return None
    levels = _equal_leveling(p, w, h, counter)
    if levels is None:
        return None
    return RectangularStructure(w, h, tuple(map(tuple, chains)), tuple(map(tuple, levels)))


def is_rectangular(p: Poset) -> tuple[bool, int, int]:
    r = rectangular_structure(p)
    if r is None:
        return False, width(p), height(p)
    return True, r.w, r.h
