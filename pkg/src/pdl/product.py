"""Products of posets: semiantichains, unichain coverings and their duals.

Vertex ``(a, x)`` of ``P x Q`` has index ``a * |Q| + x``.  Two vertices are
adjacent in the conflict graph iff they lie on a common unichain, so
semiantichains are independent sets and unichain coverings are clique
coverings of that graph.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations

from .errors import (
    InternalInconsistency,
    NotAntichain,
    NotRectangular,
    NotWeakOrder,
    TooLarge,
    WitnessNotFound,
)
from .graphs import SolveStats, complement, max_independent_set, min_clique_cover, min_coloring
from .greene import (
    c_decomposition,
    d_decomposition,
    greene_diagram,
    max_k_antichain,
    merge_diagrams,
    rectangular_structure,
)
from .poset import (
    Poset,
    bits,
    chain,
    is_weak_order,
    mask_of,
    min_antichain_partition,
    min_chain_partition,
    popcount,
)

DEFAULT_VERTEX_CAP = 128

Pair = tuple[int, int]


def vertex_cap() -> int:
    return int(os.environ.get("PDL_VERTEX_CAP", DEFAULT_VERTEX_CAP))


@dataclass(frozen=True)
class Line:
    """A unichain ``{at} x chain`` (fixed == "P") or ``chain x {at}`` (fixed == "Q")."""

    fixed: str
    at: int
    chain: tuple[int, ...]

    def pairs(self) -> list[Pair]:
        if self.fixed == "P":
            return [(self.at, x) for x in self.chain]
        return [(a, self.at) for a in self.chain]

    def to_json(self) -> dict:
        return {"fixed": self.fixed, "at": self.at, "chain": list(self.chain)}


@dataclass
class ProductInstance:
    p: Poset
    q: Poset
    adjacency: list[int]
    dual: bool = False

    @property
    def size(self) -> int:
        return self.p.n * self.q.n

    def vertex(self, a: int, x: int) -> int:
        return a * self.q.n + x

    def pair(self, v: int) -> Pair:
        return divmod(v, self.q.n)

    def pairs(self, mask: int) -> list[Pair]:
        return [self.pair(v) for v in bits(mask)]

    def leq(self, u: Pair, v: Pair) -> bool:
        """The product order itself (not only its unichains)."""
        (a, x), (b, y) = u, v
        return (a == b or self.p.lt(a, b)) and (x == y or self.q.lt(x, y))


def _check_cap(p: Poset, q: Poset, cap: int | None) -> None:
    cap = vertex_cap() if cap is None else cap
    if p.n * q.n > cap:
        raise TooLarge(f"product has {p.n * q.n} vertices, cap is {cap}")


def product(p: Poset, q: Poset, cap: int | None = None) -> ProductInstance:
    """Conflict graph of unichains: same P-coordinate and comparable Q-coordinates, or vice versa."""
    _check_cap(p, q, cap)
    m = q.n
    adj = []
    for a in range(p.n):
        for x in range(m):
            row = 0
            for y in bits(q.comp(x)):
                row |= 1 << (a * m + y)
            for b in bits(p.comp(a)):
                row |= 1 << (b * m + x)
            adj.append(row)
    return ProductInstance(p, q, adj)


def dual_product(p: Poset, q: Poset, cap: int | None = None) -> ProductInstance:
    """Conflict graph of uniantichains (fixed coordinate, other coordinates incomparable)."""
    _check_cap(p, q, cap)
    m = q.n
    adj = []
    for a in range(p.n):
        inc_a = p.full & ~p.comp(a) & ~(1 << a)
        for x in range(m):
            inc_x = q.full & ~q.comp(x) & ~(1 << x)
            row = 0
            for y in bits(inc_x):
                row |= 1 << (a * m + y)
            for b in bits(inc_a):
                row |= 1 << (b * m + x)
            adj.append(row)
    return ProductInstance(p, q, adj, dual=True)


# -- independent predicate checks --------------------------------------------------


def is_semiantichain(p: Poset, q: Poset, members: list[Pair]) -> bool:
    """No two distinct members share a coordinate with the other coordinates comparable."""
    for (a, x), (b, y) in combinations(members, 2):
        if (a, x) == (b, y):
            return False
        if a == b and q.comparable(x, y):
            return False
        if x == y and p.comparable(a, b):
            return False
    return True


def is_unichain_cover(p: Poset, q: Poset, lines: list[Line]) -> bool:
    covered = set()
    for line in lines:
        if not line.chain:
            return False
        fixed, other = (p, q) if line.fixed == "P" else (q, p)
        if not 0 <= line.at < fixed.n:
            return False
        if not other.is_chain(mask_of(line.chain)) or len(set(line.chain)) != len(line.chain):
            return False
        covered.update(line.pairs())
    return covered == {(a, x) for a in range(p.n) for x in range(q.n)}


def is_semichain(p: Poset, q: Poset, members: list[Pair]) -> bool:
    for (a, x), (b, y) in combinations(members, 2):
        if (a, x) == (b, y):
            return False
        if a == b and not q.comparable(x, y):
            return False
        if x == y and not p.comparable(a, b):
            return False
    return True


def is_uniantichain_cover(p: Poset, q: Poset, lines: list[Line]) -> bool:
    covered = set()
    for line in lines:
        if not line.chain:
            return False
        fixed, other = (p, q) if line.fixed == "P" else (q, p)
        if not other.is_antichain(mask_of(line.chain)) or len(set(line.chain)) != len(line.chain):
            return False
        covered.update(line.pairs())
    return covered == {(a, x) for a in range(p.n) for x in range(q.n)}


# -- lines <-> cliques -------------------------------------------------------------


def _clique_to_line(inst: ProductInstance, clique: int) -> Line:
    pts = inst.pairs(clique)
    if len({a for a, _ in pts}) == 1:
        a = pts[0][0]
        xs = [x for _, x in pts]
        return Line("P", a, tuple(_sort_up(inst.q, xs) if not inst.dual else sorted(xs)))
    x = pts[0][1]
    assert all(y == x for _, y in pts), "clique is not a line"
    as_ = [a for a, _ in pts]
    return Line("Q", x, tuple(_sort_up(inst.p, as_) if not inst.dual else sorted(as_)))


def _sort_up(p: Poset, elems: list[int]) -> list[int]:
    return sorted(elems, key=lambda e: popcount(p.down[e]))


def _lines_to_partition(inst: ProductInstance, lines: list[Line]) -> list[int]:
    """Turn a (possibly overlapping) cover into disjoint cliques."""
    seen = 0
    out = []
    for line in lines:
        m = 0
        for a, x in line.pairs():
            m |= 1 << inst.vertex(a, x)
        m &= ~seen
        seen |= m
        if m:
            out.append(m)
    return out


# -- reports -----------------------------------------------------------------


@dataclass
class GapReport:
    alpha: int
    theta: int
    semiantichain: list[Pair]
    cover: list[Line]
    nodes: dict = field(default_factory=dict)
    dual: bool = False

    def __post_init__(self):
        if self.alpha > self.theta:
            raise InternalInconsistency(f"weak duality violated: {self.alpha} > {self.theta}")

    @property
    def gap(self) -> int:
        return self.theta - self.alpha

    def to_json(self) -> dict:
        key_s, key_c = ("semichain", "uniantichain_cover") if self.dual else ("semiantichain", "unichain_cover")
        return {
            "alpha": self.alpha,
            "theta": self.theta,
            "gap": self.gap,
            key_s: [list(v) for v in self.semiantichain],
            key_c: [line.to_json() for line in self.cover],
        }


def max_semiantichain(inst: ProductInstance, stats: SolveStats | None = None) -> list[Pair]:
    """Exact maximum semiantichain (maximum independent set of the conflict graph)."""
    mask = max_independent_set(inst.adjacency, stats)
    members = inst.pairs(mask)
    check = is_semichain if inst.dual else is_semiantichain
    if not check(inst.p, inst.q, members):
        raise InternalInconsistency("solver returned an invalid semiantichain")
    return members


def min_unichain_cover(inst: ProductInstance, lower: int = 0, initial: list[Line] | None = None,
                       stats: SolveStats | None = None) -> list[Line]:
    """Exact minimum unichain covering (minimum clique cover of the conflict graph)."""
    if initial is None and not inst.dual:
        initial = quasi_decomposable_cover(min_chain_partition(inst.p), inst.q)
    start = _lines_to_partition(inst, initial) if initial is not None else None
    cliques = min_clique_cover(inst.adjacency, lower, start, stats)
    lines = [_clique_to_line(inst, c) for c in cliques]
    check = is_uniantichain_cover if inst.dual else is_unichain_cover
    if not check(inst.p, inst.q, lines):
        raise InternalInconsistency("solver returned an invalid cover")
    return lines


def _solve(inst: ProductInstance) -> GapReport:
    s_mis, s_cov = SolveStats(), SolveStats()
    sa = max_semiantichain(inst, s_mis)
    cover = min_unichain_cover(inst, lower=len(sa), stats=s_cov)
    return GapReport(len(sa), len(cover), sa, cover,
                     {"mis": s_mis.nodes, "cover": s_cov.nodes}, dual=inst.dual)


def gap(p: Poset, q: Poset, cap: int | None = None) -> GapReport:
    """Exact largest semiantichain and smallest unichain covering of ``p x q``."""
    return _solve(product(p, q, cap))


def dual_gap(p: Poset, q: Poset, cap: int | None = None) -> GapReport:
    """Exact largest semichain and smallest uniantichain covering of ``p x q``."""
    return _solve(dual_product(p, q, cap))


def trotter_west_check(p: Poset, q: Poset, cap: int | None = None) -> bool:
    """Largest uniantichain equals the fewest semichains covering ``p x q``.

    Uniantichains are cliques of the dual conflict graph and semichains its
    independent sets, so this compares clique number with chromatic number.
    """
    inst = dual_product(p, q, cap)
    omega_mask = max_independent_set(complement(inst.adjacency))
    omega = popcount(omega_mask)
    line = _clique_to_line(inst, omega_mask)
    fixed, other = (p, q) if line.fixed == "P" else (q, p)
    assert other.is_antichain(mask_of(line.chain))
    classes = min_coloring(inst.adjacency, lower=omega)
    for cls in classes:
        if not is_semichain(p, q, inst.pairs(cls)):
            raise InternalInconsistency("colour class is not a semichain")
    return omega == len(classes)


# -- constructions -------------------------------------------------------------------


def k_saturated_partition(q: Poset, k: int) -> list[list[int]]:
    """A chain partition of ``q`` minimising sum(min(k, |C|)), which equals d_k(q).

    Exhaustive search over chain partitions built along a linear extension,
    stopping once the Greene-Kleitman value d_k is reached.
    """
    target = max_k_antichain(q, k)[0]
    order = q.linear_extension()
    chains: list[list[int]] = []
    best: list = [None, None]

    def cost() -> int:
        return sum(min(k, len(c)) for c in chains)

    def go(t: int) -> bool:
        cur = cost()
        if best[0] is not None and cur >= best[0]:
            return False
        if t == len(order):
            best[:] = [cur, [list(c) for c in chains]]
            return cur == target
        e = order[t]
        for c in sorted(chains, key=len):
            if q.lt(c[-1], e):
                c.append(e)
                if go(t + 1):
                    return True
                c.pop()
        chains.append([e])
        if go(t + 1):
            return True
        chains.pop()
        return False

    go(0)
    if best[0] != target:
        raise InternalInconsistency(f"no chain partition reaches d_{k} = {target}")
    return sorted(best[1], key=lambda c: (-len(c), c))


def _saks_lines(chain_elems: list[int], q: Poset, partition: list[list[int]]) -> list[Line]:
    """Cover (chain) x Q grid by grid: rows when |C'| >= |chain|, columns otherwise."""
    k = len(chain_elems)
    lines = []
    for c2 in partition:
        if len(c2) >= k:
            lines += [Line("P", a, tuple(c2)) for a in chain_elems]
        else:
            lines += [Line("Q", x, tuple(chain_elems)) for x in c2]
    return lines


def saks_cover(c_len: int, q: Poset) -> list[Line]:
    """Unichain covering of ``chain(c_len) x q`` with exactly d_{c_len}(q) lines."""
    if c_len < 1:
        raise ValueError("chain length must be positive")
    part = k_saturated_partition(q, c_len)
    lines = _saks_lines(list(range(c_len)), q, part)
    d = max_k_antichain(q, c_len)[0]
    if len(lines) != d:
        raise InternalInconsistency(f"Saks cover has {len(lines)} lines, d_k = {d}")
    assert is_unichain_cover(chain(c_len), q, lines)
    return lines


def quasi_decomposable_cover(cp: list[list[int]], q: Poset, p: Poset | None = None) -> list[Line]:
    """Union of Saks covers of C x Q over the chains C of a chain covering of P."""
    lines: list[Line] = []
    expected = 0
    parts: dict[int, list[list[int]]] = {}
    for c in cp:
        k = len(c)
        if k not in parts:
            parts[k] = k_saturated_partition(q, k)
        lines += _saks_lines(list(c), q, parts[k])
        expected += max_k_antichain(q, k)[0]
    if len(lines) != expected:
        raise InternalInconsistency("quasi-decomposable cover has the wrong size")
    if p is not None and not is_unichain_cover(p, q, lines):
        raise InternalInconsistency("quasi-decomposable cover does not cover P x Q")
    return lines


def decomposable_semiantichain(fam_p: list[list[int]], fam_q: list[list[int]],
                               p: Poset, q: Poset) -> list[Pair]:
    """A_1 x B_1 u ... pairing the i-th largest antichain of each family."""
    for fam, poset in ((fam_p, p), (fam_q, q)):
        seen = 0
        for a in fam:
            m = mask_of(a)
            if not poset.is_antichain(m) or seen & m:
                raise NotAntichain(f"{a} is not an antichain disjoint from the others")
            seen |= m
    fp = sorted(fam_p, key=len, reverse=True)
    fq = sorted(fam_q, key=len, reverse=True)
    members = [(a, x) for A, B in zip(fp, fq) for a in A for x in B]
    if not is_semiantichain(p, q, members):
        raise InternalInconsistency("decomposable semiantichain is not a semiantichain")
    return members


def main_theorem_check(p: Poset, q: Poset, exact: bool = True) -> GapReport:
    """Decomposable semiantichain vs quasi-decomposable cover when P is d- and
    c-decomposable and Q is d-decomposable; both sizes must agree (and with
    the exact optima when ``exact``)."""
    wp_d, wp_c, wq_d = d_decomposition(p), c_decomposition(p), d_decomposition(q)
    if wp_d is None or wp_c is None or wq_d is None:
        raise WitnessNotFound("P must be d- and c-decomposable and Q d-decomposable")
    gp, gq = greene_diagram(p), greene_diagram(q)
    sa = decomposable_semiantichain([list(b) for b in wp_d.blocks], [list(b) for b in wq_d.blocks], p, q)
    cover = quasi_decomposable_cover([list(b) for b in wp_c.blocks], q, p)
    merge = merge_diagrams(gp, gq)
    if not (len(sa) == merge.boxes == len(cover)):
        raise InternalInconsistency(f"constructions disagree: {len(sa)} vs {len(cover)}")
    report = GapReport(len(sa), len(cover), sa, cover)
    if exact:
        opt = gap(p, q)
        if (opt.alpha, opt.theta) != (len(sa), len(cover)):
            raise InternalInconsistency(f"exact optima {opt.alpha}/{opt.theta} differ from {len(sa)}")
        report.nodes = opt.nodes
    return report


def rectangular_duality(p: Poset, q: Poset, exact: bool = True) -> GapReport:
    """For rectangular P of shape (w, h): both optima equal w * d_h(Q)."""
    r = rectangular_structure(p)
    if r is None:
        raise NotRectangular("P is not rectangular")
    dh, big = max_k_antichain(q, r.h)
    cover = quasi_decomposable_cover([list(c) for c in r.chains], q, p)
    # antichain decomposition B_1..B_h of the maximum h-antichain, by minimal levels
    levels_q = []
    rest = big
    while rest:
        lv = 0
        for e in bits(rest):
            if not (q.down[e] & rest):
                lv |= 1 << e
        levels_q.append(bits(lv))
        rest &= ~lv
    members = [(a, x) for A, B in zip(r.levels, levels_q) for a in A for x in B]
    if not is_semiantichain(p, q, members):
        raise InternalInconsistency("rank semiantichain is invalid")
    value = r.w * dh
    if not (len(members) == len(cover) == value):
        raise InternalInconsistency(f"rectangular constructions: {len(members)}, {len(cover)}, {value}")
    report = GapReport(value, value, members, cover)
    if exact:
        opt = gap(p, q)
        if (opt.alpha, opt.theta) != (value, value):
            raise InternalInconsistency("exact optima differ from w * d_h(Q)")
        report.nodes = opt.nodes
    return report


def _antichain_masks(q: Poset) -> list[int]:
    out = []

    def go(cand: int, chosen: int) -> None:
        if chosen:
            out.append(chosen)
        while cand:
            v = (cand & -cand).bit_length() - 1
            cand &= ~(1 << v)
            go(cand & ~q.comp(v), chosen | (1 << v))

    go(q.full, 0)
    return out


def weighted_antichain_family(q: Poset, weights: list[int]) -> tuple[int, list[list[int]]]:
    """Maximise sum(w_i * |B_i|) over disjoint antichains B_i of ``q``.

    Weights are sorted decreasingly and |B_1| >= |B_2| >= ... is enforced.
    The bound uses sum((w_i - w_{i+1}) * d_i) over the unused elements.
    """
    w = sorted(weights, reverse=True)
    ants = sorted(_antichain_masks(q), key=lambda m: (-popcount(m), m))
    best = [0, []]

    def bound(i: int, remaining: int) -> int:
        if i == len(w):
            return 0
        sub = q.induced(bits(remaining)) if remaining != q.full else q
        total = 0
        for j in range(i, len(w)):
            nxt = w[j + 1] if j + 1 < len(w) else 0
            total += (w[j] - nxt) * max_k_antichain(sub, j - i + 1)[0]
        return total

    def go(i: int, remaining: int, value: int, chosen: list[int], cap: int) -> None:
        if value > best[0]:
            best[:] = [value, list(chosen)]
        if i == len(w) or not remaining:
            return
        if value + bound(i, remaining) <= best[0]:
            return
        for a in ants:
            s = popcount(a)
            if s > cap or a & ~remaining:
                continue
            if value + w[i] * s + (bound(i + 1, remaining & ~a) if i + 1 < len(w) else 0) <= best[0]:
                continue
            chosen.append(a)
            go(i + 1, remaining & ~a, value + w[i] * s, chosen, s)
            chosen.pop()

    go(0, q.full, 0, [], q.n)
    return best[0], [bits(a) for a in best[1]]


def weak_order_semiantichain(p: Poset, q: Poset, exact: bool = True) -> tuple[int, list[Pair]]:
    """Maximum semiantichain of ``p x q`` for a weak order ``p`` via weighted antichain families."""
    ok, sizes = is_weak_order(p)
    if not ok:
        raise NotWeakOrder("P is not a weak order")
    levels = sorted(min_antichain_partition(p), key=len, reverse=True)
    value, fam = weighted_antichain_family(q, [len(lv) for lv in levels])
    members = decomposable_semiantichain(levels, fam, p, q) if fam else []
    if len(members) != value:
        raise InternalInconsistency("weighted family does not match its semiantichain")
    if exact:
        opt = len(max_semiantichain(product(p, q)))
        if opt != value:
            raise InternalInconsistency(f"weak order formula gives {value}, exact optimum {opt}")
    return value, members
