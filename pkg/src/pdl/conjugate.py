"""Two-dimensional posets: realizers and conjugates."""

from __future__ import annotations

from functools import cmp_to_key
from typing import Sequence

from .errors import NotARealizer, TooLarge
from .poset import Poset, from_relations

MAX_REALIZER_N = 12


def intersection_order(ext1: Sequence[int], ext2: Sequence[int]) -> Poset:
    """x < y iff x precedes y in both linear orders."""
    if sorted(ext1) != list(range(len(ext1))) or sorted(ext2) != sorted(ext1):
        raise NotARealizer("extensions must be permutations of the same ground set")
    n = len(ext1)
    pos1 = {e: t for t, e in enumerate(ext1)}
    pos2 = {e: t for t, e in enumerate(ext2)}
    rel = [(x, y) for x in range(n) for y in range(n)
           if x != y and pos1[x] < pos1[y] and pos2[x] < pos2[y]]
    return from_relations(n, rel)


def conjugate_from_realizer(ext1: Sequence[int], ext2: Sequence[int], p: Poset | None = None) -> Poset:
    """Intersection of ``ext1`` with the reverse of ``ext2``.

    Its comparability graph is the incomparability graph of the poset the
    pair realizes; both facts are checked.
    """
    base = intersection_order(ext1, ext2)
    if p is not None and base.down != p.down:
        raise NotARealizer("the two extensions do not intersect to the given poset")
    conj = intersection_order(ext1, list(reversed(ext2)))
    for i in range(base.n):
        for j in range(base.n):
            if i != j and conj.comparable(i, j) == base.comparable(i, j):
                raise NotARealizer("conjugate comparability is not the base incomparability")
    return conj


def find_realizer(p: Poset) -> tuple[list[int], list[int]] | None:
    """Two linear extensions whose intersection is ``p``, or None if dim(p) > 2.

    Builds the first extension element by element.  The second order is then
    forced (comparable pairs keep their order, incomparable ones are
    reversed), and a triple that makes it cyclic prunes the branch.
    """
    if p.n > MAX_REALIZER_N:
        raise TooLarge(f"realizer search is limited to {MAX_REALIZER_N} elements")
    placed: list[int] = []
    placed_mask = 0

    def before2(x: int, y: int) -> bool:
        # x placed before y in the first order
        return p.lt(x, y)

    def ok(c: int) -> bool:
        # c comes last in the first order; the second order restricted to
        # placed + c must stay acyclic
        for ia in range(len(placed)):
            a = placed[ia]
            ac = before2(a, c)
            for b in placed[ia + 1:]:
                ab = before2(a, b)
                bc = before2(b, c)
                # cycle a->b->c->a or a->c->b->a in the second order
                if ab and bc and not ac:
                    return False
                if not ab and not bc and ac:
                    return False
        return True

    def go() -> bool:
        nonlocal placed_mask
        if len(placed) == p.n:
            return True
        for c in range(p.n):
            if (placed_mask >> c) & 1 or p.down[c] & ~placed_mask:
                continue
            if not ok(c):
                continue
            placed.append(c)
            placed_mask |= 1 << c
            if go():
                return True
            placed.pop()
            placed_mask &= ~(1 << c)
        return False

    if not go():
        return None
    ext1 = list(placed)
    pos1 = {e: t for t, e in enumerate(ext1)}
    # second order: comparable pairs as in p, incomparable pairs reversed
    def cmp(x: int, y: int) -> int:
        if x == y:
            return 0
        if p.lt(x, y):
            return -1
        if p.lt(y, x):
            return 1
        return -1 if pos1[x] > pos1[y] else 1

    ext2 = sorted(range(p.n), key=cmp_to_key(cmp))
    if intersection_order(ext1, ext2).down != p.down:
        raise NotARealizer("internal error: constructed extensions do not realize p")
    return ext1, ext2


def conjugate(p: Poset) -> Poset | None:
    """A conjugate of ``p`` (None when p is not two-dimensional)."""
    r = find_realizer(p)
    if r is None:
        return None
    c = conjugate_from_realizer(r[0], r[1], p)
    return Poset(c.n, c.down, c.up, p.name + "*" if p.name else "")
