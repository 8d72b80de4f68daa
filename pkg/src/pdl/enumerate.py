"""Posets on n elements up to isomorphism.

Every poset has a maximal element, so the n-element posets are obtained by
adding a new maximal element above each down-closed subset of every
(n-1)-element poset and keeping one representative per canonical form.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from .errors import TooLarge
from .poset import Poset, bits, canonical_labeling

KNOWN_COUNTS = {0: 1, 1: 1, 2: 2, 3: 5, 4: 16, 5: 63, 6: 318, 7: 2045, 8: 16999, 9: 183231}
MAX_N = 9


@dataclass
class PosetCatalog:
    by_size: dict[int, list[Poset]] = field(default_factory=dict)

    def __getitem__(self, n: int) -> list[Poset]:
        return self.by_size[n]


def down_sets(p: Poset) -> list[int]:
    """All down-closed subsets of ``p`` as bitmasks (including the empty set)."""
    order = p.linear_extension()
    out = []

    def go(t: int, mask: int) -> None:
        if t == len(order):
            out.append(mask)
            return
        e = order[t]
        go(t + 1, mask)
        if p.down[e] & ~mask == 0:
            go(t + 1, mask | (1 << e))

    go(0, 0)
    return out


def _extend(p: Poset, ideal: int) -> Poset:
    n = p.n + 1
    new = p.n
    down = list(p.down) + [ideal]
    up = [p.up[i] | ((1 << new) if (ideal >> i) & 1 else 0) for i in range(p.n)] + [0]
    return Poset(n, tuple(down), tuple(up))


def _canonical(p: Poset, cert: bytes, order: list[int]) -> Poset:
    pos = [0] * p.n
    for k, e in enumerate(order):
        pos[e] = k
    down = [0] * p.n
    up = [0] * p.n
    for e in range(p.n):
        for i in bits(p.down[e]):
            down[pos[e]] |= 1 << pos[i]
            up[pos[i]] |= 1 << pos[e]
    return Poset(p.n, tuple(down), tuple(up))


def _cache_path(n: int) -> Path | None:
    root = os.environ.get("PDL_CATALOG_DIR")
    return Path(root) / f"posets{n}.jsonl" if root else None


_MEMORY: dict[int, list[Poset]] = {}


def enumerate_posets(n: int) -> list[Poset]:
    """Canonical representatives of all posets on ``n`` elements."""
    if n > MAX_N:
        raise TooLarge(f"enumeration is limited to n <= {MAX_N}")
    if n < 0:
        raise ValueError("n must be non-negative")
    if n in _MEMORY:
        return _MEMORY[n]
    path = _cache_path(n)
    if path is not None and path.exists():
        out = [_load(line) for line in path.read_text().splitlines() if line]
    elif n == 0:
        out = [Poset(0, (), ())]
    else:
        seen: dict[bytes, Poset] = {}
        for p in enumerate_posets(n - 1):
            for ideal in down_sets(p):
                q = _extend(p, ideal)
                cert, order = canonical_labeling(q)
                if cert not in seen:
                    seen[cert] = _canonical(q, cert, order)
        out = [seen[c] for c in sorted(seen)]
        if path is not None:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text("".join(_dump(p) + "\n" for p in out))
    if n in KNOWN_COUNTS and len(out) != KNOWN_COUNTS[n]:
        raise AssertionError(f"found {len(out)} posets on {n} elements, expected {KNOWN_COUNTS[n]}")
    _MEMORY[n] = out
    return out


def catalog(max_n: int) -> PosetCatalog:
    return PosetCatalog({n: enumerate_posets(n) for n in range(1, max_n + 1)})


def _dump(p: Poset) -> str:
    return json.dumps([p.n, list(p.down)])


def _load(line: str) -> Poset:
    n, down = json.loads(line)
    up = [0] * n
    for j in range(n):
        for i in bits(down[j]):
            up[i] |= 1 << j
    return Poset(n, tuple(down), tuple(up))
