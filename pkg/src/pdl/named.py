"""Named posets and the reference resolver used by the command line.

References: ``chain:n``, ``antichain:n``, ``weak:a,b,c``, ``boolean:k``,
``fig1``, ``fig2-P``, ``fig2-Q``, ``fig3-P:v`` (v = 0..3), ``V``, ``V-dual``,
``blowup-P:k``, ``blowup-V:k`` (optionally ``blowup-P:k:v``), or a path to a
file in the poset text format.
"""

from __future__ import annotations

from pathlib import Path

from .errors import UnknownRef
from .poset import (
    Poset,
    antichain,
    boolean_lattice,
    chain,
    dual,
    from_relations,
    parallel,
    parse_poset,
    weak_order,
)

BUILTINS = ("chain:n", "antichain:n", "weak:a,b,...", "boolean:k", "fig1", "fig2-P", "fig2-Q",
            "fig3-P:0..3", "V", "V-dual", "blowup-P:k[:0..3]", "blowup-V:k")


def fig1() -> Poset:
    """Six elements x1,x2,x3 < y2 and x2 < y1,y3: c-decomposable, not d-decomposable.

    Labels: x1, x2, x3 = 0, 1, 2 and y1, y2, y3 = 3, 4, 5.
    """
    rel = [(0, 4), (1, 4), (2, 4), (1, 3), (1, 5)]
    return from_relations(6, rel, "fig1")


def fig2_p() -> Poset:
    """Disjoint chains of sizes 9, 5, 5, 2; Greene diagram (9, 5, 5, 2)."""
    p = chain(9)
    for s in (5, 5, 2):
        p = parallel(p, chain(s))
    return Poset(p.n, p.down, p.up, "fig2-P")


def fig2_q() -> Poset:
    """Disjoint chains of sizes 6, 4, 3; Greene diagram (6, 4, 3)."""
    p = parallel(parallel(chain(6), chain(4)), chain(3))
    return Poset(p.n, p.down, p.up, "fig2-Q")


def V() -> Poset:  # noqa: N802
    """v1 < v2, v1 < v3."""
    p = weak_order([1, 2])
    return Poset(p.n, p.down, p.up, "V")


def blowup_counterexample(k: int, variant: int = 0) -> tuple[Poset, Poset]:
    """The pair (P'_k, V'_k) with duality gap k.

    P'_k has minima u_1..u_{k+1}, u3, u4 and maxima w_1..w_{k+1}, w3, w4, plus
    x with u3 < x < w3.  The blown-up antichains sit below (above) w4 (u4);
    u4 lies below every w except w4, w4 above every u except u4.  u_{k+1} < w3
    and u3 < w_{k+1} are always present; for the other blown-up elements the
    relations to w3 (resp. from u3) are optional, switched on by bit 0 (resp.
    bit 1) of ``variant``.  V'_k is the weak order with k minima, k+1 maxima.

    Labels: u's = 0..k+2 (u_1..u_{k+1}, u3, u4), w's likewise from k+3, x last.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if not 0 <= variant <= 3:
        raise ValueError("variant must be in 0..3")
    m = k + 1
    us = list(range(m))
    u3, u4 = m, m + 1
    ws = list(range(m + 2, 2 * m + 2))
    w3, w4 = 2 * m + 2, 2 * m + 3
    x = 2 * m + 4
    rel = [(u3, x), (x, w3), (u3, w4)]
    rel += [(u, w4) for u in us]
    rel += [(u4, w) for w in ws + [w3]]
    rel += [(us[-1], w3), (u3, ws[-1])]
    if variant & 1:
        rel += [(u, w3) for u in us[:-1]]
    if variant & 2:
        rel += [(u3, w) for w in ws[:-1]]
    p = from_relations(2 * m + 5, rel, f"blowup-P:{k}:{variant}" if k > 1 else f"fig3-P:{variant}")
    v = weak_order([k, k + 1])
    v = Poset(v.n, v.down, v.up, "V" if k == 1 else f"blowup-V:{k}")
    return p, v


def fig3_p(variant: int = 0) -> Poset:
    """The 9-element poset with u1..u4 = 0..3, w1..w4 = 4..7, x = 8.

    Gray (optional) relations: u1 < w3 (bit 0) and u3 < w1 (bit 1).
    """
    return blowup_counterexample(1, variant)[0]


def resolve(ref: str) -> Poset:
    """Build a poset from a builtin reference or a file path."""
    head, _, arg = ref.partition(":")
    try:
        if head == "chain":
            return chain(int(arg))
        if head == "antichain":
            return antichain(int(arg))
        if head == "weak":
            return weak_order([int(a) for a in arg.split(",")])
        if head == "boolean":
            return boolean_lattice(int(arg))
        if ref == "fig1":
            return fig1()
        if ref == "fig2-P":
            return fig2_p()
        if ref == "fig2-Q":
            return fig2_q()
        if head == "fig3-P":
            return fig3_p(int(arg) if arg else 0)
        if ref == "V":
            return V()
        if ref == "V-dual":
            d = dual(V())
            return Poset(d.n, d.down, d.up, "V-dual")
        if head == "blowup-P":
            k, _, var = arg.partition(":")
            return blowup_counterexample(int(k), int(var) if var else 0)[0]
        if head == "blowup-V":
            return blowup_counterexample(int(arg))[1]
    except ValueError as exc:
        raise UnknownRef(f"bad reference {ref!r}: {exc}") from None
    path = Path(ref)
    if path.exists():
        return parse_poset(path.read_text())
    raise UnknownRef(f"unknown poset reference {ref!r}")
