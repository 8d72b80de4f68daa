"""Exhaustive scan of small products for duality gaps, resumable on disk.

Pairs {P, Q} of non-isomorphic posets are visited by product size, then by
canonical form.  Pairs whose gap is provably zero are skipped by cheap
filters; the rest go to the exact solvers.  Every exactly solved pair is
appended to ``records.jsonl`` and the index of the next pair is written to
``cursor.txt``, so an interrupted run continues where it stopped.
"""

from __future__ import annotations

import hashlib
import json
import logging
import time
from dataclasses import dataclass, field
from multiprocessing import Pool
from pathlib import Path

from .errors import BudgetExceeded, InternalInconsistency, SearchBudgetExceeded
from .enumerate import enumerate_posets
from .greene import c_decomposition, d_decomposition, rectangular_structure
from .poset import Poset, canonical_form, height, width

log = logging.getLogger(__name__)


@dataclass
class ScanConfig:
    max_product_size: int = 16
    out_dir: Path | None = None
    resume: bool = False
    jobs: int = 1
    audit_rate: float = 0.01
    decomposition_budget: int = 10**5
    max_seconds: float | None = None
    checkpoint_every: int = 2000
    checkpoint_seconds: float = 30.0


@dataclass
class ScanRecord:
    pair: tuple[str, str]
    alpha: int
    theta: int
    millis: float
    nodes: dict = field(default_factory=dict)

    @property
    def gap(self) -> int:
        return self.theta - self.alpha

    def to_json(self) -> dict:
        return {"pair": list(self.pair), "alpha": self.alpha, "theta": self.theta,
                "gap": self.gap, "millis": round(self.millis, 3), "nodes": self.nodes}

    @classmethod
    def from_json(cls, d: dict) -> ScanRecord:
        return cls(tuple(d["pair"]), d["alpha"], d["theta"], d["millis"], d.get("nodes", {}))


@dataclass
class ScanSummary:
    pairs_total: int = 0
    filtered: int = 0
    solved: int = 0
    audited: int = 0
    counterexamples: list[ScanRecord] = field(default_factory=list)
    filter_counts: dict = field(default_factory=dict)


class _Traits:
    """Lazily computed per-poset facts used by the filters."""

    def __init__(self, p: Poset, budget: int):
        self.p = p
        self.budget = budget
        self._cache: dict[str, object] = {}

    def _get(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def trivial(self) -> bool:
        # chains (Saks) and antichains (rectangular)
        return self._get("trivial", lambda: width(self.p) == 1 or height(self.p) == 1)

    @property
    def height(self) -> int:
        return self._get("height", lambda: height(self.p))

    @property
    def rectangular(self) -> bool:
        return self._get("rect", lambda: rectangular_structure(self.p, self.budget) is not None)

    @property
    def d_dec(self) -> bool | None:
        return self._get("d", lambda: self._try(d_decomposition))

    @property
    def c_dec(self) -> bool | None:
        return self._get("c", lambda: self._try(c_decomposition))

    def _try(self, fn) -> bool | None:
        try:
            return fn(self.p, self.budget) is not None
        except SearchBudgetExceeded:
            return None


def gap_zero_reason(tp: _Traits, tq: _Traits) -> str | None:
    """Name of a theorem proving the pair has no gap, or None."""
    if tp.trivial or tq.trivial:
        return "chain-or-antichain"
    if tp.height <= 2 and tq.height <= 2:
        return "height-2"
    if tp.rectangular or tq.rectangular:
        return "rectangular"
    for a, b in ((tp, tq), (tq, tp)):
        if a.d_dec and b.d_dec and a.c_dec:
            return "decomposable"
    return None


def pair_order(max_product_size: int) -> list[tuple[int, int, int, int]]:
    """(|P|, i, |Q|, j) for every unordered pair with 3 <= |P| <= |Q|, ascending."""
    out = []
    for a in range(3, max_product_size + 1):
        for b in range(a, max_product_size // a + 1):
            na, nb = len(enumerate_posets(a)), len(enumerate_posets(b))
            for i in range(na):
                for j in range(i if a == b else 0, nb):
                    out.append((a * b, a, i, b, j))
    out.sort()
    return [t[1:] for t in out]


def _audit_selected(key: tuple, rate: float) -> bool:
    h = hashlib.sha256(repr(key).encode()).digest()
    return int.from_bytes(h[:8], "big") / 2**64 < rate


def _solve_pair(args) -> dict:
    from .product import gap

    a, i, b, j = args
    p, q = enumerate_posets(a)[i], enumerate_posets(b)[j]
    t0 = time.perf_counter()
    r = gap(p, q, cap=a * b)
    ms = (time.perf_counter() - t0) * 1000
    rec = ScanRecord((canonical_form(p).hex(), canonical_form(q).hex()), r.alpha, r.theta, ms, r.nodes)
    return rec.to_json()


def check_variants_distinct() -> None:
    """The four optional-edge variants of the 9-element counterexample are pairwise non-isomorphic."""
    from .named import fig3_p

    forms = {canonical_form(fig3_p(v)) for v in range(4)}
    if len(forms) != 4:
        raise InternalInconsistency(f"counterexample variants collapse to {len(forms)} isomorphism types")


def scan_products(config: ScanConfig) -> ScanSummary:
    """Visit every pair with |P|*|Q| <= max_product_size; return gap > 0 records."""
    n = config.max_product_size
    check_variants_distinct()
    out_dir = Path(config.out_dir) if config.out_dir else None
    order = pair_order(n)
    summary = ScanSummary(pairs_total=len(order))
    start = 0
    records_path = cursor_path = None
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        records_path = out_dir / "records.jsonl"
        cursor_path = out_dir / "cursor.txt"
        meta = out_dir / "scan.json"
        if config.resume and cursor_path.exists():
            stored = json.loads(meta.read_text()) if meta.exists() else {}
            if stored.get("max_product_size") != n:
                raise ValueError("cannot resume a scan with a different product bound")
            start = int(cursor_path.read_text().split()[0])
            for line in records_path.read_text().splitlines() if records_path.exists() else []:
                rec = ScanRecord.from_json(json.loads(line))
                summary.solved += 1
                if rec.gap > 0:
                    summary.counterexamples.append(rec)
        else:
            meta.write_text(json.dumps({"max_product_size": n}) + "\n")
            records_path.write_text("")
            cursor_path.write_text("0\n")

    traits: dict[tuple[int, int], _Traits] = {}

    def t(nn: int, k: int) -> _Traits:
        key = (nn, k)
        if key not in traits:
            traits[key] = _Traits(enumerate_posets(nn)[k], config.decomposition_budget)
        return traits[key]

    deadline = None if config.max_seconds is None else time.monotonic() + config.max_seconds
    pool = Pool(config.jobs) if config.jobs > 1 else None
    pending: list[tuple[int, tuple]] = []

    def flush(cursor: int) -> None:
        if not pending:
            if cursor_path is not None:
                cursor_path.write_text(f"{cursor}\n")
            return
        jobs = [args for _, args in pending]
        results = pool.map(_solve_pair, jobs) if pool else [_solve_pair(a) for a in jobs]
        lines = []
        for (kind, args), res in zip(pending, results):
            rec = ScanRecord.from_json(res)
            if kind == "audit":
                summary.audited += 1
                if rec.gap != 0:
                    raise InternalInconsistency(f"filter misclassified pair {args}: gap {rec.gap}")
                continue
            summary.solved += 1
            lines.append(json.dumps(rec.to_json()))
            if rec.gap > 0:
                summary.counterexamples.append(rec)
                log.info("gap %d at %s", rec.gap, args)
        if records_path is not None and lines:
            with records_path.open("a") as fh:
                fh.write("\n".join(lines) + "\n")
        if cursor_path is not None:
            cursor_path.write_text(f"{cursor}\n")
        pending.clear()

    last_flush = time.monotonic()
    try:
        for idx in range(start, len(order)):
            a, i, b, j = order[idx]
            reason = gap_zero_reason(t(a, i), t(b, j))
            if reason is None:
                pending.append(("solve", (a, i, b, j)))
            else:
                summary.filtered += 1
                summary.filter_counts[reason] = summary.filter_counts.get(reason, 0) + 1
                if _audit_selected((a, i, b, j), config.audit_rate):
                    pending.append(("audit", (a, i, b, j)))
            if len(pending) >= config.checkpoint_every or time.monotonic() - last_flush > config.checkpoint_seconds:
                flush(idx + 1)
                last_flush = time.monotonic()
            if deadline is not None and time.monotonic() > deadline:
                flush(idx + 1)
                raise BudgetExceeded(f"time budget exhausted at pair {idx + 1} of {len(order)}")
        flush(len(order))
    finally:
        if pool is not None:
            pool.close()
    summary.counterexamples.sort(key=lambda r: r.pair)
    return summary


def verify_blowup_gaps(k_max: int) -> list[tuple[int, int]]:
    """Exact gap of the k-th blow-up of the small counterexample for k = 1..k_max."""
    from .named import blowup_counterexample
    from .product import gap

    out = []
    for k in range(1, k_max + 1):
        p, v = blowup_counterexample(k)
        out.append((k, gap(p, v).gap))
    return out
