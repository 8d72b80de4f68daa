"""Resumable exhaustive scan; a thin wrapper that also prints the filter statistics."""
import argparse
import logging
from pathlib import Path

from pdl.scan import ScanConfig, scan_products


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-product", type=int, default=16)
    ap.add_argument("--out", type=Path, default=Path("scan-out"))
    ap.add_argument("--resume", action="store_true")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--audit-rate", type=float, default=0.01)
    ap.add_argument("--max-seconds", type=float, default=None)
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")
    cfg = ScanConfig(max_product_size=args.max_product, out_dir=args.out, resume=args.resume,
                     jobs=args.jobs, audit_rate=args.audit_rate, max_seconds=args.max_seconds)
    s = scan_products(cfg)
    print(f"pairs {s.pairs_total}  filtered {s.filtered}  solved {s.solved}  audited {s.audited}")
    for reason, count in sorted(s.filter_counts.items()):
        print(f"  {reason:20s} {count}")
    for r in s.counterexamples:
        print(f"gap {r.gap}: alpha={r.alpha} theta={r.theta} pair={r.pair[0]} {r.pair[1]}")


if __name__ == "__main__":
    main()
