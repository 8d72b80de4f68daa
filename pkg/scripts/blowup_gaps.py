"""Exact gaps of the blown-up pairs (P'_k, V'_k) over all optional-edge variants.

k=2 takes between a couple of seconds and half a minute per variant; k=3
(91 vertices) is much slower and needs PDL_VERTEX_CAP unchanged (128).
"""
import argparse
import time

from pdl.named import blowup_counterexample
from pdl.poset import dual
from pdl.product import gap


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k-max", type=int, default=2)
    ap.add_argument("--variants", type=int, nargs="*", default=[0, 1, 2, 3])
    ap.add_argument("--dual-v", action="store_true", help="also try the dual of V'")
    args = ap.parse_args()
    for k in range(1, args.k_max + 1):
        for var in args.variants:
            p, v = blowup_counterexample(k, var)
            for label, q in [("V'", v)] + ([("V'-dual", dual(v))] if args.dual_v else []):
                t0 = time.perf_counter()
                r = gap(p, q)
                print(f"k={k} variant={var} {label:8s} |P'|={p.n:2d} alpha={r.alpha} theta={r.theta} "
                      f"gap={r.gap} (expected {k})  {time.perf_counter() - t0:.1f}s", flush=True)


if __name__ == "__main__":
    main()
