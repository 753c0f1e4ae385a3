"""Time the numba kernels against their numpy fallbacks.

Usage::

    python benchmarks/bench_kernels.py              # kernel micro-benchmarks
    python benchmarks/bench_kernels.py --campaign   # plus an end-to-end sweep per backend

The end-to-end run starts a fresh interpreter per backend, since the backend
is chosen from FRACINEQ_NUMBA at import time.
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from fracineq import _kernels

CAMPAIGN_SNIPPET = """
import time
from fracineq.funclib import builtin_suite
from fracineq.harness import CampaignConfig, run_campaign
ids = tuple(fs.id for fs in builtin_suite())
t0 = time.perf_counter()
run_campaign(CampaignConfig(function_ids=ids, random_instances={n}, seed=1))
print(time.perf_counter() - t0)
"""


def workloads(rng):
    panels = 400
    fx = rng.random((panels, 21))
    hw = rng.random(panels) * 0.1
    m = 20000
    c1, c2 = rng.random(m), rng.random(m)
    g1, g2, gm = rng.random(m), rng.random(m), rng.random(m)
    valid = np.ones(m, dtype=bool)
    a = 0.25 + 4 * rng.random(5000)
    b = 0.25 + 4 * rng.random(5000)
    x = rng.random(5000) * 0.5
    return {
        "gk21_panels": (fx, hw),
        "defect_extreme": (c1, g1, c2, g2, gm, 1.0, valid),
        "betacf": (a, b, x),
    }


def max_rel_diff(u, w):
    if isinstance(u, tuple):
        return max(max_rel_diff(p, q) for p, q in zip(u, w))
    u, w = np.asarray(u, dtype=float), np.asarray(w, dtype=float)
    return float(np.max(np.abs(u - w) / np.maximum(np.abs(u), 1e-300)))


def bench_kernels(repeat):
    args = workloads(np.random.default_rng(0))
    print(f"{'kernel':16s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s}  max rel diff")
    for name, a in args.items():
        fast = _kernels.IMPLEMENTATIONS["numba"][name]
        slow = _kernels.IMPLEMENTATIONS["numpy"][name]
        fast(*a)  # compile outside the timed region
        t_np = min(timeit.repeat(lambda: slow(*a), number=5, repeat=repeat)) / 5
        t_nb = min(timeit.repeat(lambda: fast(*a), number=5, repeat=repeat)) / 5
        print(f"{name:16s} {1e3 * t_np:10.3f} {1e3 * t_nb:10.3f} {t_np / t_nb:8.2f}  {max_rel_diff(slow(*a), fast(*a)):.1e}")


def bench_campaign(n):
    print(f"\nend-to-end campaign, {n} random instances per theorem")
    for flag in ("0", "1"):
        env = dict(os.environ, FRACINEQ_NUMBA=flag)
        out = subprocess.run([sys.executable, "-c", CAMPAIGN_SNIPPET.format(n=n)], env=env,
                             capture_output=True, text=True, check=True).stdout
        print(f"  FRACINEQ_NUMBA={flag}: {float(out):.2f}s")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--campaign", action="store_true")
    ap.add_argument("--instances", type=int, default=200)
    args = ap.parse_args()
    bench_kernels(args.repeat)
    if args.campaign:
        bench_campaign(args.instances)


if __name__ == "__main__":
    main()
