#!/usr/bin/env python3
"""Benchmark the two exact-rational backends (gmpy2.mpq vs
fractions.Fraction) on representative workloads: the refined recursion,
the graph engine, and q-series transcendentals.

Each workload runs in a fresh subprocess with REFSEV_RATIONAL_BACKEND set,
since the backend is chosen at import time.

Usage: python scripts/bench_rationals.py [--repeat N]
"""
import argparse
import os
import subprocess
import sys

WORKLOADS = {
    "ch-recursion": (
        "from refsev.caporaso import Sigma, severi_degree, CHTable\n"
        "t = CHTable()\n"
        "for delta in range(5):\n"
        "    for d in range(1, 7):\n"
        "        severi_degree(Sigma(2, 4, d), delta, table=t)\n"
    ),
    "graph-engine": (
        "from refsev.graphs import refined_count, q_log_count, s_beta\n"
        "for delta in range(1, 5):\n"
        "    refined_count(s_beta(3, 2, 5), delta)\n"
        "    q_log_count(s_beta(0, 1, 8), delta)\n"
    ),
    "q-series": (
        "from refsev.modular import dgtilde2, delta_tilde\n"
        "from refsev.qseries import compose_inverse\n"
        "from refsev.rationals import QQ\n"
        "dt = delta_tilde(24)\n"
        "root = (dt * dgtilde2(24).D()).pow(QQ(1, 2))\n"
        "g = compose_inverse(dgtilde2(14))\n"
    ),
}


def run_one(backend: str, code: str) -> float:
    env = dict(os.environ, REFSEV_RATIONAL_BACKEND=backend)
    snippet = (
        "import time\n"
        "t0 = time.perf_counter()\n"
        + code +
        "print(time.perf_counter() - t0)\n"
    )
    out = subprocess.run([sys.executable, "-c", snippet], env=env,
                         capture_output=True, text=True, check=True)
    return float(out.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'workload':<14} {'gmpy2':>9} {'fraction':>9}  ratio")
    for name, code in WORKLOADS.items():
        times = {}
        for backend in ("gmpy2", "fraction"):
            times[backend] = min(run_one(backend, code) for _ in range(args.repeat))
        ratio = times["fraction"] / times["gmpy2"]
        print(f"{name:<14} {times['gmpy2']:>8.3f}s {times['fraction']:>8.3f}s  {ratio:>4.1f}x")


if __name__ == "__main__":
    main()
