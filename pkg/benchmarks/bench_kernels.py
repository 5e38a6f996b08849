"""Compare the numba and pure-numpy series kernels.

The kernel path is chosen at import time from ``PARSHIN_JIT``, so each
path runs in its own subprocess; the parent collects the timings.

    python3 benchmarks/bench_kernels.py [--sizes 100,400,1600] [--repeat 5]
"""

import argparse
import json
import os
import subprocess
import sys
import time

CASES = [
    ("p=2 d=1 N=4", 2, 1, 4, (0,)),
    ("p=3 d=2 N=3", 3, 2, 27, (1, 1)),
    ("p=2 d=3 N=3", 2, 3, 8, (1, 1, 0)),
]


def _random_terms(rng, n, d, pe):
    import numpy as np

    exps = rng.integers(-50, 51, size=(n, 2)).astype(np.int64)
    coefs = rng.integers(0, pe, size=(n, d)).astype(np.int64)
    return exps, coefs


def run_worker(sizes, repeat):
    import numpy as np

    from parshin import kernels

    rng = np.random.default_rng(0)
    rows = []
    for label, p, d, pe, modred in CASES:
        mr = np.array(modred, np.int64)
        for n in sizes:
            eA, cA = _random_terms(rng, n, d, pe)
            eB, cB = _random_terms(rng, n, d, pe)
            kernels.series_conv(eA, cA, eB, cB, mr, pe)  # warm up / compile
            best = min(
                _timed(kernels.series_conv, eA, cA, eB, cB, mr, pe)
                for _ in range(repeat)
            )
            rows.append({"case": label, "n": n, "seconds": best})
    print(json.dumps({"jit": kernels.JIT_ENABLED, "rows": rows}))


def _timed(fn, *args):
    t0 = time.perf_counter()
    fn(*args)
    return time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="100,400,1600")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    if args.worker:
        run_worker(sizes, args.repeat)
        return

    results = {}
    for flag in ("1", "0"):
        env = dict(os.environ, PARSHIN_JIT=flag)
        out = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--worker",
             "--sizes", args.sizes, "--repeat", str(args.repeat)],
            env=env, capture_output=True, text=True, check=True,
        )
        results[flag] = json.loads(out.stdout.strip().splitlines()[-1])

    if not results["1"]["jit"]:
        print("note: numba unavailable; both runs used the numpy fallback")
    print(f"{'case':<14} {'n':>6} {'numba (s)':>12} {'numpy (s)':>12} {'speedup':>9}")
    for rj, rn in zip(results["1"]["rows"], results["0"]["rows"]):
        assert (rj["case"], rj["n"]) == (rn["case"], rn["n"])
        ratio = rn["seconds"] / rj["seconds"] if rj["seconds"] else float("inf")
        print(
            f"{rj['case']:<14} {rj['n']:>6} {rj['seconds']:>12.6f} "
            f"{rn['seconds']:>12.6f} {ratio:>8.2f}x"
        )


if __name__ == "__main__":
    main()
