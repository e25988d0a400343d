"""Time the compiled traveling-jet kernel against the numpy fallback.

Run from the repository root after an editable install:

    python3 benchmarks/bench_kernels.py --sizes 100 10000 1000000

Both implementations are imported directly, so the comparison works no
matter which backend the package itself selected at import time.
"""

import argparse
import time

import numpy as np

from vkwave._kernels import _traveling_py

try:
    from vkwave._kernels import _traveling_cy
except ImportError:
    _traveling_cy = None


def bench(fill, u, phi, omega, c, pts, repeats):
    out_w = np.empty((pts.shape[0], 35))
    out_phi = np.empty_like(out_w)
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fill(u, phi, omega, c, pts, out_w, out_phi)
        times.append(time.perf_counter() - t0)
    return min(times), out_w, out_phi


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 10_000, 1_000_000])
    ap.add_argument("--repeats", type=int, default=7)
    args = ap.parse_args()

    rng = np.random.default_rng(42)
    u = rng.uniform(-1, 1, 4)
    phi = rng.uniform(-1, 1, 4)
    omega, c = 3.3, 1.2

    if _traveling_cy is None:
        print("compiled extension not built; timing the fallback only")

    print(f"{'points':>10}  {'python':>12}  {'compiled':>12}  {'speedup':>8}")
    for n in args.sizes:
        pts = rng.uniform(-2, 2, (n, 3))
        t_py, w_py, p_py = bench(
            _traveling_py.traveling_jet_fill, u, phi, omega, c, pts, args.repeats
        )
        if _traveling_cy is None:
            print(f"{n:>10}  {t_py * 1e3:>10.3f}ms  {'-':>12}  {'-':>8}")
            continue
        t_cy, w_cy, p_cy = bench(
            _traveling_cy.traveling_jet_fill, u, phi, omega, c, pts, args.repeats
        )
        if not (np.allclose(w_py, w_cy, rtol=1e-13) and np.allclose(p_py, p_cy, rtol=1e-13)):
            raise SystemExit(f"backends disagree at n={n}")
        print(f"{n:>10}  {t_py * 1e3:>10.3f}ms  {t_cy * 1e3:>10.3f}ms  {t_py / t_cy:>7.2f}x")


if __name__ == "__main__":
    main()
