"""Compare the compiled and numpy bias kernels on axis scans and plane grids.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--n 200000]
"""
import argparse
import timeit

import numpy as np

from qglue import _kernels
from qglue._kernels import _bloch_py

try:
    from qglue._kernels import _bloch_ext
except ImportError:
    _bloch_ext = None


def cases(n):
    t = np.linspace(-1.0, 1.0, n)
    lo, hi = 1.0 + t, 1.0 - t
    side = int(np.sqrt(n))
    g = np.linspace(-1.0, 1.0, side)
    xx, zz = np.meshgrid(g, g, indexing="ij")
    inside = xx**2 + zz**2 <= 1.0
    xs, zs = xx[inside], zz[inside]
    return {
        "axis amplitude_z": lambda impl: _kernels.axis_bias("amplitude_z", 0.25, 0.2, lo, hi, impl=impl),
        "axis dephasing_z": lambda impl: _kernels.axis_bias("dephasing_z", 0.25, 0.15, lo, hi, impl=impl),
        "axis dephasing_x": lambda impl: _kernels.axis_bias("dephasing_x", 0.25, 0.15, lo, hi, impl=impl),
        "plane amplitude": lambda impl: _kernels.plane_bias("amplitude", 0.25, 0.2, xs, zs, impl=impl),
        "plane dephasing": lambda impl: _kernels.plane_bias("dephasing", 0.25, 0.15, xs, zs, impl=impl),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=200_000, help="points per call")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    impls = {"python": _bloch_py}
    if _bloch_ext is not None:
        impls["cython"] = _bloch_ext
    else:
        print("compiled extension not built; timing the numpy kernels only")

    print(f"{'case':<20}" + "".join(f"{k + ' [ms]':>14}" for k in impls) + f"{'speedup':>10}{'max diff':>12}")
    for name, fn in cases(args.n).items():
        best, outs = {}, {}
        for k, impl in impls.items():
            outs[k] = fn(impl)
            best[k] = 1e3 * min(timeit.repeat(lambda: fn(impl), number=1, repeat=args.repeat))
        row = f"{name:<20}" + "".join(f"{best[k]:>14.2f}" for k in impls)
        if "cython" in impls:
            diff = np.nanmax(np.abs(outs["cython"] - outs["python"]))
            row += f"{best['python'] / best['cython']:>9.1f}x{diff:>12.1e}"
        print(row)


if __name__ == "__main__":
    main()
