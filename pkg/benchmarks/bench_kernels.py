"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Also times one full momentum-density report so the effect on end-to-end
work is visible, and checks that both backends agree.
"""
import argparse
import time

import numpy as np

from pseudoharmonic import _backend
from pseudoharmonic import info_measures as im
from pseudoharmonic.quantum_solver import make_orbital


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    z = np.linspace(0.0, 60.0, 20001)
    return {
        "laguerre n=40": lambda: _backend.laguerre_array(40, 1.3, z),
        "hermite n=41": lambda: _backend.hermite_array(41, z),
        "kummer p=-7.3 q=0.5": lambda: _backend.kummer_series_scaled(-7.3, 0.5, 0.5 * z * z / 10.0),
        "kummer p=12.25 q=1.5": lambda: _backend.kummer_series_scaled(12.25, 1.5, z),
        "measure report a=1 n=3": lambda: im.measure_report(make_orbital(1.0, 3)),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = _backend.available()
    results = {}
    outputs = {}
    for b in backends:
        _backend.use(b)
        im._waveform.cache_clear()
        for label, fn in cases().items():
            results[(label, b)] = best_of(fn, args.repeat)
            outputs[(label, b)] = fn()
    print(f"{'kernel':28s}" + "".join(f"{b:>12s}" for b in backends) + "     speedup")
    for label in cases():
        row = f"{label:28s}" + "".join(f"{results[(label, b)] * 1e3:10.2f}ms" for b in backends)
        if "cython" in backends:
            row += f"  {results[(label, 'python')] / results[(label, 'cython')]:8.1f}x"
        print(row)
    if "cython" in backends:
        for label in cases():
            a, b = outputs[(label, "python")], outputs[(label, "cython")]
            if isinstance(a, tuple):
                a, b = a[0], b[0]
            if isinstance(a, np.ndarray):
                diff = float(np.max(np.abs(a - b) / np.maximum(np.abs(a), 1e-300)))
                print(f"max relative backend difference, {label}: {diff:.1e}")
    else:
        print("compiled kernels not built; only the numpy fallback was timed")


if __name__ == "__main__":
    main()
