"""Compare the compiled kernel with the pure-Python fallback.

    python3 benchmarks/bench_kernel.py [--repeat 3]

Times the two kernel primitives directly on both backends, then one
end-to-end solve (the realified oracle for a semi-commutant) in a
subprocess per backend, since the backend is fixed at import.
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import timeit

from consim import _kernel_py

try:
    from consim import _kernel_c
except ImportError:
    _kernel_c = None

END_TO_END = (
    "import time; from consim.commutant import commutant_oracle; from consim.nilstruct import Partition;"
    "t = time.perf_counter(); commutant_oracle(Partition([(5, 3), (4, 3), (3, 2)]));"
    "print(time.perf_counter() - t)"
)


def matmul_case(rng, n, bits):
    def ints():
        return [rng.getrandbits(bits) - (1 << (bits - 1)) for _ in range(n * n)]

    return ints(), ints(), ints(), ints(), n, n, n


def rref_case(rng, rows, cols, nnz):
    return [{rng.randrange(cols): rng.randint(-3, 3) or 1 for _ in range(nnz)} for _ in range(rows)]


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = [("python", _kernel_py)] + ([("cython", _kernel_c)] if _kernel_c else [])
    rng = random.Random(0)
    cases = [
        ("cmatmul 40x40, 16-bit", "cmatmul", matmul_case(rng, 40, 16)),
        ("cmatmul 40x40, 200-bit", "cmatmul", matmul_case(rng, 40, 200)),
        ("rref 400x300, 4 nnz/row", "rref", (rref_case(rng, 400, 300, 4),)),
        ("rref 1200x800, 3 nnz/row", "rref", (rref_case(rng, 1200, 800, 3),)),
    ]
    print(f"{'case':32} " + " ".join(f"{name:>10}" for name, _ in backends) + "   speedup")
    for label, fn_name, case in cases:
        times = [best(lambda mod=mod: getattr(mod, fn_name)(*case), args.repeat) for _, mod in backends]
        speed = f"{times[0] / times[-1]:8.1f}x" if len(times) > 1 else "       -"
        print(f"{label:32} " + " ".join(f"{t:10.4f}" for t in times) + "  " + speed)

    times = []
    for name, _ in backends:
        env = dict(os.environ)
        env.pop("CONSIM_PURE_PYTHON", None)
        if name == "python":
            env["CONSIM_PURE_PYTHON"] = "1"
        runs = [float(subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True).stdout) for _ in range(args.repeat)]
        times.append(min(runs))
    speed = f"{times[0] / times[-1]:8.1f}x" if len(times) > 1 else "       -"
    print(f"{'oracle 5:3,4:3,3:2 (end to end)':32} " + " ".join(f"{t:10.4f}" for t in times) + "  " + speed)


if __name__ == "__main__":
    main()
