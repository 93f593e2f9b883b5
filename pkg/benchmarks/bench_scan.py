"""Compare the compiled and pure-Python enumeration kernels on pencil scans.

    python benchmarks/bench_scan.py [--repeat N]

Each case scans all p + 1 members of the standard pencil over F_{p^m}, which
is (p + 1) * (q^2 + q + 1) point evaluations of four forms.
"""

import argparse
import time

from kvwitness import _ext
from kvwitness.pencil import build_standard_pencil, field
from kvwitness.pencil.forms import pack_forms

CASES = [(5, 2), (5, 3), (7, 2), (7, 3), (11, 2)]


def _inputs(p, m):
    spec = build_standard_pencil(p)
    F = field(p, m)
    out = []
    for t in [*range(p), None]:
        f = spec.member(t).embed(F)
        forms = [f, *f.gradient()]
        terms, offsets = pack_forms(forms)
        out.append((F.q, 3, F.add_table, F.mul_table, terms, offsets))
    return out


def _time(fn, inputs, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = [fn(*args) for args in inputs]
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _ext.common_zeros_compiled is None:
        print("compiled kernel not built; only the Python kernel is timed")
    print(f"{'field':>10} {'points':>8} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for p, m in CASES:
        inputs = _inputs(p, m)
        q = p**m
        py_t, py_r = _time(_ext.common_zeros_python, inputs, args.repeat)
        if _ext.common_zeros_compiled is None:
            print(f"{f'F_{p}^{m}':>10} {q * q + q + 1:>8} {py_t:>10.4f} {'-':>10} {'-':>8}")
            continue
        cy_t, cy_r = _time(_ext.common_zeros_compiled, inputs, args.repeat)
        assert [list(map(tuple, r)) for r in py_r] == [list(map(tuple, r)) for r in cy_r]
        print(f"{f'F_{p}^{m}':>10} {q * q + q + 1:>8} {py_t:>10.4f} {cy_t:>10.4f} {py_t / cy_t:>7.1f}x")


if __name__ == "__main__":
    main()
