"""Time the compiled integer kernels against their plain-Python twins.

The package picks the compiled path automatically; SRCOX_NO_NUMBA=1
forces the fallback.  This script times both implementations in one
process on real boundary matrices and random dense profiles, checking
that they agree before reporting.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from srcox import _kernels
from srcox.complex_core import gen_random_flag
from srcox.homology import _faces_by_dim, boundary_matrix


def boundary_cases():
    for n, density, r in ((12, 0.5, 2), (14, 0.45, 2), (16, 0.35, 2)):
        cpx = gen_random_flag(n, density, seed=n)
        levels = _faces_by_dim(sorted(cpx.faces()))
        M = boundary_matrix(levels, r)
        if M.size:
            yield f"boundary n={n} {M.shape[0]}x{M.shape[1]}", M


def dense_cases(rng):
    for size, lim in ((25, 4), (35, 3)):
        M = rng.integers(-lim, lim + 1, size=(size, size), dtype=np.int64)
        yield f"dense {size}x{size} |a|<={lim}", M


def best_of(fn, arg, repeat):
    out = None
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*arg)
        best = min(best, time.perf_counter() - t0)
    return out, best


def run(name, fast, slow, arg, repeat):
    got_fast, t_fast = best_of(fast, arg, repeat)
    got_slow, t_slow = best_of(slow, arg, repeat)
    if not isinstance(got_fast, tuple):
        got_fast, got_slow = (got_fast,), (got_slow,)
    agree = all(np.array_equal(a, b) for a, b in zip(got_fast, got_slow))
    ratio = t_slow / t_fast if t_fast > 0 else float("inf")
    print(f"{name:34s} {t_fast * 1e3:9.3f} {t_slow * 1e3:9.3f} "
          f"{ratio:7.1f}x {'ok' if agree else 'MISMATCH'}")
    return agree


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5,
                    help="timing repetitions, best is kept (default 5)")
    args = ap.parse_args()

    if not _kernels.USE_JIT:
        print("compiled path unavailable or disabled "
              "(SRCOX_NO_NUMBA set, or numba missing); nothing to compare")
        return
    _kernels.warmup()

    rng = np.random.default_rng(7)
    cases = list(boundary_cases())
    header = f"{'case':34s} {'jit ms':>9s} {'pure ms':>9s} {'ratio':>8s}"
    ok = True

    print("smith normal form")
    print(header)
    for name, M in cases:
        ok &= run(name, _kernels.snf_diag, _kernels._snf_diag,
                  (M.copy(),), args.repeat)

    print("\nrank mod p (p = 2)")
    print(header)
    for name, M in cases:
        ok &= run(name, _kernels.rank_modp, _kernels._rank_modp,
                  (M.copy(), 2), args.repeat)

    print("\nfraction-free rank")
    print(header)
    for name, M in dense_cases(rng):
        ok &= run(name, _kernels.bareiss_rank, _kernels._bareiss_rank,
                  (M.copy(),), args.repeat)

    if not ok:
        raise SystemExit("kernel outputs disagree")


if __name__ == "__main__":
    main()
