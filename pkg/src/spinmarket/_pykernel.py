"""Pure-Python batch update kernel (fallback when the extension is absent).

Implements the same algorithm as ``spinmarket._ckernel`` with the same RNG
(xoshiro256++ / Box-Muller) and the same floating-point expression shapes,
so the two backends produce bit-identical runs.  Roughly two orders of
magnitude slower than the compiled kernel; see benchmarks/kernel_benchmark.py.
"""

from __future__ import annotations

from math import cos, log, sqrt

import numpy as np

NAME = "python"

_MASK64 = 0xFFFFFFFFFFFFFFFF
_TWO_PI = 6.283185307179586
_INV_2_53 = 1.0 / 9007199254740992.0


def run_steps(
    cells: np.ndarray,
    side: int,
    spin_sum: int,
    zero_count: int,
    coupling: float,
    sigma: float,
    lam: float,
    frozen: bool,
    n_steps: int,
    state: np.ndarray,
    m_out: np.ndarray | None = None,
    zeros_out: np.ndarray | None = None,
) -> tuple[int, int]:
    """Advance the lattice by ``n_steps`` full time steps in place.

    One time step = ``side*side`` single-site updates, each on a uniformly
    random site with one fresh normal noise draw.  ``state`` (uint64[4]) is
    the RNG state, mutated in place.  When given, ``m_out``/``zeros_out``
    receive the magnetization / inactive-site count after each step.
    Returns the updated (spin_sum, zero_count).
    """
    n = side * side
    c = [int(v) for v in cells]
    s0, s1, s2, s3 = (int(w) for w in state)

    def nxt():
        nonlocal s0, s1, s2, s3
        x = (s0 + s3) & _MASK64
        result = (((x << 23) | (x >> 41)) + s0) & _MASK64
        t = (s1 << 17) & _MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = ((s3 << 45) | (s3 >> 19)) & _MASK64
        return result

    # neighbor index tables (4-nearest with periodic wraparound)
    up = [0] * n
    down = [0] * n
    left = [0] * n
    right = [0] * n
    for i in range(n):
        row, col = divmod(i, side)
        up[i] = (n - side + col) if row == 0 else (i - side)
        down[i] = col if row == side - 1 else (i + side)
        left[i] = (i + side - 1) if col == 0 else (i - 1)
        right[i] = (i - side + 1) if col == side - 1 else (i + 1)

    mask = (1 << (n - 1).bit_length()) - 1

    for k in range(n_steps):
        if frozen:
            q = lam * abs(spin_sum / n)
        for _ in range(n):
            i = nxt() & mask
            while i >= n:
                i = nxt() & mask
            a = nxt()
            b = nxt()
            u1 = ((a >> 11) + 1) * _INV_2_53
            u2 = (b >> 11) * _INV_2_53
            z = sqrt(-2.0 * log(u1)) * cos(_TWO_PI * u2)
            if not frozen:
                q = lam * abs(spin_sum / n)
            nsum = c[up[i]] + c[down[i]] + c[left[i]] + c[right[i]]
            x = coupling * nsum + sigma * z
            old = c[i]
            if x > q:
                new = 1
            elif x < -q:
                new = -1
            else:
                new = 0
            c[i] = new
            spin_sum += new - old
            zero_count += (new == 0) - (old == 0)
        if m_out is not None:
            m_out[k] = spin_sum / n
        if zeros_out is not None:
            zeros_out[k] = zero_count

    cells[:] = c
    state[0] = s0
    state[1] = s1
    state[2] = s2
    state[3] = s3
    return spin_sum, zero_count
