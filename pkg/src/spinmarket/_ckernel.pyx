# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch update kernel.

Mirrors spinmarket._pykernel line for line: same xoshiro256++ / Box-Muller
stream, same draw order, same floating-point expression shapes (the build
disables fp contraction).  Both backends produce bit-identical runs for the
same seed; tests/test_backends.py enforces this.
"""

from libc.math cimport cos, fabs, log, sqrt
from libc.stdint cimport int64_t, uint64_t

NAME = "compiled"

cdef double TWO_PI = 6.283185307179586
cdef double INV_2_53 = 1.0 / 9007199254740992.0


cdef inline uint64_t rotl(uint64_t x, int k) noexcept nogil:
    return (x << k) | (x >> (64 - k))


cdef inline uint64_t next_u64(uint64_t* s) noexcept nogil:
    cdef uint64_t result = rotl(s[0] + s[3], 23) + s[0]
    cdef uint64_t t = s[1] << 17
    s[2] ^= s[0]
    s[3] ^= s[1]
    s[1] ^= s[2]
    s[0] ^= s[3]
    s[2] ^= t
    s[3] = rotl(s[3], 45)
    return result


cdef inline double next_normal(uint64_t* s) noexcept nogil:
    cdef uint64_t a = next_u64(s)
    cdef uint64_t b = next_u64(s)
    cdef double u1 = <double>((a >> 11) + 1) * INV_2_53
    cdef double u2 = <double>(b >> 11) * INV_2_53
    return sqrt(-2.0 * log(u1)) * cos(TWO_PI * u2)


def run_steps(
    signed char[::1] cells,
    int side,
    long long spin_sum,
    long long zero_count,
    double coupling,
    double sigma,
    double lam,
    bint frozen,
    long long n_steps,
    uint64_t[::1] state,
    double[::1] m_out=None,
    int64_t[::1] zeros_out=None,
):
    """Advance the lattice by n_steps full time steps in place.

    Same contract as spinmarket._pykernel.run_steps.
    """
    cdef long long n = <long long>side * side
    cdef uint64_t s[4]
    cdef uint64_t mask, i, a, b
    cdef long long k, j, row, col, nsum, ssum, zcount
    cdef int old, new
    cdef double q = 0.0
    cdef double u1, u2, z, x
    cdef bint rec_m = m_out is not None
    cdef bint rec_z = zeros_out is not None

    s[0] = state[0]
    s[1] = state[1]
    s[2] = state[2]
    s[3] = state[3]
    ssum = spin_sum
    zcount = zero_count

    # smallest (2^k - 1) >= n - 1, for masked rejection sampling
    mask = <uint64_t>(n - 1)
    mask |= mask >> 1
    mask |= mask >> 2
    mask |= mask >> 4
    mask |= mask >> 8
    mask |= mask >> 16
    mask |= mask >> 32

    with nogil:
        for k in range(n_steps):
            if frozen:
                q = lam * fabs(<double>ssum / <double>n)
            for j in range(n):
                i = next_u64(s) & mask
                while i >= <uint64_t>n:
                    i = next_u64(s) & mask
                a = next_u64(s)
                b = next_u64(s)
                u1 = <double>((a >> 11) + 1) * INV_2_53
                u2 = <double>(b >> 11) * INV_2_53
                z = sqrt(-2.0 * log(u1)) * cos(TWO_PI * u2)
                if not frozen:
                    q = lam * fabs(<double>ssum / <double>n)
                row = <long long>i / side
                col = <long long>i - row * side
                nsum = cells[(n - side + col) if row == 0 else (<long long>i - side)]
                nsum += cells[col if row == side - 1 else (<long long>i + side)]
                nsum += cells[(<long long>i + side - 1) if col == 0 else (<long long>i - 1)]
                nsum += cells[(<long long>i - side + 1) if col == side - 1 else (<long long>i + 1)]
                x = coupling * <double>nsum + sigma * z
                old = cells[i]
                if x > q:
                    new = 1
                elif x < -q:
                    new = -1
                else:
                    new = 0
                cells[i] = <signed char>new
                ssum += new - old
                zcount += (new == 0) - (old == 0)
            if rec_m:
                m_out[k] = <double>ssum / <double>n
            if rec_z:
                zeros_out[k] = zcount

    state[0] = s[0]
    state[1] = s[1]
    state[2] = s[2]
    state[3] = s[3]
    return ssum, zcount
