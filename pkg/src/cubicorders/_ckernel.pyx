# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled census kernel; mirrors cubicorders._kernel_py.census."""


cdef inline long long gcd(long long x, long long y) nogil:
    while y:
        x, y = y, x % y
    return x


cdef inline long long pmod(long long x, long long m) nogil:
    x %= m
    return x + m if x < 0 else x


cdef long long inverse(long long x, long long n) nogil:
    """x^-1 mod n for gcd(x, n) = 1."""
    cdef long long r0 = n, r1 = pmod(x, n), s0 = 0, s1 = 1, quo, tmp
    while r1:
        quo = r0 // r1
        tmp = r0 - quo * r1
        r0, r1 = r1, tmp
        tmp = s0 - quo * s1
        s0, s1 = s1, tmp
    return pmod(s0, n)


def census(long long q, long long c, int r, int M, const unsigned char[:] table,
           long long a_lo, long long a_hi, int only_beta=-1):
    """Counts per splitting type (or the plain total when table is empty).

    ``only_beta >= 0`` restricts the scan to one beta stratum.
    """
    cdef long long counts[6]
    cdef long long total = 0
    cdef long long Q = q ** M
    cdef long long q2 = q * q, q3 = q * q * q
    cdef int beta
    cdef long long qb, m_u, m2, m3, a, u, b0, s2, s1, t, k2, k1, k0
    cdef long long g, step, period, j, j0, nj, base1
    cdef long long c3
    cdef bint classify = table.shape[0] > 0
    if not classify and M < 2 * r:
        raise ValueError("the counting path needs M >= 2r")
    cdef int i
    for i in range(6):
        counts[i] = 0
    c = pmod(c, Q)
    for beta in range(r // 3 + 1):
        if only_beta >= 0 and beta != only_beta:
            continue
        qb = q ** beta
        m_u = q ** (r - 2 * beta)
        m2 = q ** (r - beta)
        m3 = q ** (2 * r - 3 * beta)
        c3 = 1 if r == 3 * beta else 0
        for a in range(a_lo, a_hi):
            for u in range(m_u):
                s2 = a + 3 * u
                if s2 % qb:
                    continue
                k2 = pmod(-(s2 // qb), q)
                s1 = 3 * u * u + 2 * a * u
                b0 = pmod(-s1, m2)
                # b = b0 + m2 j and the last congruence is linear in j
                t = u * u * u + a * u * u + b0 * u + c
                step = m2 * u
                g = gcd(step, m3)
                if t % g:
                    continue
                period = m3 // g
                nj = Q // m2
                if not classify:
                    total += nj // period
                    continue
                j0 = pmod(-(t // g), period) * inverse(step // g, period) % period
                base1 = (s1 + b0) // m2
                for j in range(j0, nj, period):
                    k1 = (base1 + j) % q
                    k0 = pmod(-((t + j * step) // m3), q)
                    counts[table[((c3 * q + k2) * q + k1) * q + k0]] += 1
    if not classify:
        return [total]
    return [counts[i] for i in range(6)]
