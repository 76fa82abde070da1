"""Pure-Python (numpy) census kernel, used when the extension is unavailable."""
import numpy as np


def census(q, c, r, M, table, a_lo, a_hi, only_beta=-1):
    """Counts per splitting type over a in [a_lo, a_hi), all b mod q^M.

    For each (beta, u) the middle congruence pins b to one class mod
    q^(r-beta), so only that class is visited.  An empty ``table`` asks for
    the plain total, where the b-sum is done by counting solutions of a
    linear congruence instead of visiting them.
    """
    Q = q**M
    c %= Q
    classify = len(table) > 0
    if not classify and M < 2 * r:
        raise ValueError("the counting path needs M >= 2r")
    lut = np.frombuffer(bytes(table), dtype=np.uint8) if classify else None
    counts = np.zeros(6, dtype=np.int64)
    total = 0
    for beta in range(r // 3 + 1):
        if only_beta >= 0 and beta != only_beta:
            continue
        qb = q**beta
        m_u = q ** (r - 2 * beta)
        m2 = q ** (r - beta)
        m3 = q ** (2 * r - 3 * beta)
        c3 = 1 if r == 3 * beta else 0
        u_all = np.arange(m_u, dtype=np.int64)
        j = np.arange(Q // m2, dtype=np.int64)[None, :]
        for a in range(a_lo, a_hi):
            s2 = a + 3 * u_all
            u = u_all[s2 % qb == 0]
            if u.size == 0:
                continue
            k2 = (-(s2[s2 % qb == 0] // qb)) % q
            s1 = 3 * u * u + 2 * a * u
            if not classify:
                # b = b0 + m2 j; the last congruence is linear in j
                b0 = (-s1) % m2
                t = u * u * u + a * u * u + b0 * u + c
                g = np.gcd(m2 * u, m3)
                total += int(((t % g == 0) * ((Q // m2) * g // m3)).sum())
                continue
            b = ((-s1) % m2)[:, None] + m2 * j
            uc = u[:, None]
            t = uc * uc * uc + a * uc * uc + b * uc + c
            hit = t % m3 == 0
            k1 = ((s1[:, None] + b) // m2) % q
            k0 = (-(t // m3)) % q
            idx = ((c3 * q + k2[:, None]) * q + k1) * q + k0
            counts += np.bincount(lut[idx[hit]], minlength=6)[:6]
    if not classify:
        return [total]
    return [int(x) for x in counts]
