"""Exact integer linear algebra: ranks and the skew normal form.

No floating point anywhere; Python integers keep everything exact.
"""

from __future__ import annotations

from math import gcd


def rank_int(mat: list[list[int]]) -> int:
    """Rank over the rationals, by fraction-free elimination with gcd
    normalization to keep entries small."""
    m = [list(row) for row in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    rank = 0
    for col in range(cols):
        piv = None
        for r in range(rank, rows):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][col]
        for r in range(rank + 1, rows):
            if m[r][col]:
                g = gcd(pv, m[r][col])
                a, b = pv // g, m[r][col] // g
                m[r] = [a * x - b * y for x, y in zip(m[r], m[rank])]
                gg = 0
                for x in m[r]:
                    gg = gcd(gg, x)
                if gg > 1:
                    m[r] = [x // gg for x in m[r]]
        rank += 1
        if rank == rows:
            break
    return rank


def rank_mod_p(mat: list[list[int]], p: int) -> int:
    """Rank over the field Z/p."""
    m = [[x % p for x in row] for row in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    rank = 0
    for col in range(cols):
        piv = None
        for r in range(rank, rows):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], p - 2, p) if p > 2 else m[rank][col]
        m[rank] = [(x * inv) % p for x in m[rank]]
        for r in range(rank + 1, rows):
            f = m[r][col]
            if f:
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def skew_normal_form(mat: list[list[int]]) -> tuple[list[int], list[list[int]]]:
    """Bring an integer skew-symmetric matrix A to block form by a
    unimodular congruence U A U^T = diag([[0,d1],[-d1,0]], ...) + 0.

    Returns (block divisors d1|d2|..., U).
    """
    n = len(mat)
    m = [list(row) for row in mat]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap(a: int, b: int) -> None:
        if a == b:
            return
        m[a], m[b] = m[b], m[a]
        for row in m:
            row[a], row[b] = row[b], row[a]
        u[a], u[b] = u[b], u[a]

    def addmul(dst: int, src: int, q: int) -> None:
        # basis change e_dst <- e_dst + q e_src
        if q == 0:
            return
        for row in m:
            row[dst] += q * row[src]
        m[dst] = [x + q * y for x, y in zip(m[dst], m[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    divisors: list[int] = []
    k = 0
    while True:
        best = None
        for i in range(k, n):
            for j in range(k, n):
                if m[i][j] and (best is None or abs(m[i][j]) < abs(best[2])):
                    best = (i, j, m[i][j])
        if best is None:
            break
        i, j, _ = best
        swap(i, k)
        if j == k:
            j = i
        swap(j, k + 1)
        if m[k][k + 1] < 0:
            swap(k, k + 1)
        clean = True
        d = m[k][k + 1]
        for i in range(k + 2, n):
            q1 = m[k][i] // d
            addmul(i, k + 1, -q1)
            q2 = m[k + 1][i] // d
            addmul(i, k, q2)
            if m[k][i] or m[k + 1][i]:
                clean = False
        if clean:
            divisors.append(d)
            k += 2
    return divisors, u
