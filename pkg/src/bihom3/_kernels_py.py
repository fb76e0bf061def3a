"""Pure-Python implementations of the hot loops.

These accept any exact scalars (ints, Fractions, Gaussian rationals) and
serve as the fallback when the compiled ``_kernels`` extension is missing,
and as the reference the compiled kernels are tested against.
"""

from __future__ import annotations

import itertools


def jacobi_scan(outer, inner, n):
    """Count basis 5-tuples violating the 3-BiHom-Jacobi identity.

    ``outer[a][b]`` is an ``n x n`` matrix (rows = output coordinates) and
    ``inner[x][y][z]`` a length-``n`` vector.  Returns ``(count, first)``
    where ``first`` is the lexicographically first failing ``(u, v, x, y, z)``
    or ``None``.
    """
    rng = range(n)
    # q[a][b][c][d][e] = outer[a][b] . inner[c][d][e]
    q = [
        [
            [
                [
                    [tuple(sum(p * w for p, w in zip(row, vec) if p and w) for row in outer[a][b]) for vec in inner[c][d]]
                    for d in rng
                ]
                for c in rng
            ]
            for b in rng
        ]
        for a in rng
    ]
    count = 0
    first = None
    for u, v, x, y, z in itertools.product(rng, repeat=5):
        lhs = q[u][v][x][y][z]
        r1 = q[y][z][u][v][x]
        r2 = q[x][z][u][v][y]
        r3 = q[x][y][u][v][z]
        for i in rng:
            if lhs[i] != r1[i] - r2[i] + r3[i]:
                count += 1
                if first is None:
                    first = (u, v, x, y, z)
                break
    return count, first


def box_square_search(n, bound, free_pos, dep_pos, dep_num, denom, sign):
    """Integer points of a linear family whose square is ``sign * Id``.

    The family is parametrized by the entries at ``free_pos`` (flat indices
    into an ``n x n`` matrix), each ranging over ``[-bound, bound]``.  Entry
    ``dep_pos[d]`` equals ``sum_f dep_num[d][f] * free[f] / denom`` and must
    be an integer in the same box.  Returns flat row-major tuples.
    """
    nn = n * n
    out = []
    rng = range(-bound, bound + 1)
    diag = {i * n + i for i in range(n)}
    for vals in itertools.product(rng, repeat=len(free_pos)):
        m = [0] * nn
        for p, v in zip(free_pos, vals):
            m[p] = v
        ok = True
        for p, coeffs in zip(dep_pos, dep_num):
            s = 0
            for c, v in zip(coeffs, vals):
                s += c * v
            if s % denom:
                ok = False
                break
            e = s // denom
            if e < -bound or e > bound:
                ok = False
                break
            m[p] = e
        if not ok:
            continue
        for i in range(n):
            base = i * n
            for j in range(n):
                s = 0
                for k in range(n):
                    a = m[base + k]
                    if a:
                        s += a * m[k * n + j]
                if s != (sign if base + j in diag else 0):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(tuple(m))
    return out
