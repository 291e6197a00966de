"""Dense matrices over an arbitrary :class:`~shtukas.ring.Ring`.

Matrices are lists of rows.  Everything here is division-free except
:func:`solve`, which needs the pivots to be invertible.
"""

from __future__ import annotations

from .errors import NonUnit, ZeroInput


def zeros(ring, rows, cols):
    return [[ring.zero for _ in range(cols)] for _ in range(rows)]


def identity(ring, n):
    out = zeros(ring, n, n)
    for i in range(n):
        out[i][i] = ring.one
    return out


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def matmul(ring, a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = zeros(ring, n, m)
    for i in range(n):
        for j in range(m):
            acc = ring.zero
            for t in range(k):
                x, y = a[i][t], b[t][j]
                if ring.is_zero(x) or ring.is_zero(y):
                    continue
                acc = ring.add(acc, ring.mul(x, y))
            out[i][j] = acc
    return out


def matmap(func, a):
    return [[func(x) for x in row] for row in a]


def matsub(ring, a, b):
    return [[ring.sub(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def kron(ring, a, b):
    """Kronecker product; row index ``i*len(b) + k``."""
    rb, cb = len(b), len(b[0])
    out = zeros(ring, len(a) * rb, len(a[0]) * cb)
    for i, row in enumerate(a):
        for j, x in enumerate(row):
            for k in range(rb):
                for l in range(cb):
                    out[i * rb + k][j * cb + l] = ring.mul(x, b[k][l])
    return out


def det(ring, a):
    """Determinant by expansion along rows, sharing minors over column subsets."""
    n = len(a)
    if n == 0:
        return ring.one
    # minors[mask] = det of the bottom rows restricted to the columns in mask
    minors = {0: ring.one}
    for row in range(n - 1, -1, -1):
        size = n - row
        new = {}
        for mask, sub in minors.items():
            for col in range(n):
                if mask >> col & 1:
                    continue
                x = a[row][col]
                if ring.is_zero(x) or ring.is_zero(sub):
                    continue
                # sign: number of chosen columns to the left of col
                left = bin(mask & ((1 << col) - 1)).count("1")
                term = ring.mul(x, sub)
                if left % 2:
                    term = ring.neg(term)
                key = mask | (1 << col)
                new[key] = ring.add(new[key], term) if key in new else term
        minors = {k: v for k, v in new.items() if bin(k).count("1") == size}
        if not minors:
            return ring.zero
    return minors.get((1 << n) - 1, ring.zero)


def minor(a, i, j):
    return [row[:j] + row[j + 1 :] for k, row in enumerate(a) if k != i]


def adjugate(ring, a):
    """Classical adjoint: ``a @ adj(a) == det(a) * I``."""
    n = len(a)
    if n == 1:
        return [[ring.one]]
    out = zeros(ring, n, n)
    for i in range(n):
        for j in range(n):
            c = det(ring, minor(a, i, j))
            out[j][i] = ring.neg(c) if (i + j) % 2 else c
    return out


def solve(ring, a, b, pivot_key=None):
    """Solve ``a x = b`` for square ``a`` by Gaussian elimination.

    ``pivot_key`` ranks candidate pivots (smallest wins) among the entries
    that are units of the ring; by default the first unit is used.
    """
    n = len(a)
    m = [list(row) + [bb] for row, bb in zip(a, b)]
    for col in range(n):
        cands = [r for r in range(col, n) if ring.is_unit(m[r][col])]
        if not cands:
            if all(ring.is_zero(m[r][col]) for r in range(col, n)):
                raise ZeroInput("singular matrix")
            raise NonUnit("no invertible pivot available")
        piv = min(cands, key=lambda r: pivot_key(m[r][col])) if pivot_key else cands[0]
        m[col], m[piv] = m[piv], m[col]
        inv = ring.inv(m[col][col])
        m[col] = [ring.mul(inv, x) for x in m[col]]
        for r in range(n):
            if r == col or ring.is_zero(m[r][col]):
                continue
            f = m[r][col]
            m[r] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]
