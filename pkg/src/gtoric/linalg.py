"""Exact linear algebra over Z_n: prime-field elimination and integer
Smith normal form with transform tracking.

Prime moduli get a fast numpy Gaussian elimination; composite moduli go
through the Smith normal form of the integer matrix, whose elementary
divisors give subgroup orders and kernel lattices mod n.
"""

from __future__ import annotations

from math import gcd

import numpy as np


def is_prime(n):
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


# -- prime fields -------------------------------------------------------------


def _inv_mod(a, p):
    return pow(int(a), -1, p)


def row_echelon_mod_p(mat, p):
    """Return (reduced echelon matrix, pivot column list, transform T) with
    ``T @ mat == echelon (mod p)``; T is square and invertible mod p."""
    a = np.array(mat, dtype=np.int64) % p
    rows, cols = a.shape
    t = np.eye(rows, dtype=np.int64)
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if len(nz) == 0:
            continue
        pr = r + nz[0]
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
            t[[r, pr]] = t[[pr, r]]
        inv = _inv_mod(a[r, c], p)
        a[r] = (a[r] * inv) % p
        t[r] = (t[r] * inv) % p
        others = np.nonzero(a[:, c])[0]
        for o in others:
            if o == r:
                continue
            f = a[o, c]
            a[o] = (a[o] - f * a[r]) % p
            t[o] = (t[o] - f * t[r]) % p
        pivots.append(c)
        r += 1
    return a, pivots, t


def rank_mod_p(mat, p):
    _, pivots, _ = row_echelon_mod_p(mat, p)
    return len(pivots)


def left_nullspace_mod_p(mat, p):
    """Row vectors v with ``v @ mat == 0 (mod p)``; basis as a matrix."""
    a, pivots, t = row_echelon_mod_p(mat, p)
    r = len(pivots)
    return t[r:] % p


def nullspace_mod_p(mat, p):
    """Column-kernel basis (as rows) of mat over GF(p)."""
    return left_nullspace_mod_p(np.array(mat, dtype=np.int64).T, p)


def solve_left_mod_p(mat, rhs, p):
    """Find v with ``v @ mat == rhs (mod p)``, or None when unsolvable."""
    a = np.array(mat, dtype=np.int64) % p
    b = np.array(rhs, dtype=np.int64) % p
    # solve mat^T v^T = rhs^T by elimination on the augmented transpose
    aug = np.concatenate([a.T, b.reshape(-1, 1)], axis=1)
    ech, pivots, _ = row_echelon_mod_p(aug, p)
    cols = a.shape[0]
    v = np.zeros(cols, dtype=np.int64)
    for i, c in enumerate(pivots):
        if c == cols:
            return None  # pivot in the augmented column: inconsistent
        v[c] = ech[i, cols]
    return v % p


def in_rowspan_mod_p(mat, vec, p):
    return solve_left_mod_p(mat, vec, p) is not None


# -- integer Smith normal form -------------------------------------------------


def smith_normal_form(mat):
    """Smith normal form with transforms: returns (d, u, v) with
    ``u @ mat @ v == diag(d)``, u and v unimodular.

    Uses Python integers (object dtype) so intermediate entries never
    overflow.  Suitable for the few-hundred-row matrices used here.
    """
    a = np.array(mat, dtype=object)
    rows, cols = a.shape
    u = np.eye(rows, dtype=object)
    v = np.eye(cols, dtype=object)
    k = 0
    while k < min(rows, cols):
        # find the nonzero entry of smallest magnitude in the remaining block
        sub = a[k:, k:]
        nz = np.nonzero(sub)
        if len(nz[0]) == 0:
            break
        mags = np.abs(sub[nz].astype(object))
        best = int(np.argmin([int(m) for m in mags]))
        pi, pj = int(nz[0][best]) + k, int(nz[1][best]) + k
        if pi != k:
            a[[k, pi]] = a[[pi, k]]
            u[[k, pi]] = u[[pi, k]]
        if pj != k:
            a[:, [k, pj]] = a[:, [pj, k]]
            v[:, [k, pj]] = v[:, [pj, k]]
        # clear column and row below/right of the pivot
        clean = True
        for i in range(k + 1, rows):
            if a[i, k] != 0:
                q = a[i, k] // a[k, k]
                a[i] = a[i] - q * a[k]
                u[i] = u[i] - q * u[k]
                if a[i, k] != 0:
                    clean = False
        for j in range(k + 1, cols):
            if a[k, j] != 0:
                q = a[k, j] // a[k, k]
                a[:, j] = a[:, j] - q * a[:, k]
                v[:, j] = v[:, j] - q * v[:, k]
                if a[k, j] != 0:
                    clean = False
        if not clean:
            continue  # remainders left; pick a new pivot
        if np.any(a[k + 1 :, k] != 0) or np.any(a[k, k + 1 :] != 0):
            continue
        # divisibility: pivot must divide every remaining entry
        rest = a[k + 1 :, k + 1 :]
        bad = None
        nz = np.nonzero(rest % a[k, k] != 0) if rest.size else (np.array([]),)
        if rest.size and len(nz[0]):
            bad = (int(nz[0][0]) + k + 1, int(nz[1][0]) + k + 1)
        if bad is not None:
            # fold the offending row into the pivot row and redo
            a[k] = a[k] + a[bad[0]]
            u[k] = u[k] + u[bad[0]]
            continue
        if a[k, k] < 0:
            a[k] = -a[k]
            u[k] = -u[k]
        k += 1
    d = [int(a[i, i]) for i in range(min(rows, cols))]
    return d, u, v


def image_order_mod_n(mat, n):
    """Order of the subgroup of Z_n^cols generated by the rows of mat."""
    if is_prime(n):
        return n ** rank_mod_p(mat, n)
    d, _, _ = smith_normal_form(mat)
    order = 1
    for di in d:
        order *= n // gcd(di, n)
    return order


def left_kernel_generators_mod_n(mat, n):
    """Integer generators of {j : j @ mat == 0 (mod n)} as rows.

    The lattice also contains n*e_i for every i; callers that need those
    must add them separately (they are included here for completeness).
    """
    mat = np.array(mat, dtype=np.int64)
    rows = mat.shape[0]
    gens = []
    if is_prime(n):
        for v in left_nullspace_mod_p(mat, n):
            gens.append(np.array(v, dtype=np.int64))
    else:
        d, u, _ = smith_normal_form(mat)
        d = list(d) + [0] * (rows - len(d))
        for i in range(rows):
            c = n // gcd(d[i], n)
            if c % n == 0:
                continue  # multiple of n e_i, covered below
            gens.append((c * u[i].astype(object)) % n)
    for i in range(rows):
        e = np.zeros(rows, dtype=np.int64)
        e[i] = n
        gens.append(e)
    return [np.array([int(x) for x in g], dtype=np.int64) for g in gens]


def in_rowspan_mod_n(mat, vec, n):
    """Whether vec is an Z_n-combination of the rows of mat."""
    if is_prime(n):
        return in_rowspan_mod_p(mat, vec, n)
    d, _, v = smith_normal_form(mat)
    cols = np.array(mat).shape[1]
    d = list(d) + [0] * max(0, cols - len(d))
    q = (np.array(vec, dtype=object) @ v) % n
    for i in range(cols):
        if int(q[i]) % gcd(d[i], n) != 0:
            return False
    return True
