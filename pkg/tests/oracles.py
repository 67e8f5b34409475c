"""Slow reference implementations used to cross-check the library.

Everything in here is written with explicit Python loops and
``numpy.linalg.solve`` so that no code path is shared with the einsum
based routines in ``filiform_ce``.  Tests compare the two routes on
random inputs; expected constants frozen into the test modules were
produced with these functions (or by hand) before the fast versions
were trusted.
"""

from __future__ import annotations

import numpy as np


def naive_bracket(gamma: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """[x, y] computed with three nested loops."""
    d = gamma.shape[0]
    out = np.zeros(d, dtype=complex)
    for i in range(d):
        for j in range(d):
            for k in range(d):
                out[k] += x[i] * y[j] * gamma[i, j, k]
    return out


def naive_residual_max(gamma: np.ndarray) -> float:
    """Largest violation of [x,[y,z]] = [[x,y],z] - [[x,z],y] on basis triples."""
    d = gamma.shape[0]
    eye = np.eye(d, dtype=complex)
    worst = 0.0
    for i in range(d):
        for j in range(d):
            for k in range(d):
                lhs = naive_bracket(gamma, eye[i], naive_bracket(gamma, eye[j], eye[k]))
                rhs = naive_bracket(gamma, naive_bracket(gamma, eye[i], eye[j]), eye[k])
                rhs = rhs - naive_bracket(gamma, naive_bracket(gamma, eye[i], eye[k]), eye[j])
                worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def naive_change_basis(gamma: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Structure constants in the basis whose vectors are the columns of g.

    For each pair (i, j) the bracket of the new basis vectors is computed
    with :func:`naive_bracket` and then re-expanded in the new basis by
    solving a linear system, entry by entry.
    """
    d = gamma.shape[0]
    out = np.zeros((d, d, d), dtype=complex)
    for i in range(d):
        for j in range(d):
            b = naive_bracket(gamma, g[:, i], g[:, j])
            out[i, j, :] = np.linalg.solve(g, b)
    return out


def naive_series(gamma: np.ndarray) -> list[int]:
    """Dimensions of the descending series of ideals [A, A], [[A,A], A], ...

    Spans are tracked as explicit row matrices and ranked with
    ``numpy.linalg.matrix_rank`` under an absolute tolerance, a different
    decision rule from the library's.
    """
    d = gamma.shape[0]
    tol = 1e-9 * max(1.0, float(np.max(np.abs(gamma))))
    eye = np.eye(d, dtype=complex)
    dims = [d]
    current = eye.copy()
    while True:
        rows = []
        for a in range(current.shape[0]):
            for i in range(d):
                rows.append(naive_bracket(gamma, current[a], eye[i]))
        mat = np.array(rows) if rows else np.zeros((1, d), dtype=complex)
        if np.max(np.abs(mat)) <= tol:
            dims.append(0)
            return dims
        rank = int(np.linalg.matrix_rank(mat, tol=tol))
        dims.append(rank)
        if rank == 0:
            return dims
        # reduce to an orthonormal row basis for the next step; the leading
        # right singular vectors span the row space (QR would not: without
        # pivoting its leading columns can normalize a near-zero row)
        _, _, vh = np.linalg.svd(mat)
        current = vh[:rank]

def expected_free_labels(n: int) -> list[str]:
    """Free coordinates of the cocycle space, from the recurrence worked by hand.

    The three corner labels always survive; among the b_{1,m} only even m
    up to n-2 do, plus the top-of-chain label when n is odd.
    """
    labels = ["b00", "b01", "b11"]
    labels += ["b1%d" % m for m in range(2, n - 1) if m % 2 == 0]
    if n % 2 == 1:
        labels.append("b1%d" % (n - 1))
    return labels


def expected_relations(n: int) -> dict[str, dict[str, complex]]:
    """Forced pair coefficients b_{i,j} (1 <= i < j <= n-1, label not free)
    as combinations of the free labels, derived by hand from the recurrence:

    * moving down a diagonal flips the sign, so b_{i,j} depends only on
      i+j with factor (-1)^(i+1) relative to b_{1,i+j-1};
    * diagonals whose coordinate b_{1,i+j-1} is not free collapse to zero;
    * for odd n the diagonal i+j = n survives and is proportional to the
      free top label b_{1,n-1}; for even n it is forced to zero.
    """
    free = set(expected_free_labels(n))
    out: dict[str, dict[str, complex]] = {}
    for i in range(1, n - 1):
        for j in range(i + 1, n):
            name = "b%d%d" % (i, j)
            if name in free:
                continue
            sign = (-1) ** (i + 1)
            if i + j == n:
                if n % 2 == 1:
                    out[name] = {"b1%d" % (n - 1): complex(sign)}
                else:
                    out[name] = {}
                continue
            m = i + j - 1
            if m % 2 == 0 and m <= n - 2:
                out[name] = {"b1%d" % m: complex(sign)}
            else:
                out[name] = {}
    return out
