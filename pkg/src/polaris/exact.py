"""Fraction-free exact linear algebra for small integer matrices.

Everything here works over the integers (Bareiss elimination) or exact
rationals; no floating point is used anywhere in the package.
"""

from __future__ import annotations

from fractions import Fraction


def leading_principal_minors(matrix: list[list[int]]) -> list[int]:
    """Return the n leading principal minors of an integer matrix.

    Uses Bareiss one-step fraction-free elimination: after the k-th sweep the
    pivot entry equals the k-th leading principal minor, and every division
    performed is exact. Raises ZeroDivisionError only if a leading minor
    vanishes, in which case the remaining minors are reported as 0 (the
    elimination cannot continue past a singular leading block).
    """
    n = len(matrix)
    a = [list(row) for row in matrix]
    minors: list[int] = []
    prev = 1
    for k in range(n):
        pivot = a[k][k]
        minors.append(pivot)
        if pivot == 0:
            minors.extend([0] * (n - k - 1))
            return minors
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return minors


def solve_positive_definite(matrix: list[list[int]], rhs: list[int]) -> list[Fraction]:
    """Solve M x = b exactly for a symmetric positive-definite integer M.

    Bareiss elimination on the augmented matrix keeps all intermediate values
    integral; the back substitution is then done with Fractions. Positive
    definiteness guarantees nonzero pivots, so no row exchanges are needed.
    """
    n = len(matrix)
    if n == 0:
        return []
    a = [list(matrix[i]) + [rhs[i]] for i in range(n)]
    prev = 1
    for k in range(n):
        pivot = a[k][k]
        if pivot == 0:
            raise ValueError("matrix is not positive definite (zero pivot)")
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    x: list[Fraction] = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(a[i][n])
        for j in range(i + 1, n):
            s -= a[i][j] * x[j]
        x[i] = s / a[i][i]
    return x
