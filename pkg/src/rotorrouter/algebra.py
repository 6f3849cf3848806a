"""Exact integer linear algebra over Python ints.

Determinants use fraction-free (Bareiss) elimination, so no intermediate ever
leaves the integers. The Smith form keeps both unimodular transforms and is
checked by multiplying back out before it is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Sequence

from .graph import Digraph, Matrix, laplacian


class ConsistencyError(AssertionError):
    """An internal cross-check failed; this is a bug, not bad input."""


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if A and B and len(A[0]) != len(B):
        raise ValueError(f"shape mismatch: {len(A)}x{len(A[0])} @ {len(B)}x{len(B[0])}")
    cols = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def matvec(A: Sequence[Sequence[int]], x: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def det_exact(M: Sequence[Sequence[int]]) -> int:
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    A = [list(map(int, row)) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def out_laplacian(D: Digraph) -> Matrix:
    """``d+(i)`` on the diagonal, ``-d(i, j)`` off it; equals ``-L^T``."""
    n = D.n
    return [[D.outdeg(i) if i == j else -D.mult(i, j) for j in range(n)] for i in range(n)]


def arborescence_count(D: Digraph, w: int) -> int:
    """Spanning in-arborescences rooted at ``w``, by the directed matrix-tree theorem."""
    K = out_laplacian(D)
    minor = [[K[i][j] for j in range(D.n) if j != w] for i in range(D.n) if i != w]
    return det_exact(minor)


def arborescence_counts(D: Digraph) -> tuple[int, ...]:
    return tuple(arborescence_count(D, w) for w in range(D.n))


def period_vector(D: Digraph) -> tuple[int, ...]:
    """The primitive positive integer vector spanning the kernel of the Laplacian.

    The arborescence counts already lie in the kernel (Markov chain tree
    theorem); dividing by their gcd makes them primitive.
    """
    counts = arborescence_counts(D)
    g = math.gcd(*counts)
    per = tuple(c // g for c in counts)
    if any(p < 1 for p in per) or any(matvec(laplacian(D), per)):
        raise ConsistencyError(f"period vector {per} is not a positive kernel element")
    return per


def pham_index(D: Digraph) -> int:
    counts = arborescence_counts(D)
    g = math.gcd(*counts)
    per = period_vector(D)
    for w, (t, p) in enumerate(zip(counts, per)):
        if t != g * p:
            raise ConsistencyError(f"T(D,{w})/per({w}) = {t}/{p} differs from gcd {g}")
    return g


# --- Smith normal form -----------------------------------------------------

@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ M @ V == S`` with ``U``, ``V`` unimodular and ``S`` diagonal."""

    U: tuple[tuple[int, ...], ...]
    S: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.S[i][i] for i in range(min(len(self.S), len(self.V))))

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d != 0)


def _freeze(M: Matrix) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(row) for row in M)


def smith_normal_form(M: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Diagonalise ``M`` by integer row and column operations.

    Pivot on the smallest nonzero entry, clear its row and column by division
    with remainder, and repeat while a remainder survives. Once clear, any
    entry not divisible by the pivot is folded into the pivot row, which
    forces a smaller pivot on the next pass. Row operations accumulate into
    ``U``, column operations into ``V``.
    """
    rows = len(M)
    cols = len(M[0]) if rows else 0
    S = [list(map(int, r)) for r in M]
    U = identity(rows)
    V = identity(cols)

    def swap_rows(a, b):
        S[a], S[b] = S[b], S[a]
        U[a], U[b] = U[b], U[a]

    def swap_cols(a, b):
        for R in (S, V):
            for r in R:
                r[a], r[b] = r[b], r[a]

    def add_row(dst, src, q):  # row dst += q * row src
        for R in (S, U):
            R[dst] = [x + q * y for x, y in zip(R[dst], R[src])]

    def add_col(dst, src, q):  # col dst += q * col src
        for R in (S, V):
            for r in R:
                r[dst] += q * r[src]

    for t in range(min(rows, cols)):
        while True:
            nz = [(abs(S[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if S[i][j]]
            if not nz:
                break
            _, i0, j0 = min(nz)
            swap_rows(t, i0)
            swap_cols(t, j0)
            p = S[t][t]
            clean = True
            for i in range(t + 1, rows):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // p))
                    clean = clean and S[i][t] == 0
            for j in range(t + 1, cols):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // p))
                    clean = clean and S[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if S[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if S[t][t] < 0:
            U[t] = [-x for x in U[t]]
            S[t] = [-x for x in S[t]]

    dec = SmithDecomposition(_freeze(U), _freeze(S), _freeze(V))
    _check_smith(M, dec)
    return dec


def _check_smith(M: Sequence[Sequence[int]], dec: SmithDecomposition) -> None:
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if rows and cols and _freeze(matmul(matmul(dec.U, M), dec.V)) != dec.S:
        raise ConsistencyError("U @ M @ V != S")
    for i, row in enumerate(dec.S):
        for j, x in enumerate(row):
            if i != j and x:
                raise ConsistencyError(f"off-diagonal entry S[{i}][{j}] = {x}")
    diag = dec.diagonal
    if any(d < 0 for d in diag):
        raise ConsistencyError(f"negative invariant factor in {diag}")
    for a, b in zip(diag, diag[1:]):
        if (a == 0 and b != 0) or (a and b % a):
            raise ConsistencyError(f"divisibility chain broken: {diag}")
    if abs(det_exact(dec.U)) != 1 or abs(det_exact(dec.V)) != 1:
        raise ConsistencyError("transform is not unimodular")


# --- Picard group ----------------------------------------------------------

@dataclass(frozen=True)
class PicardSummary:
    invariant_factors: tuple[int, ...]  # only the factors > 1
    order: int
    smith: SmithDecomposition


def class_lattice(D: Digraph) -> Matrix:
    """Laplacian with its last row deleted.

    Degree-zero divisors have coordinates ``x[:-1]`` in the basis
    ``e_i - e_{n-1}``; the columns of this matrix generate the image of the
    Laplacian in those coordinates.
    """
    return [list(row) for row in laplacian(D)[:-1]]


@lru_cache(maxsize=256)
def picard_summary(D: Digraph) -> PicardSummary:
    dec = smith_normal_form(class_lattice(D))
    diag = dec.diagonal
    if len(diag) != D.n - 1 or 0 in diag:
        raise ConsistencyError(f"class lattice has rank < n-1: diagonal {diag}")
    order = reduce(lambda a, b: a * b, diag, 1)
    if order != pham_index(D):
        raise ConsistencyError(f"|Pic0| = {order} but Pham index = {pham_index(D)}")
    return PicardSummary(tuple(d for d in diag if d > 1), order, dec)
