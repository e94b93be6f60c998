"""Exact integer homology of cube complexes via Smith normal form.

Everything runs over arbitrary-precision integers; there is no floating
point anywhere in the pipeline.  Elimination pivots on the nonzero entry of
least absolute value (ties: lowest row, then column), which keeps
coefficient growth tame on the very sparse boundary matrices produced by
``complexes.build_complex``.  Matrices with both dimensions below 500 go
through a dense working copy; larger ones are eliminated in a sparse
row-major representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Mapping, Sequence

from .complexes import CubeComplex, f_vector
from .intmatrix import SparseIntMatrix

__all__ = [
    "InvariantFactors",
    "HomologySummary",
    "CycleClass",
    "smith_normal_form",
    "homology",
    "cycle_homology_class",
]

_DENSE_LIMIT = 500


@dataclass(frozen=True)
class InvariantFactors:
    """Nonzero diagonal of the Smith normal form: d1 | d2 | ... | dr > 0."""

    factors: tuple[int, ...]
    shape: tuple[int, int]

    @property
    def rank(self) -> int:
        return len(self.factors)


@dataclass(frozen=True)
class HomologySummary:
    """Betti numbers and torsion coefficients per dimension 0..dim."""

    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class CycleClass:
    is_cycle: bool
    is_boundary: bool


def smith_normal_form(M: SparseIntMatrix) -> InvariantFactors:
    """Invariant factors of an integer matrix, exactly."""
    rows, cols = M.shape
    if rows < _DENSE_LIMIT and cols < _DENSE_LIMIT:
        diag = _diagonalize_dense(M.to_dense())
    else:
        diag = _diagonalize_sparse(M)
    return InvariantFactors(factors=tuple(_divisibility_chain(diag)), shape=M.shape)


def homology(K: CubeComplex) -> HomologySummary:
    """Betti numbers and torsion of the complex in every dimension.

    b_k = f_k - rank d_k - rank d_{k+1}; the torsion of H_k is the set of
    invariant factors of d_{k+1} exceeding 1.
    """
    fv = f_vector(K)
    dim = len(fv) - 1
    if dim < 0:
        return HomologySummary(betti=(), torsion=())
    snf = [smith_normal_form(K.boundary(k)) for k in range(1, dim + 1)]
    rank = [0] + [s.rank for s in snf] + [0]  # rank[k] == rank of d_k
    betti = tuple(fv[k] - rank[k] - rank[k + 1] for k in range(dim + 1))
    torsion = tuple(
        tuple(d for d in snf[k].factors if d > 1) if k < dim else ()
        for k in range(dim + 1)
    )
    return HomologySummary(betti=betti, torsion=torsion)


def cycle_homology_class(
    K: CubeComplex, z: Mapping[int, int] | Sequence[int]
) -> CycleClass:
    """Decide whether an integer 1-chain is a cycle and whether it bounds.

    ``z`` is indexed against the 1-cells of ``K``, either as a full
    coefficient sequence or as a sparse {index: coefficient} mapping.
    Boundary membership is decided exactly by solving d2 x = z over the
    integers via a row-transformed diagonalization of d2.
    """
    fv = f_vector(K)
    n1 = fv[1] if len(fv) > 1 else 0
    chain = _as_chain(z, n1)
    if len(fv) <= 1:  # no 1-cells at all
        return CycleClass(is_cycle=True, is_boundary=True)
    d1 = K.boundary(1)
    is_cycle = not d1.apply(chain)
    if not is_cycle:
        return CycleClass(is_cycle=False, is_boundary=False)
    if not chain:
        return CycleClass(is_cycle=True, is_boundary=True)
    if len(fv) <= 2:  # no 2-cells: only the zero chain bounds
        return CycleClass(is_cycle=True, is_boundary=False)
    return CycleClass(is_cycle=True, is_boundary=_in_column_image(K.boundary(2), chain))


def _as_chain(z: Mapping[int, int] | Sequence[int], n1: int) -> dict[int, int]:
    if isinstance(z, Mapping):
        items = z.items()
    else:
        items = enumerate(z)
    chain: dict[int, int] = {}
    for i, v in items:
        if not (0 <= i < n1):
            raise IndexError(f"chain index {i} out of range for {n1} one-cells")
        if v:
            chain[i] = int(v)
    return chain


# ---------------------------------------------------------------------------
# dense elimination


def _diagonalize_dense(A: list[list[int]]) -> list[int]:
    """Diagonalize by unimodular row/column operations; returns the positive
    diagonal entries (divisibility not yet enforced)."""
    m = len(A)
    n = len(A[0]) if A else 0
    t = 0
    diag: list[int] = []
    while True:
        piv = _dense_pivot(A, m, n, t)
        if piv is None:
            break
        pi, pj = piv
        if pi != t:
            A[t], A[pi] = A[pi], A[t]
        if pj != t:
            for row in A:
                row[t], row[pj] = row[pj], row[t]
        _dense_clear(A, m, n, t)
        diag.append(A[t][t])
        t += 1
    return diag


def _dense_pivot(A, m, n, t):
    best = None
    best_abs = None
    for i in range(t, m):
        Ai = A[i]
        for j in range(t, n):
            a = Ai[j]
            if a and (best_abs is None or abs(a) < best_abs):
                best = (i, j)
                best_abs = abs(a)
                if best_abs == 1:
                    return best
    return best


def _dense_clear(A, m, n, t):
    """Zero row t and column t outside the pivot, keeping the pivot at (t, t).

    Remainders smaller than the pivot are swapped into the pivot position, so
    the pivot strictly shrinks and the loop terminates.
    """
    while True:
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
        p = A[t][t]
        restart = False
        for i in range(t + 1, m):
            a = A[i][t]
            if not a:
                continue
            q = a // p
            if q:
                At = A[t]
                Ai = A[i]
                for j in range(t, n):
                    Ai[j] -= q * At[j]
            if A[i][t]:
                A[t], A[i] = A[i], A[t]
                restart = True
                break
        if restart:
            continue
        for j in range(t + 1, n):
            a = A[t][j]
            if not a:
                continue
            q = a // p
            if q:
                for row in A:
                    row[j] -= q * row[t]
            if A[t][j]:
                for row in A:
                    row[t], row[j] = row[j], row[t]
                restart = True
                break
        if not restart:
            return


def _diagonalize_dense_with_rowops(
    A: list[list[int]],
) -> tuple[list[int], list[list[int]]]:
    """Like ``_diagonalize_dense`` but also returns the unimodular row
    transform S with S*M*T = diag (T is not tracked)."""
    m = len(A)
    n = len(A[0]) if A else 0
    S = [[int(i == j) for j in range(m)] for i in range(m)]
    t = 0
    diag: list[int] = []
    while True:
        piv = _dense_pivot(A, m, n, t)
        if piv is None:
            break
        pi, pj = piv
        if pi != t:
            A[t], A[pi] = A[pi], A[t]
            S[t], S[pi] = S[pi], S[t]
        if pj != t:
            for row in A:
                row[t], row[pj] = row[pj], row[t]
        while True:
            if A[t][t] < 0:
                A[t] = [-x for x in A[t]]
                S[t] = [-x for x in S[t]]
            p = A[t][t]
            restart = False
            for i in range(t + 1, m):
                a = A[i][t]
                if not a:
                    continue
                q = a // p
                if q:
                    At, Ai = A[t], A[i]
                    for j in range(t, n):
                        Ai[j] -= q * At[j]
                    St, Si = S[t], S[i]
                    for j in range(m):
                        Si[j] -= q * St[j]
                if A[i][t]:
                    A[t], A[i] = A[i], A[t]
                    S[t], S[i] = S[i], S[t]
                    restart = True
                    break
            if restart:
                continue
            for j in range(t + 1, n):
                a = A[t][j]
                if not a:
                    continue
                q = a // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    for row in A:
                        row[t], row[j] = row[j], row[t]
                    restart = True
                    break
            if not restart:
                break
        diag.append(A[t][t])
        t += 1
    return diag, S


def _in_column_image(M: SparseIntMatrix, chain: dict[int, int]) -> bool:
    """True iff M x = chain has an integer solution."""
    diag, S = _diagonalize_dense_with_rowops(M.to_dense())
    m = M.num_rows
    w = [0] * m
    for i, coeff in chain.items():
        if coeff:
            for r in range(m):
                w[r] += S[r][i] * coeff
    r = len(diag)
    for i in range(m):
        if i < r:
            if w[i] % diag[i]:
                return False
        elif w[i]:
            return False
    return True


# ---------------------------------------------------------------------------
# sparse elimination


def _diagonalize_sparse(M: SparseIntMatrix) -> list[int]:
    rows: dict[int, dict[int, int]] = {}
    colindex: dict[int, set[int]] = {}
    for (i, j), v in M.entries.items():
        rows.setdefault(i, {})[j] = v
        colindex.setdefault(j, set()).add(i)

    def set_entry(i: int, j: int, v: int) -> None:
        if v:
            rows.setdefault(i, {})[j] = v
            colindex.setdefault(j, set()).add(i)
        else:
            ri = rows.get(i)
            if ri and j in ri:
                del ri[j]
                if not ri:
                    del rows[i]
                cj = colindex[j]
                cj.discard(i)
                if not cj:
                    del colindex[j]

    diag: list[int] = []
    while rows:
        # min-abs pivot, ties toward the lowest (row, col)
        pi = pj = -1
        pv = None
        for i in sorted(rows):
            for j, v in sorted(rows[i].items()):
                if pv is None or abs(v) < pv:
                    pi, pj, pv = i, j, abs(v)
            if pv == 1:
                break
        while True:
            p = rows[pi][pj]
            if p < 0:
                for j, v in list(rows[pi].items()):
                    set_entry(pi, j, -v)
                p = -p
            # clear column pj with row operations
            moved = False
            for i in sorted(colindex[pj] - {pi}):
                a = rows[i][pj]
                q = a // p
                if q:
                    for j, v in list(rows[pi].items()):
                        set_entry(i, j, rows.get(i, {}).get(j, 0) - q * v)
                if rows.get(i, {}).get(pj, 0):
                    pi = i  # strictly smaller remainder becomes the pivot
                    moved = True
                    break
            if moved:
                continue
            # clear row pi with column operations; only row pi has entries in
            # column pj now, so these touch row pi alone
            for j in sorted(set(rows[pi]) - {pj}):
                a = rows[pi][j]
                q = a // p
                if q:
                    set_entry(pi, j, a - q * p)
                if rows.get(pi, {}).get(j, 0):
                    pj = j
                    moved = True
                    break
            if not moved:
                break
        diag.append(abs(rows[pi][pj]))
        set_entry(pi, pj, 0)
    return diag


def _divisibility_chain(diag: list[int]) -> list[int]:
    """Rearrange positive diagonal entries into d1 | d2 | ... via gcd/lcm."""
    d = [abs(x) for x in diag if x]
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            if d[j] % d[i]:
                g = gcd(d[i], d[j])
                d[i], d[j] = g, d[i] * d[j] // g
    return d
