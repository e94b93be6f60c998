"""Sparse integer matrices with exact (arbitrary precision) entries.

The chain-complex pipeline never touches floating point: boundary operators,
Smith normal form and membership solving all run over Python ints.  The
representation is a plain ``{(row, col): value}`` dict, good enough for the
desk-scale matrices produced by the cube complexes here.
"""

from __future__ import annotations

from typing import Iterable, Mapping

__all__ = ["SparseIntMatrix"]


class SparseIntMatrix:
    """An immutable-by-convention sparse integer matrix."""

    __slots__ = ("num_rows", "num_cols", "entries")

    def __init__(
        self,
        num_rows: int,
        num_cols: int,
        entries: Mapping[tuple[int, int], int] | None = None,
    ):
        self.num_rows = num_rows
        self.num_cols = num_cols
        self.entries: dict[tuple[int, int], int] = {}
        if entries:
            for (i, j), v in entries.items():
                if v == 0:
                    continue
                if not (0 <= i < num_rows and 0 <= j < num_cols):
                    raise IndexError(f"entry ({i}, {j}) outside {num_rows}x{num_cols}")
                self.entries[(i, j)] = int(v)

    @classmethod
    def from_triplets(
        cls, num_rows: int, num_cols: int, triplets: Iterable[tuple[int, int, int]]
    ) -> "SparseIntMatrix":
        acc: dict[tuple[int, int], int] = {}
        for i, j, v in triplets:
            acc[(i, j)] = acc.get((i, j), 0) + v
        return cls(num_rows, num_cols, acc)

    @classmethod
    def from_dense(cls, rows: list[list[int]]) -> "SparseIntMatrix":
        num_rows = len(rows)
        num_cols = len(rows[0]) if rows else 0
        entries = {
            (i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v
        }
        return cls(num_rows, num_cols, entries)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.num_rows, self.num_cols)

    def nnz(self) -> int:
        return len(self.entries)

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def triplets(self) -> list[tuple[int, int, int]]:
        """Entries as sorted (row, col, value) triplets."""
        return [(i, j, v) for (i, j), v in sorted(self.entries.items())]

    def to_dense(self) -> list[list[int]]:
        rows = [[0] * self.num_cols for _ in range(self.num_rows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def transpose(self) -> "SparseIntMatrix":
        return SparseIntMatrix(
            self.num_cols,
            self.num_rows,
            {(j, i): v for (i, j), v in self.entries.items()},
        )

    def column(self, j: int) -> dict[int, int]:
        return {i: v for (i, jj), v in self.entries.items() if jj == j}

    def apply(self, vec: Mapping[int, int]) -> dict[int, int]:
        """Matrix-vector product; ``vec`` maps column index -> coefficient."""
        out: dict[int, int] = {}
        for (i, j), v in self.entries.items():
            c = vec.get(j, 0)
            if c:
                out[i] = out.get(i, 0) + v * c
        return {i: v for i, v in out.items() if v}

    def matmul(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.num_cols != other.num_rows:
            raise ValueError("shape mismatch")
        by_row: dict[int, list[tuple[int, int]]] = {}
        for (i, j), v in other.entries.items():
            by_row.setdefault(i, []).append((j, v))
        acc: dict[tuple[int, int], int] = {}
        for (i, k), v in self.entries.items():
            for j, w in by_row.get(k, ()):
                key = (i, j)
                acc[key] = acc.get(key, 0) + v * w
        return SparseIntMatrix(self.num_rows, other.num_cols, acc)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __repr__(self) -> str:
        return f"SparseIntMatrix({self.num_rows}x{self.num_cols}, nnz={self.nnz()})"
