"""Sparse binary parity-check matrices: adjacency storage, RC check, GF(2) rank."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np


class ParityCheckMatrix:
    """M x N binary matrix stored as row and column adjacency lists.

    ``row_adj[m]`` holds the sorted column indices of the ones in row m
    (the bit nodes of check m); ``col_adj[n]`` holds the sorted row
    indices of the ones in column n (the checks containing bit n).  The
    two views are kept consistent by construction.  Instances are
    immutable after construction and safe to share across threads or
    processes.
    """

    def __init__(self, row_adj: Sequence[Iterable[int]], n_cols: int):
        if n_cols < 1:
            raise ValueError("n_cols must be positive")
        rows = []
        for m, adj in enumerate(row_adj):
            arr = np.asarray(sorted(int(j) for j in adj), dtype=np.int64)
            if arr.size:
                if arr[0] < 0 or arr[-1] >= n_cols:
                    raise ValueError(f"row {m} has a column index out of range")
                if np.any(arr[1:] == arr[:-1]):
                    raise ValueError(f"row {m} has a duplicate column index")
            rows.append(arr)
        self.n_rows = len(rows)
        self.n_cols = n_cols
        self.row_adj = tuple(rows)

        cols: list[list[int]] = [[] for _ in range(n_cols)]
        for m, arr in enumerate(self.row_adj):
            for j in arr:
                cols[j].append(m)
        self.col_adj = tuple(np.asarray(c, dtype=np.int64) for c in cols)

        self.row_weights = np.array([a.size for a in self.row_adj], dtype=np.int64)
        self.col_weights = np.array([a.size for a in self.col_adj], dtype=np.int64)

        # Flattened edge list in row-major order, plus a padded row-index
        # matrix (sentinel column n_cols) used for vectorized per-check scans.
        self.edge_row = np.repeat(np.arange(self.n_rows, dtype=np.int64), self.row_weights)
        self.edge_col = (
            np.concatenate(self.row_adj) if self.n_rows else np.zeros(0, dtype=np.int64)
        )
        wmax = int(self.row_weights.max()) if self.n_rows else 0
        self.max_row_weight = wmax
        self.max_col_weight = int(self.col_weights.max()) if n_cols else 0
        self.row_pad = np.full((self.n_rows, wmax), n_cols, dtype=np.int64)
        for m, arr in enumerate(self.row_adj):
            self.row_pad[m, : arr.size] = arr

    @classmethod
    def from_dense(cls, a) -> "ParityCheckMatrix":
        a = np.asarray(a)
        rows = [np.nonzero(a[m])[0] for m in range(a.shape[0])]
        return cls(rows, a.shape[1])

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.n_rows, self.n_cols), dtype=np.uint8)
        for m, arr in enumerate(self.row_adj):
            out[m, arr] = 1
        return out

    def syndrome(self, z) -> np.ndarray:
        """z @ H.T over GF(2), computed from scratch."""
        z = np.asarray(z)
        if z.shape != (self.n_cols,):
            raise ValueError(f"expected a length-{self.n_cols} vector")
        acc = np.bincount(self.edge_row, weights=z[self.edge_col].astype(np.float64),
                          minlength=self.n_rows)
        return (acc.astype(np.int64) & 1).astype(np.uint8)

    def transpose(self) -> "ParityCheckMatrix":
        return ParityCheckMatrix(self.col_adj, self.n_rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ParityCheckMatrix):
            return NotImplemented
        return (
            self.n_rows == other.n_rows
            and self.n_cols == other.n_cols
            and all(np.array_equal(a, b) for a, b in zip(self.row_adj, other.row_adj))
        )

    def __repr__(self) -> str:
        return f"ParityCheckMatrix({self.n_rows}x{self.n_cols}, {self.edge_col.size} ones)"


@dataclass(frozen=True)
class CodeSpec:
    """Block length, dimension and weight profile of the code defined by H."""

    n: int
    k: int
    rate: float
    row_weight: Optional[int]  # None marks an irregular profile
    col_weight: Optional[int]


def gf2_rank(h: ParityCheckMatrix) -> int:
    """Rank of H over GF(2) by elimination on integer bitmasks."""
    pivots: dict[int, int] = {}
    rank = 0
    for adj in h.row_adj:
        v = 0
        for j in adj:
            v |= 1 << int(j)
        while v:
            b = v.bit_length() - 1
            if b in pivots:
                v ^= pivots[b]
            else:
                pivots[b] = v
                rank += 1
                break
    return rank


def code_spec(h: ParityCheckMatrix) -> CodeSpec:
    """Derive (n, k, rate, weights) from H; k = n - rank_GF2(H)."""
    k = h.n_cols - gf2_rank(h)
    if not 0 < k < h.n_cols:
        raise ValueError(f"degenerate code: n={h.n_cols}, k={k}")
    rw = int(h.row_weights[0]) if len(set(h.row_weights.tolist())) == 1 else None
    cw = int(h.col_weights[0]) if len(set(h.col_weights.tolist())) == 1 else None
    return CodeSpec(n=h.n_cols, k=k, rate=k / h.n_cols, row_weight=rw, col_weight=cw)


@dataclass(frozen=True)
class RcReport:
    """Result of the row-column constraint check."""

    ok: bool
    row_pair: Optional[tuple[int, int]]  # lexicographically smallest offending row pair
    col_pair: Optional[tuple[int, int]]


def _first_pair_sharing_two(adj: Sequence[np.ndarray], n_items: int) -> Optional[tuple[int, int]]:
    """Smallest (i, j), i < j, such that items i and j co-occur in >= 2 of the
    given adjacency lists.  ``adj`` lists are sorted, so encoded pairs are too.
    """
    chunks = []
    for members in adj:
        w = members.size
        if w < 2:
            continue
        iu, ju = np.triu_indices(w, 1)
        chunks.append(members[iu] * n_items + members[ju])
    if not chunks:
        return None
    codes = np.concatenate(chunks)
    uniq, counts = np.unique(codes, return_counts=True)
    bad = uniq[counts >= 2]
    if bad.size == 0:
        return None
    code = int(bad.min())
    return code // n_items, code % n_items


def validate_rc(h: ParityCheckMatrix) -> RcReport:
    """Check that no two rows, and no two columns, share more than one position."""
    row_pair = _first_pair_sharing_two(h.col_adj, h.n_rows)
    col_pair = _first_pair_sharing_two(h.row_adj, h.n_cols)
    return RcReport(ok=row_pair is None and col_pair is None,
                    row_pair=row_pair, col_pair=col_pair)
