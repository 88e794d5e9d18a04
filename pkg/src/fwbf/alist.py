"""Reader and writer for the alist sparse-matrix interchange format.

Layout: line 1 ``N M``; line 2 ``max_col_weight max_row_weight``; line 3 the
N column weights; line 4 the M row weights; then N lines of 1-based row
indices (one line per column), then M lines of 1-based column indices (one
per row).  Index lines may be 0-padded to the declared maximum weight; zeros
are ignored.  ASCII, space-separated, LF line endings.
"""

from __future__ import annotations

import os

import numpy as np

from .matrix import ParityCheckMatrix


class AlistError(ValueError):
    """Base class for alist parsing failures."""


class AlistFormatError(AlistError):
    """Malformed counts: bad tokens, wrong line lengths, weight mismatches."""


class AlistRangeError(AlistError):
    """An index falls outside [1, M] or [1, N]."""


class AlistMismatchError(AlistError):
    """The column-side and row-side adjacency lists disagree."""


def write_alist(h: ParityCheckMatrix, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as f:
        f.write(f"{h.n_cols} {h.n_rows}\n")
        f.write(f"{h.max_col_weight} {h.max_row_weight}\n")
        f.write(" ".join(str(w) for w in h.col_weights) + "\n")
        f.write(" ".join(str(w) for w in h.row_weights) + "\n")
        for adj in h.col_adj:
            f.write(" ".join(str(m + 1) for m in adj) + "\n")
        for adj in h.row_adj:
            f.write(" ".join(str(n + 1) for n in adj) + "\n")


def _ints(line: str, lineno: int) -> list[int]:
    out = []
    for tok in line.split():
        try:
            out.append(int(tok))
        except ValueError:
            raise AlistFormatError(f"line {lineno}: non-integer token {tok!r}") from None
    return out


def _parse_index_block(lines, first_lineno, count, weights, max_weight, index_bound, what):
    """Parse ``count`` lines of 1-based indices, dropping 0 padding."""
    adj = []
    for i in range(count):
        lineno = first_lineno + i
        vals = [v for v in _ints(lines[i], lineno) if v != 0]
        if len(lines[i].split()) > max_weight:
            raise AlistFormatError(
                f"line {lineno}: {what} {i} lists more than max weight {max_weight} entries"
            )
        if len(vals) != weights[i]:
            raise AlistFormatError(
                f"line {lineno}: {what} {i} declares weight {weights[i]} "
                f"but lists {len(vals)} indices"
            )
        for v in vals:
            if not 1 <= v <= index_bound:
                raise AlistRangeError(f"line {lineno}: index {v} out of range [1, {index_bound}]")
        if len(set(vals)) != len(vals):
            raise AlistFormatError(f"line {lineno}: {what} {i} has duplicate indices")
        adj.append(sorted(v - 1 for v in vals))
    return adj


def read_alist(path: str | os.PathLike) -> ParityCheckMatrix:
    with open(path, "r", encoding="ascii") as f:
        lines = [ln.rstrip("\n") for ln in f]
    while lines and not lines[-1].strip():
        lines.pop()
    if len(lines) < 4:
        raise AlistFormatError("file has fewer than 4 header lines")

    head = _ints(lines[0], 1)
    if len(head) != 2:
        raise AlistFormatError("line 1: expected 'N M'")
    n, m = head
    if n < 1 or m < 1:
        raise AlistFormatError(f"line 1: non-positive dimensions {n} x {m}")

    maxes = _ints(lines[1], 2)
    if len(maxes) != 2:
        raise AlistFormatError("line 2: expected 'max_col_weight max_row_weight'")
    max_cw, max_rw = maxes

    col_w = _ints(lines[2], 3)
    if len(col_w) != n:
        raise AlistFormatError(f"line 3: expected {n} column weights, got {len(col_w)}")
    row_w = _ints(lines[3], 4)
    if len(row_w) != m:
        raise AlistFormatError(f"line 4: expected {m} row weights, got {len(row_w)}")
    if any(w < 0 or w > max_cw for w in col_w):
        raise AlistFormatError("line 3: a column weight exceeds the declared maximum")
    if any(w < 0 or w > max_rw for w in row_w):
        raise AlistFormatError("line 4: a row weight exceeds the declared maximum")

    if len(lines) != 4 + n + m:
        raise AlistFormatError(f"expected {4 + n + m} lines, got {len(lines)}")

    col_adj = _parse_index_block(lines[4:4 + n], 5, n, col_w, max_cw, m, "column")
    row_adj = _parse_index_block(lines[4 + n:], 5 + n, m, row_w, max_rw, n, "row")

    # Cross-check the two redundant views before building the matrix.
    from_cols: list[set[int]] = [set() for _ in range(m)]
    for c, rows in enumerate(col_adj):
        for r in rows:
            from_cols[r].add(c)
    for r in range(m):
        if from_cols[r] != set(row_adj[r]):
            raise AlistMismatchError(
                f"row {r}: column-side adjacency {sorted(from_cols[r])} "
                f"!= row-side adjacency {row_adj[r]}"
            )
    return ParityCheckMatrix(row_adj, n)
