"""Sparse target x context co-occurrence counting and context pruning.

Counts use a symmetric +-c token window, truncated at sequence edges and
(by default) at document boundaries. Target rows always span the full
vocabulary; only context columns are pruned.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import sparse

from .corpus import CorpusSlice, Vocabulary
from .errors import DataError


@dataclass(frozen=True)
class WindowConfig:
    half_width: int = 2
    cross_document: bool = False

    def __post_init__(self):
        if self.half_width < 1:
            raise ValueError(f"window half_width must be >= 1, got {self.half_width}")


@dataclass
class CoocMatrix:
    """Sparse count matrix with its marginals.

    ``counts`` is rows x cols CSR with integer data; ``context_ids`` maps
    each column back to the vocabulary id it represents (ascending).
    ``total`` is the grand sum of all cells, so that row and column
    marginals both sum to it; all three are recomputed when columns are
    pruned.
    """

    counts: sparse.csr_matrix
    context_ids: np.ndarray
    row_marginals: np.ndarray
    col_marginals: np.ndarray
    total: int

    @property
    def rows(self) -> int:
        return self.counts.shape[0]

    @property
    def cols(self) -> int:
        return self.counts.shape[1]

    @property
    def nnz(self) -> int:
        return int(self.counts.nnz)

    def check_consistent(self) -> None:
        """Recompute marginals/total from cells and compare with the stored ones."""
        rows = np.asarray(self.counts.sum(axis=1)).ravel()
        cols = np.asarray(self.counts.sum(axis=0)).ravel()
        if not np.array_equal(rows, self.row_marginals):
            raise DataError("row marginals inconsistent with cells")
        if not np.array_equal(cols, self.col_marginals):
            raise DataError("column marginals inconsistent with cells")
        if int(rows.sum()) != self.total:
            raise DataError("total inconsistent with cells")


def _with_marginals(counts: sparse.csr_matrix, context_ids: np.ndarray) -> CoocMatrix:
    counts.sum_duplicates()
    counts.eliminate_zeros()
    row = np.asarray(counts.sum(axis=1), dtype=np.int64).ravel()
    col = np.asarray(counts.sum(axis=0), dtype=np.int64).ravel()
    return CoocMatrix(
        counts=counts,
        context_ids=np.asarray(context_ids, dtype=np.int64),
        row_marginals=row,
        col_marginals=col,
        total=int(row.sum()),
    )


def count_cooccurrences(slice_: CorpusSlice, vocab: Vocabulary, window: WindowConfig) -> CoocMatrix:
    """Count (target, context) pairs over a +-half_width window.

    Every in-bounds offset j in [-c, c], j != 0 contributes one count to
    (token_i, token_{i+j}); windows never cross a document boundary unless
    window.cross_document is set.
    """
    tokens = np.asarray(slice_.tokens, dtype=np.int64)
    n_words = len(vocab)
    if tokens.size and (tokens.min() < 0 or tokens.max() >= n_words):
        raise DataError("slice contains token ids outside the vocabulary")
    acc = sparse.csr_matrix((n_words, n_words), dtype=np.int64)
    doc = None if window.cross_document else slice_.doc_ids()
    n = tokens.size
    for j in range(1, window.half_width + 1):
        if n <= j:
            break
        left = tokens[:-j]
        right = tokens[j:]
        if doc is not None:
            keep = doc[:-j] == doc[j:]
            left, right = left[keep], right[keep]
        if left.size == 0:
            continue
        ones = np.ones(left.size, dtype=np.int64)
        part = sparse.coo_matrix((ones, (left, right)), shape=(n_words, n_words)).tocsr()
        # the offset -j pairs are exactly the transpose of the +j pairs
        acc = acc + part + part.T.tocsr()
    return _with_marginals(acc, np.arange(n_words, dtype=np.int64))


def prune_contexts(matrix: CoocMatrix, k: int) -> CoocMatrix:
    """Keep the k context columns with the highest marginals (ties: lower id)."""
    if k < 1:
        raise ValueError(f"context count must be >= 1, got {k}")
    if k >= matrix.cols:
        return matrix
    # lexsort: primary key last -> sort by marginal desc, then id asc
    order = np.lexsort((matrix.context_ids, -matrix.col_marginals))
    keep = np.sort(order[:k])
    counts = matrix.counts[:, keep].tocsr()
    return _with_marginals(counts, matrix.context_ids[keep])


def save_cooc(matrix: CoocMatrix, path: str | Path) -> None:
    """Write header ``cooc <rows> <cols> <nnz> <T>`` plus sorted count triples."""
    coo = matrix.counts.tocoo()
    order = np.lexsort((coo.col, coo.row))
    ctx = matrix.context_ids
    with open(path, "w", encoding="utf-8") as out:
        out.write(f"cooc {matrix.rows} {matrix.cols} {matrix.nnz} {matrix.total}\n")
        for r, c, v in zip(coo.row[order], coo.col[order], coo.data[order]):
            out.write(f"{r} {ctx[c]} {v}\n")


def load_cooc(path: str | Path) -> CoocMatrix:
    """Read a matrix written by save_cooc.

    Context columns are reconstructed from the triples, so pruned-in columns
    that had no surviving cells are dropped (harmless downstream: they carry
    no counts).
    """
    with open(path, encoding="utf-8") as src:
        header = src.readline().split()
        if len(header) != 5 or header[0] != "cooc":
            raise DataError(f"{path}: not a co-occurrence matrix file")
        rows, _cols, nnz, total = (int(x) for x in header[1:])
        data = np.loadtxt(src, dtype=np.int64, ndmin=2) if nnz else np.empty((0, 3), np.int64)
    if data.shape[0] != nnz:
        raise DataError(f"{path}: header declares {nnz} cells, found {data.shape[0]}")
    context_ids = np.unique(data[:, 1]) if nnz else np.empty(0, np.int64)
    col_index = {int(c): i for i, c in enumerate(context_ids)}
    cols = np.fromiter((col_index[int(c)] for c in data[:, 1]), dtype=np.int64, count=nnz)
    counts = sparse.coo_matrix(
        (data[:, 2], (data[:, 0], cols)), shape=(rows, len(context_ids)), dtype=np.int64
    ).tocsr()
    matrix = _with_marginals(counts, context_ids)
    if matrix.total != total:
        raise DataError(f"{path}: header total {total} != cell sum {matrix.total}")
    return matrix
