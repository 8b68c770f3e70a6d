"""Association weighting of raw co-occurrence counts.

Three schemes: identity (co), positive PMI (ppmi), and smoothed positive PMI
(sppmi) where context probabilities are raised to a power alpha and
renormalized. PMI uses the natural log of f_ab * T / (f_a * f_b) with the
marginals and total taken from the count matrix itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import sparse

from .cooccurrence import CoocMatrix
from .errors import DataError, NumericError

SCHEMES = ("co", "ppmi", "sppmi")


@dataclass
class WeightedMatrix:
    """Real-valued matrix with the same sparse layout as its source counts."""

    values: sparse.csr_matrix
    context_ids: np.ndarray
    scheme: str
    alpha: float | None = None

    @property
    def rows(self) -> int:
        return self.values.shape[0]

    @property
    def cols(self) -> int:
        return self.values.shape[1]

    @property
    def nnz(self) -> int:
        return int(self.values.nnz)


def apply_co(matrix: CoocMatrix) -> WeightedMatrix:
    """Identity weighting: raw counts as real values."""
    values = matrix.counts.astype(np.float64)
    return WeightedMatrix(values, matrix.context_ids.copy(), "co")


def _positive_log_ratio(matrix: CoocMatrix, context_weight: np.ndarray, norm: float) -> sparse.csr_matrix:
    """max(0, log(f_ab * norm / (f_a * w_b))) over the nonzero cells."""
    coo = matrix.counts.tocoo()
    f_ab = coo.data.astype(np.float64)
    f_a = matrix.row_marginals[coo.row].astype(np.float64)
    w_b = context_weight[coo.col]
    vals = np.log((f_ab * norm) / (f_a * w_b))
    np.maximum(vals, 0.0, out=vals)
    out = sparse.coo_matrix((vals, (coo.row, coo.col)), shape=matrix.counts.shape).tocsr()
    out.eliminate_zeros()
    return out


def apply_ppmi(matrix: CoocMatrix) -> WeightedMatrix:
    """Positive PMI: log(f_ab * T / (f_a * f_b)), negatives clipped to zero."""
    if matrix.total <= 0:
        raise NumericError("cannot weight an empty matrix (total is 0)")
    values = _positive_log_ratio(
        matrix, matrix.col_marginals.astype(np.float64), float(matrix.total)
    )
    return WeightedMatrix(values, matrix.context_ids.copy(), "ppmi")


def apply_smoothed_ppmi(matrix: CoocMatrix, alpha: float) -> WeightedMatrix:
    """PPMI with context counts raised to ``alpha`` and renormalized.

    The context probability becomes f_b^alpha / sum_b f_b^alpha; alpha = 1
    reproduces apply_ppmi exactly.
    """
    if alpha <= 0:
        raise ValueError(f"smoothing exponent must be > 0, got {alpha}")
    if matrix.total <= 0:
        raise NumericError("cannot weight an empty matrix (total is 0)")
    powered = np.power(matrix.col_marginals.astype(np.float64), alpha)
    values = _positive_log_ratio(matrix, powered, float(powered.sum()))
    return WeightedMatrix(values, matrix.context_ids.copy(), "sppmi", alpha=alpha)


def save_weighted(matrix: WeightedMatrix, path: str | Path) -> None:
    """Triple text format: ``weighted <rows> <cols> <nnz> <scheme>[ <alpha>]``."""
    coo = matrix.values.tocoo()
    order = np.lexsort((coo.col, coo.row))
    ctx = matrix.context_ids
    with open(path, "w", encoding="utf-8") as out:
        tag = matrix.scheme if matrix.alpha is None else f"{matrix.scheme} {matrix.alpha!r}"
        out.write(f"weighted {matrix.rows} {matrix.cols} {matrix.nnz} {tag}\n")
        for r, c, v in zip(coo.row[order], coo.col[order], coo.data[order]):
            out.write(f"{r} {ctx[c]} {v!r}\n")


def load_weighted(path: str | Path) -> WeightedMatrix:
    with open(path, encoding="utf-8") as src:
        header = src.readline().split()
        if len(header) not in (5, 6) or header[0] != "weighted":
            raise DataError(f"{path}: not a weighted matrix file")
        rows, _cols, nnz = (int(x) for x in header[1:4])
        scheme = header[4]
        if scheme not in SCHEMES:
            raise DataError(f"{path}: unknown weighting scheme {scheme!r}")
        alpha = float(header[5]) if len(header) == 6 else None
        r = np.empty(nnz, np.int64)
        c = np.empty(nnz, np.int64)
        v = np.empty(nnz, np.float64)
        for i in range(nnz):
            parts = src.readline().split()
            if len(parts) != 3:
                raise DataError(f"{path}: truncated at cell {i}")
            r[i], c[i], v[i] = int(parts[0]), int(parts[1]), float(parts[2])
    context_ids = np.unique(c) if nnz else np.empty(0, np.int64)
    col_index = {int(x): i for i, x in enumerate(context_ids)}
    cols = np.fromiter((col_index[int(x)] for x in c), dtype=np.int64, count=nnz)
    values = sparse.coo_matrix((v, (r, cols)), shape=(rows, len(context_ids))).tocsr()
    return WeightedMatrix(values, context_ids, scheme, alpha=alpha)
