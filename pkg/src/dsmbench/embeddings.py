"""Word-vector containers shared by all models, plus the text serialization.

Every model ultimately exposes the same query surface: membership tests and
cosine similarity between two words. Dense models use EmbeddingMatrix;
explicit count models keep their sparse rows (never densified) behind the
same interface.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy import sparse

from .errors import DataError


@dataclass
class EmbeddingMatrix:
    """Dense per-word vectors of fixed dimensionality."""

    words: list[str]
    vectors: np.ndarray
    model: str = ""
    id_of: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        self.vectors = np.asarray(self.vectors, dtype=np.float64)
        if self.vectors.ndim != 2 or self.vectors.shape[0] != len(self.words):
            raise DataError("embedding matrix shape does not match word list")
        if not np.isfinite(self.vectors).all():
            raise DataError("embedding matrix contains non-finite values")
        self.id_of = {w: i for i, w in enumerate(self.words)}

    @property
    def dim(self) -> int:
        return int(self.vectors.shape[1])

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: str) -> bool:
        return word in self.id_of

    def vector(self, word: str) -> np.ndarray:
        return self.vectors[self.id_of[word]]

    def similarity(self, word1: str, word2: str) -> float | None:
        """Cosine similarity, or None when either vector has zero norm."""
        u = self.vectors[self.id_of[word1]]
        v = self.vectors[self.id_of[word2]]
        nu = float(np.linalg.norm(u))
        nv = float(np.linalg.norm(v))
        if nu == 0.0 or nv == 0.0:
            return None
        return float(np.dot(u, v) / (nu * nv))

    def save(self, path: str | Path) -> None:
        """Word-vector text format: header ``<V> <D>``, then one word per line."""
        with open(path, "w", encoding="utf-8") as out:
            out.write(f"{len(self.words)} {self.dim}\n")
            for word, row in zip(self.words, self.vectors):
                out.write(word + " " + " ".join(format(x, ".6g") for x in row) + "\n")

    @classmethod
    def load(cls, path: str | Path, model: str = "") -> "EmbeddingMatrix":
        with open(path, encoding="utf-8") as src:
            header = src.readline().split()
            if len(header) != 2:
                raise DataError(f"{path}: not a word-vector file")
            n, dim = int(header[0]), int(header[1])
            words: list[str] = []
            vectors = np.empty((n, dim), dtype=np.float64)
            for i in range(n):
                parts = src.readline().split()
                if len(parts) != dim + 1:
                    raise DataError(f"{path}: bad vector line {i + 2}")
                words.append(parts[0])
                vectors[i] = [float(x) for x in parts[1:]]
        return cls(words, vectors, model=model)


class SparseWordVectors:
    """Sparse rows of a weighted matrix, queried with a sparse cosine."""

    def __init__(self, words: list[str], rows: sparse.csr_matrix, model: str = ""):
        if rows.shape[0] != len(words):
            raise DataError("sparse vector row count does not match word list")
        self.words = words
        self.rows = rows.tocsr()
        self.model = model
        self.id_of = {w: i for i, w in enumerate(words)}
        self._norms = np.sqrt(np.asarray(self.rows.multiply(self.rows).sum(axis=1)).ravel())

    @property
    def dim(self) -> int:
        return int(self.rows.shape[1])

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: str) -> bool:
        return word in self.id_of

    def similarity(self, word1: str, word2: str) -> float | None:
        i = self.id_of[word1]
        j = self.id_of[word2]
        ni, nj = self._norms[i], self._norms[j]
        if ni == 0.0 or nj == 0.0:
            return None
        dot = self.rows[i].multiply(self.rows[j]).sum()
        return float(dot / (ni * nj))
