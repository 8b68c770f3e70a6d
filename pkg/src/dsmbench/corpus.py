"""Corpus streaming: tokenization, vocabulary construction, prefix slices.

Token streams are iterators of strings with ``DOC_BREAK`` (``None``) markers
between documents. A document is a run of non-blank lines; blank lines
separate documents. Tokens are lowercased maximal runs of word characters
(underscore excluded), so punctuation acts as a separator.
"""

from __future__ import annotations

import gzip
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .errors import DataError

# Document-break marker emitted inside token streams.
DOC_BREAK = None

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)
_GZIP_MAGIC = b"\x1f\x8b"


@dataclass(frozen=True)
class TokenizerConfig:
    encoding: str = "utf-8"
    lowercase: bool = True


def tokenize(lines: Iterable[str], config: TokenizerConfig = TokenizerConfig()) -> Iterator[str | None]:
    """Tokenize a stream of text lines.

    Yields token strings; a single ``DOC_BREAK`` is emitted between documents
    (runs of non-blank lines). Leading/trailing breaks are suppressed and
    consecutive blank lines collapse to one break.
    """
    pending_break = False
    started = False
    for line in lines:
        if not line.strip():
            pending_break = started
            continue
        text = line.lower() if config.lowercase else line
        tokens = _TOKEN_RE.findall(text)
        if not tokens:
            continue
        if pending_break:
            yield DOC_BREAK
            pending_break = False
        started = True
        yield from tokens


def _decoded_lines(path: str | Path, encoding: str) -> Iterator[str]:
    """Yield decoded lines, reporting the absolute byte offset on failure."""
    raw = open(path, "rb")
    with raw:
        magic = raw.read(2)
        raw.seek(0)
        stream = gzip.open(raw, "rb") if magic == _GZIP_MAGIC else raw
        offset = 0
        for line in stream:
            try:
                yield line.decode(encoding)
            except UnicodeDecodeError as exc:
                raise DataError(
                    f"{path}: invalid {encoding} at byte {offset + exc.start}"
                ) from exc
            offset += len(line)


def tokenize_file(path: str | Path, config: TokenizerConfig = TokenizerConfig()) -> Iterator[str | None]:
    """Tokenize a plain or gzip-compressed text file (detected by magic bytes)."""
    return tokenize(_decoded_lines(path, config.encoding), config)


@dataclass
class Vocabulary:
    """Word <-> dense-id map with per-word counts.

    Ids run 0..N-1 in order of descending frequency (ties broken
    lexicographically). ``total_tokens`` counts every token seen at build
    time, including occurrences of types dropped by ``min_count``, so
    ``sum(freqs) <= total_tokens``.
    """

    words: list[str]
    freqs: np.ndarray
    total_tokens: int
    id_of: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        self.freqs = np.asarray(self.freqs, dtype=np.int64)
        if len(self.words) != len(self.freqs):
            raise DataError("vocabulary words/freqs length mismatch")
        self.id_of = {w: i for i, w in enumerate(self.words)}
        if len(self.id_of) != len(self.words):
            raise DataError("vocabulary contains duplicate words")

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: str) -> bool:
        return word in self.id_of

    def freq_of(self, word: str) -> int:
        """Corpus frequency of ``word``, 0 if not in the vocabulary."""
        i = self.id_of.get(word)
        return int(self.freqs[i]) if i is not None else 0

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as out:
            out.write(f"vocab {len(self)} {self.total_tokens}\n")
            for word, freq in zip(self.words, self.freqs):
                out.write(f"{word}\t{freq}\n")

    @classmethod
    def load(cls, path: str | Path) -> "Vocabulary":
        with open(path, encoding="utf-8") as src:
            header = src.readline().split()
            if len(header) != 3 or header[0] != "vocab":
                raise DataError(f"{path}: not a vocabulary file")
            n, total = int(header[1]), int(header[2])
            words: list[str] = []
            freqs: list[int] = []
            for line in src:
                word, freq = line.rstrip("\n").split("\t")
                words.append(word)
                freqs.append(int(freq))
        if len(words) != n:
            raise DataError(f"{path}: header declares {n} words, found {len(words)}")
        return cls(words, np.asarray(freqs, dtype=np.int64), total)


def build_vocabulary(tokens: Iterable[str | None], min_count: int = 1) -> Vocabulary:
    """Count a token stream into a Vocabulary.

    Types with frequency < min_count are dropped from the id space but still
    counted in total_tokens. An empty stream yields an empty vocabulary.
    """
    if min_count < 1:
        raise ValueError(f"min_count must be >= 1, got {min_count}")
    counts: dict[str, int] = {}
    total = 0
    for tok in tokens:
        if tok is DOC_BREAK:
            continue
        total += 1
        counts[tok] = counts.get(tok, 0) + 1
    kept = sorted(
        ((w, c) for w, c in counts.items() if c >= min_count),
        key=lambda wc: (-wc[1], wc[0]),
    )
    words = [w for w, _ in kept]
    freqs = np.asarray([c for _, c in kept], dtype=np.int64)
    return Vocabulary(words, freqs, total)


def encode(tokens: Iterable[str | None], vocab: Vocabulary) -> Iterator[int | None]:
    """Map token strings to ids, dropping out-of-vocabulary tokens.

    DOC_BREAK markers pass through unchanged.
    """
    id_of = vocab.id_of
    for tok in tokens:
        if tok is DOC_BREAK:
            yield DOC_BREAK
        else:
            i = id_of.get(tok)
            if i is not None:
                yield i


@dataclass(frozen=True)
class CorpusSlice:
    """A prefix of an encoded corpus with document boundaries preserved.

    ``boundaries[k]`` is the index of the first token of a new document;
    boundaries are strictly increasing and interior (0 < b < length).
    """

    tokens: np.ndarray
    boundaries: np.ndarray
    requested: int

    @property
    def length(self) -> int:
        return int(self.tokens.shape[0])

    @property
    def truncated(self) -> bool:
        """True when the source stream ran out before ``requested`` tokens."""
        return self.length < self.requested

    def doc_ids(self) -> np.ndarray:
        """Per-token document index (0-based), derived from boundaries."""
        marks = np.zeros(self.length, dtype=np.int64)
        if self.boundaries.size:
            marks[self.boundaries] = 1
        return np.cumsum(marks)


def slice_corpus(tokens: Iterable[int | None], n: int) -> CorpusSlice:
    """Take the first ``n`` token ids of a stream, keeping document breaks."""
    if n < 0:
        raise ValueError(f"slice size must be >= 0, got {n}")
    ids: list[int] = []
    bounds: list[int] = []
    for tok in tokens:
        if tok is DOC_BREAK:
            if ids and (not bounds or bounds[-1] != len(ids)):
                bounds.append(len(ids))
            continue
        if len(ids) >= n:
            break
        ids.append(tok)
    bounds = [b for b in bounds if 0 < b < len(ids)]
    return CorpusSlice(
        tokens=np.asarray(ids, dtype=np.int32),
        boundaries=np.asarray(bounds, dtype=np.int64),
        requested=n,
    )


def write_tokens(path: str | Path, tokens: Iterable[str | None]) -> None:
    """Write a token stream as text, one document per line."""
    with open(path, "w", encoding="utf-8") as out:
        doc: list[str] = []
        for tok in tokens:
            if tok is DOC_BREAK:
                if doc:
                    out.write(" ".join(doc) + "\n")
                    doc = []
            else:
                doc.append(tok)
        if doc:
            out.write(" ".join(doc) + "\n")


def read_tokens(path: str | Path) -> Iterator[str | None]:
    """Read a one-document-per-line token file back as a marked stream."""
    first = True
    with open(path, encoding="utf-8") as src:
        for line in src:
            parts = line.split()
            if not parts:
                continue
            if not first:
                yield DOC_BREAK
            first = False
            yield from parts
