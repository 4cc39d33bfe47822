"""Bit-packed GF(2) matrices and vectors.

Rows are packed into 64-bit words, little-endian within each word: bit j of a
row lives at ``words[j // 64] >> (j % 64) & 1``.  Padding bits past the last
column are kept zero as a class invariant so popcounts over raw words are
exact.  Instances are treated as immutable after construction; operations
that need to mutate work on a copy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, RankDeficientError

WORD_BITS = 64
_U64 = np.uint64


def _num_words(bits: int) -> int:
    return (bits + WORD_BITS - 1) // WORD_BITS


def _pad_mask(bits: int) -> np.uint64:
    rem = bits % WORD_BITS
    if rem == 0:
        return _U64(0xFFFFFFFFFFFFFFFF)
    return _U64((1 << rem) - 1)


def _pack_bits(bits: np.ndarray) -> np.ndarray:
    """Pack a 0/1 array of shape (..., n) into uint64 words of shape (..., W)."""
    bits = np.asarray(bits, dtype=np.uint8) & 1
    n = bits.shape[-1]
    w = _num_words(n)
    padded = np.zeros(bits.shape[:-1] + (w * WORD_BITS,), dtype=np.uint8)
    padded[..., :n] = bits
    # numpy packbits is big-endian within bytes; ask for little-endian and
    # view groups of 8 bytes as one little-endian word.
    packed = np.packbits(padded, axis=-1, bitorder="little")
    return packed.view("<u8").reshape(bits.shape[:-1] + (w,)).astype(_U64)


def _unpack_bits(words: np.ndarray, n: int) -> np.ndarray:
    bytes_ = np.ascontiguousarray(words, dtype="<u8").view(np.uint8)
    bits = np.unpackbits(bytes_, axis=-1, bitorder="little")
    return bits[..., :n]


@dataclass(frozen=True)
class BitVector:
    """Length-n bit vector packed into uint64 words."""

    n: int
    words: np.ndarray

    @classmethod
    def from_bits(cls, bits) -> "BitVector":
        bits = np.asarray(bits, dtype=np.uint8).ravel()
        if bits.size == 0:
            raise DimensionMismatchError("bit vector must have length >= 1")
        return cls(int(bits.size), _pack_bits(bits))

    @classmethod
    def zeros(cls, n: int) -> "BitVector":
        if n < 1:
            raise DimensionMismatchError("bit vector must have length >= 1")
        return cls(n, np.zeros(_num_words(n), dtype=_U64))

    @classmethod
    def unit(cls, n: int, i: int) -> "BitVector":
        v = np.zeros(n, dtype=np.uint8)
        v[i] = 1
        return cls.from_bits(v)

    @classmethod
    def from_int(cls, value: int, n: int) -> "BitVector":
        words = np.array(
            [(value >> (WORD_BITS * w)) & 0xFFFFFFFFFFFFFFFF for w in range(_num_words(n))],
            dtype=_U64,
        )
        out = cls(n, words)
        if value >> n:
            raise DimensionMismatchError(f"value has bits beyond length {n}")
        return out

    def to_bits(self) -> np.ndarray:
        return _unpack_bits(self.words, self.n)

    def to_int(self) -> int:
        return int.from_bytes(self.words.astype("<u8").tobytes(), "little")

    def get(self, j: int) -> int:
        return int(self.words[j // WORD_BITS] >> _U64(j % WORD_BITS)) & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.n != other.n:
            raise DimensionMismatchError(f"length mismatch: {self.n} != {other.n}")
        return BitVector(self.n, self.words ^ other.words)

    def __and__(self, other: "BitVector") -> "BitVector":
        if self.n != other.n:
            raise DimensionMismatchError(f"length mismatch: {self.n} != {other.n}")
        return BitVector(self.n, self.words & other.words)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitVector)
            and self.n == other.n
            and bool(np.array_equal(self.words, other.words))
        )

    def __hash__(self):
        return hash((self.n, self.words.tobytes()))


@dataclass(frozen=True)
class BitMatrix:
    """rows x cols bit matrix, each row packed into uint64 words."""

    rows: int
    cols: int
    words: np.ndarray  # shape (rows, W)

    @classmethod
    def from_bits(cls, bits) -> "BitMatrix":
        bits = np.atleast_2d(np.asarray(bits, dtype=np.uint8))
        r, c = bits.shape
        if r < 1 or c < 1:
            raise DimensionMismatchError("matrix must be at least 1x1")
        return cls(r, c, _pack_bits(bits))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls.from_bits(np.eye(n, dtype=np.uint8))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls.from_bits(np.zeros((rows, cols), dtype=np.uint8))

    @classmethod
    def from_row_ints(cls, row_ints, cols: int) -> "BitMatrix":
        w = _num_words(cols)
        words = np.zeros((len(row_ints), w), dtype=_U64)
        for i, v in enumerate(row_ints):
            if v >> cols:
                raise DimensionMismatchError(f"row {i} has bits beyond column {cols}")
            for j in range(w):
                words[i, j] = (v >> (WORD_BITS * j)) & 0xFFFFFFFFFFFFFFFF
        return cls(len(row_ints), cols, words)

    def to_bits(self) -> np.ndarray:
        return _unpack_bits(self.words, self.cols)

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.words[i].copy())

    def row_int(self, i: int) -> int:
        return int.from_bytes(self.words[i].astype("<u8").tobytes(), "little")

    def get(self, i: int, j: int) -> int:
        return int(self.words[i, j // WORD_BITS] >> _U64(j % WORD_BITS)) & 1

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and bool(np.array_equal(self.words, other.words))
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.words.tobytes()))


def weight(v: BitVector) -> int:
    """Hamming weight (population count)."""
    return int(np.bitwise_count(v.words).sum())


def rank(m: BitMatrix) -> int:
    """GF(2) rank by Gaussian elimination on a copy; input is unmodified."""
    work = m.words.copy()
    r = 0
    for col in range(m.cols):
        w, b = divmod(col, WORD_BITS)
        mask = _U64(1 << b)
        pivots = np.nonzero(work[r:, w] & mask)[0]
        if pivots.size == 0:
            continue
        p = r + int(pivots[0])
        if p != r:
            work[[r, p]] = work[[p, r]]
        hit = np.nonzero(work[r + 1 :, w] & mask)[0]
        if hit.size:
            work[r + 1 + hit] ^= work[r]
        r += 1
        if r == m.rows:
            break
    return r


def systematize(m: BitMatrix) -> tuple[BitMatrix, np.ndarray]:
    """Row-reduce to a systematic form, permuting columns when needed.

    Columns are pivoted in left-to-right order; a column with no usable pivot
    is skipped and effectively swapped rightward, so the first ``rows``
    columns of the result form an identity.  Returns ``(sys, perm)`` where
    column ``j`` of ``sys`` is column ``perm[j]`` of ``m``; a codeword ``c``
    in the systematic column order maps back via ``orig[perm[j]] = c[j]``.

    Raises RankDeficientError when rank(m) < rows.
    """
    work = m.words.copy()
    pivot_cols = []
    r = 0
    for col in range(m.cols):
        w, b = divmod(col, WORD_BITS)
        mask = _U64(1 << b)
        pivots = np.nonzero(work[r:, w] & mask)[0]
        if pivots.size == 0:
            continue
        p = r + int(pivots[0])
        if p != r:
            work[[r, p]] = work[[p, r]]
        hit = np.nonzero(work[:, w] & mask)[0]
        hit = hit[hit != r]
        if hit.size:
            work[hit] ^= work[r]
        pivot_cols.append(col)
        r += 1
        if r == m.rows:
            break
    if r < m.rows:
        raise RankDeficientError(f"rank {r} < rows {m.rows}")
    rest = [c for c in range(m.cols) if c not in set(pivot_cols)]
    perm = np.array(pivot_cols + rest, dtype=np.int64)
    bits = _unpack_bits(work, m.cols)[:, perm]
    return BitMatrix.from_bits(bits), perm


def encode(g: BitMatrix, u: BitVector) -> BitVector:
    """Codeword u @ g over GF(2) for a k x n generator and length-k message."""
    if u.n != g.rows:
        raise DimensionMismatchError(f"message length {u.n} != generator rows {g.rows}")
    sel = np.nonzero(u.to_bits())[0]
    if sel.size == 0:
        return BitVector.zeros(g.cols)
    acc = np.bitwise_xor.reduce(g.words[sel], axis=0)
    return BitVector(g.cols, acc)


def encode_bits(gen_bits: np.ndarray, msgs: np.ndarray) -> np.ndarray:
    """Batch encode over unpacked uint8 arrays: (B,k) @ (k,n) mod 2."""
    return (msgs.astype(np.uint32) @ gen_bits.astype(np.uint32) % 2).astype(np.uint8)


def parse_generator_file(text: str) -> BitMatrix:
    """Parse the generator matrix text format.

    First non-comment line is ``n k``; the next k lines carry n characters
    from {0,1} each (whitespace between characters is ignored), one row of
    the k x n row-message generator per line.  ``#`` starts a comment.
    """
    lines = []
    for raw in text.splitlines():
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append(stripped)
    if not lines:
        raise DimensionMismatchError("empty generator file")
    head = lines[0].split()
    if len(head) != 2:
        raise DimensionMismatchError(f"expected 'n k' header, got {lines[0]!r}")
    n, k = int(head[0]), int(head[1])
    if n < 1 or k < 1 or k > n:
        raise DimensionMismatchError(f"bad generator dimensions n={n} k={k}")
    if len(lines) - 1 < k:
        raise DimensionMismatchError(f"expected {k} rows, found {len(lines) - 1}")
    rows = []
    for idx in range(1, k + 1):
        digits = [c for c in lines[idx] if not c.isspace()]
        if len(digits) != n or any(c not in "01" for c in digits):
            raise DimensionMismatchError(f"row {idx} is not {n} binary digits")
        rows.append([int(c) for c in digits])
    return BitMatrix.from_bits(np.array(rows, dtype=np.uint8))


def format_generator_file(g: BitMatrix) -> str:
    """Inverse of parse_generator_file."""
    body = "\n".join("".join(str(b) for b in row) for row in g.to_bits())
    return f"{g.cols} {g.rows}\n{body}\n"
