"""Bit-packed binary matrix arithmetic over GF(2).

The :class:`BinaryMatrix` value type stores a dense 0/1 array and lazily
maintains a column-major bit-packed mirror (uint64 limbs, one bit per row)
for the batch rank kernel.  Single-matrix rank runs Gaussian elimination
on rows packed into Python integers, so row XOR is word-wide regardless
of width.  All operations are pure; matrices are immutable once built.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

__all__ = [
    "BinaryMatrix",
    "rank",
    "is_nonsingular",
    "select_columns",
    "random_matrix",
    "encode",
    "rank_batch",
    "parse_matrix",
    "format_matrix",
]


class BinaryMatrix:
    """Immutable k x n matrix with entries in {0, 1}.

    Construct from any 2-d array-like of 0/1 values.  The underlying array
    is copied and frozen; mutating views are never handed out.
    """

    __slots__ = ("_a", "_col_limbs", "_row_ints")

    def __init__(self, array):
        a = np.asarray(array, dtype=np.uint8)
        if a.ndim != 2:
            raise ValueError(f"expected a 2-d array, got {a.ndim}-d")
        if a.shape[0] < 1 or a.shape[1] < 1:
            raise ValueError(f"matrix must have at least one row and column, got {a.shape}")
        if not np.isin(np.asarray(array), (0, 1)).all():
            raise ValueError("matrix entries must be 0 or 1")
        a = a.copy()
        a.flags.writeable = False
        self._a = a
        self._col_limbs = None
        self._row_ints = None

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        return cls(np.eye(n, dtype=np.uint8))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BinaryMatrix":
        return cls(np.zeros((rows, cols), dtype=np.uint8))

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def array(self) -> np.ndarray:
        """Read-only uint8 view of the entries."""
        return self._a

    def to_array(self) -> np.ndarray:
        """Writable copy of the entries."""
        return self._a.copy()

    def packed_columns(self) -> np.ndarray:
        """Columns as bit-packed uint64 limbs, shape (cols, limbs).

        Bit j of limb j // 64 holds row j.  Cached after first use; the
        returned array is read-only.
        """
        if self._col_limbs is None:
            self._col_limbs = pack_columns(self._a)
            self._col_limbs.flags.writeable = False
        return self._col_limbs

    def packed_rows(self) -> tuple[int, ...]:
        """Rows as Python integers, bit j holding column j."""
        if self._row_ints is None:
            weights = 1 << np.arange(self.cols, dtype=object)
            self._row_ints = tuple(int(r) for r in self._a.astype(object) @ weights)
        return self._row_ints

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryMatrix):
            return NotImplemented
        return self.shape == other.shape and bool((self._a == other._a).all())

    def __hash__(self):
        return hash((self.shape, self._a.tobytes()))

    def __repr__(self) -> str:
        return f"BinaryMatrix({self.rows}x{self.cols})"


def pack_columns(a: np.ndarray) -> np.ndarray:
    """Pack a (k, n) 0/1 array into (n, ceil(k/64)) uint64 column limbs."""
    k, n = a.shape
    limbs = (k + 63) // 64
    out = np.zeros((n, limbs), dtype=np.uint64)
    for j in range(k):
        out[:, j // 64] |= a[j, :].astype(np.uint64) << np.uint64(j % 64)
    return out


def rank(M: BinaryMatrix) -> int:
    """GF(2) rank via Gaussian elimination on bit-packed rows.

    The pivot is always the lowest-index nonzero column of the row being
    reduced, so the elimination order is deterministic.
    """
    pivots: dict[int, int] = {}
    r = 0
    for row in M.packed_rows():
        while row:
            col = (row & -row).bit_length() - 1
            piv = pivots.get(col)
            if piv is None:
                pivots[col] = row
                r += 1
                break
            row ^= piv
    return r


def is_nonsingular(M: BinaryMatrix) -> bool:
    """True iff a square matrix has full rank over GF(2)."""
    if M.rows != M.cols:
        raise ValueError(f"not square: {M.rows}x{M.cols}")
    return rank(M) == M.rows


def select_columns(M: BinaryMatrix, indices: Sequence[int]) -> BinaryMatrix:
    """Copy the chosen columns, in order, into a new matrix.

    Indices must be strictly increasing and within range; duplicates or
    out-of-range values raise ValueError.
    """
    idx = list(indices)
    if not idx:
        raise ValueError("at least one column index required")
    prev = -1
    for i in idx:
        if not 0 <= i < M.cols:
            raise ValueError(f"column index {i} out of range for {M.cols} columns")
        if i <= prev:
            raise ValueError(f"column indices must be strictly increasing, got {i} after {prev}")
        prev = i
    return BinaryMatrix(M.array[:, idx])


def random_matrix(rows: int, cols: int, rng) -> BinaryMatrix:
    """Matrix with independent uniform bits; deterministic for a fixed seed.

    ``rng`` is anything ``numpy.random.default_rng`` accepts (an int seed
    or an existing Generator).
    """
    if rows < 1 or cols < 1:
        raise ValueError(f"rows and cols must be >= 1, got {rows}x{cols}")
    gen = np.random.default_rng(rng)
    return BinaryMatrix(gen.integers(0, 2, size=(rows, cols), dtype=np.uint8))


def encode(x, G: BinaryMatrix) -> np.ndarray:
    """Encode a length-k bit vector: output bit j = XOR over rows selected by x.

    Returns a length-n uint8 vector.
    """
    xv = np.asarray(x, dtype=np.uint8).ravel()
    if xv.size != G.rows:
        raise ValueError(f"length mismatch: input has {xv.size} bits, matrix has {G.rows} rows")
    if not np.isin(xv, (0, 1)).all():
        raise ValueError("input bits must be 0 or 1")
    return (xv @ G.array) & np.uint8(1)


def rank_batch(colsets: np.ndarray, k: int) -> np.ndarray:
    """Ranks of many column collections at once.

    ``colsets`` has shape (N, m, limbs): N independent collections of m
    bit-packed columns over a k-row space (limbs = ceil(k/64), bit j of
    limb j // 64 = row j).  Zero columns are ignored, so collections of
    different sizes can share one padded array.

    Elimination sweeps bit positions 0..k-1; at each position the first
    column holding the bit is XORed into every column holding it (itself
    included, which retires it).  Returns an (N,) int64 rank vector.
    """
    A = colsets.astype(np.uint64, copy=True)
    if A.ndim != 3:
        raise ValueError(f"expected (N, m, limbs) array, got shape {colsets.shape}")
    N = A.shape[0]
    ranks = np.zeros(N, dtype=np.int64)
    sel = np.arange(N)
    one = np.uint64(1)
    for b in range(k):
        bits = (A[:, :, b // 64] >> np.uint64(b % 64)) & one
        has = bits.any(axis=1)
        pidx = bits.argmax(axis=1)
        pivot = A[sel, pidx, :]
        A ^= bits[:, :, None] * pivot[:, None, :]
        ranks += has
    return ranks


def format_matrix(M: BinaryMatrix) -> str:
    """Render the text format: header "k n", then k rows of 0/1 characters."""
    lines = [f"{M.rows} {M.cols}"]
    for row in M.array:
        lines.append("".join("1" if b else "0" for b in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> BinaryMatrix:
    """Parse the text format strictly; errors name the offending line."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ValueError("line 1: empty input, expected header 'k n'")
    head = lines[0].split(" ")
    if len(head) != 2 or not all(t.isdigit() for t in head):
        raise ValueError(f"line 1: expected header 'k n', got {lines[0]!r}")
    k, n = int(head[0]), int(head[1])
    if k < 1 or n < 1:
        raise ValueError(f"line 1: dimensions must be positive, got {k} {n}")
    if len(lines) - 1 > k:
        raise ValueError(f"line {k + 2}: unexpected trailing content")
    if len(lines) - 1 < k:
        raise ValueError(f"line {len(lines) + 1}: expected {k} rows, found {len(lines) - 1}")
    rows = np.zeros((k, n), dtype=np.uint8)
    for i, line in enumerate(lines[1:]):
        if len(line) != n or any(c not in "01" for c in line):
            raise ValueError(f"line {i + 2}: expected exactly {n} characters from {{0,1}}, got {line!r}")
        rows[i] = [1 if c == "1" else 0 for c in line]
    return BinaryMatrix(rows)
