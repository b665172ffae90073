"""Dense linear algebra over GF(2) on bit-packed matrices.

Rows are packed little-endian into 64-bit words: column ``j`` lives in word
``j // 64`` at bit ``j % 64``.  Row reduction always picks the leftmost
pivot column and, within it, the topmost remaining row, so reduced forms are
fully determined by the input.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .config import check_size, get_config

WORD = 64
_PAR_MIN_ROWS = 512


def _nwords(cols: int) -> int:
    return (cols + WORD - 1) // WORD


def pack_rows(dense) -> np.ndarray:
    """Pack a 2-D 0/1 array into uint64 words (one packed row per input row)."""
    a = np.asarray(dense, dtype=np.uint8)
    if a.ndim != 2:
        raise ValueError("expected a 2-D array")
    rows, cols = a.shape
    nw = _nwords(cols)
    padded = np.zeros((rows, nw * WORD), dtype=np.uint8)
    padded[:, :cols] = a & 1
    packed = np.packbits(padded, axis=1, bitorder="little")
    return packed.view("<u8").astype(np.uint64, copy=False).reshape(rows, nw)


def unpack_rows(words: np.ndarray, cols: int) -> np.ndarray:
    rows = words.shape[0]
    if rows == 0 or words.shape[1] == 0:
        return np.zeros((rows, cols), dtype=np.uint8)
    as_bytes = np.ascontiguousarray(words).view(np.uint8).reshape(rows, -1)
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :cols]


def f2_matmul(a, b) -> np.ndarray:
    """Product of dense 0/1 matrices over GF(2)."""
    a = np.asarray(a, dtype=np.uint8)
    b = np.asarray(b, dtype=np.uint8)
    if a.shape[1] >= 1 << 24:
        raise ValueError("inner dimension too large for exact float accumulation")
    prod = a.astype(np.float32) @ b.astype(np.float32)
    return (prod.astype(np.int64) & 1).astype(np.uint8)


class BitMatrix:
    """An immutable ``rows x cols`` matrix over GF(2)."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: np.ndarray | None = None):
        nw = _nwords(cols)
        check_size(rows * nw * 8, f"{rows}x{cols} bit matrix")
        if data is None:
            data = np.zeros((rows, nw), dtype=np.uint64)
        elif data.shape != (rows, nw) or data.dtype != np.uint64:
            raise ValueError("packed data has wrong shape or dtype")
        self.rows = rows
        self.cols = cols
        self.data = data
        self.data.flags.writeable = False

    @classmethod
    def from_dense(cls, dense) -> "BitMatrix":
        a = np.asarray(dense, dtype=np.uint8)
        if a.ndim == 1:
            a = a.reshape(1, -1)
        return cls(a.shape[0], a.shape[1], pack_rows(a))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls.from_dense(np.eye(n, dtype=np.uint8))

    @classmethod
    def random(cls, rows: int, cols: int, rng: np.random.Generator, density: float = 0.5):
        return cls.from_dense((rng.random((rows, cols)) < density).astype(np.uint8))

    def to_dense(self) -> np.ndarray:
        return unpack_rows(self.data, self.cols)

    def row(self, i: int) -> np.ndarray:
        return unpack_rows(self.data[i : i + 1], self.cols)[0]

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_dense(self.to_dense().T)

    def vstack(self, other: "BitMatrix") -> "BitMatrix":
        if other.cols != self.cols:
            raise ValueError("column count mismatch")
        return BitMatrix(self.rows + other.rows, self.cols, np.vstack([self.data, other.data]))

    def __eq__(self, other):
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and np.array_equal(self.data, other.data)

    def __repr__(self):
        return f"BitMatrix({self.rows}x{self.cols})"

    def hexdump(self) -> str:
        """One hex string per row, least significant word first."""
        return "\n".join(
            "".join(f"{int(w):016x}" for w in row) for row in self.data
        )

    def rank(self, threads: int | None = None) -> int:
        return len(rref(self, threads=threads).pivots)

    def in_span(self, v, threads: int | None = None):
        return rref(self, track=True, threads=threads).in_span(v)

    def kernel_basis(self, threads: int | None = None) -> list[np.ndarray]:
        return rref(self, track=True, threads=threads).left_kernel()


class Reduced:
    """Result of row-reducing a matrix M: ``transform @ M == reduced``.

    The first ``len(pivots)`` rows of ``reduced`` are the nonzero rows of the
    reduced row-echelon form; ``pivots[i]`` is the pivot column of row ``i``.
    """

    def __init__(self, source: BitMatrix, reduced: np.ndarray, pivots: list[int],
                 transform: np.ndarray | None):
        self.source = source
        self.reduced = reduced
        self.pivots = pivots
        self.transform = transform
        self._pivot_index = {c: i for i, c in enumerate(pivots)}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, v) -> tuple[np.ndarray, np.ndarray | None]:
        """Reduce packed vector ``v`` against the pivot rows.

        Returns the remainder (packed) and the packed combination of source
        rows that was added, if a transform was tracked.
        """
        rem = np.array(v, dtype=np.uint64, copy=True)
        comb = None
        if self.transform is not None:
            comb = np.zeros(self.transform.shape[1], dtype=np.uint64)
        for i, c in enumerate(self.pivots):
            w, b = divmod(c, WORD)
            if (int(rem[w]) >> b) & 1:
                rem[w:] ^= self.reduced[i, w:]
                if comb is not None:
                    comb ^= self.transform[i]
        return rem, comb

    def in_span(self, v):
        """Decide whether ``v`` lies in the row space of the source matrix.

        Returns ``(True, witness)`` with ``witness @ M == v`` when it does, else
        ``(False, None)``.  The witness is ``None`` if no transform was tracked.
        """
        vec = np.asarray(v, dtype=np.uint8).ravel()
        if vec.size != self.source.cols:
            raise ValueError(f"vector length {vec.size} != {self.source.cols} columns")
        rem, comb = self.reduce(pack_rows(vec[None, :])[0])
        if rem.any():
            return False, None
        if comb is None:
            return True, None
        return True, unpack_rows(comb[None, :], self.source.rows)[0]

    def left_kernel(self) -> list[np.ndarray]:
        if self.transform is None:
            raise ValueError("kernel needs a tracked transform")
        r = self.rank
        return list(unpack_rows(self.transform[r:], self.source.rows))

    def solver(self) -> "Solver":
        return Solver(self)


class Solver:
    """Batch solver for ``X @ M = Y`` over GF(2) using a reduced form of M."""

    def __init__(self, red: Reduced):
        if red.transform is None:
            raise ValueError("solver needs a tracked transform")
        self.cols = red.source.cols
        self.rows = red.source.rows
        self.pivots = np.asarray(red.pivots, dtype=np.int64)
        self.tpiv = unpack_rows(red.transform[: red.rank], red.source.rows)
        self.m = red.source.to_dense()

    def solve(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=np.uint8)
        if y.ndim == 1:
            return self.solve(y[None, :])[0]
        if y.shape[1] != self.cols:
            raise ValueError("right-hand side has wrong length")
        x = f2_matmul(y[:, self.pivots], self.tpiv)
        if not np.array_equal(f2_matmul(x, self.m), y & 1):
            raise ArithmeticError("right-hand side is not in the row space")
        return x


def _xor_rows(data, idx, src_row, w, threads):
    if threads <= 1 or idx.size < _PAR_MIN_ROWS:
        data[idx, w:] ^= src_row[w:]
        return
    chunks = np.array_split(idx, threads)

    def work(ch):
        data[ch, w:] ^= src_row[w:]

    with ThreadPoolExecutor(max_workers=threads) as ex:
        list(ex.map(work, chunks))


def rref(m: BitMatrix, track: bool = False, threads: int | None = None) -> Reduced:
    """Fully reduced row-echelon form of ``m`` (leftmost pivot, topmost row)."""
    threads = get_config().threads if threads is None else threads
    rows, cols = m.rows, m.cols
    data = m.data.copy()
    data.flags.writeable = True
    t = None
    if track:
        check_size(rows * _nwords(rows) * 8, f"{rows}x{rows} transform")
        t = pack_rows(np.eye(rows, dtype=np.uint8)) if rows else np.zeros((0, 0), np.uint64)
    pivots: list[int] = []
    r = 0
    for col in range(cols):
        if r == rows:
            break
        w, b = divmod(col, WORD)
        below = np.flatnonzero((data[r:, w] >> np.uint64(b)) & np.uint64(1))
        if below.size == 0:
            continue
        p = r + int(below[0])
        if p != r:
            data[[r, p]] = data[[p, r]]
            if t is not None:
                t[[r, p]] = t[[p, r]]
        hit = (data[:, w] >> np.uint64(b)) & np.uint64(1)
        hit[r] = 0
        idx = np.flatnonzero(hit)
        if idx.size:
            src = data[r].copy()
            _xor_rows(data, idx, src, w, threads)
            if t is not None:
                _xor_rows(t, idx, t[r].copy(), 0, threads)
        pivots.append(col)
        r += 1
    data.flags.writeable = False
    return Reduced(m, data, pivots, t)


def rank(m: BitMatrix) -> int:
    return m.rank()


def in_span(m: BitMatrix, v):
    return m.in_span(v)


def kernel_basis(m: BitMatrix) -> list[np.ndarray]:
    return m.kernel_basis()


def naive_rank(dense) -> int:
    """Unpacked textbook elimination; kept as an independent oracle."""
    a = [list(map(int, row)) for row in np.asarray(dense) & 1]
    if not a:
        return 0
    ncols = len(a[0])
    rk = 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[rk], a[piv] = a[piv], a[rk]
        for i in range(len(a)):
            if i != rk and a[i][c]:
                a[i] = [x ^ y for x, y in zip(a[i], a[rk])]
        rk += 1
    return rk
