"""(0,1)-matrices, partial-sum matrices and interchange moves.

All public indices are 1-based: ``entry(1, 1)`` is the top-left cell and an
:class:`InterchangePos` ``(i, j, k, l)`` names rows ``i < j`` and columns
``k < l``.  Matrices are immutable and hashable, so they can be interned in
dicts and sets directly.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "BinaryMatrix", "SigmaMatrix", "InterchangePos", "Pattern",
    "sigma", "entrywise_geq", "submatrix_type", "apply_interchange",
    "complement_rotate", "block_assemble", "direct_sum", "I2", "L2",
]


class Pattern(str, enum.Enum):
    L2 = "L2"
    I2 = "I2"
    OTHER = "other"


@dataclass(frozen=True)
class BinaryMatrix:
    """An m-by-n matrix over {0, 1}, stored as a tuple of row tuples."""

    rows: tuple[tuple[int, ...], ...]
    # column count, needed to represent m-by-0 and 0-by-0 shapes
    ncols: int = -1

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        ncols = self.ncols
        if ncols < 0:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            if any(x not in (0, 1) for x in r):
                raise ValueError("entries must be 0 or 1")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "ncols", ncols)

    # construction

    @classmethod
    def from_strings(cls, lines: Iterable[str], ncols: int = -1) -> "BinaryMatrix":
        rows = []
        for line in lines:
            if set(line) - {"0", "1"}:
                raise ValueError(f"bad matrix row {line!r}")
            rows.append(tuple(int(c) for c in line))
        return cls(tuple(rows), ncols)

    @classmethod
    def from_text(cls, text: str) -> "BinaryMatrix":
        """Parse the canonical text form: one line of 0/1 characters per row."""
        lines = [ln.strip() for ln in text.strip().splitlines()]
        return cls.from_strings([ln for ln in lines if ln])

    @classmethod
    def from_array(cls, arr) -> "BinaryMatrix":
        arr = np.asarray(arr)
        return cls(tuple(tuple(int(x) for x in r) for r in arr), arr.shape[1])

    @classmethod
    def zeros(cls, m: int, n: int) -> "BinaryMatrix":
        return cls(tuple((0,) * n for _ in range(m)), n)

    @classmethod
    def ones(cls, m: int, n: int) -> "BinaryMatrix":
        return cls(tuple((1,) * n for _ in range(m)), n)

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def from_json(cls, obj) -> "BinaryMatrix":
        if isinstance(obj, str):
            obj = json.loads(obj)
        mat = cls.from_strings(obj["rows"], obj["n"])
        if mat.m != obj["m"]:
            raise ValueError("row count does not match 'm'")
        return mat

    # shape and margins

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return self.ncols

    @property
    def shape(self) -> tuple[int, int]:
        return self.m, self.n

    @property
    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.rows)

    @property
    def col_sums(self) -> tuple[int, ...]:
        return tuple(sum(r[j] for r in self.rows) for j in range(self.n))

    @property
    def total(self) -> int:
        return sum(self.row_sums)

    def entry(self, i: int, j: int) -> int:
        """The entry in row ``i``, column ``j`` (1-based)."""
        if not (1 <= i <= self.m and 1 <= j <= self.n):
            raise IndexError(f"({i}, {j}) outside a {self.m}x{self.n} matrix")
        return self.rows[i - 1][j - 1]

    # views and conversions

    def to_array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int8).reshape(self.m, self.n)

    def transpose(self) -> "BinaryMatrix":
        return BinaryMatrix(tuple(zip(*self.rows)) if self.m else (), self.m)

    def row_strings(self) -> list[str]:
        return ["".join(map(str, r)) for r in self.rows]

    def to_text(self) -> str:
        return "".join(s + "\n" for s in self.row_strings())

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "rows": self.row_strings()}

    def code(self) -> int:
        """Row-major bits as an integer; sorting by code is row-major lexicographic order."""
        c = 0
        for r in self.rows:
            for x in r:
                c = (c << 1) | x
        return c

    def __str__(self):
        return self.to_text().rstrip("\n")


@dataclass(frozen=True)
class SigmaMatrix:
    """Upper-left partial sums: ``sums[i-1][j-1]`` is the sum of the top-left i-by-j corner."""

    sums: tuple[tuple[int, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.sums), (len(self.sums[0]) if self.sums else 0)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.sums[i - 1][j - 1]

    def to_array(self) -> np.ndarray:
        m, n = self.shape
        return np.array(self.sums, dtype=np.int64).reshape(m, n)

    def __str__(self):
        return "\n".join(" ".join(map(str, r)) for r in self.sums)


@dataclass(frozen=True)
class InterchangePos:
    """Rows i < j and columns k < l of a 2-by-2 submatrix (1-based)."""

    i: int
    j: int
    k: int
    l: int

    def __post_init__(self):
        if not (1 <= self.i < self.j and 1 <= self.k < self.l):
            raise ValueError(f"invalid interchange position {self.as_tuple()}")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return self.i, self.j, self.k, self.l

    def check_bounds(self, A: BinaryMatrix) -> None:
        if self.j > A.m or self.l > A.n:
            raise IndexError(f"position {self.as_tuple()} outside a {A.m}x{A.n} matrix")


I2 = BinaryMatrix(((1, 0), (0, 1)))
L2 = BinaryMatrix(((0, 1), (1, 0)))


def sigma(A: BinaryMatrix) -> SigmaMatrix:
    if A.m == 0 or A.n == 0:
        return SigmaMatrix(tuple(() for _ in range(A.m)))
    s = A.to_array().astype(np.int64).cumsum(axis=0).cumsum(axis=1)
    return SigmaMatrix(tuple(tuple(int(x) for x in r) for r in s))


def entrywise_geq(P: SigmaMatrix, Q: SigmaMatrix) -> bool:
    if P.shape != Q.shape:
        raise ValueError(f"shape mismatch {P.shape} vs {Q.shape}")
    return all(p >= q for rp, rq in zip(P.sums, Q.sums) for p, q in zip(rp, rq))


def submatrix_type(A: BinaryMatrix, p: InterchangePos) -> Pattern:
    p.check_bounds(A)
    a, b = A.entry(p.i, p.k), A.entry(p.i, p.l)
    c, d = A.entry(p.j, p.k), A.entry(p.j, p.l)
    if (a, b, c, d) == (0, 1, 1, 0):
        return Pattern.L2
    if (a, b, c, d) == (1, 0, 0, 1):
        return Pattern.I2
    return Pattern.OTHER


def apply_interchange(A: BinaryMatrix, p: InterchangePos) -> BinaryMatrix:
    """Swap the L2/I2 pattern at ``p``; margins are unchanged."""
    if submatrix_type(A, p) is Pattern.OTHER:
        raise ValueError(f"no L2 or I2 submatrix at {p.as_tuple()}")
    rows = [list(r) for r in A.rows]
    for r in (p.i - 1, p.j - 1):
        for c in (p.k - 1, p.l - 1):
            rows[r][c] ^= 1
    return BinaryMatrix(tuple(map(tuple, rows)), A.n)


def complement_rotate(A: BinaryMatrix) -> BinaryMatrix:
    """B[i][j] = 1 - A[m+1-i][n+1-j]; maps A(R, S) onto A(U, Q) and is an involution."""
    return BinaryMatrix(tuple(tuple(1 - x for x in reversed(r)) for r in reversed(A.rows)), A.n)


def block_assemble(V: BinaryMatrix, G1: BinaryMatrix, G2: BinaryMatrix,
                   G3: BinaryMatrix) -> BinaryMatrix:
    """The block matrix [[V, G1], [G2, G3]].  Only shapes are validated."""
    if G1.m != V.m or G2.n != V.n or G3.m != G2.m or G3.n != G1.n:
        raise ValueError(
            f"block shapes do not conform: V {V.shape}, G1 {G1.shape}, "
            f"G2 {G2.shape}, G3 {G3.shape}")
    top = tuple(a + b for a, b in zip(V.rows, G1.rows))
    bottom = tuple(a + b for a, b in zip(G2.rows, G3.rows))
    return BinaryMatrix(top + bottom, V.n + G1.n)


def direct_sum(M: BinaryMatrix, G: BinaryMatrix) -> BinaryMatrix:
    return block_assemble(M, BinaryMatrix.zeros(M.m, G.n), BinaryMatrix.zeros(G.m, M.n), G)


def stack(matrices: Sequence[BinaryMatrix]) -> np.ndarray:
    """Stack same-shape matrices into an (N, m, n) int8 array."""
    if not matrices:
        return np.zeros((0, 0, 0), dtype=np.int8)
    m, n = matrices[0].shape
    return np.array([mat.rows for mat in matrices], dtype=np.int8).reshape(len(matrices), m, n)
