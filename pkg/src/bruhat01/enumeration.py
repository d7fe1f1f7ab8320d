"""Enumeration and counting of the class A(R, S)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

from .matrix import BinaryMatrix

__all__ = ["ClassSpec", "ClassTooLarge", "enumerate_class", "count", "DEFAULT_CAP"]

DEFAULT_CAP = 10**6


class ClassTooLarge(RuntimeError):
    """Raised when a class has more members than the configured cap."""

    def __init__(self, spec: "ClassSpec", cap: int):
        super().__init__(f"class {spec} has more than {cap} members")
        self.spec = spec
        self.cap = cap


@dataclass(frozen=True)
class ClassSpec:
    """Margins (R, S) of a class A(R, S)."""

    R: tuple[int, ...]
    S: tuple[int, ...]

    def __post_init__(self):
        R, S = tuple(int(x) for x in self.R), tuple(int(x) for x in self.S)
        if any(x < 0 for x in R + S):
            raise ValueError("margins must be nonnegative")
        if sum(R) != sum(S):
            raise ValueError(f"margin totals differ: {sum(R)} vs {sum(S)}")
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "S", S)

    @classmethod
    def square(cls, n: int, k: int) -> "ClassSpec":
        """A(n, k): n-by-n, every row and column summing to k."""
        if not 0 <= k <= n:
            raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
        return cls((k,) * n, (k,) * n)

    @property
    def m(self) -> int:
        return len(self.R)

    @property
    def n(self) -> int:
        return len(self.S)

    def contains(self, A: BinaryMatrix) -> bool:
        return A.shape == (self.m, self.n) and A.row_sums == self.R and A.col_sums == self.S

    def as_square(self) -> tuple[int, int] | None:
        """(n, k) when this is A(n, k), else None."""
        if self.m == self.n and len(set(self.R + self.S)) <= 1:
            return self.n, (self.R[0] if self.R else 0)
        return None

    def __str__(self):
        sq = self.as_square()
        if sq is not None:
            return f"A({sq[0]},{sq[1]})"
        return f"A(({','.join(map(str, self.R))}),({','.join(map(str, self.S))}))"


@lru_cache(maxsize=None)
def _row_choices(n: int, r: int) -> tuple[tuple[int, ...], ...]:
    """All 0/1 rows of length n with r ones, in lexicographic order (0 < 1)."""
    rows = []
    for ones in combinations(range(n), r):
        row = [0] * n
        for c in ones:
            row[c] = 1
        rows.append(tuple(row))
    rows.sort()
    return tuple(rows)


def _residual_feasible(rows_left: Sequence[int], cols: Sequence[int]) -> bool:
    # Gale-Ryser on the residual problem, inlined for the inner loop
    if sum(rows_left) != sum(cols):
        return False
    nrows = len(rows_left)
    s = sorted(cols, reverse=True)
    if s and s[0] > nrows:
        return False
    conj = [0] * (len(cols) + 1)
    for r in rows_left:
        if r > len(cols):
            return False
        if r:
            conj[r - 1] += 1
    # conj[t] = #rows with sum >= t+1, via suffix accumulation
    for t in range(len(conj) - 2, -1, -1):
        conj[t] += conj[t + 1]
    a = b = 0
    for t, x in enumerate(s):
        a += x
        b += conj[t]
        if a > b:
            return False
    return True


def enumerate_class(spec: ClassSpec, cap: int | None = DEFAULT_CAP,
                    prune: bool = True) -> Iterator[BinaryMatrix]:
    """Yield every member of A(R, S) once, in row-major lexicographic order.

    Raises ClassTooLarge once more than ``cap`` members have been produced
    (``cap=None`` disables the check).  ``prune=False`` drops the residual
    Gale-Ryser test and only checks column capacities row by row.
    """
    R, S, n = spec.R, spec.S, spec.n
    m = len(R)
    rows: list[tuple[int, ...]] = []
    produced = 0

    def rec(i: int, residual: tuple[int, ...]):
        nonlocal produced
        if i == m:
            if any(residual):
                return
            produced += 1
            if cap is not None and produced > cap:
                raise ClassTooLarge(spec, cap)
            yield BinaryMatrix(tuple(rows), n)
            return
        for row in _row_choices(n, R[i]):
            new = tuple(c - x for c, x in zip(residual, row))
            if min(new, default=0) < 0:
                continue
            if prune and not _residual_feasible(R[i + 1:], new):
                continue
            rows.append(row)
            yield from rec(i + 1, new)
            rows.pop()

    if any(r > n for r in R) or any(s > m for s in S):
        return
    if prune and not _residual_feasible(R, S):
        return
    yield from rec(0, S)


def count(spec: ClassSpec) -> int:
    """|A(R, S)|, by a row-by-row recursion over the sorted residual column sums.

    Columns with equal residual demand are interchangeable, so each row is
    placed by choosing how many ones go to each group of equal demand.
    """
    R = spec.R
    m = len(R)

    @lru_cache(maxsize=None)
    def f(i: int, residual: tuple[int, ...]) -> int:
        if i == m:
            return int(not any(residual))
        groups: dict[int, int] = {}
        for v in residual:
            groups[v] = groups.get(v, 0) + 1
        values = sorted(groups)
        total = 0

        def place(g: int, need: int, ways: int, new: list[int]):
            nonlocal total
            if g == len(values):
                if need == 0:
                    total += ways * f(i + 1, tuple(sorted(new)))
                return
            v, c = values[g], groups[values[g]]
            top = min(c, need) if v > 0 else 0
            for t in range(top + 1):
                place(g + 1, need - t, ways * comb(c, t), new + [v - 1] * t + [v] * (c - t))

        place(0, R[i], 1, [])
        return total

    if sum(R) != sum(spec.S):
        return 0
    return f(0, tuple(sorted(spec.S)))
