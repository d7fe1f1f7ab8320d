"""Partitions, dominance order and the Gale-Ryser existence criterion."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .matrix import BinaryMatrix

__all__ = [
    "Partition", "sort_desc", "conjugate", "dominance_leq",
    "gale_ryser_feasible", "ryser_witness", "special_margin",
    "special_margin_increasing", "verify_lemma_family", "LemmaReport",
]


@dataclass(frozen=True, order=False)
class Partition:
    """A nonincreasing sequence of nonnegative integers, trailing zeros dropped."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        if any(x < 0 for x in parts):
            raise ValueError("partition parts must be nonnegative")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts are not nonincreasing: {parts}")
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip()
        return cls(tuple(int(x) for x in text.split(",")) if text else ())

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def prefix_sums(self, length: int | None = None) -> list[int]:
        length = len(self.parts) if length is None else length
        out, acc = [], 0
        for s in range(length):
            acc += self.parts[s] if s < len(self.parts) else 0
            out.append(acc)
        return out

    def __str__(self):
        return ",".join(map(str, self.parts))


def sort_desc(v: Sequence[int]) -> Partition:
    if any(x < 0 for x in v):
        raise ValueError("negative entry")
    return Partition(tuple(sorted(v, reverse=True)))


def conjugate(lam: Partition | Sequence[int]) -> Partition:
    parts = lam.parts if isinstance(lam, Partition) else tuple(lam)
    if not parts:
        return Partition(())
    return Partition(tuple(sum(1 for x in parts if x >= i) for i in range(1, max(parts) + 1)))


def dominance_leq(lam: Partition, mu: Partition) -> bool:
    """Prefix sums of ``lam`` never exceed those of ``mu``.

    Raises ValueError when the totals differ.
    """
    lam, mu = _as_partition(lam), _as_partition(mu)
    if lam.total != mu.total:
        raise ValueError(f"dominance needs equal totals ({lam.total} vs {mu.total})")
    length = max(len(lam), len(mu))
    return all(a <= b for a, b in zip(lam.prefix_sums(length), mu.prefix_sums(length)))


def _as_partition(x) -> Partition:
    return x if isinstance(x, Partition) else Partition(tuple(x))


def gale_ryser_feasible(R: Sequence[int], S: Sequence[int]) -> bool:
    """Whether some (0,1)-matrix has row sums R and column sums S.

    Malformed margins (negative entries, unequal totals, entries too large
    for the other dimension) give False.
    """
    if any(x < 0 for x in R) or any(x < 0 for x in S):
        return False
    if sum(R) != sum(S):
        return False
    if any(x > len(S) for x in R) or any(x > len(R) for x in S):
        return False
    return dominance_leq(sort_desc(S), conjugate(sort_desc(R)))


def ryser_witness(R: Sequence[int], S: Sequence[int]) -> BinaryMatrix:
    """A matrix in A(R, S), margins in the given coordinate order.

    Columns are filled in nonincreasing order of their sums, each one placing
    its ones in the rows with the largest remaining demand (lowest row index
    first among ties).
    """
    R, S = list(R), list(S)
    if not gale_ryser_feasible(R, S):
        raise ValueError(f"no (0,1)-matrix has margins R={R}, S={S}")
    m, n = len(R), len(S)
    rows = [[0] * n for _ in range(m)]
    remaining = R[:]
    for j in sorted(range(n), key=lambda c: -S[c]):
        chosen = sorted(range(m), key=lambda i: (-remaining[i], i))[:S[j]]
        for i in chosen:
            rows[i][j] = 1
            remaining[i] -= 1
    witness = BinaryMatrix(tuple(map(tuple, rows)), n)
    assert witness.row_sums == tuple(R) and witness.col_sums == tuple(S)
    return witness


def _check_family_range(k: int, m: int) -> None:
    if k < 5 or m not in (k, k + 1, k + 2):
        raise ValueError(f"need k >= 5 and m in {{k, k+1, k+2}}, got k={k}, m={m}")


def special_margin(k: int, m: int) -> Partition:
    """(k^(m-3), (k-2)^2, (k-4)^(k-3)), of length k + m - 4."""
    _check_family_range(k, m)
    return Partition((k,) * (m - 3) + (k - 2,) * 2 + (k - 4,) * (k - 3))


def special_margin_increasing(k: int, m: int) -> tuple[int, ...]:
    """The same multiset listed increasingly, as used for the lower-right block."""
    return tuple(reversed(special_margin(k, m).parts))


@dataclass
class LemmaReport:
    k: int
    m: int
    R: Partition
    R_conj: Partition
    # prefix differences sum(v_1..v_s) - sum(u_1..u_s) for s = 1..k-1
    differences: list[int]
    strictly_below: bool
    closed_forms: dict[str, tuple[int, int, bool]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return (self.strictly_below and all(d >= 0 for d in self.differences)
                and all(ok for _, _, ok in self.closed_forms.values()))

    def to_json(self) -> dict:
        return {
            "k": self.k, "m": self.m, "R": str(self.R), "R_conj": str(self.R_conj),
            "differences": self.differences, "strictly_below": self.strictly_below,
            "closed_forms": {name: {"observed": o, "formula": f, "match": ok}
                             for name, (o, f, ok) in self.closed_forms.items()},
            "passed": self.passed,
        }


def verify_lemma_family(k: int, m: int) -> LemmaReport:
    """Check R < R* in dominance for R = special_margin(k, m), prefix by prefix.

    The differences at s = k-3, k-2, k-1 are compared against their closed
    forms in k and m.
    """
    _check_family_range(k, m)
    R = special_margin(k, m)
    Rc = conjugate(R)
    u, v = R.prefix_sums(k + m - 4), Rc.prefix_sums(k + m - 4)
    diffs = [v[s - 1] - u[s - 1] for s in range(1, k)]

    at_k3 = (k - 3) * m - 5 * k + 15
    at_k2 = {k: k * k - 8 * k + 16, k + 1: k * k - 7 * k + 12, k + 2: k * k - 6 * k + 10}[m]
    at_k1 = {k: k * k - 8 * k + 15, k + 1: k * k - 7 * k + 12, k + 2: k * k - 6 * k + 9}[m]
    closed = {}
    for name, s, formula in (("s=k-3", k - 3, at_k3), ("s=k-2", k - 2, at_k2), ("s=k-1", k - 1, at_k1)):
        observed = diffs[s - 1]
        closed[name] = (observed, formula, observed == formula)

    below = R != Rc and dominance_leq(R, Rc)
    return LemmaReport(k, m, R, Rc, diffs, below, closed)
