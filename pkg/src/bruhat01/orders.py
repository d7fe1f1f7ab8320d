"""The Bruhat order and the secondary Bruhat order on a class A(R, S).

Pointwise comparisons work on single matrices.  Class-wide relations are
held as down-sets packed into Python ints: bit ``p`` of ``down[c]`` is set
when node ``p`` is below or equal to node ``c``.  Inside :class:`ClassPoset`
nodes are renumbered along a linear extension (decreasing total of the
partial-sum matrix), which is shared by both orders: an L2 -> I2 move raises
every partial sum in a rectangle, and a strict Bruhat step raises at least
one partial sum.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Literal

import numpy as np

from .enumeration import ClassSpec, ClassTooLarge, enumerate_class
from .matrix import (
    BinaryMatrix, InterchangePos, Pattern, apply_interchange, entrywise_geq,
    sigma, stack, submatrix_type,
)

__all__ = [
    "bruhat_leq", "CoverWitness", "secondary_cover_check", "secondary_leq",
    "BudgetExhausted", "l2_positions", "cover_witness", "ClassPoset",
    "HasseDiagram", "build_hasse", "PAIRWISE_CAP", "DEFAULT_BUDGET",
]

OrderKind = Literal["bruhat", "secondary"]

# pairwise work is quadratic in the class size
PAIRWISE_CAP = 6000
DEFAULT_BUDGET = 10**6


class BudgetExhausted(RuntimeError):
    """A reachability search visited more matrices than its budget allowed."""


def _check_same_class(A: BinaryMatrix, C: BinaryMatrix) -> None:
    if A.shape != C.shape:
        raise ValueError(f"shape mismatch {A.shape} vs {C.shape}")
    if A.row_sums != C.row_sums or A.col_sums != C.col_sums:
        raise ValueError("matrices have different margins")


def bruhat_leq(A: BinaryMatrix, C: BinaryMatrix) -> bool:
    """A precedes C in the Bruhat order: sigma(A) >= sigma(C) entrywise."""
    _check_same_class(A, C)
    return entrywise_geq(sigma(A), sigma(C))


@dataclass(frozen=True)
class CoverWitness:
    """An L2 -> I2 interchange of ``upper`` at ``pos`` and the four cover conditions."""

    upper: BinaryMatrix
    pos: InterchangePos
    lower: BinaryMatrix
    conditions: tuple[bool, bool, bool, bool]

    @property
    def is_cover(self) -> bool:
        return all(self.conditions)

    def to_json(self) -> dict:
        return {
            "upper": self.upper.row_strings(),
            "lower": self.lower.row_strings(),
            "pos": list(self.pos.as_tuple()),
            "conditions": list(self.conditions),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CoverWitness":
        upper = BinaryMatrix.from_strings(obj["upper"])
        lower = BinaryMatrix.from_strings(obj["lower"])
        return cls(upper, InterchangePos(*obj["pos"]), lower, tuple(bool(c) for c in obj["conditions"]))


def secondary_cover_check(C: BinaryMatrix, p: InterchangePos) -> CoverWitness:
    """Evaluate whether the L2 -> I2 interchange of C at p is a secondary cover.

    With interior rows i < r < j and interior columns k < q < l:
      (1) a[r][k] == a[r][l] for every interior row r;
      (2) a[i][q] == a[j][q] for every interior column q;
      (3) a[r][k] == 0 and a[i][q] == 0 imply a[r][q] == 0;
      (4) a[r][k] == 1 and a[i][q] == 1 imply a[r][q] == 1.
    """
    if submatrix_type(C, p) is not Pattern.L2:
        raise ValueError(f"C has no L2 submatrix at {p.as_tuple()}")
    i, j, k, l = p.as_tuple()
    a = C.entry
    rows = range(i + 1, j)
    cols = range(k + 1, l)
    c1 = all(a(r, k) == a(r, l) for r in rows)
    c2 = all(a(i, q) == a(j, q) for q in cols)
    c3 = all(a(r, q) == 0 for r in rows for q in cols if a(r, k) == 0 and a(i, q) == 0)
    c4 = all(a(r, q) == 1 for r in rows for q in cols if a(r, k) == 1 and a(i, q) == 1)
    return CoverWitness(C, p, apply_interchange(C, p), (c1, c2, c3, c4))


def l2_positions(A: BinaryMatrix) -> Iterator[InterchangePos]:
    """Every position holding L2, in lexicographic (i, j, k, l) order."""
    rows = A.rows
    for i, j in combinations(range(A.m), 2):
        ri, rj = rows[i], rows[j]
        for k, l in combinations(range(A.n), 2):
            if ri[k] == 0 and ri[l] == 1 and rj[k] == 1 and rj[l] == 0:
                yield InterchangePos(i + 1, j + 1, k + 1, l + 1)


def cover_witness(upper: BinaryMatrix, lower: BinaryMatrix) -> CoverWitness:
    """The witness for the single interchange taking ``upper`` to ``lower``.

    Raises ValueError if the two matrices do not differ by one L2 -> I2 move.
    """
    _check_same_class(upper, lower)
    diff = [(i + 1, j + 1) for i in range(upper.m) for j in range(upper.n)
            if upper.rows[i][j] != lower.rows[i][j]]
    rows = sorted({r for r, _ in diff})
    cols = sorted({c for _, c in diff})
    if len(diff) != 4 or len(rows) != 2 or len(cols) != 2:
        raise ValueError("matrices do not differ by a single interchange")
    pos = InterchangePos(rows[0], rows[1], cols[0], cols[1])
    if submatrix_type(upper, pos) is not Pattern.L2:
        raise ValueError("upper matrix does not hold L2 at the differing cells")
    return secondary_cover_check(upper, pos)


def secondary_leq(A: BinaryMatrix, C: BinaryMatrix, budget: int = DEFAULT_BUDGET,
                  prune: bool = True) -> bool:
    """Whether C reaches A by a sequence of L2 -> I2 interchanges.

    Breadth-first search from C.  With ``prune`` the search skips matrices
    that are not Bruhat-above A, which cannot lead to A because the
    secondary order refines into the Bruhat order.  Raises BudgetExhausted
    when more than ``budget`` matrices are visited without a decision.
    """
    _check_same_class(A, C)
    if A == C:
        return True
    target_sigma = sigma(A)
    seen = {C}
    queue = deque([C])
    while queue:
        M = queue.popleft()
        for p in l2_positions(M):
            child = apply_interchange(M, p)
            if child == A:
                return True
            if child in seen:
                continue
            if prune and not entrywise_geq(target_sigma, sigma(child)):
                continue
            seen.add(child)
            if len(seen) > budget:
                raise BudgetExhausted(f"visited more than {budget} matrices")
            queue.append(child)
    return False


def _bits_from_bool(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def _iter_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class ClassPoset:
    """Both orders on a fully enumerated class.

    ``members`` is in canonical enumeration order; public methods speak in
    those indices.
    """

    def __init__(self, members: list[BinaryMatrix]):
        self.members = members
        self.index = {mat: i for i, mat in enumerate(members)}
        N = len(members)
        if N:
            arr = stack(members).astype(np.int32)
            self._arr = arr
            self._sig = arr.cumsum(axis=1).cumsum(axis=2).reshape(N, -1)
        else:
            self._arr = np.zeros((0, 0, 0), dtype=np.int32)
            self._sig = np.zeros((0, 0), dtype=np.int32)
        totals = self._sig.sum(axis=1) if N else np.zeros(0)
        # position order: larger partial-sum total first (lower in both orders)
        self.order = sorted(range(N), key=lambda x: (-int(totals[x]), x))
        self.pos = [0] * N
        for p, x in enumerate(self.order):
            self.pos[x] = p
        self._bruhat: list[int] | None = None
        self._secondary: list[int] | None = None
        self._edges: list[tuple[int, int]] | None = None

    @classmethod
    def from_spec(cls, spec: ClassSpec, cap: int = PAIRWISE_CAP) -> "ClassPoset":
        return cls(list(enumerate_class(spec, cap=cap)))

    def __len__(self):
        return len(self.members)

    # relations, position space

    def bruhat_down(self) -> list[int]:
        if self._bruhat is None:
            sig = self._sig[self.order]
            self._bruhat = [_bits_from_bool(np.all(sig >= sig[p], axis=1))
                            for p in range(len(self.order))]
        return self._bruhat

    def interchange_edges(self) -> list[tuple[int, int]]:
        """All (lower, upper) index pairs related by one L2 -> I2 move."""
        if self._edges is not None:
            return self._edges
        edges = []
        N = len(self.members)
        if N:
            m, n = self.members[0].shape
            codes = [mat.code() for mat in self.members]
            lookup = {c: x for x, c in enumerate(codes)}
            arr = self._arr
            bit = lambda r, c: 1 << (m * n - 1 - (r * n + c))
            for i, j in combinations(range(m), 2):
                for k, l in combinations(range(n), 2):
                    mask = ((arr[:, i, k] == 0) & (arr[:, i, l] == 1)
                            & (arr[:, j, k] == 1) & (arr[:, j, l] == 0))
                    delta = bit(i, k) + bit(j, l) - bit(i, l) - bit(j, k)
                    for up in np.flatnonzero(mask).tolist():
                        edges.append((lookup[codes[up] + delta], up))
        edges.sort()
        self._edges = edges
        return edges

    def secondary_down(self) -> list[int]:
        """Reflexive-transitive closure of all single interchange edges."""
        if self._secondary is None:
            N = len(self.members)
            children: list[list[int]] = [[] for _ in range(N)]
            for lo, up in self.interchange_edges():
                children[self.pos[up]].append(self.pos[lo])
            down = [0] * N
            for p in range(N):
                acc = 1 << p
                for q in children[p]:
                    acc |= down[q]
                down[p] = acc
            self._secondary = down
        return self._secondary

    def down(self, kind: OrderKind) -> list[int]:
        if kind == "bruhat":
            return self.bruhat_down()
        if kind == "secondary":
            return self.secondary_down()
        raise ValueError(f"unknown order kind {kind!r}")

    # index-space views

    def leq(self, kind: OrderKind, a: int, c: int) -> bool:
        return bool(self.down(kind)[self.pos[c]] >> self.pos[a] & 1)

    def relation(self, kind: OrderKind) -> set[tuple[int, int]]:
        """All pairs (a, c) with a <= c."""
        out = set()
        for pc, d in enumerate(self.down(kind)):
            c = self.order[pc]
            out.update((self.order[pa], c) for pa in _iter_bits(d))
        return out

    def covers(self, kind: OrderKind) -> set[tuple[int, int]]:
        """Transitive reduction of the order, as (lower, upper) index pairs."""
        down = self.down(kind)
        out = set()
        for pc, d in enumerate(down):
            strict = d & ~(1 << pc)
            union = 0
            while True:
                cand = strict & ~union
                if not cand:
                    break
                top = cand.bit_length() - 1
                out.add((self.order[top], self.order[pc]))
                union |= down[top]
        return out

    def lemma_covers(self) -> set[tuple[int, int]]:
        """Secondary cover pairs found by the four-condition test at every L2 position."""
        out = set()
        for up, mat in enumerate(self.members):
            for p in l2_positions(mat):
                w = secondary_cover_check(mat, p)
                if w.is_cover:
                    out.add((self.index[w.lower], up))
        return out

    def first_difference(self) -> tuple[int, int] | None:
        """The first (a, c), by c then a in index order, with a <= c in Bruhat but not secondary."""
        bd, sd = self.bruhat_down(), self.secondary_down()
        best = None
        for pc in range(len(bd)):
            extra = bd[pc] & ~sd[pc]
            if extra:
                pair = (min(self.order[pa] for pa in _iter_bits(extra)), self.order[pc])
                if best is None or pair[::-1] < best[::-1]:
                    best = pair
        return best


@dataclass
class HasseDiagram:
    kind: str
    nodes: list[BinaryMatrix]
    edges: list[tuple[int, int]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"kind": self.kind, "nodes": [mat.row_strings() for mat in self.nodes],
                "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, obj) -> "HasseDiagram":
        if isinstance(obj, str):
            obj = json.loads(obj)
        ncols = len(obj["nodes"][0][0]) if obj["nodes"] and obj["nodes"][0] else 0
        nodes = [BinaryMatrix.from_strings(rows, ncols) for rows in obj["nodes"]]
        return cls(obj["kind"], nodes, [tuple(e) for e in obj["edges"]])

    def to_dot(self) -> str:
        lines = [f"digraph {self.kind} {{", "  rankdir=BT;", "  node [shape=box, fontname=monospace];"]
        for x, mat in enumerate(self.nodes):
            label = "\\n".join(mat.row_strings())
            lines.append(f'  n{x} [label="{label}"];')
        for lo, up in self.edges:
            lines.append(f"  n{lo} -> n{up};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_hasse(spec: ClassSpec, kind: OrderKind, cap: int = PAIRWISE_CAP) -> HasseDiagram:
    """Hasse diagram of either order on A(R, S).

    Secondary edges come from the four-condition cover test; Bruhat edges
    are the transitive reduction of the partial-sum comparison.
    """
    poset = ClassPoset.from_spec(spec, cap=cap)
    if kind == "secondary":
        edges = poset.lemma_covers()
    elif kind == "bruhat":
        edges = poset.covers("bruhat")
    else:
        raise ValueError(f"unknown order kind {kind!r}")
    return HasseDiagram(kind, poset.members, sorted(edges))

