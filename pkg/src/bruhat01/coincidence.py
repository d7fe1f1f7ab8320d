"""Coincidence of the two orders, and counterexample certificates.

A certificate is a triple X <_B Y <_B Z in one class where Z covers both X
and Y in the secondary order.  X and Y are then secondary-incomparable:
Y < X is ruled out by refinement (X <_B Y), and X < Y would put Y strictly
between X and its cover Z.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Callable, Sequence

from .enumeration import ClassSpec, count
from .matrix import (
    BinaryMatrix, block_assemble, complement_rotate, direct_sum, entrywise_geq, sigma,
)
from .orders import PAIRWISE_CAP, ClassPoset, CoverWitness, cover_witness, secondary_cover_check
from .partitions import gale_ryser_feasible, ryser_witness, special_margin_increasing

__all__ = [
    "BASE_A", "BASE_C", "BASE_D", "BLOCK_TABLES", "CounterexampleCertificate",
    "CoincidenceResult", "VerificationReport", "orders_coincide", "verify_certificate",
    "counterexample", "complete_embedding", "count_embeddings", "NoEmbedding",
    "TheoremRow", "verify_theorem", "theorem_predicts_coincidence", "ROUTES",
]

_M = BinaryMatrix.from_strings

BASE_A = _M(["1000", "1011", "1101", "0001"])
BASE_C = _M(["0001", "1011", "1101", "1000"])
BASE_D = _M(["0001", "1101", "1011", "1000"])

# blocks (G1, G2, G3) completing A, C, D into A(n, 4)
BLOCK_TABLES: dict[int, tuple[BinaryMatrix, BinaryMatrix, BinaryMatrix]] = {
    8: (
        _M(["1110", "0001", "1000", "0111"]),
        _M(["0110", "0110", "0110", "1001"]),
        _M(["1100", "0011", "1100", "0011"]),
    ),
    9: (
        _M(["11100", "00001", "10000", "00111"]),
        _M(["0110", "0110", "0110", "0000", "1001"]),
        _M(["00011", "01010", "10100", "11110", "01001"]),
    ),
    10: (
        _M(["111000", "000001", "100000", "000111"]),
        _M(["0110", "0110", "0110", "0000", "0000", "1001"]),
        _M(["000011", "000011", "001100", "111100", "111100", "010010"]),
    ),
}

ROUTES = ("explicit-table", "embedding-search", "padding", "duality", "general-Vn")


class NoEmbedding(ValueError):
    """No blocks complete the given 4-by-4 matrices into the requested class."""


@dataclass
class CounterexampleCertificate:
    spec: ClassSpec
    X: BinaryMatrix
    Y: BinaryMatrix
    Z: BinaryMatrix
    cover_XZ: CoverWitness
    cover_YZ: CoverWitness
    narrative: str
    # (G1, G2, G3) when the certificate was assembled around A, C, D
    blocks: tuple[BinaryMatrix, BinaryMatrix, BinaryMatrix] | None = None

    def to_json(self) -> dict:
        out = {
            "R": list(self.spec.R),
            "S": list(self.spec.S),
            "X": self.X.row_strings(),
            "Y": self.Y.row_strings(),
            "Z": self.Z.row_strings(),
            "cover_XZ": self.cover_XZ.to_json(),
            "cover_YZ": self.cover_YZ.to_json(),
            "narrative": self.narrative,
        }
        sq = self.spec.as_square()
        if sq is not None:
            out["n"], out["k"] = sq
        if self.blocks is not None:
            out["blocks"] = {name: b.row_strings() for name, b in zip(("G1", "G2", "G3"), self.blocks)}
        return out

    @classmethod
    def from_json(cls, obj) -> "CounterexampleCertificate":
        if isinstance(obj, str):
            obj = json.loads(obj)
        spec = ClassSpec(tuple(obj["R"]), tuple(obj["S"]))
        ncols = len(obj["S"])
        blocks = None
        if "blocks" in obj:
            b = obj["blocks"]
            blocks = (_M(b["G1"]), _M(b["G2"]), _M(b["G3"]))
        return cls(
            spec,
            _M(obj["X"], ncols), _M(obj["Y"], ncols), _M(obj["Z"], ncols),
            CoverWitness.from_json(obj["cover_XZ"]),
            CoverWitness.from_json(obj["cover_YZ"]),
            obj["narrative"],
            blocks,
        )


@dataclass
class VerificationReport:
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> bool:
        self.checks.append((name, bool(ok), detail))
        return bool(ok)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(ok for _, ok, _ in self.checks)

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return {"passed": self.passed,
                "checks": [{"name": n, "passed": ok, "detail": d} for n, ok, d in self.checks]}

    def __str__(self):
        return "\n".join(f"[{'PASS' if ok else 'FAIL'}] {n}" + (f": {d}" if d else "")
                         for n, ok, d in self.checks)


def _strictly_below(P: BinaryMatrix, Q: BinaryMatrix) -> bool:
    sp, sq = sigma(P), sigma(Q)
    return entrywise_geq(sp, sq) and sp != sq


def _check_witness(report: VerificationReport, name: str, w: CoverWitness,
                   upper: BinaryMatrix, lower: BinaryMatrix) -> None:
    if not report.add(f"{name}: matrices", w.upper == upper and w.lower == lower,
                      "witness upper/lower must be the certificate's matrices"):
        return
    try:
        fresh = secondary_cover_check(upper, w.pos)
    except (ValueError, IndexError) as exc:
        report.add(f"{name}: L2 at position", False, str(exc))
        return
    report.add(f"{name}: interchange result", fresh.lower == lower,
               f"pos {w.pos.as_tuple()}")
    report.add(f"{name}: recorded conditions", fresh.conditions == tuple(w.conditions),
               f"recomputed {fresh.conditions}")
    report.add(f"{name}: cover conditions (1)-(4)", fresh.is_cover, str(fresh.conditions))


def verify_certificate(cert: CounterexampleCertificate) -> VerificationReport:
    """Re-derive every claim of ``cert`` from the matrices alone."""
    report = VerificationReport()
    spec = cert.spec
    shapes_ok = all(M.shape == (spec.m, spec.n) for M in (cert.X, cert.Y, cert.Z))
    for name, M in (("X", cert.X), ("Y", cert.Y), ("Z", cert.Z)):
        report.add(f"{name} in {spec}", spec.contains(M))
    if not shapes_ok:
        return report
    report.add("Bruhat X < Y strictly", _strictly_below(cert.X, cert.Y))
    report.add("Bruhat Y < Z strictly", _strictly_below(cert.Y, cert.Z))
    _check_witness(report, "Z covers X", cert.cover_XZ, cert.Z, cert.X)
    _check_witness(report, "Z covers Y", cert.cover_YZ, cert.Z, cert.Y)
    premises = report.passed
    report.add("X, Y secondary-incomparable", premises,
               "Z covers X and Y secondarily, X <_B Y <_B Z, refinement" if premises
               else "premises failed")
    return report


def _certificate(spec: ClassSpec, X: BinaryMatrix, Y: BinaryMatrix, Z: BinaryMatrix,
                 narrative: str, blocks=None) -> CounterexampleCertificate:
    """Build a certificate, deriving both cover witnesses from the matrix differences."""
    return CounterexampleCertificate(spec, X, Y, Z, cover_witness(Z, X), cover_witness(Z, Y),
                                     narrative, blocks)


def _from_blocks(n: int, k: int, blocks, narrative: str) -> CounterexampleCertificate:
    X, Y, Z = (block_assemble(V, *blocks) for V in (BASE_A, BASE_D, BASE_C))
    return _certificate(ClassSpec.square(n, k), X, Y, Z, narrative, tuple(blocks))


# ---------------------------------------------------------------- embedding

def _embeddings(V_list: Sequence[BinaryMatrix], n: int, k: int):
    """Yield (G1, G2, G3) completing V into A(n, k), column by column, zeros first."""
    V = V_list[0]
    for other in V_list[1:]:
        if other.row_sums != V.row_sums or other.col_sums != V.col_sums:
            raise ValueError("the matrices to embed must share their margins")
    b = V.m
    if V.n != b or n < b:
        raise ValueError("need a square block no larger than the target")
    row_need = [k - r for r in V.row_sums] + [k] * (n - b)
    col_need = [k - s for s in V.col_sums] + [k] * (n - b)
    if min(row_need + col_need) < 0:
        return
    cols: list[tuple[int, ...]] = []

    def allowed(j: int) -> list[int]:
        return list(range(b, n)) if j < b else list(range(n))

    def capacity_ok(j: int) -> bool:
        # every row still fits into the columns after j
        for i in range(n):
            free = sum(1 for jj in range(j + 1, n) if jj >= b or i >= b)
            if row_need[i] > free:
                return False
        if j + 1 >= b:
            return gale_ryser_feasible(row_need, col_need[j + 1:])
        return True

    def rec(j: int):
        if j == n:
            if not any(row_need):
                yield list(cols)
            return
        rows = [i for i in allowed(j) if row_need[i] > 0]
        options = []
        for ones in combinations(rows, col_need[j]):
            column = [0] * n
            for i in ones:
                column[i] = 1
            options.append(tuple(column))
        options.sort()
        for column in options:
            for i in range(n):
                row_need[i] -= column[i]
            if capacity_ok(j):
                cols.append(column)
                yield from rec(j + 1)
                cols.pop()
            for i in range(n):
                row_need[i] += column[i]

    for solution in rec(0):
        full = [[solution[j][i] for j in range(n)] for i in range(n)]
        G1 = BinaryMatrix(tuple(tuple(r[b:]) for r in full[:b]), n - b)
        G2 = BinaryMatrix(tuple(tuple(r[:b]) for r in full[b:]), b)
        G3 = BinaryMatrix(tuple(tuple(r[b:]) for r in full[b:]), n - b)
        yield G1, G2, G3


def complete_embedding(V_list: Sequence[BinaryMatrix], n: int, k: int):
    """First (G1, G2, G3) with [[V, G1], [G2, G3]] in A(n, k) for every V in ``V_list``."""
    for blocks in _embeddings(V_list, n, k):
        return blocks
    raise NoEmbedding(f"no completion of the given blocks into A({n},{k})")


def count_embeddings(V_list: Sequence[BinaryMatrix], n: int, k: int) -> int:
    return sum(1 for _ in _embeddings(V_list, n, k))


# ---------------------------------------------------------------- constructions

def _general_vn_blocks(k: int, m: int):
    n = k + m
    top = (1,) * (k - 3) + (1, 1) + (0,) * (m - 3)
    mid = (1,) * (k - 3) + (0, 0) + (0,) * (m - 3)
    G1 = BinaryMatrix((top, mid, mid, top), n - 4)
    G2 = BinaryMatrix(((1, 1, 1, 1),) * (k - 3) + ((0, 1, 1, 0),) * 2 + ((0, 0, 0, 0),) * (m - 3), 4)
    margins = special_margin_increasing(k, m)
    G = ryser_witness(margins, margins)
    return G1, G2, G


def _symmetries(square: bool) -> list[tuple[str, Callable[[BinaryMatrix], BinaryMatrix]]]:
    flip_rows = lambda M: BinaryMatrix(tuple(reversed(M.rows)), M.n)
    flip_cols = lambda M: BinaryMatrix(tuple(tuple(reversed(r)) for r in M.rows), M.n)
    out = [
        ("identity", lambda M: M),
        ("row-flip", flip_rows),
        ("column-flip", flip_cols),
        ("half-turn", lambda M: flip_rows(flip_cols(M))),
    ]
    if square:
        out += [(f"transpose+{name}", (lambda f: lambda M: f(M).transpose())(f)) for name, f in list(out)]
    return out


def transport_dual(cert: CounterexampleCertificate) -> CounterexampleCertificate:
    """Carry a certificate for A(R, S) to the complementary class A(U, Q).

    The complement-rotation images are tried first in every ordering, then
    under the symmetries of the rectangle; each candidate is re-verified.
    Returns the first candidate that verifies, else raises ValueError.
    """
    images = [complement_rotate(M) for M in (cert.X, cert.Y, cert.Z)]
    target = ClassSpec(tuple(reversed([cert.spec.n - r for r in cert.spec.R])),
                       tuple(reversed([cert.spec.m - s for s in cert.spec.S])))
    for _, g in _symmetries(target.m == target.n and target.R == target.S):
        moved = [g(M) for M in images]
        if not all(target.contains(M) for M in moved):
            continue
        for X, Y, Z in permutations(moved):
            try:
                cand = _certificate(target, X, Y, Z, "duality")
            except ValueError:
                continue
            if verify_certificate(cand):
                return cand
    raise ValueError("no transported triple verifies")


def _pad(cert: CounterexampleCertificate, n: int, k: int) -> CounterexampleCertificate:
    extra = n - cert.spec.n
    G = ryser_witness((k,) * extra, (k,) * extra)
    X, Y, Z = (direct_sum(M, G) for M in (cert.X, cert.Y, cert.Z))
    return _certificate(ClassSpec.square(n, k), X, Y, Z, "padding")


def counterexample(n: int, k: int, route: str | None = None) -> CounterexampleCertificate:
    """A verified certificate that the two orders differ on A(n, k), 3 <= k <= n-3.

    ``route`` forces a construction; by default:
      k > n-k               duality from A(n, n-k)
      k = 3, n in 6..8      embedding search around A, C, D
      k = 4, n in 8..10     explicit tables
      k >= 5, 2k <= n <= 2k+2   general block picture with a Ryser witness
      n >= 2k+3             padding of the A(k+3, k) certificate
    """
    if not 3 <= k <= n - 3:
        raise ValueError(f"the orders coincide or the class is too small: n={n}, k={k}")
    if route is None:
        if k > n - k:
            route = "duality"
        elif n >= 2 * k + 3:
            route = "padding"
        elif k == 3:
            route = "embedding-search"
        elif k == 4:
            route = "explicit-table"
        else:
            route = "general-Vn"

    if route == "duality":
        if n - k < 3:
            raise ValueError("dual class lies outside the non-coincidence range")
        cert = transport_dual(counterexample(n, n - k))
    elif route == "padding":
        if n < 2 * k + 3:
            raise ValueError("padding needs n >= 2k+3")
        cert = _pad(counterexample(k + 3, k), n, k)
    elif route == "embedding-search":
        blocks = complete_embedding((BASE_A, BASE_C, BASE_D), n, k)
        cert = _from_blocks(n, k, blocks, "embedding-search")
    elif route == "explicit-table":
        if k != 4 or n not in BLOCK_TABLES:
            raise ValueError("explicit tables exist only for k=4, n in {8, 9, 10}")
        cert = _from_blocks(n, k, BLOCK_TABLES[n], "explicit-table")
    elif route == "general-Vn":
        m = n - k
        if k < 5 or m not in (k, k + 1, k + 2):
            raise ValueError("the general construction needs k >= 5 and n in {2k, 2k+1, 2k+2}")
        cert = _from_blocks(n, k, _general_vn_blocks(k, m), "general-Vn")
    else:
        raise ValueError(f"unknown route {route!r}; choose from {ROUTES}")

    report = verify_certificate(cert)
    if not report:
        raise RuntimeError(f"{route} construction for A({n},{k}) failed verification:\n{report}")
    return cert


# ---------------------------------------------------------------- coincidence

@dataclass
class CoincidenceResult:
    status: str  # "coincide" | "differ" | "too_large"
    size: int
    # (A, C) with A <_B C but not A <= C secondarily
    witness: tuple[BinaryMatrix, BinaryMatrix] | None = None

    def to_json(self) -> dict:
        out = {"status": self.status, "size": self.size}
        if self.witness is not None:
            out["witness"] = [M.row_strings() for M in self.witness]
        return out


def orders_coincide(spec: ClassSpec, cap: int = PAIRWISE_CAP) -> CoincidenceResult:
    size = count(spec)
    if size > cap:
        return CoincidenceResult("too_large", size)
    poset = ClassPoset.from_spec(spec, cap=cap)
    diff = poset.first_difference()
    if diff is None:
        return CoincidenceResult("coincide", size)
    a, c = diff
    return CoincidenceResult("differ", size, (poset.members[a], poset.members[c]))


def theorem_predicts_coincidence(n: int, k: int) -> bool:
    return n <= 5 or k in (0, 1, 2, n - 2, n - 1, n)


@dataclass
class TheoremRow:
    n: int
    k: int
    expected: str
    observed: str
    method: str  # "exhaustive" | "certificate" | "asserted-by-theorem"

    @property
    def agrees(self) -> bool:
        return self.method == "asserted-by-theorem" or self.expected == self.observed

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "expected": self.expected,
                "observed": self.observed, "method": self.method}


def _theorem_cell(args) -> TheoremRow:
    n, k, cap = args
    expected = "coincide" if theorem_predicts_coincidence(n, k) else "differ"
    spec = ClassSpec.square(n, k)
    if count(spec) <= cap:
        return TheoremRow(n, k, expected, orders_coincide(spec, cap).status, "exhaustive")
    if expected == "differ":
        try:
            ok = verify_certificate(counterexample(n, k)).passed
        except (ValueError, RuntimeError):
            ok = False
        return TheoremRow(n, k, expected, "differ" if ok else "unverified", "certificate")
    return TheoremRow(n, k, expected, "not-checked", "asserted-by-theorem")


def verify_theorem(max_n: int, cap: int = PAIRWISE_CAP, threads: int = 1) -> list[TheoremRow]:
    """One row per (n, k), 1 <= n <= max_n, 0 <= k <= n.

    Classes within ``cap`` are decided exhaustively; larger non-coincidence
    cells are decided by a verified certificate; larger coincidence cells are
    marked as asserted and never counted as checked.
    """
    if max_n < 1:
        raise ValueError("max_n must be at least 1")
    cells = [(n, k, cap) for n in range(1, max_n + 1) for k in range(n + 1)]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(_theorem_cell, cells))
    return [_theorem_cell(c) for c in cells]
