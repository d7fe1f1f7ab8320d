"""Independent reference computations used only by the tests."""

from functools import lru_cache
from itertools import combinations, product

import numpy as np

from bruhat01.matrix import BinaryMatrix


def brute_force_class(R, S):
    """Every (0,1)-matrix with margins (R, S), by scanning all 2^(mn) candidates."""
    m, n = len(R), len(S)
    out = []
    for bits in product((0, 1), repeat=m * n):
        rows = tuple(bits[i * n:(i + 1) * n] for i in range(m))
        if all(sum(r) == R[i] for i, r in enumerate(rows)) and \
                all(sum(r[j] for r in rows) == S[j] for j in range(n)):
            out.append(BinaryMatrix(rows, n))
    return out


def count_by_columns(R, S):
    """|A(R, S)| by recursion over columns, state = residual row sums in order."""
    n = len(S)

    @lru_cache(maxsize=None)
    def f(j, residual):
        if j == n:
            return int(not any(residual))
        live = [i for i, r in enumerate(residual) if r > 0]
        total = 0
        for rows in combinations(live, S[j]):
            new = list(residual)
            for i in rows:
                new[i] -= 1
            total += f(j + 1, tuple(new))
        return total

    return f(0, tuple(R))


def inverse_sigma(sums, m, n):
    """Recover the entries from partial sums by inclusion-exclusion."""
    s = lambda i, j: sums[i][j] if i >= 0 and j >= 0 else 0
    return tuple(tuple(s(i, j) - s(i - 1, j) - s(i, j - 1) + s(i - 1, j - 1)
                       for j in range(n)) for i in range(m))


def interchange_step_matrix(members):
    """N x N boolean matrix: [c, a] is True when one L2 -> I2 move takes c to a."""
    index = {M: x for x, M in enumerate(members)}
    N = len(members)
    step = np.zeros((N, N), dtype=bool)
    for x, M in enumerate(members):
        rows = M.rows
        for i, j in combinations(range(M.m), 2):
            for k, l in combinations(range(M.n), 2):
                if (rows[i][k], rows[i][l], rows[j][k], rows[j][l]) == (0, 1, 1, 0):
                    new = [list(r) for r in rows]
                    new[i][k], new[i][l], new[j][k], new[j][l] = 1, 0, 0, 1
                    step[x, index[BinaryMatrix(tuple(map(tuple, new)), M.n)]] = True
    return step


def reflexive_transitive_closure(step):
    """Closure by repeated squaring of the boolean adjacency matrix."""
    D = step | np.eye(len(step), dtype=bool)
    while True:
        Df = D.astype(np.float32)
        nxt = (Df @ Df) > 0
        if np.array_equal(nxt, D):
            return D
        D = nxt


def transitive_reduction(D):
    """Cover pairs (lower, upper) of the order whose relation matrix is D[upper, lower]."""
    S = D & ~np.eye(len(D), dtype=bool)
    Sf = S.astype(np.float32)
    between = (Sf @ Sf) > 0
    ups, lows = np.nonzero(S & ~between)
    return set(zip(lows.tolist(), ups.tolist()))


def perm_matrix(w):
    n = len(w)
    return BinaryMatrix(tuple(tuple(int(w[i] == j) for j in range(n)) for i in range(n)), n)


def inversions(w):
    return sum(1 for i, j in combinations(range(len(w)), 2) if w[i] > w[j])


def permutation_bruhat_covers(n):
    """Covers of the Bruhat order on S_n: w covers w*t when length drops by exactly one."""
    from itertools import permutations
    perms = list(permutations(range(n)))
    out = set()
    for w in perms:
        for i, j in combinations(range(n), 2):
            u = list(w)
            u[i], u[j] = u[j], u[i]
            u = tuple(u)
            if inversions(u) == inversions(w) - 1:
                out.add((u, w))
    return out
