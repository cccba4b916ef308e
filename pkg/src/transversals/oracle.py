"""Exact brute-force reference answers for small arrays.

These are deliberately independent of the swap search engine: maximum
diagonal weight by branch-and-bound over all diagonals, maximum partial
transversal length by exhaustive backtracking, and the constructive
diagonal normalization that caps every symbol at two occurrences.
"""

from __future__ import annotations

from dataclasses import dataclass

from .grid import PartialLatinArray, validate_diagonal

DEFAULT_ORDER_CAP = 10


class OracleCapError(ValueError):
    """Input order above the configured exhaustive-search cap."""


@dataclass
class OracleResult:
    value: int
    witness: tuple  # DiagonalPerm or PartialTransversal achieving the value
    nodes_explored: int


def max_diagonal_weight(a: PartialLatinArray, cap: int = DEFAULT_ORDER_CAP) -> OracleResult:
    """Exact maximum of diagonal weight over all n! diagonals.

    Branch and bound: rows in increasing order, candidate columns in
    increasing order, prune when distinct-so-far + rows-remaining cannot
    beat the best found.  Deterministic witness and node count.
    """
    if not a.is_square:
        raise ValueError(f"diagonals require a square array, got {a.rows}x{a.cols}")
    n = a.rows
    if n > cap:
        raise OracleCapError(f"order {n} above cap {cap}")
    grid = a.grid

    # symbol -> bit, so distinct counting is a popcount
    bit = {}
    for row in grid:
        for cell in row:
            if isinstance(cell, int) and cell not in bit:
                bit[cell] = 1 << len(bit)
    mask_grid = [[bit[cell] if isinstance(cell, int) else 0 for cell in row] for row in grid]

    best = -1
    best_sigma: tuple = ()
    sigma = [0] * n
    used = [False] * n
    nodes = 0

    def rec(row: int, seen: int, distinct: int):
        nonlocal best, best_sigma, nodes
        nodes += 1
        if distinct + (n - row) <= best:
            return
        if row == n:
            best = distinct
            best_sigma = tuple(sigma)
            return
        mrow = mask_grid[row]
        for c in range(n):
            if not used[c]:
                used[c] = True
                sigma[row] = c
                b = mrow[c]
                if seen & b or not b:
                    rec(row + 1, seen, distinct)
                else:
                    rec(row + 1, seen | b, distinct + 1)
                used[c] = False

    rec(0, 0, 0)
    return OracleResult(best, best_sigma, nodes)


def max_partial_transversal_length(
    a: PartialLatinArray, cap: int = DEFAULT_ORDER_CAP
) -> OracleResult:
    """Exact maximum length of a partial transversal, by backtracking over rows."""
    if a.rows > cap:
        raise OracleCapError(f"{a.rows} rows above cap {cap}")
    grid = a.grid
    rows, cols = a.rows, a.cols

    best = -1
    best_entries: tuple = ()
    entries = []
    used_cols = set()
    used_syms = set()
    nodes = 0

    def rec(row: int):
        nonlocal best, best_entries, nodes
        nodes += 1
        if len(entries) + (rows - row) <= best:
            return
        if row == rows:
            best = len(entries)
            best_entries = tuple(entries)
            return
        for c in range(cols):
            s = grid[row][c]
            if isinstance(s, int) and c not in used_cols and s not in used_syms:
                used_cols.add(c)
                used_syms.add(s)
                entries.append((row, c, s))
                rec(row + 1)
                entries.pop()
                used_syms.discard(s)
                used_cols.discard(c)
        rec(row + 1)

    rec(0)
    return OracleResult(best, best_entries, nodes)


def has_transversal(a: PartialLatinArray, cap: int = DEFAULT_ORDER_CAP) -> bool:
    return max_diagonal_weight(a, cap).value == a.rows


def normalize_diagonal(a: PartialLatinArray, sigma, preserve: int) -> tuple:
    """Swap a diagonal into one at least as heavy with every symbol on it at most twice.

    Requires a fully filled Latin array.  The cell (preserve, sigma[preserve])
    stays on the diagonal.  Each round picks the smallest row r1 != preserve
    whose diagonal symbol occurs three or more times, then the smallest
    partner row r2 whose crossing cells bring in one fresh symbol and one
    symbol occurring at most once; exchanging their columns strictly shrinks
    the set of over-represented cells, so at most n rounds are needed.
    """
    validate_diagonal(a, sigma)
    n = a.rows
    grid = a.grid
    for r in range(n):
        for c in range(n):
            if not isinstance(grid[r][c], int):
                raise ValueError(f"cell ({r},{c}) is not concrete; need a fully filled array")
    if not 0 <= preserve < n:
        raise ValueError(f"preserve row {preserve} out of range")

    sigma = list(sigma)
    count: dict = {}
    for i in range(n):
        s = grid[i][sigma[i]]
        count[s] = count.get(s, 0) + 1

    for _ in range(n):
        r1 = next(
            (i for i in range(n) if i != preserve and count[grid[i][sigma[i]]] >= 3), None
        )
        if r1 is None:
            if all(v <= 2 for v in count.values()):
                return tuple(sigma)
            raise AssertionError("over-represented symbol only on the preserved row")
        r2 = None
        for cand in range(n):
            if cand == preserve or cand == r1:
                continue
            fresh = grid[r1][sigma[cand]]
            crossing = grid[cand][sigma[r1]]
            if count.get(fresh, 0) == 0 and count.get(crossing, 0) <= 1:
                r2 = cand
                break
        if r2 is None:
            raise AssertionError("no admissible partner row; input is not Latin?")
        for cell in (grid[r1][sigma[r1]], grid[r2][sigma[r2]]):
            count[cell] -= 1
        sigma[r1], sigma[r2] = sigma[r2], sigma[r1]
        for cell in (grid[r1][sigma[r1]], grid[r2][sigma[r2]]):
            count[cell] = count.get(cell, 0) + 1
    if all(v <= 2 for v in count.values()):
        return tuple(sigma)
    raise AssertionError("normalization did not settle within n rounds")
