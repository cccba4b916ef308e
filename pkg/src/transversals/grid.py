"""Partial Latin array data model, grid file I/O, and structural checks.

Cells of a :class:`PartialLatinArray` are either a concrete symbol (a
nonnegative ``int``), the singleton :data:`EMPTY` (nothing known), or the
singleton :data:`MARKER` (the cell holds *some* symbol from the ambient
search pool, value unknown).  Markers are wildcards: they never conflict
with concrete symbols and never join a partial transversal.

Diagonals are plain permutation tuples mapping rows to columns; partial
transversals are tuples of ``(row, col, symbol)`` entries sorted by row.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union


class _Cell:
    """Singleton cell state (``EMPTY`` or ``MARKER``)."""

    __slots__ = ("_name",)

    def __init__(self, name: str):
        self._name = name

    def __repr__(self) -> str:
        return self._name

    def __copy__(self) -> "_Cell":
        return self

    def __deepcopy__(self, memo) -> "_Cell":
        return self


EMPTY = _Cell("EMPTY")
MARKER = _Cell("MARKER")

Cell = Union[int, _Cell]
DiagonalPerm = tuple  # permutation of rows onto columns
Entry = tuple  # (row, col, symbol)
PartialTransversal = tuple  # entries sorted by row


class GridError(ValueError):
    """Malformed grid text. Carries a 1-based line and token position."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        if line:
            message = f"line {line}, col {col}: {message}" if col else f"line {line}: {message}"
        super().__init__(message)


@dataclass
class PartialLatinArray:
    """Rectangular grid of cells with a dense symbol universe ``0..universe-1``.

    Construction validates shape and symbol range only; row/column symbol
    distinctness is checked by :func:`check_latin` (violations are data) or
    enforced by :func:`parse_array` in strict mode.
    """

    rows: int
    cols: int
    grid: list  # rows x cols, entries are Cell
    symbol_universe: int

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"dimensions must be positive, got {self.rows}x{self.cols}")
        if self.symbol_universe < 1:
            raise ValueError(f"symbol universe must be positive, got {self.symbol_universe}")
        if len(self.grid) != self.rows:
            raise ValueError(f"grid has {len(self.grid)} rows, expected {self.rows}")
        for r, row in enumerate(self.grid):
            if len(row) != self.cols:
                raise ValueError(f"row {r} has {len(row)} cells, expected {self.cols}")
            for c, cell in enumerate(row):
                if isinstance(cell, _Cell):
                    continue
                if not isinstance(cell, int) or cell < 0:
                    raise ValueError(f"cell ({r},{c}): invalid cell value {cell!r}")
                if cell >= self.symbol_universe:
                    raise ValueError(
                        f"cell ({r},{c}): symbol {cell} outside universe {self.symbol_universe}"
                    )

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def copy(self) -> "PartialLatinArray":
        return PartialLatinArray(
            self.rows, self.cols, [list(row) for row in self.grid], self.symbol_universe
        )

    def symbols(self) -> Iterable[int]:
        for row in self.grid:
            for cell in row:
                if isinstance(cell, int):
                    yield cell


def from_rows(rows: Sequence[Sequence[Cell]], symbol_universe: Optional[int] = None) -> PartialLatinArray:
    """Build an array from nested sequences, defaulting the universe to max symbol + 1."""
    grid = [list(row) for row in rows]
    if symbol_universe is None:
        symbols = [c for row in grid for c in row if isinstance(c, int)]
        symbol_universe = max(symbols) + 1 if symbols else 1
    return PartialLatinArray(len(grid), len(grid[0]) if grid else 0, grid, symbol_universe)


def _default_universe(grid: list) -> int:
    symbols = [c for row in grid for c in row if isinstance(c, int)]
    return max(symbols) + 1 if symbols else 1


def parse_array(text: str, require_latin: bool = True) -> PartialLatinArray:
    """Parse grid file text.

    Format: optional comment lines starting with ``#``; a header line
    ``ROWS COLS [UNIVERSE]`` (universe defaults to max symbol + 1); then
    ROWS lines of COLS whitespace-separated tokens, each a decimal symbol,
    ``.`` (empty) or ``x`` (marker).

    With ``require_latin`` (the default) a symbol repeated within a row or
    column raises :class:`GridError` at the second occurrence.  Pass
    ``require_latin=False`` to load arrays that are deliberately not Latin
    (the oracle and the no-transversal constructions accept those).
    """
    data_lines = []  # (lineno, text)
    for lineno, raw in enumerate(text.split("\n"), start=1):
        if raw.startswith("#"):
            continue
        if raw.strip() == "":
            continue
        data_lines.append((lineno, raw))
    if not data_lines:
        raise GridError("no header line")

    header_line, header = data_lines[0]
    fields = header.split()
    if len(fields) not in (2, 3):
        raise GridError("header must be 'ROWS COLS [UNIVERSE]'", header_line)
    try:
        dims = [int(f) for f in fields]
    except ValueError:
        raise GridError(f"non-integer header field in {header!r}", header_line) from None
    rows, cols = dims[0], dims[1]
    declared_universe = dims[2] if len(dims) == 3 else None
    if rows < 1 or cols < 1 or (declared_universe is not None and declared_universe < 1):
        raise GridError("header values must be positive", header_line)

    if len(data_lines) - 1 != rows:
        raise GridError(f"expected {rows} grid lines, found {len(data_lines) - 1}", header_line)

    grid = []
    for r in range(rows):
        lineno, line = data_lines[1 + r]
        tokens = line.split()
        if len(tokens) != cols:
            raise GridError(f"expected {cols} tokens, found {len(tokens)}", lineno)
        row = []
        for c, tok in enumerate(tokens):
            if tok == ".":
                row.append(EMPTY)
            elif tok == "x":
                row.append(MARKER)
            elif tok.isdigit():
                sym = int(tok)
                if declared_universe is not None and sym >= declared_universe:
                    raise GridError(
                        f"symbol {sym} outside universe {declared_universe}", lineno, c + 1
                    )
                row.append(sym)
            else:
                raise GridError(f"malformed token {tok!r}", lineno, c + 1)
        grid.append(row)

    universe = declared_universe if declared_universe is not None else _default_universe(grid)
    array = PartialLatinArray(rows, cols, grid, universe)

    if require_latin:
        report = check_latin(array)
        if not report.ok:
            r, c = (report.row_violations + report.col_violations)[0]
            where = "row" if (r, c) in report.row_violations else "column"
            raise GridError(
                f"symbol {grid[r][c]} repeated in {where}", data_lines[1 + r][0], c + 1
            )
    return array


def serialize_array(a: PartialLatinArray) -> str:
    """Canonical grid text: single spaces, '\\n' line endings, round-trips bit-exactly."""
    if a.symbol_universe != _default_universe(a.grid):
        lines = [f"{a.rows} {a.cols} {a.symbol_universe}"]
    else:
        lines = [f"{a.rows} {a.cols}"]
    for row in a.grid:
        lines.append(" ".join(_token(cell) for cell in row))
    return "\n".join(lines) + "\n"


def _token(cell: Cell) -> str:
    if cell is EMPTY:
        return "."
    if cell is MARKER:
        return "x"
    return str(cell)


@dataclass
class LatinReport:
    """Row/column duplicate occurrences; a violation is the later cell in row-major order."""

    row_violations: list = field(default_factory=list)
    col_violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.row_violations and not self.col_violations


def check_latin(a: PartialLatinArray) -> LatinReport:
    """Report every cell whose concrete symbol already occurred in its row or column."""
    report = LatinReport()
    for r in range(a.rows):
        seen = set()
        for c in range(a.cols):
            cell = a.grid[r][c]
            if isinstance(cell, int):
                if cell in seen:
                    report.row_violations.append((r, c))
                seen.add(cell)
    for c in range(a.cols):
        seen = set()
        for r in range(a.rows):
            cell = a.grid[r][c]
            if isinstance(cell, int):
                if cell in seen:
                    report.col_violations.append((r, c))
                seen.add(cell)
    return report


def validate_diagonal(a: PartialLatinArray, sigma: Sequence[int]) -> None:
    if not a.is_square:
        raise ValueError(f"diagonals require a square array, got {a.rows}x{a.cols}")
    n = a.rows
    if len(sigma) != n or sorted(sigma) != list(range(n)):
        raise ValueError(f"sigma is not a permutation of 0..{n - 1}: {tuple(sigma)}")


def diagonal_weight(a: PartialLatinArray, sigma: Sequence[int]) -> int:
    """Number of distinct concrete symbols on the diagonal; empty/marker cells add nothing."""
    validate_diagonal(a, sigma)
    return len({a.grid[i][sigma[i]] for i in range(a.rows) if isinstance(a.grid[i][sigma[i]], int)})


def liberties(a: PartialLatinArray, r: int, c: int, pool: Iterable[int]) -> int:
    """Count pool symbols absent from row ``r`` and column ``c`` (concrete cells only)."""
    if isinstance(a.grid[r][c], int):
        raise ValueError(f"cell ({r},{c}) already holds symbol {a.grid[r][c]}")
    used = {cell for cell in a.grid[r] if isinstance(cell, int)}
    used.update(a.grid[i][c] for i in range(a.rows) if isinstance(a.grid[i][c], int))
    return sum(1 for s in pool if s not in used)


def enumerate_partial_transversals(
    a: PartialLatinArray, length: int, through: Optional[tuple] = None
) -> list:
    """All partial transversals of exactly ``length`` concrete entries, lexicographic.

    ``through=(r, c)`` restricts to transversals containing that cell, which
    must hold a concrete symbol.
    """
    if not a.is_square:
        raise ValueError(f"partial transversal enumeration requires a square array")
    n = a.rows
    if length > n or length < 0:
        raise ValueError(f"length {length} out of range for order {n}")
    if through is not None:
        tr, tc = through
        if not isinstance(a.grid[tr][tc], int):
            raise ValueError(f"through cell ({tr},{tc}) is not concrete")

    results = []
    entries = []
    used_cols = set()
    used_syms = set()

    def rec(row: int, taken: int):
        if taken + (n - row) < length:
            return
        if row == n:
            if taken == length:
                results.append(tuple(entries))
            return
        if through is not None and row == through[0]:
            c = through[1]
            s = a.grid[row][c]
            if c not in used_cols and s not in used_syms:
                used_cols.add(c)
                used_syms.add(s)
                entries.append((row, c, s))
                rec(row + 1, taken + 1)
                entries.pop()
                used_syms.discard(s)
                used_cols.discard(c)
            return
        if taken < length:
            for c in range(n):
                s = a.grid[row][c]
                if isinstance(s, int) and c not in used_cols and s not in used_syms:
                    used_cols.add(c)
                    used_syms.add(s)
                    entries.append((row, c, s))
                    rec(row + 1, taken + 1)
                    entries.pop()
                    used_syms.discard(s)
                    used_cols.discard(c)
        rec(row + 1, taken)  # skip this row

    rec(0, 0)
    results.sort()
    return results


def is_partial_transversal(a: PartialLatinArray, entries: Iterable[tuple]) -> bool:
    """Entries lie on distinct rows, columns, and concrete distinct symbols of ``a``."""
    entries = list(entries)
    rows = [e[0] for e in entries]
    cols = [e[1] for e in entries]
    syms = [e[2] for e in entries]
    if len(set(rows)) != len(entries) or len(set(cols)) != len(entries):
        return False
    if len(set(syms)) != len(entries):
        return False
    return all(a.grid[r][c] == s and isinstance(s, int) for r, c, s in entries)
