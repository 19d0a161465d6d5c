"""The period matrix ``[p_{i+j}]`` and its serialization.

Rows are indexed by ``I_{(n/2) d - n - 2}`` and columns by ``I_d``, both in
lexicographic order.  Every provenance vanishes unless each pair of a fixed
perfect matching of the coordinates sums to ``d - 2``; hence the entry
``(i, j)`` can only be nonzero when, pair by pair, the row sums ``s_l(i)`` and
column sums ``s_l(j)`` add up to ``d - 2``.  Grouping rows by their pair-sum
vector therefore splits the matrix into independent blocks, and the rank is
the sum of the block ranks.  :class:`LazyPeriodMatrix` walks those blocks
without ever listing the full index sets, which is what makes the large
all-ones cases tractable.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

import numpy as np

from .combinatorics import FermatParams, enumerate_index_set, index_set_size
from .cyclotomic import CycElt, exponents_to_coeffs, negacyclic_mul
from .periods import CompleteIntersection, DegreeVector, provenance_from_json

__all__ = [
    "Block",
    "PeriodMatrix",
    "LazyPeriodMatrix",
    "MatrixFormatError",
    "build_matrix",
    "build_matrix_bruteforce",
    "iter_pattern_blocks",
    "split_components",
    "dump",
    "load",
    "row_generation_check",
]


@dataclass
class Block:
    """A dense diagonal block: window coefficients shaped ``(rows, cols, d)``.

    ``rows``/``cols`` label the block: exponent tuples as an integer array for
    pattern blocks, positions in the parent matrix for connected components.
    """

    rows: list
    cols: list
    coeffs: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return self.coeffs.shape[0], self.coeffs.shape[1]


def _compositions(total: int, parts: int, cap: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        if 0 <= total <= cap:
            yield (total,)
        return
    for v in range(max(0, total - (parts - 1) * cap), min(cap, total) + 1):
        for rest in _compositions(total - v, parts - 1, cap):
            yield (v,) + rest


def _tuples_with_pair_sums(nvars: int, pairs, sums) -> np.ndarray:
    """All non-negative tuples with ``t_u + t_v = s`` for each pair, in lexicographic order."""
    grids = np.meshgrid(*[np.arange(s + 1) for s in sums], indexing="ij")
    count = int(np.prod([s + 1 for s in sums]))
    out = np.zeros((count, nvars), dtype=np.int64)
    for (u, v), s, g in zip(pairs, sums, grids):
        out[:, u] = g.ravel()
        out[:, v] = s - out[:, u]
    return out[np.lexsort(out.T[::-1])]


def iter_pattern_blocks(params: FermatParams, provenance) -> Iterator[Block]:
    """Blocks of the period matrix, one per admissible row pair-sum vector.

    Rows whose pair sums exceed ``d - 2`` are identically zero and are skipped.
    Block entries are evaluated by the provenance's vectorized formula.
    """
    provenance.validate(params)
    pairs = provenance.pairs(params)
    cap = params.d - 2
    for sigma in _compositions(params.row_degree, len(pairs), cap):
        rows = _tuples_with_pair_sums(params.nvars, pairs, sigma)
        cols = _tuples_with_pair_sums(params.nvars, pairs, [cap - s for s in sigma])
        T = rows[:, None, :] + cols[None, :, :]
        coeffs = provenance.period_array(params, T)
        yield Block(rows, cols, coeffs)


@dataclass
class PeriodMatrix:
    """Materialized ``[p_{i+j}]`` with sparse row storage (``rows[r][c] -> CycElt``)."""

    params: FermatParams
    provenance: object
    row_index: list[tuple[int, ...]]
    col_index: list[tuple[int, ...]]
    rows: list[dict[int, CycElt]]
    scalar: Fraction

    @property
    def order(self) -> int:
        return self.params.order

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_index), len(self.col_index)

    def entry(self, r: int, c: int) -> CycElt:
        return self.rows[r].get(c) or CycElt.zero(self.order)

    def to_dense(self) -> list[list[CycElt]]:
        return [[self.entry(r, c) for c in range(self.shape[1])] for r in range(self.shape[0])]

    def nnz(self) -> int:
        return sum(len(row) for row in self.rows)

    def iter_blocks(self) -> Iterator[Block]:
        yield from split_components(self.order, self.rows, self.shape[1])

    def __eq__(self, other) -> bool:
        if not isinstance(other, PeriodMatrix):
            return NotImplemented
        return (
            self.params == other.params
            and self.provenance == other.provenance
            and self.row_index == other.row_index
            and self.col_index == other.col_index
            and self.scalar == other.scalar
            and [{c: e for c, e in r.items() if e} for r in self.rows]
            == [{c: e for c, e in r.items() if e} for r in other.rows]
        )


class LazyPeriodMatrix:
    """Block-structured view of ``[p_{i+j}]`` that never lists the index sets."""

    def __init__(self, params: FermatParams, provenance):
        provenance.validate(params)
        self.params = params
        self.provenance = provenance

    @property
    def order(self) -> int:
        return self.params.order

    @property
    def shape(self) -> tuple[int, int]:
        p = self.params
        return index_set_size(p, p.row_degree), index_set_size(p, p.col_degree)

    @property
    def scalar(self) -> Fraction:
        return self.provenance.scalar(self.params)

    def iter_blocks(self) -> Iterator[Block]:
        return iter_pattern_blocks(self.params, self.provenance)

    def materialize(self) -> PeriodMatrix:
        return build_matrix(self.params, self.provenance)


def build_matrix(params: FermatParams, provenance) -> PeriodMatrix:
    provenance.validate(params)
    row_index = enumerate_index_set(params, params.row_degree)
    col_index = enumerate_index_set(params, params.col_degree)
    row_pos = {t: k for k, t in enumerate(row_index)}
    col_pos = {t: k for k, t in enumerate(col_index)}
    rows: list[dict[int, CycElt]] = [{} for _ in row_index]
    order = params.order
    for block in iter_pattern_blocks(params, provenance):
        cpos = [col_pos[c] for c in map(tuple, block.cols.tolist())]
        values = block.coeffs.tolist()
        for r, vrow in zip(map(tuple, block.rows.tolist()), values):
            target = rows[row_pos[r]]
            for c, v in zip(cpos, vrow):
                if any(v):
                    target[c] = CycElt(order, tuple(v))
    return PeriodMatrix(params, provenance, row_index, col_index, rows, provenance.scalar(params))


def build_matrix_bruteforce(params: FermatParams, provenance) -> PeriodMatrix:
    """Entry-by-entry construction through the scalar period function (slow, for checks)."""
    provenance.validate(params)
    row_index = enumerate_index_set(params, params.row_degree)
    col_index = enumerate_index_set(params, params.col_degree)
    rows = []
    for i in row_index:
        row = {}
        for c, j in enumerate(col_index):
            v = provenance.period(params, tuple(a + b for a, b in zip(i, j)))
            if v:
                row[c] = v
        rows.append(row)
    return PeriodMatrix(params, provenance, row_index, col_index, rows, provenance.scalar(params))


def split_components(order: int, rows: Sequence[dict], ncols: int) -> Iterator[Block]:
    """Connected components of the row/column incidence graph of the nonzero entries.

    Components are emitted in order of their smallest row; rows and columns
    inside a component keep their original relative order.
    """
    parent = list(range(len(rows) + ncols))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    R = len(rows)
    for r, row in enumerate(rows):
        for c, v in row.items():
            if v:
                a, b = find(r), find(R + c)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    groups: dict[int, tuple[list[int], list[int]]] = {}
    for r, row in enumerate(rows):
        if any(v for v in row.values()):
            groups.setdefault(find(r), ([], []))[0].append(r)
    for c in range(ncols):
        root = find(R + c)
        if root in groups:
            groups[root][1].append(c)
    d = order // 2
    for root in sorted(groups):
        rs, cs = groups[root]
        coeffs = np.zeros((len(rs), len(cs), d), dtype=object)
        cpos = {c: k for k, c in enumerate(cs)}
        for a, r in enumerate(rs):
            for c, v in rows[r].items():
                if v:
                    coeffs[a, cpos[c]] = v.coeffs
        yield Block(rs, cs, coeffs)


# serialization ------------------------------------------------------------------


class MatrixFormatError(ValueError):
    """Malformed matrix document; ``where`` locates the problem."""

    def __init__(self, message: str, where: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def _fmt_scalar(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _parse_scalar(s: str, where: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise MatrixFormatError(f"bad scalar {s!r}", where) from exc


def dump(matrix: PeriodMatrix, fmt: str = "json") -> bytes:
    if fmt == "json":
        doc = {
            "n": matrix.params.n,
            "d": matrix.params.d,
            "provenance": matrix.provenance.to_json(),
            "rows": [list(r) for r in matrix.row_index],
            "cols": [list(c) for c in matrix.col_index],
            "entries": [[e.to_json() for e in row] for row in matrix.to_dense()],
            "scalar": _fmt_scalar(matrix.scalar),
        }
        return json.dumps(doc, separators=(",", ":")).encode()
    if fmt == "tsv":
        out = io.StringIO()
        out.write("# fermat-period-matrix\n")
        out.write(f"# n\t{matrix.params.n}\n# d\t{matrix.params.d}\n")
        out.write(f"# provenance\t{json.dumps(matrix.provenance.to_json(), separators=(',', ':'))}\n")
        out.write(f"# scalar\t{_fmt_scalar(matrix.scalar)}\n")
        out.write("# cols" + "".join("\t" + ",".join(map(str, c)) for c in matrix.col_index) + "\n")
        for r, i in enumerate(matrix.row_index):
            cells = [",".join(map(str, matrix.entry(r, c).coeffs)) for c in range(matrix.shape[1])]
            out.write(",".join(map(str, i)) + "".join("\t" + x for x in cells) + "\n")
        return out.getvalue().encode()
    raise ValueError(f"unknown format {fmt!r}")


def _int_tuple(seq, where: str, length: int | None = None) -> tuple[int, ...]:
    if not isinstance(seq, list) or not all(isinstance(v, int) for v in seq):
        raise MatrixFormatError("expected an array of integers", where)
    if length is not None and len(seq) != length:
        raise MatrixFormatError(f"expected length {length}, got {len(seq)}", where)
    return tuple(seq)


def _load_json(text: str) -> PeriodMatrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(exc.msg, f"line {exc.lineno} column {exc.colno}") from exc
    if not isinstance(doc, dict):
        raise MatrixFormatError("top level must be an object", "$")
    for key in ("n", "d", "provenance", "rows", "cols", "entries", "scalar"):
        if key not in doc:
            raise MatrixFormatError(f"missing key {key!r}", "$")
    try:
        params = FermatParams(int(doc["n"]), int(doc["d"]))
        provenance = provenance_from_json(doc["provenance"])
        provenance.validate(params)
    except (ValueError, KeyError, TypeError) as exc:
        raise MatrixFormatError(str(exc), "$.provenance") from exc
    nv = params.nvars
    row_index = [_int_tuple(r, f"$.rows[{k}]", nv) for k, r in enumerate(doc["rows"])]
    col_index = [_int_tuple(c, f"$.cols[{k}]", nv) for k, c in enumerate(doc["cols"])]
    entries = doc["entries"]
    if not isinstance(entries, list) or len(entries) != len(row_index):
        raise MatrixFormatError(f"expected {len(row_index)} entry rows", "$.entries")
    rows = []
    for r, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != len(col_index):
            raise MatrixFormatError(f"expected {len(col_index)} entries", f"$.entries[{r}]")
        parsed = {}
        for c, e in enumerate(row):
            try:
                v = CycElt.from_json(e)
            except (ValueError, TypeError) as exc:
                raise MatrixFormatError(str(exc), f"$.entries[{r}][{c}]") from exc
            if v.order != params.order:
                raise MatrixFormatError(f"order {v.order} != {params.order}", f"$.entries[{r}][{c}]")
            if v:
                parsed[c] = v
        rows.append(parsed)
    scalar = _parse_scalar(str(doc["scalar"]), "$.scalar")
    return PeriodMatrix(params, provenance, row_index, col_index, rows, scalar)


def _load_tsv(text: str) -> PeriodMatrix:
    header: dict[str, str] = {}
    body: list[tuple[int, str]] = []
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    for lineno, line in enumerate(lines, start=1):
        if line.startswith("# "):
            key, _, value = line[2:].partition("\t")
            header[key] = value
        elif line.startswith("#"):
            continue
        else:
            body.append((lineno, line))
    for key in ("n", "d", "provenance", "scalar", "cols"):
        if key not in header:
            raise MatrixFormatError(f"missing header {key!r}", "header")
    try:
        params = FermatParams(int(header["n"]), int(header["d"]))
        provenance = provenance_from_json(json.loads(header["provenance"]))
        provenance.validate(params)
    except (ValueError, KeyError, TypeError) as exc:
        raise MatrixFormatError(str(exc), "header") from exc

    def ints(cell: str, where: str, length: int) -> tuple[int, ...]:
        try:
            vals = tuple(int(x) for x in cell.split(","))
        except ValueError as exc:
            raise MatrixFormatError(f"bad integer list {cell!r}", where) from exc
        if len(vals) != length:
            raise MatrixFormatError(f"expected {length} integers, got {len(vals)}", where)
        return vals

    col_cells = header["cols"].split("\t") if header["cols"] else []
    col_index = [ints(c, f"header cols field {k + 1}", params.nvars) for k, c in enumerate(col_cells)]
    row_index, rows = [], []
    d = params.d
    for lineno, line in body:
        cells = line.split("\t")
        if len(cells) != len(col_index) + 1:
            raise MatrixFormatError(
                f"expected {len(col_index) + 1} fields, got {len(cells)}", f"line {lineno}"
            )
        row_index.append(ints(cells[0], f"line {lineno} field 1", params.nvars))
        parsed = {}
        for c, cell in enumerate(cells[1:]):
            v = CycElt(params.order, ints(cell, f"line {lineno} field {c + 2}", d))
            if v:
                parsed[c] = v
        rows.append(parsed)
    scalar = _parse_scalar(header["scalar"], "header scalar")
    return PeriodMatrix(params, provenance, row_index, col_index, rows, scalar)


def load(data: bytes | str, fmt: str = "json") -> PeriodMatrix:
    text = data.decode() if isinstance(data, bytes) else data
    if fmt == "json":
        return _load_json(text)
    if fmt == "tsv":
        return _load_tsv(text)
    raise ValueError(f"unknown format {fmt!r}")


# row generation for the all-ones complete intersection ------------------------------


def row_generation_check(params: FermatParams) -> tuple[int, int]:
    """Check ``p_{i+.} = zeta^{i_0 + i_2 + ... + i_n} p_{phi(j)+.}`` for every non-vanishing row.

    ``j`` is the unique column with ``i + j`` in the check set and
    ``phi(j) = (0, d-2-j_1, 0, d-2-j_3, ...)``.  Works block by block on the
    all-ones complete intersection with ``B_k = {zeta_{2d}}``.  Returns
    ``(rows_checked, rows_failed)``.
    """
    dv = DegreeVector((1,) * (params.half + 1))
    src = CompleteIntersection(dv)
    cap = params.d - 2
    checked = failed = 0
    for block in iter_pattern_blocks(params, src):
        rows = block.rows
        i = rows[0]
        j = np.zeros(params.nvars, dtype=np.int64)
        j[1::2] = cap - i[0::2] - i[1::2]
        phi = np.zeros(params.nvars, dtype=np.int64)
        phi[1::2] = cap - j[1::2]
        base = block.coeffs[np.flatnonzero((rows == phi).all(axis=1))[0]]
        shift = exponents_to_coeffs(rows[:, 0::2].sum(axis=1), params.order)
        expected = negacyclic_mul(shift[:, None, :], base[None, :, :])
        ok = (expected == block.coeffs).all(axis=(1, 2))
        checked += len(ok)
        failed += int((~ok).sum())
    return checked, failed
