import json

import numpy as np
import pytest

from fermat_periods.combinatorics import FermatParams, LinearCycle
from fermat_periods.matrix import (
    LazyPeriodMatrix,
    MatrixFormatError,
    build_matrix,
    build_matrix_bruteforce,
    dump,
    load,
    row_generation_check,
)
from fermat_periods.periods import CompleteIntersection, DegreeVector, LinearPair, SingleCycle

SOURCES = [
    (2, 5, LinearPair(-1)),
    (2, 6, LinearPair(0)),
    (4, 4, LinearPair(1)),
    (2, 6, CompleteIntersection(DegreeVector((2, 3)))),
    (4, 4, CompleteIntersection(DegreeVector((1, 2, 3), ((7,), (1, 5), (3, 1, 5))))),
    (2, 5, SingleCycle(LinearCycle((1, 3), (0, 2, 1, 3)))),
    (2, 3, LinearPair(-1)),
]


@pytest.mark.parametrize("n,d,src", SOURCES)
def test_block_builder_matches_entrywise_builder(n, d, src):
    params = FermatParams(n, d)
    fast = build_matrix(params, src)
    slow = build_matrix_bruteforce(params, src)
    assert fast == slow
    assert fast.to_dense() == slow.to_dense()
    lazy = LazyPeriodMatrix(params, src)
    assert lazy.shape == fast.shape
    assert lazy.materialize() == fast


def test_shapes():
    assert build_matrix(FermatParams(2, 5), LinearPair(-1)).shape == (4, 40)
    empty = build_matrix(FermatParams(2, 3), LinearPair(-1))
    assert empty.shape == (0, 4)
    lazy = LazyPeriodMatrix(FermatParams(6, 4), CompleteIntersection(DegreeVector((1, 1, 1, 1))))
    assert lazy.shape == (266, 266)


@pytest.mark.parametrize("n,d,src", SOURCES[:5])
def test_zero_pattern(n, d, src):
    params = FermatParams(n, d)
    M = build_matrix(params, src)
    for r, i in enumerate(M.row_index):
        for c, j in enumerate(M.col_index):
            t = [a + b for a, b in zip(i, j)]
            if any(t[2 * l] + t[2 * l + 1] != d - 2 for l in range(params.half + 1)):
                assert M.entry(r, c).is_zero()


@pytest.mark.parametrize("fmt", ["json", "tsv"])
@pytest.mark.parametrize("n,d,src", SOURCES)
def test_round_trip(fmt, n, d, src):
    M = build_matrix(FermatParams(n, d), src)
    data = dump(M, fmt)
    back = load(data, fmt)
    assert back == M
    assert back.row_index == M.row_index and back.col_index == M.col_index
    assert back.provenance == M.provenance and back.scalar == M.scalar
    assert dump(build_matrix(FermatParams(n, d), src), fmt) == data


def test_json_schema_and_empty_matrix():
    M = build_matrix(FermatParams(2, 3), LinearPair(-1))
    doc = json.loads(dump(M, "json"))
    assert set(doc) == {"n", "d", "provenance", "rows", "cols", "entries", "scalar"}
    assert doc["rows"] == [] and doc["entries"] == [] and len(doc["cols"]) == 4
    assert doc["scalar"] == "1/9"
    assert load(dump(M, "tsv"), "tsv").shape == (0, 4)


def test_malformed_inputs_report_position():
    M = build_matrix(FermatParams(2, 5), LinearPair(-1))
    data = dump(M, "json")
    with pytest.raises(MatrixFormatError) as err:
        load(data[: len(data) // 2], "json")
    assert "line" in str(err.value) and "column" in str(err.value)

    doc = json.loads(data)
    doc["entries"][2][7] = {"order": 10, "coeffs": ["1", "x", "0", "0", "0"]}
    with pytest.raises(MatrixFormatError, match=r"entries\[2\]\[7\]"):
        load(json.dumps(doc), "json")

    text = dump(M, "tsv").decode()
    lines = text.splitlines()
    truncated = "\n".join(lines[:-1] + [lines[-1][: len(lines[-1]) // 2]])
    with pytest.raises(MatrixFormatError, match=f"line {len(lines)}"):
        load(truncated, "tsv")
    with pytest.raises(MatrixFormatError, match="missing"):
        load("\n".join(lines[1:3]), "tsv")


@pytest.mark.parametrize("n,d", [(2, 4), (2, 5), (4, 3), (4, 4), (6, 4)])
def test_row_generation_identity(n, d):
    checked, failed = row_generation_check(FermatParams(n, d))
    assert checked > 0 and failed == 0


def test_row_generation_against_direct_rows():
    """Entrywise recomputation from the dense matrix, without the block helper."""
    from fermat_periods.cyclotomic import root_power

    n, d = 4, 4
    params = FermatParams(n, d)
    M = build_matrix(params, CompleteIntersection(DegreeVector((1,) * 3)))
    dense = M.to_dense()
    pos = {i: r for r, i in enumerate(M.row_index)}
    for r, i in enumerate(M.row_index):
        sums = [i[2 * l] + i[2 * l + 1] for l in range(3)]
        if any(s > d - 2 for s in sums):
            continue
        # the completion j has odd entries d-2-sums[l], so phi(j) = (0, sums[0], 0, sums[1], ...)
        target = tuple(v for s in sums for v in (0, s))
        factor = root_power(params.order, sum(i[0::2]))
        assert dense[r] == [factor * e for e in dense[pos[target]]]
