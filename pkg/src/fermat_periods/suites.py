"""Verification suites for the rank identities and the report they produce."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Callable

from .codim import expected_rank_ci, expected_rank_ci_all_ones, expected_rank_linear_pair
from .combinatorics import FermatParams
from .matrix import LazyPeriodMatrix, row_generation_check
from .periods import CompleteIntersection, DegreeVector, LinearPair
from .rank import RankResult, compute_rank

__all__ = [
    "THEOREM2_TRIPLES",
    "CONJECTURE1_RANGES",
    "VerificationCase",
    "SuiteConfig",
    "Report",
    "theorem2_cases",
    "conjecture1_cases",
    "prop3_cases",
    "run_case",
    "run_suite",
    "run_theorem2_suite",
    "run_conjecture1_suite",
    "run_prop3_suite",
    "degree_multisets",
    "alternate_roots",
]

THEOREM2_TRIPLES: list[tuple[int, int, int]] = (
    [(2, d, -1) for d in range(5, 15)]
    + [(4, 4, -1), (4, 5, -1), (4, 6, -1), (4, 5, 0), (4, 6, 0)]
    + [(6, 3, -1), (6, 4, -1), (6, 4, 0)]
    + [(8, 3, -1), (8, 3, 0)]
    + [(10, 3, -1), (10, 3, 0), (10, 3, 1)]
)

CONJECTURE1_RANGES: list[tuple[int, int]] = (
    [(2, d) for d in range(4, 16)] + [(4, d) for d in range(3, 7)] + [(6, 3), (6, 4)]
)


@dataclass
class SuiteConfig:
    method: str = "auto"
    prime_count: int = 3
    jobs: int = 1
    n: int | None = None
    d: int | None = None
    # complete-intersection suite: all degree multisets when there are at most this many ...
    exhaustive_max_cases: int = 36
    # ... otherwise this many spread-out ones (0 = all)
    sample_size: int = 4
    # complete-intersection suite: cases per (n, d) that also get an alternative root choice
    root_checks: int = 1
    # all-ones grid cap
    max_d: int = 6

    def __post_init__(self):
        if self.prime_count < 1:
            raise ValueError("prime_count must be >= 1")
        if self.method not in ("exact", "modular", "auto"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")

    def accepts(self, n: int, d: int) -> bool:
        return (self.n is None or self.n == n) and (self.d is None or self.d == d)


@dataclass
class VerificationCase:
    kind: str
    params: dict
    expected: int
    computed: RankResult | None = None
    status: str = "pending"
    wall_time: float = 0.0
    detail: dict = field(default_factory=dict)
    error: str | None = None

    def label(self) -> str:
        p = self.params
        if self.kind == "theorem2":
            return f"({p['n']},{p['d']},{p['m']})"
        if self.kind == "conjecture1":
            return f"n={p['n']} d={p['d']} degrees={tuple(p['degrees'])}"
        return f"n={p['n']} d={p['d']}"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "params": self.params,
            "expected": self.expected,
            "computed": self.computed.to_json() if self.computed else None,
            "status": self.status,
            "wall_time": round(self.wall_time, 4),
            "detail": self.detail,
            "error": self.error,
        }


@dataclass
class Report:
    suite: str
    cases: list[VerificationCase]

    @property
    def counts(self) -> dict:
        out = {"pass": 0, "fail": 0, "error": 0}
        for c in self.cases:
            out[c.status] = out.get(c.status, 0) + 1
        return out

    @property
    def ok(self) -> bool:
        return all(c.status == "pass" for c in self.cases)

    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_json(self) -> dict:
        counts = self.counts
        return {
            "suite": self.suite,
            "cases": [c.to_json() for c in self.cases],
            "summary": {"total": len(self.cases), **counts, "ok": self.ok},
        }

    def to_text(self) -> str:
        lines = [f"{'case':<44} {'expected':>8} {'rank':>6} {'method':<14} {'status':<6} {'time':>8}"]
        for c in self.cases:
            rank = c.computed.rank if c.computed else "-"
            method = c.computed.method if c.computed else "-"
            lines.append(
                f"{c.kind + ' ' + c.label():<44} {c.expected:>8} {rank!s:>6} {method:<14} "
                f"{c.status:<6} {c.wall_time:>7.2f}s"
            )
        counts = self.counts
        lines.append(
            f"{self.suite}: {len(self.cases)} cases, {counts['pass']} pass, "
            f"{counts['fail']} fail, {counts['error']} error"
        )
        return "\n".join(lines)

    def to_tsv(self) -> str:
        lines = ["kind\tparams\texpected\trank\tmethod\tcertified\tstatus\twall_time"]
        for c in self.cases:
            r = c.computed
            lines.append(
                "\t".join(
                    [
                        c.kind,
                        c.label(),
                        str(c.expected),
                        str(r.rank) if r else "",
                        r.method if r else "",
                        str(r.certified) if r else "",
                        c.status,
                        f"{c.wall_time:.4f}",
                    ]
                )
            )
        return "\n".join(lines) + "\n"


# case lists ------------------------------------------------------------------------


def theorem2_cases(config: SuiteConfig) -> list[VerificationCase]:
    return [
        VerificationCase("theorem2", {"n": n, "d": d, "m": m}, expected_rank_linear_pair(n, d, m))
        for n, d, m in THEOREM2_TRIPLES
        if config.accepts(n, d)
    ]


def degree_multisets(n: int, d: int) -> list[tuple[int, ...]]:
    """Non-decreasing degree tuples ``(d_1, ..., d_{n/2+1})`` with entries in ``[1, d-1]``."""
    return list(combinations_with_replacement(range(1, d), n // 2 + 1))


def _spread(items: list, k: int) -> list:
    if k <= 0 or k >= len(items):
        return items
    if k == 1:
        return [items[0]]
    picks = sorted({round(t * (len(items) - 1) / (k - 1)) for t in range(k)})
    return [items[t] for t in picks]


def alternate_roots(degrees, d: int) -> tuple[tuple[int, ...], ...]:
    """A second root choice: the last ``d_k`` roots of ``zeta^d = -1`` instead of the first."""
    return tuple(tuple(2 * d - 1 - 2 * a for a in range(dk)) for dk in degrees)


def conjecture1_cases(config: SuiteConfig) -> list[VerificationCase]:
    cases = []
    for n, d in CONJECTURE1_RANGES:
        if not config.accepts(n, d):
            continue
        multisets = degree_multisets(n, d)
        if len(multisets) > config.exhaustive_max_cases:
            multisets = _spread(multisets, config.sample_size)
        for k, degrees in enumerate(multisets):
            params = {"n": n, "d": d, "degrees": list(degrees)}
            if k < config.root_checks:
                params["alt_roots"] = [list(r) for r in alternate_roots(degrees, d)]
            cases.append(VerificationCase("conjecture1", params, expected_rank_ci(n, d, degrees)))
    return cases


def prop3_cases(config: SuiteConfig) -> list[VerificationCase]:
    cases = []
    for n in (2, 4, 6, 8, 10):
        for d in range(3, config.max_d + 1):
            if d * n < 2 * n + 4:  # d >= 2 + 4/n
                continue
            if config.accepts(n, d):
                cases.append(VerificationCase("prop3", {"n": n, "d": d}, expected_rank_ci_all_ones(n, d)))
    return cases


# execution ------------------------------------------------------------------------------


def _matrix_for(case: VerificationCase) -> LazyPeriodMatrix:
    p = case.params
    params = FermatParams(p["n"], p["d"])
    if case.kind == "theorem2":
        return LazyPeriodMatrix(params, LinearPair(p["m"]))
    if case.kind == "conjecture1":
        return LazyPeriodMatrix(params, CompleteIntersection(DegreeVector(tuple(p["degrees"]))))
    if case.kind == "prop3":
        return LazyPeriodMatrix(params, CompleteIntersection(DegreeVector((1,) * (params.half + 1))))
    raise ValueError(f"unknown case kind {case.kind!r}")


def run_case(case: VerificationCase, method: str = "auto", prime_count: int = 3) -> VerificationCase:
    start = time.perf_counter()
    try:
        matrix = _matrix_for(case)
        case.computed = compute_rank(matrix, method, prime_count)
        ok = case.computed.rank == case.expected and case.computed.certified
        case.detail["shape"] = list(matrix.shape)
        if case.kind == "conjecture1" and "alt_roots" in case.params:
            dv = DegreeVector(tuple(case.params["degrees"]), tuple(map(tuple, case.params["alt_roots"])))
            alt = compute_rank(LazyPeriodMatrix(matrix.params, CompleteIntersection(dv)), method, prime_count)
            # reported, not folded into the status: independence of B_k is not claimed
            case.detail["alt_roots_rank"] = alt.rank
            case.detail["root_choice_independent"] = alt.rank == case.computed.rank
        if case.kind == "prop3":
            checked, failed = row_generation_check(matrix.params)
            case.detail["row_generation"] = {"rows_checked": checked, "rows_failed": failed}
            ok = ok and failed == 0
        case.status = "pass" if ok else "fail"
    except Exception as exc:  # recorded per case; the suite continues
        case.status = "error"
        case.error = f"{type(exc).__name__}: {exc}"
    case.wall_time = time.perf_counter() - start
    return case


def run_suite(
    name: str,
    cases: list[VerificationCase],
    config: SuiteConfig,
    progress: Callable[[VerificationCase], None] | None = None,
) -> Report:
    if config.jobs == 1:
        done = []
        for case in cases:
            done.append(run_case(case, config.method, config.prime_count))
            if progress:
                progress(done[-1])
        return Report(name, done)
    with ProcessPoolExecutor(max_workers=config.jobs) as pool:
        futures = [pool.submit(run_case, c, config.method, config.prime_count) for c in cases]
        done = []
        for f in futures:
            done.append(f.result())
            if progress:
                progress(done[-1])
    return Report(name, done)


def run_theorem2_suite(config: SuiteConfig | None = None, progress=None) -> Report:
    config = config or SuiteConfig()
    return run_suite("theorem2", theorem2_cases(config), config, progress)


def run_conjecture1_suite(config: SuiteConfig | None = None, progress=None) -> Report:
    config = config or SuiteConfig()
    return run_suite("conjecture1", conjecture1_cases(config), config, progress)


def run_prop3_suite(config: SuiteConfig | None = None, progress=None) -> Report:
    config = config or SuiteConfig()
    return run_suite("prop3", prop3_cases(config), config, progress)
