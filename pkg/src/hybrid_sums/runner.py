"""Turn a run configuration into independent tasks, execute them, and build a report.

A task is a JSON-friendly list ``[kind, args, bits, tol]``; it doubles as the
cache key.  Tasks are independent, so they can be farmed out to a process
pool; the report sorts records afterwards, so completion order never shows.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from math import gcd
from typing import List, Optional, Sequence, Tuple

from .arith import is_square_full, reduced_residues
from .audit import (
    HypothesisError,
    audit_theorem,
    check_dedekind_lfunction,
    check_eq2,
    check_hardy_reduction,
    check_hardy_vanishing,
    check_lemma_23,
    check_lemma_24,
    check_lsum_lemma,
    reciprocity_check,
    sawtooth_check,
    theorem_shape,
)
from .hp_numeric import PrecisionContext
from .report import Report, ResultCache, audit_record, check_record, unmet_audit_record

__all__ = [
    "RunConfig",
    "ConfigError",
    "MAX_WEIGHT",
    "LEMMA_IDS",
    "build_tasks",
    "execute_task",
    "run",
]

MAX_WEIGHT = 5
LEMMA_IDS = ("2.1", "2.2", "2.3", "2.4", "2.5", "2.6", "2.7", "2.8")


class ConfigError(ValueError):
    """Invalid run configuration."""


@dataclass
class RunConfig:
    command: str
    moduli: Tuple[int, ...] = ()
    m_values: Tuple[int, ...] = (1,)
    n_values: Tuple[int, ...] = (1,)
    h_values: Optional[Tuple[int, ...]] = None
    identity: Optional[str] = None
    bits: Optional[int] = None
    tol: Optional[float] = None
    out: Optional[str] = None
    fmt: str = "json"
    cache: Optional[str] = None
    secondary: bool = False
    square_full_only: bool = False
    jobs: int = 1

    def validate(self) -> None:
        if any(q < 1 for q in self.moduli):
            raise ConfigError("all moduli must be >= 1")
        if self.bits is not None and self.bits < 64:
            raise ConfigError("precision must be at least 64 bits")
        if self.tol is not None and not self.tol > 0:
            raise ConfigError("tolerance must be positive")
        if self.fmt not in ("json", "csv"):
            raise ConfigError("format must be json or csv")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        if any(v < 1 for v in self.m_values + self.n_values):
            raise ConfigError("m and n must be positive")

    def echo(self) -> dict:
        """Config fields that affect report content (no paths, no job count)."""
        out = asdict(self)
        for k in ("out", "cache", "jobs"):
            out.pop(k)
        for k, v in out.items():
            if isinstance(v, tuple):
                out[k] = list(v)
        return out


def _ctx(q: int, bits, tol) -> PrecisionContext:
    return PrecisionContext.for_modulus(q, bits, tol)


def _prop11_records(q: int) -> List[dict]:
    out = []
    weights = range(1, MAX_WEIGHT + 1)
    for h in range(1, 2 * q):
        if gcd(h, q) != 1:
            continue
        for m in weights:
            for variant in ("s1-half", "s1-inverse2", "s5-prop"):
                out.append(check_record(check_hardy_reduction(variant, h, m, None, q)))
            if h < q:
                for n in weights:
                    out.append(check_record(check_hardy_reduction("s2", h, m, n, q)))
                    out.append(check_record(check_hardy_vanishing("s2", h, m, n, q)))
                    out.append(check_record(check_hardy_vanishing("s2", h, m, n, q, "symmetry")))
            for variant in ("s1", "s5"):
                out.append(check_record(check_hardy_vanishing(variant, h, m, None, q)))
        if h < q:
            for n in weights:
                out.append(check_record(check_hardy_reduction("s3", h, None, n, q)))
                out.append(check_record(check_hardy_vanishing("s3", h, None, n, q)))
                out.append(check_record(check_hardy_vanishing("s3", h, None, n, q, "symmetry")))
    return out


def _lemma22_records(q: int, m_values, h_values) -> List[dict]:
    out = []
    hs = h_values if h_values is not None else [h for h in range(1, 2 * q, 2) if gcd(h, q) == 1]
    for m in m_values:
        for h in hs:
            out.append(check_record(check_hardy_reduction("s5-lemma", h, m, None, q)))
            out.append(check_record(check_eq2(h, m, q)))
    return out


def execute_task(task: Sequence) -> List[dict]:
    """Run one task and return its serialized records."""
    kind, args, bits, tol = task
    if kind == "prop11":
        (q,) = args
        return _prop11_records(q)
    if kind == "lemma2.2":
        q, m_values, h_values = args
        return _lemma22_records(q, m_values, h_values)
    if kind == "reciprocity":
        (k,) = args
        out = []
        for h in range(1, k + 1):
            out.append(check_record(reciprocity_check(h, k)))
            if h < k:
                out.append(check_record(sawtooth_check(h, k)))
        return out
    if kind == "lemma2.1":
        q, m, n, hs = args
        ctx = _ctx(q, bits, tol)
        hs = hs if hs is not None else reduced_residues(q)
        return [check_record(check_dedekind_lfunction(h, m, n, q, ctx)) for h in hs]
    if kind == "lemma2.3":
        (q,) = args
        return [check_record(r) for r in check_lemma_23(q, _ctx(q, bits, tol))]
    if kind == "lemma2.4":
        (q,) = args
        return [check_record(r) for r in check_lemma_24(q, _ctx(q, bits, tol))]
    if kind == "lsum":
        lemma, q, m, n = args
        return [check_record(check_lsum_lemma(lemma, q, m, n, _ctx(q, bits, tol)))]
    if kind == "audit":
        theorem, q, m, n, secondary = args
        try:
            theorem_shape(theorem, q, m, n)
        except HypothesisError as exc:
            return [unmet_audit_record(theorem, q, m, n, str(exc))]
        return [audit_record(audit_theorem(theorem, q, m, n, _ctx(q, bits, tol), alt_ranges=secondary))]
    raise ValueError(f"unknown task kind {kind!r}")


def _audit_tasks(theorem: int, moduli, m_values, n_values, secondary, bits, tol) -> List[list]:
    # weight indices a theorem does not use are pinned to 1
    if theorem in (2, 5):
        n_values = (1,)
    if theorem == 4:
        m_values = (1,)
    return [
        ["audit", [theorem, q, m, n, secondary], bits, tol]
        for q in moduli
        for m in m_values
        for n in n_values
    ]


def _admissible_theorems(q: int) -> List[int]:
    return [1, 2] + ([3] if q % 2 == 0 else [4, 5])


def build_tasks(config: RunConfig) -> List[list]:
    b, t = config.bits, config.tol
    cmd = config.command
    if cmd == "verify-prop11":
        tasks = [["prop11", [q], None, None] for q in config.moduli]
        tasks += [["lemma2.2", [q, [1, 3], None], None, None] for q in config.moduli if q % 2 and q >= 3]
        return tasks
    if cmd == "verify-reciprocity":
        return [["reciprocity", [k], None, None] for k in config.moduli]
    if cmd == "verify-lemma":
        lemma = config.identity
        if lemma not in LEMMA_IDS:
            raise ConfigError(f"unknown lemma id {lemma!r}; expected one of {', '.join(LEMMA_IDS)}")
        hs = list(config.h_values) if config.h_values is not None else None
        if lemma == "2.1":
            return [
                ["lemma2.1", [q, m, n, hs], b, t]
                for q in config.moduli
                for m in config.m_values
                for n in config.n_values
            ]
        if lemma == "2.2":
            return [["lemma2.2", [q, list(config.m_values), hs], None, None] for q in config.moduli]
        if lemma in ("2.3", "2.4"):
            return [[f"lemma{lemma}", [q], b, t] for q in config.moduli]
        return [
            ["lsum", [lemma, q, m, n], b, t]
            for q in config.moduli
            for m in config.m_values
            for n in config.n_values
        ]
    if cmd == "audit-theorem":
        try:
            theorem = int(config.identity)
        except (TypeError, ValueError):
            raise ConfigError(f"theorem id must be 1..5, got {config.identity!r}") from None
        if theorem not in (1, 2, 3, 4, 5):
            raise ConfigError(f"theorem id must be 1..5, got {theorem}")
        return _audit_tasks(theorem, config.moduli, config.m_values, config.n_values, config.secondary, b, t)
    if cmd == "scan":
        tasks = []
        for q in config.moduli:
            if q < 2:
                continue
            sf = is_square_full(q)
            if config.square_full_only and not sf:
                continue
            tasks.append(["lemma2.3", [q], b, t])
            if sf:
                tasks.append(["lemma2.4", [q], b, t])
                for theorem in _admissible_theorems(q):
                    tasks.append(["audit", [theorem, q, 1, 1, config.secondary], b, t])
            else:
                tasks.append(["lsum", ["2.5", q, 1, 1], b, t])
        return tasks
    raise ConfigError(f"unknown command {cmd!r}")


def run(config: RunConfig) -> Report:
    """Execute ``config`` and return the assembled report (single-threaded assembly)."""
    config.validate()
    tasks = build_tasks(config)
    cache = ResultCache(config.cache)
    results: List[Optional[List[dict]]] = [cache.get(task) for task in tasks]
    pending = [i for i, r in enumerate(results) if r is None]
    if config.jobs > 1 and len(pending) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            for i, recs in zip(pending, pool.map(execute_task, [tasks[i] for i in pending])):
                results[i] = recs
    else:
        for i in pending:
            results[i] = execute_task(tasks[i])
    for i in pending:
        cache.put(tasks[i], results[i])
    records = [rec for recs in results for rec in recs]
    return Report(config.echo(), records)
