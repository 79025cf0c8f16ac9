"""Random-graph experiments: scaling runs, concentration reports, and shift scans.

Per-trial seeds are ``seed XOR h`` where ``h`` is the little-endian 64-bit
BLAKE2b digest of the ASCII string ``"{n}|{p.hex()}|{trial}"``. A trial's
seed therefore depends only on its own ``(n, p, trial)``; adding trials or
sizes never changes existing rows.
"""

from __future__ import annotations

import csv
import hashlib
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from typing import Iterable, List, Optional, Sequence

import numpy as np

from .bounds import (
    DEFAULT_COLOR_EXACT_N,
    DEFAULT_EXACT_BUDGET,
    DEFAULT_INDSET_EXACT_N,
    InvariantViolation,
    clique_cover_upper_bound,
    compute_bounds,
)
from .field import F2, FieldSpec
from .graph import DiGraph, sample_gnp, shift_with_drops

SEED_MASK = (1 << 64) - 1


def derive_seed(seed: int, n: int, p: float, trial: int) -> int:
    tag = f"{n}|{float(p).hex()}|{trial}".encode("ascii")
    h = int.from_bytes(hashlib.blake2b(tag, digest_size=8).digest(), "little")
    return (seed ^ h) & SEED_MASK


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _fmt_time(value: Optional[float]) -> str:
    return "" if value is None else f"{value:.3f}"


def write_csv(rows: Sequence, out=None, time_columns: Sequence[str] = ()) -> str:
    """Render dataclass rows as CSV (header, LF endings); write to ``out`` if given."""
    if not rows:
        raise ValueError("no rows to write")
    names = [f.name for f in fields(rows[0])]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(names)
    for r in rows:
        d = asdict(r)
        w.writerow([_fmt_time(d[k]) if k in time_columns else _fmt(d[k]) for k in names])
    text = buf.getvalue()
    if out is not None:
        if hasattr(out, "write"):
            out.write(text)
        else:
            with open(out, "w", newline="\n", encoding="ascii") as fh:
                fh.write(text)
    return text


# ---------------------------------------------------------------- scaling


@dataclass
class ScalingRow:
    n: int
    p: float
    seed: int
    trial: int
    arc_count: int
    lower_sparsity: int
    lower_indset: int
    indset_method: str
    upper_clique_cover: int
    cover_method: str
    exact: Optional[int]
    exact_status: str
    t_lower_sparsity: Optional[float] = None
    t_lower_indset: Optional[float] = None
    t_upper_clique_cover: Optional[float] = None
    t_exact: Optional[float] = None


SCALING_TIME_COLUMNS = ("t_lower_sparsity", "t_lower_indset", "t_upper_clique_cover", "t_exact")


@dataclass(frozen=True)
class ScalingConfig:
    p: float
    trials: int
    seed: int = 0
    q: int = 2
    exact_budget: Optional[int] = DEFAULT_EXACT_BUDGET
    indset_exact_n: int = DEFAULT_INDSET_EXACT_N
    color_exact_n: int = DEFAULT_COLOR_EXACT_N
    time_limit: Optional[float] = 60.0
    timings: bool = False


def _scaling_trial(args) -> ScalingRow:
    n, trial, cfg = args
    s = derive_seed(cfg.seed, n, cfg.p, trial)
    G = sample_gnp(n, cfg.p, s)
    rep = compute_bounds(
        G,
        FieldSpec(cfg.q),
        exact_budget=cfg.exact_budget,
        indset_exact_n=cfg.indset_exact_n,
        color_exact_n=cfg.color_exact_n,
        time_limit=cfg.time_limit,
    )
    t = rep.seconds if cfg.timings else {}
    return ScalingRow(
        n=n,
        p=float(cfg.p),
        seed=s,
        trial=trial,
        arc_count=rep.arc_count,
        lower_sparsity=rep.lower_sparsity,
        lower_indset=rep.lower_indset,
        indset_method=rep.indset_method,
        upper_clique_cover=rep.upper_clique_cover,
        cover_method=rep.cover_method,
        exact=rep.exact,
        exact_status=rep.exact_status,
        t_lower_sparsity=t.get("lower_sparsity"),
        t_lower_indset=t.get("lower_indset"),
        t_upper_clique_cover=t.get("upper_clique_cover"),
        t_exact=t.get("exact"),
    )


def run_scaling(ns: Iterable[int], cfg: ScalingConfig, jobs: int = 1) -> List[ScalingRow]:
    """Sample G(n, p) ``cfg.trials`` times per size and bound each sample.

    Rows come back in (n, trial) order whatever ``jobs`` is. Wall times are
    recorded only with ``cfg.timings`` so that default output is reproducible.
    """
    ns = list(ns)
    if not ns or any(n < 1 for n in ns):
        raise ValueError("sizes must be positive")
    if not 0.0 < cfg.p < 1.0:
        raise ValueError("p must lie strictly between 0 and 1")
    if cfg.trials < 1:
        raise ValueError("need at least one trial")
    tasks = [(n, t, cfg) for n in ns for t in range(cfg.trials)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            rows = list(ex.map(_scaling_trial, tasks))
    else:
        rows = [_scaling_trial(t) for t in tasks]
    for r in rows:
        lower = max(r.lower_sparsity, r.lower_indset)
        if lower > r.upper_clique_cover:
            raise InvariantViolation(f"lower bound {lower} above upper bound in {r}")
    return rows


def cover_ratio(row: ScalingRow) -> float:
    """Clique-cover bound relative to n / log2 n."""
    return row.upper_clique_cover / (row.n / math.log2(row.n))


# ---------------------------------------------------------------- concentration


@dataclass
class ConcentrationReport:
    n: int
    p: float
    trials: int
    values: List[int]
    mean: float
    std: float
    normalized_std: float
    gate: float
    flagged: bool


@dataclass
class ConcentrationRow:
    n: int
    p: float
    trials: int
    mean: str
    std: str
    normalized_std: str
    gate: str
    flagged: bool


def run_concentration(
    n: int,
    p: float,
    trials: int,
    seed: int = 0,
    field: FieldSpec = F2,
    fixed_seed: bool = False,
    color_exact_n: int = DEFAULT_COLOR_EXACT_N,
) -> ConcentrationReport:
    """Spread of the clique-cover bound over independent samples of G(n, p).

    Changing the arcs out of one vertex moves the bound by at most one, so its
    standard deviation should be O(sqrt(n)); the report is flagged when it
    exceeds ``3 sqrt(n - 1)``. ``fixed_seed`` reuses ``seed`` for every trial.
    """
    if trials < 2:
        raise ValueError("need at least two trials")
    values = []
    for t in range(trials):
        s = seed if fixed_seed else derive_seed(seed, n, p, t)
        G = sample_gnp(n, p, s)
        values.append(clique_cover_upper_bound(G, color_exact_n, field).value)
    arr = np.array(values, dtype=float)
    std = float(arr.std(ddof=1))
    gate = 3 * math.sqrt(n - 1)
    return ConcentrationReport(
        n, float(p), trials, values, float(arr.mean()), std, std / math.sqrt(n - 1) if n > 1 else 0.0,
        gate, std > gate,
    )


def concentration_row(rep: ConcentrationReport) -> ConcentrationRow:
    return ConcentrationRow(
        rep.n, rep.p, rep.trials, f"{rep.mean:.6f}", f"{rep.std:.6f}",
        f"{rep.normalized_std:.6f}", f"{rep.gate:.6f}", rep.flagged,
    )


# ---------------------------------------------------------------- shift scan


@dataclass
class ShiftRow:
    shift: int
    arc_count: int
    dropped_loops: int
    lower_sparsity: int
    lower_indset: int
    upper_clique_cover: int
    exact: Optional[int]
    exact_status: str


@dataclass
class ShiftScan:
    rows: List[ShiftRow]
    max_lower: int
    min_upper: int


def run_shift_scan(
    G: DiGraph,
    field: FieldSpec = F2,
    budget: Optional[int] = None,
    indset_exact_n: int = DEFAULT_INDSET_EXACT_N,
    color_exact_n: int = DEFAULT_COLOR_EXACT_N,
    time_limit: Optional[float] = 60.0,
) -> ShiftScan:
    """Bound every cyclic shift of ``G``. Exploratory only: no asymptotic claim is made."""
    rows = []
    for i in range(G.n):
        H, dropped = shift_with_drops(G, i)
        rep = compute_bounds(
            H, field, exact_budget=budget, indset_exact_n=indset_exact_n,
            color_exact_n=color_exact_n, time_limit=time_limit,
        )
        rows.append(
            ShiftRow(i, rep.arc_count, dropped, rep.lower_sparsity, rep.lower_indset,
                     rep.upper_clique_cover, rep.exact, rep.exact_status)
        )
    best_lower = [max(r.lower_sparsity, r.lower_indset, r.exact or 0) for r in rows]
    uppers = [r.exact if r.exact is not None else r.upper_clique_cover for r in rows]
    return ShiftScan(rows, max(best_lower), min(uppers))
