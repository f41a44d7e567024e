"""Seeded instance generation and battery orchestration.

Generation stays entirely inside the Gaussian rationals.  EP instances come
from exact orthogonal projections: P = M0 (M0* M0)^-1 M0* for a random
full-column-rank M0 is exactly self-adjoint and idempotent, so a candidate
P M P whose rank equals rank(P) has range and kernel pinned to those of P
and is therefore EP.  No eigendecomposition, no rounding.

Reports are plain data with a stable JSON field order so that identical
seeds give byte-identical files (the elapsed field excepted).
"""

from __future__ import annotations

import json
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .characterizations import (
    EPInstance,
    prop52_battery,
    thm32_battery,
    thm34_battery,
    thm35_battery,
    thm37_battery,
    thm39_battery,
    thm310_battery,
    thm41_battery,
    thm42_battery,
    thm55_battery,
    thm56_battery,
)
from .exactnum import GaussianRational
from .linalg import MatrixQ, conj_transpose, inverse, rank
from .pnorms import PNorm
from .pseudoinverse import is_ep

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MAX_ATTEMPTS = 1000

KINDS = ("ep", "non_ep", "arbitrary", "invertible")

SUPPORTED_THEOREMS = ("3.2", "3.4", "3.5", "3.7", "3.9", "3.10",
                      "4.1", "4.2", "5.2", "5.5", "5.6")


class GeneratorError(ValueError):
    """Invalid or infeasible generator configuration, or rejection budget exhausted."""


def splitmix64(state: int) -> int:
    """One output of the splitmix64 stream; used to derive independent child seeds."""
    z = (state + _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def child_seed(master: int, index: int) -> int:
    """Deterministic per-index seed so parallel and serial runs agree."""
    return splitmix64((master + index * _GOLDEN) & _MASK64)


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int
    n: int
    rank: Optional[int] = None
    entry_bound: int = 3
    kind: str = "arbitrary"

    def __post_init__(self):
        if self.n < 0:
            raise GeneratorError("size must be nonnegative")
        if self.entry_bound < 1:
            raise GeneratorError("entry_bound must be at least 1")
        if self.rank is not None and not (0 <= self.rank <= self.n):
            raise GeneratorError(f"rank {self.rank} out of range for size {self.n}")
        if self.kind not in KINDS:
            raise GeneratorError(f"unknown kind {self.kind!r}")


def _rand_fraction(rng, bound: int) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def _rand_scalar(rng, bound: int, use_complex: bool) -> GaussianRational:
    re = _rand_fraction(rng, bound)
    im = _rand_fraction(rng, bound) if use_complex else Fraction(0)
    return GaussianRational(re, im)


def _rand_matrix(rng, rows: int, cols: int, bound: int, use_complex: bool) -> MatrixQ:
    return MatrixQ(rows, cols,
                   [_rand_scalar(rng, bound, use_complex)
                    for _ in range(rows * cols)])


def _rand_rank_r(rng, n: int, r: int, bound: int, use_complex: bool) -> MatrixQ:
    """Random n x n matrix of exact rank r, as a full-rank product."""
    for _ in range(_MAX_ATTEMPTS):
        left = _rand_matrix(rng, n, r, bound, use_complex)
        right = _rand_matrix(rng, r, n, bound, use_complex)
        m = left @ right
        if rank(m) == r:
            return m
    raise GeneratorError(f"could not draw a rank-{r} matrix of size {n}")


def _orthogonal_projection(rng, n: int, r: int, bound: int, use_complex: bool) -> MatrixQ:
    """Exact orthogonal projection of rank r: M0 (M0* M0)^-1 M0*."""
    for _ in range(_MAX_ATTEMPTS):
        m0 = _rand_matrix(rng, n, r, bound, use_complex)
        gram = conj_transpose(m0) @ m0
        if rank(gram) != r:
            continue
        return m0 @ inverse(gram) @ conj_transpose(m0)
    raise GeneratorError(f"could not draw a rank-{r} projection of size {n}")


def gen_matrix(cfg: GeneratorConfig, *, size_cap: int = 8) -> MatrixQ:
    """Seed-deterministic random matrix of the configured kind.

    size_cap bounds exact-arithmetic cost; raise it knowingly for big runs.
    """
    if cfg.n > size_cap:
        raise GeneratorError(f"size {cfg.n} exceeds the size cap {size_cap}")
    rng = random.Random(cfg.seed & _MASK64)
    use_complex = rng.random() < 0.5
    n, bound = cfg.n, cfg.entry_bound

    if cfg.kind == "invertible":
        if cfg.rank is not None and cfg.rank != n:
            raise GeneratorError("invertible draw requires rank = size")
        for _ in range(_MAX_ATTEMPTS):
            m = _rand_matrix(rng, n, n, bound, use_complex)
            if rank(m) == n:
                return m
        raise GeneratorError(f"could not draw an invertible matrix of size {n}")

    if cfg.kind == "ep":
        r = cfg.rank if cfg.rank is not None else rng.randint(0, n)
        proj = _orthogonal_projection(rng, n, r, bound, use_complex)
        for _ in range(_MAX_ATTEMPTS):
            cand = proj @ _rand_matrix(rng, n, n, bound, use_complex) @ proj
            if rank(cand) == r:
                return cand
        raise GeneratorError(f"could not hit rank {r} for an ep draw of size {n}")

    if cfg.kind == "non_ep":
        # a 1x1 (or rank-0 / full-rank) matrix is always EP
        if n < 2:
            raise GeneratorError("every matrix of size < 2 is ep; non_ep draw infeasible")
        if cfg.rank is not None and not (1 <= cfg.rank <= n - 1):
            raise GeneratorError("non_ep draw needs a strictly intermediate rank")
        for _ in range(_MAX_ATTEMPTS):
            r = cfg.rank if cfg.rank is not None else rng.randint(1, n - 1)
            cand = _rand_rank_r(rng, n, r, bound, use_complex)
            if not is_ep(cand):
                return cand
        raise GeneratorError(f"could not draw a non-ep matrix of size {n}")

    # arbitrary
    if cfg.rank is not None:
        return _rand_rank_r(rng, n, cfg.rank, bound, use_complex)
    return _rand_matrix(rng, n, n, bound, use_complex)


def make_instance(a: MatrixQ) -> EPInstance:
    """Factorize and validate; see EPInstance.from_matrix."""
    return EPInstance.from_matrix(a)


def gen_block_pair(cfg: GeneratorConfig, *, size_cap: int = 8):
    """(t1, j) pair for the conjugated-block battery.

    j is invertible n x n, drawn as an exact generalized permutation with
    unit entries (an isometry for every supported norm) on a seeded coin
    flip, otherwise as an arbitrary invertible matrix.  t1 is an invertible
    block of seeded size rank (or random 0..n when rank is unset).
    """
    if cfg.n > size_cap:
        raise GeneratorError(f"size {cfg.n} exceeds the size cap {size_cap}")
    rng = random.Random(cfg.seed & _MASK64)
    use_complex = rng.random() < 0.5
    n, bound = cfg.n, cfg.entry_bound
    k = cfg.rank if cfg.rank is not None else rng.randint(0, n)
    if not (0 <= k <= n):
        raise GeneratorError(f"block size {k} out of range for size {n}")

    if rng.random() < 0.5:
        perm = list(range(n))
        rng.shuffle(perm)
        units = [GaussianRational(Fraction(1), Fraction(0)),
                 GaussianRational(Fraction(-1), Fraction(0)),
                 GaussianRational(Fraction(0), Fraction(1)),
                 GaussianRational(Fraction(0), Fraction(-1))]
        rows = [[units[rng.randrange(4)] if j == perm[i] else 0 for j in range(n)]
                for i in range(n)]
        j_mat = MatrixQ.from_rows(rows) if n else MatrixQ.zeros(0, 0)
    else:
        j_mat = None
        for _ in range(_MAX_ATTEMPTS):
            cand = _rand_matrix(rng, n, n, bound, use_complex)
            if rank(cand) == n:
                j_mat = cand
                break
        if j_mat is None:
            raise GeneratorError(f"could not draw an invertible basis map of size {n}")

    t1 = None
    for _ in range(_MAX_ATTEMPTS):
        cand = _rand_matrix(rng, k, k, bound, use_complex)
        if rank(cand) == k:
            t1 = cand
            break
    if t1 is None:
        raise GeneratorError(f"could not draw an invertible block of size {k}")
    return t1, j_mat


_INSTANCE_BATTERIES = {
    "3.2": thm32_battery,
    "3.4": thm34_battery,
    "3.5": thm35_battery,
    "3.7": thm37_battery,
    "3.9": thm39_battery,
    "3.10": thm310_battery,
}

_MATRIX_BATTERIES = {
    "4.1": thm41_battery,
    "4.2": thm42_battery,
    "5.5": thm55_battery,
    "5.6": thm56_battery,
}


@dataclass(frozen=True)
class BatteryReport:
    theorem_id: str
    trials: int
    per_statement_truth_counts: dict
    equivalence_violations: tuple
    inconclusive_count: int
    seed: int
    elapsed: float

    @property
    def failed(self) -> bool:
        return len(self.equivalence_violations) > 0

    def to_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "trials": self.trials,
            "per_statement_truth_counts": self.per_statement_truth_counts,
            "equivalence_violations": list(self.equivalence_violations),
            "inconclusive_count": self.inconclusive_count,
            "seed": self.seed,
            "failed": self.failed,
            "elapsed": self.elapsed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _thread_count() -> int:
    raw = os.environ.get("EPKIT_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_battery(theorem_id: str, cfgs, *, seed: Optional[int] = None,
                norm: Optional[PNorm] = None, size_cap: int = 8) -> BatteryReport:
    """Generate one instance per config, evaluate the battery, aggregate.

    Within-instance truth uniformity is the tested equivalence; a mismatch
    is recorded as a violation (first offending statement pair), never
    thrown.  Inconclusive results are counted and excluded from uniformity.
    """
    if theorem_id not in SUPPORTED_THEOREMS:
        raise ValueError(f"unknown theorem id {theorem_id!r}; "
                         f"supported: {', '.join(SUPPORTED_THEOREMS)}")
    norm = norm if norm is not None else PNorm(2)
    cfgs = list(cfgs)
    started = time.perf_counter()

    if theorem_id == "5.2":
        inputs = [gen_block_pair(cfg, size_cap=size_cap) for cfg in cfgs]

        def evaluate(pair):
            t1, j = pair
            return prop52_battery(t1, j, norm)
    elif theorem_id in _INSTANCE_BATTERIES:
        battery = _INSTANCE_BATTERIES[theorem_id]
        inputs = [gen_matrix(cfg, size_cap=size_cap) for cfg in cfgs]

        def evaluate(m):
            return battery(make_instance(m))
    else:
        battery = _MATRIX_BATTERIES[theorem_id]
        inputs = [gen_matrix(cfg, size_cap=size_cap) for cfg in cfgs]
        evaluate = battery

    threads = min(_thread_count(), max(1, len(inputs)))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            all_results = list(pool.map(evaluate, inputs))
    else:
        all_results = [evaluate(x) for x in inputs]

    counts: dict = {}
    violations = []
    inconclusive = 0
    for idx, results in enumerate(all_results):
        ref_truth = None
        ref_sid = None
        recorded = False
        for r in results:
            slot = counts.setdefault(r.statement_id,
                                     {"true": 0, "false": 0, "inconclusive": 0})
            if r.truth is None:
                slot["inconclusive"] += 1
                inconclusive += 1
                continue
            slot["true" if r.truth else "false"] += 1
            if ref_truth is None:
                ref_truth, ref_sid = r.truth, r.statement_id
            elif r.truth != ref_truth and not recorded:
                violations.append({"instance": idx,
                                   "pair": [ref_sid, r.statement_id]})
                recorded = True

    report_seed = seed if seed is not None else (cfgs[0].seed if cfgs else 0)
    return BatteryReport(
        theorem_id=theorem_id,
        trials=len(inputs),
        per_statement_truth_counts=counts,
        equivalence_violations=tuple(violations),
        inconclusive_count=inconclusive,
        seed=report_seed,
        elapsed=time.perf_counter() - started,
    )
