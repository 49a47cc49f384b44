"""Stochastic hill-climbing search for good binary erasure codes.

Two initializations are supported: a uniformly random full-rank generator,
and a structured one whose first k columns come from a balanced nonsingular
incidence matrix with an all-ones column appended.  Both are improved by
repeated single-bit flips, accepting only strict improvements, and many
independent restarts are reduced to the set of mutually nondominated
decoding vectors.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .decoding import EXACT_ENUMERATION_LIMIT, DecodingVector, exact_vd, p_success, sampled_vd
from .gf2 import BinaryMatrix, is_nonsingular, random_matrix, rank
from .latin import incidence_matrix, random_nonsingular_rectangle

__all__ = [
    "CodeCandidate",
    "SearchConfig",
    "init_random",
    "init_balanced",
    "neighbor",
    "climb",
    "search_family",
    "dominates",
]


@dataclass(frozen=True)
class CodeCandidate:
    """One evaluated generator matrix with its decoding vector and score.

    ``provenance`` records how the candidate was produced: algorithm number,
    seeds, and for structured candidates the source rectangle and column
    weight, enough to regenerate it.
    """

    G: BinaryMatrix
    vd: DecodingVector
    score: float
    provenance: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SearchConfig:
    """Search parameters shared by every restart.

    The objective is the channel success probability at ``reference_p``
    unless explicit per-entry ``weights`` are given, in which case the
    score is the weighted sum of decoding-vector entries.
    """

    n: int
    k: int
    k1: int = 3
    reference_p: float = 0.1
    weights: tuple[float, ...] | None = None
    attempts: int = 100
    max_climb_steps: int = 200
    stagnation_limit: int = 40
    master_seed: int = 0
    vd_mode: str = "exact"
    vd_samples: int = 10_000
    max_subsets: int = EXACT_ENUMERATION_LIMIT

    def __post_init__(self):
        if not self.n > self.k >= 1:
            raise ValueError(f"need n > k >= 1, got n={self.n}, k={self.k}")
        if self.k1 % 2 == 0:
            raise ValueError(f"k1 must be odd, got {self.k1}")
        if not 1 <= self.k1 <= self.k:
            raise ValueError(f"need 1 <= k1 <= k, got k1={self.k1}, k={self.k}")
        if self.attempts < 1:
            raise ValueError(f"attempts must be >= 1, got {self.attempts}")
        if self.max_climb_steps < 0:
            raise ValueError(f"max_climb_steps must be >= 0, got {self.max_climb_steps}")
        if self.stagnation_limit < 1:
            raise ValueError(f"stagnation_limit must be >= 1, got {self.stagnation_limit}")
        if not 0.0 <= self.reference_p <= 1.0:
            raise ValueError(f"reference_p must be in [0, 1], got {self.reference_p}")
        if self.vd_mode not in ("exact", "sampled"):
            raise ValueError(f"vd_mode must be 'exact' or 'sampled', got {self.vd_mode!r}")
        if self.weights is not None:
            object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
            if len(self.weights) != self.n - self.k + 1:
                raise ValueError(
                    f"weights must have n - k + 1 = {self.n - self.k + 1} entries, "
                    f"got {len(self.weights)}"
                )


def _evaluate(G: BinaryMatrix, cfg: SearchConfig, rng) -> tuple[DecodingVector, float]:
    if cfg.vd_mode == "exact":
        vd = exact_vd(G, max_subsets=cfg.max_subsets)
    else:
        vd = sampled_vd(G, cfg.vd_samples, rng, max_subsets=cfg.max_subsets)
    if cfg.weights is not None:
        score = float(np.dot(cfg.weights, vd.rho))
    else:
        score = p_success(vd, cfg.reference_p).p_s
    return vd, score


def init_random(cfg: SearchConfig, rng) -> CodeCandidate:
    """Uniformly random full-rank generator matrix, resampled until rank k."""
    gen = np.random.default_rng(rng)
    for _ in range(1000):
        G = random_matrix(cfg.k, cfg.n, gen)
        if rank(G) == cfg.k:
            vd, score = _evaluate(G, cfg, gen)
            return CodeCandidate(G, vd, score, {"algorithm": 1, "climb_steps": 0})
    raise RuntimeError(f"no full-rank {cfg.k}x{cfg.n} matrix in 1000 draws")


def init_balanced(cfg: SearchConfig, rng) -> CodeCandidate:
    """Structured start: balanced nonsingular block, all-ones column, random tail.

    Column j of the first block reads off the symbols appearing in column
    j+1 of the source rectangle, so the block inherits row and column sums
    k1 and is nonsingular by construction.
    """
    if cfg.n < cfg.k + 1:
        raise ValueError(f"need n >= k + 1, got n={cfg.n}, k={cfg.k}")
    gen = np.random.default_rng(rng)
    R = random_nonsingular_rectangle(cfg.k, cfg.k1, gen)
    a = np.zeros((cfg.k, cfg.n), dtype=np.uint8)
    a[:, : cfg.k] = incidence_matrix(R).array.T
    a[:, cfg.k] = 1
    if cfg.n > cfg.k + 1:
        a[:, cfg.k + 1 :] = gen.integers(0, 2, size=(cfg.k, cfg.n - cfg.k - 1), dtype=np.uint8)
    G = BinaryMatrix(a)
    vd, score = _evaluate(G, cfg, gen)
    latin = ";".join(",".join(str(s) for s in row) for row in R.cells)
    prov = {"algorithm": 2, "k1": cfg.k1, "latin": latin, "climb_steps": 0}
    return CodeCandidate(G, vd, score, prov)


def _mutable_positions(cfg: SearchConfig, algorithm: int) -> int:
    if algorithm == 1:
        return cfg.k * cfg.n
    return cfg.k * (cfg.n - cfg.k - 1)


def neighbor(c: CodeCandidate, cfg: SearchConfig, rng) -> CodeCandidate:
    """Flip exactly one bit of the mutable region and re-evaluate.

    Structured candidates keep their first k + 1 columns fixed; the flip
    lands in the random tail only.
    """
    gen = np.random.default_rng(rng)
    algorithm = c.provenance.get("algorithm", 1)
    count = _mutable_positions(cfg, algorithm)
    if count == 0:
        raise ValueError("no mutable positions: the random tail is empty")
    idx = int(gen.integers(0, count))
    row = idx % cfg.k
    col = idx // cfg.k if algorithm == 1 else cfg.k + 1 + idx // cfg.k
    a = c.G.to_array()
    a[row, col] ^= 1
    G = BinaryMatrix(a)
    vd, score = _evaluate(G, cfg, gen)
    return CodeCandidate(G, vd, score, dict(c.provenance))


def _improves(cand: CodeCandidate, cur: CodeCandidate) -> bool:
    if cand.score != cur.score:
        return cand.score > cur.score
    return tuple(cand.vd.rho) > tuple(cur.vd.rho)


def climb(start: CodeCandidate, cfg: SearchConfig, rng) -> CodeCandidate:
    """Hill climb by single-bit flips, strict improvement only.

    A proposal is accepted iff its score is larger, or equal with a
    lexicographically larger decoding vector.  Stops after
    ``stagnation_limit`` consecutive rejections or ``max_climb_steps``
    proposals in total, whichever comes first.
    """
    gen = np.random.default_rng(rng)
    cur = start
    accepted = 0
    proposals = 0
    rejections = 0
    while proposals < cfg.max_climb_steps and rejections < cfg.stagnation_limit:
        cand = neighbor(cur, cfg, gen)
        proposals += 1
        if _improves(cand, cur):
            cur = cand
            accepted += 1
            rejections = 0
        else:
            rejections += 1
    if accepted == 0:
        return start
    prov = dict(cur.provenance)
    prov["climb_steps"] = prov.get("climb_steps", 0) + accepted
    return CodeCandidate(cur.G, cur.vd, cur.score, prov)


def _check_structured(c: CodeCandidate, cfg: SearchConfig) -> None:
    a = c.G.array
    block = a[:, : cfg.k]
    if (block.sum(axis=0) != cfg.k1).any() or (block.sum(axis=1) != cfg.k1).any():
        raise RuntimeError("structured candidate lost its balanced first block")
    if not is_nonsingular(BinaryMatrix(block)):
        raise RuntimeError("structured candidate's first block became singular")
    if (a[:, cfg.k] != 1).any():
        raise RuntimeError("structured candidate lost its all-ones column")


def _rho_dominates(a: DecodingVector, b: DecodingVector) -> bool:
    if a.counts is not None and b.counts is not None and a.totals == b.totals:
        return all(ca >= cb for ca, cb in zip(a.counts, b.counts))
    return bool((a.rho >= b.rho).all())


def dominates(a: DecodingVector, b: DecodingVector) -> bool:
    """Componentwise dominance certificate between two exact decoding vectors.

    True iff every entry of ``a`` is at least the matching entry of ``b``;
    by the monotonicity of the channel success probability this transfers
    to p_s at every erasure probability.
    """
    if a.n != b.n or a.k != b.k:
        raise ValueError(f"dimension mismatch: [{a.n},{a.k}] vs [{b.n},{b.k}]")
    if a.mode != "exact" or b.mode != "exact":
        raise ValueError("dominance requires exact V_D on both sides")
    return _rho_dominates(a, b)


def _run_restart(cfg: SearchConfig, algorithm: int, idx: int) -> CodeCandidate:
    gen = np.random.default_rng(np.random.SeedSequence(cfg.master_seed, spawn_key=(idx,)))
    start = init_balanced(cfg, gen) if algorithm == 2 else init_random(cfg, gen)
    c = climb(start, cfg, gen)
    if algorithm == 2:
        _check_structured(c, cfg)
    prov = dict(c.provenance)
    prov["master_seed"] = cfg.master_seed
    prov["restart"] = idx
    return CodeCandidate(c.G, c.vd, c.score, prov)


def search_family(cfg: SearchConfig, algorithm: int = 2, threads: int = 1) -> list[CodeCandidate]:
    """Run independent climbed restarts and keep the nondominated vectors.

    Each restart draws its stream from (master_seed, restart index), so the
    result is identical for any thread count.  Candidates whose decoding
    vector is dominated by (or equal to) an earlier restart's are dropped;
    the survivors come back sorted by score, best first.
    """
    if algorithm not in (1, 2):
        raise ValueError(f"algorithm must be 1 or 2, got {algorithm}")
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    if threads == 1:
        results = [_run_restart(cfg, algorithm, i) for i in range(cfg.attempts)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda i: _run_restart(cfg, algorithm, i),
                                    range(cfg.attempts)))
    family: list[CodeCandidate] = []
    for c in results:
        if any(_rho_dominates(f.vd, c.vd) for f in family):
            continue
        family = [f for f in family if not _rho_dominates(c.vd, f.vd)]
        family.append(c)
    family.sort(key=lambda c: -c.score)
    return family
