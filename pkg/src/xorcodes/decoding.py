"""Decoding-probability metrics for binary erasure codes.

The central object is the decoding vector of an [n, k] generator matrix:
entry i is the probability that a uniformly random set of k+i received
columns has full rank k, i.e. that the k source packets are recoverable
from k+i survivors.  Entries are computed exactly (integer subset counts)
when the binomials involved are small enough, and estimated by uniform
subset sampling otherwise.  On top of that sit the erasure-channel success
probability, the analytic random-linear-code baseline, the MDS predicate,
and a Monte Carlo channel simulator used as an empirical cross-check.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from functools import lru_cache

import numpy as np

from .gf2 import BinaryMatrix, rank_batch

__all__ = [
    "DecodingVector",
    "ChannelPoint",
    "SimulationResult",
    "EXACT_ENUMERATION_LIMIT",
    "exact_vd",
    "sampled_vd",
    "p_success",
    "channel_sweep",
    "rlnc_P",
    "rlnc_vd",
    "is_mds",
    "simulate_ps",
    "vd_csv",
    "sweep_csv",
    "display_round",
]

# Refuse exact enumeration once any single C(n, m) grows past this.
EXACT_ENUMERATION_LIMIT = 2_000_000

# Cache full padded index arrays only for modest enumerations; the search
# loop recomputes the [13, 5] vector thousands of times.
_PLAN_CACHE_LIMIT = 200_000

_CHUNK = 65_536


class DecodingVector:
    """Per-excess-packet decoding probabilities of one [n, k] code.

    ``rho[i]`` is the probability of decoding from k+i received columns,
    for i in 0..n-k.  ``mode`` is "exact" (every entry an integer subset
    count over a binomial, or an analytic closed form) or "sampled"
    (entries estimated from uniform subsets, with per-entry standard
    errors; entries cheap enough to enumerate are computed exactly and
    flagged in ``exact_entries``).
    """

    __slots__ = ("n", "k", "rho", "mode", "counts", "totals", "samples", "stderr", "exact_entries")

    def __init__(self, n, k, rho, mode, counts=None, totals=None,
                 samples=None, stderr=None, exact_entries=None):
        if not 1 <= k <= n:
            raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
        r = np.asarray(rho, dtype=np.float64).copy()
        if r.shape != (n - k + 1,):
            raise ValueError(f"rho must have n - k + 1 = {n - k + 1} entries, got {r.shape}")
        if (r < 0).any() or (r > 1).any():
            raise ValueError("rho entries must lie in [0, 1]")
        if mode not in ("exact", "sampled"):
            raise ValueError(f"mode must be 'exact' or 'sampled', got {mode!r}")
        if mode == "sampled":
            if samples is None or stderr is None or exact_entries is None:
                raise ValueError("sampled vectors need samples, stderr and exact_entries")
            stderr = np.asarray(stderr, dtype=np.float64).copy()
            exact_entries = np.asarray(exact_entries, dtype=bool).copy()
            if stderr.shape != r.shape or exact_entries.shape != r.shape:
                raise ValueError("per-entry arrays must match rho length")
            stderr.flags.writeable = False
            exact_entries.flags.writeable = False
            samples = tuple(int(s) for s in samples)
        r.flags.writeable = False
        self.n = n
        self.k = k
        self.rho = r
        self.mode = mode
        self.counts = None if counts is None else tuple(int(c) for c in counts)
        self.totals = None if totals is None else tuple(int(t) for t in totals)
        self.samples = samples
        self.stderr = stderr
        self.exact_entries = exact_entries

    def __len__(self) -> int:
        return self.rho.shape[0]

    def __getitem__(self, i) -> float:
        return float(self.rho[i])

    def rounded(self, ndigits: int = 3) -> tuple[float, ...]:
        """The vector rounded half away from zero, as printed in tables."""
        return tuple(display_round(x, ndigits) for x in self.rho)

    def __repr__(self) -> str:
        body = ", ".join(f"{x:.3f}" for x in self.rho)
        return f"DecodingVector([{self.n},{self.k}] {self.mode}: {body})"


@dataclass(frozen=True)
class ChannelPoint:
    """Success and failure probability of one erasure-channel operating point."""

    p: float
    p_s: float
    p_u: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"erasure probability must be in [0, 1], got {self.p}")
        if not 0.0 <= self.p_s <= 1.0:
            raise ValueError(f"p_s out of [0, 1]: {self.p_s}")
        if abs(self.p_s + self.p_u - 1.0) > 1e-12:
            raise ValueError(f"p_s + p_u must equal 1, got {self.p_s + self.p_u}")


@dataclass(frozen=True)
class SimulationResult:
    """Monte Carlo estimate of the channel success probability."""

    p: float
    estimate: float
    stderr: float
    trials: int
    successes: int


def _comb_chunks(n: int, m: int, chunk: int = _CHUNK):
    """Yield (rows, m) index arrays covering all m-subsets of range(n) in order."""
    it = itertools.combinations(range(n), m)
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            return
        yield np.array(block, dtype=np.int64)


@lru_cache(maxsize=8)
def _enum_plan(n: int, k: int):
    """Padded index array covering every subset size k..n at once, or None if too big.

    Pad index n maps to an appended all-zero column, which cannot change rank.
    """
    total = sum(math.comb(n, m) for m in range(k, n + 1))
    if total > _PLAN_CACHE_LIMIT:
        return None
    idx = np.full((total, n), n, dtype=np.int16)
    sizes = np.empty(total, dtype=np.int16)
    at = 0
    for m in range(k, n + 1):
        for c in itertools.combinations(range(n), m):
            idx[at, :m] = c
            sizes[at] = m
            at += 1
    idx.flags.writeable = False
    sizes.flags.writeable = False
    return idx, sizes


def _count_full_rank(G: BinaryMatrix, sizes) -> dict[int, int]:
    """Exact number of full-rank column subsets of each requested size."""
    k, n = G.rows, G.cols
    packed = G.packed_columns()
    counts = dict.fromkeys(sizes, 0)
    plan = _enum_plan(n, k) if set(sizes) == set(range(k, n + 1)) else None
    if plan is not None:
        idx, subset_sizes = plan
        padded = np.vstack([packed, np.zeros((1, packed.shape[1]), dtype=np.uint64)])
        for start in range(0, idx.shape[0], _CHUNK):
            sl = slice(start, start + _CHUNK)
            full = rank_batch(padded[idx[sl]], k) == k
            for m in counts:
                counts[m] += int((full & (subset_sizes[sl] == m)).sum())
        return counts
    for m in sizes:
        for block in _comb_chunks(n, m):
            counts[m] += int((rank_batch(packed[block], k) == k).sum())
    return counts


def exact_vd(G: BinaryMatrix, max_subsets: int = EXACT_ENUMERATION_LIMIT) -> DecodingVector:
    """Exact decoding vector by full subset enumeration.

    Every entry is an integer ratio: full-rank (k+i)-subsets over C(n, k+i).
    Raises if any C(n, k+i) exceeds ``max_subsets``; use :func:`sampled_vd`
    for those codes.
    """
    k, n = G.rows, G.cols
    if k > n:
        raise ValueError(f"generator must have k <= n, got {k}x{n}")
    totals = [math.comb(n, m) for m in range(k, n + 1)]
    for m, t in zip(range(k, n + 1), totals):
        if t > max_subsets:
            raise ValueError(
                f"C({n},{m}) = {t} exceeds the enumeration limit {max_subsets}; "
                f"use sampled_vd for this code"
            )
    counts_by_size = _count_full_rank(G, range(k, n + 1))
    counts = [counts_by_size[m] for m in range(k, n + 1)]
    rho = np.array([c / t for c, t in zip(counts, totals)])
    return DecodingVector(n, k, rho, "exact", counts=counts, totals=totals)


def sampled_vd(G: BinaryMatrix, samples_per_entry: int, rng,
               max_subsets: int = EXACT_ENUMERATION_LIMIT) -> DecodingVector:
    """Decoding vector with sampled entries where enumeration is infeasible.

    Each oversized entry is estimated from ``samples_per_entry`` uniform
    (k+i)-subsets, with standard error sqrt(rho (1 - rho) / samples).
    Entries with C(n, k+i) <= ``max_subsets`` are enumerated exactly
    instead and flagged; their sample count is 0 and standard error 0.
    Deterministic for a fixed seed.
    """
    if samples_per_entry < 1:
        raise ValueError(f"samples_per_entry must be >= 1, got {samples_per_entry}")
    k, n = G.rows, G.cols
    if k > n:
        raise ValueError(f"generator must have k <= n, got {k}x{n}")
    gen = np.random.default_rng(rng)
    packed = G.packed_columns()
    entries = list(range(k, n + 1))
    exact_sizes = [m for m in entries if math.comb(n, m) <= max_subsets]
    exact_counts = _count_full_rank(G, exact_sizes) if exact_sizes else {}
    rho = np.empty(len(entries))
    stderr = np.zeros(len(entries))
    samples = [0] * len(entries)
    exact_flags = np.zeros(len(entries), dtype=bool)
    sample_chunk = 4096
    for i, m in enumerate(entries):
        if m in exact_counts:
            rho[i] = exact_counts[m] / math.comb(n, m)
            exact_flags[i] = True
            continue
        hits = 0
        done = 0
        while done < samples_per_entry:
            c = min(sample_chunk, samples_per_entry - done)
            # uniform m-subsets: the m smallest of n iid uniforms
            sel = np.argpartition(gen.random((c, n)), m, axis=1)[:, :m]
            hits += int((rank_batch(packed[sel], k) == k).sum())
            done += c
        est = hits / samples_per_entry
        rho[i] = est
        stderr[i] = math.sqrt(est * (1.0 - est) / samples_per_entry)
        samples[i] = samples_per_entry
    return DecodingVector(n, k, rho, "sampled", samples=samples, stderr=stderr,
                          exact_entries=exact_flags)


def _loss_term(n: int, i: int, p: float) -> float:
    """C(n, i) p^i (1-p)^(n-i), switching to logarithms for large n."""
    if n <= 60:
        return math.comb(n, i) * p**i * (1.0 - p) ** (n - i)
    if p == 0.0:
        return 1.0 if i == 0 else 0.0
    if p == 1.0:
        return 1.0 if i == n else 0.0
    logc = math.lgamma(n + 1) - math.lgamma(i + 1) - math.lgamma(n - i + 1)
    return math.exp(logc + i * math.log(p) + (n - i) * math.log1p(-p))


def p_success(vd: DecodingVector, p: float) -> ChannelPoint:
    """Channel success probability at erasure probability p.

    Failure aggregates two events: i <= n-k packets lost but the surviving
    n-i columns undecodable (weight 1 - rho[n-k-i]), and more than n-k
    packets lost (always undecodable).
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"erasure probability must be in [0, 1], got {p}")
    n, k = vd.n, vd.k
    rho = vd.rho
    p_u1 = 0.0
    for i in range(0, n - k + 1):
        p_u1 += _loss_term(n, i, p) * (1.0 - float(rho[n - k - i]))
    p_u2 = 0.0
    for i in range(n - k + 1, n + 1):
        p_u2 += _loss_term(n, i, p)
    p_u = min(max(p_u1 + p_u2, 0.0), 1.0)
    return ChannelPoint(p=p, p_s=1.0 - p_u, p_u=p_u)


def channel_sweep(vd: DecodingVector, p_values) -> list[ChannelPoint]:
    """Evaluate the success probability over a grid of erasure probabilities."""
    return [p_success(vd, float(p)) for p in p_values]


def rlnc_P(I: int, k: int, q: int) -> float:
    """Probability that I random GF(q) combinations of k packets have full rank.

    Zero for I < k, else the product over j < k of (1 - q^(j - I)).
    """
    if q < 2:
        raise ValueError(f"field size must be >= 2, got {q}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if I < k:
        return 0.0
    out = 1.0
    for j in range(k):
        out *= 1.0 - float(q) ** (j - I)
    return out


def rlnc_vd(n: int, k: int, q: int) -> DecodingVector:
    """Analytic decoding vector of a random [n, k] code over GF(q)."""
    if n < k:
        raise ValueError(f"need n >= k, got n={n}, k={k}")
    rho = np.array([rlnc_P(k + i, k, q) for i in range(n - k + 1)])
    return DecodingVector(n, k, rho, "exact")


def is_mds(vd: DecodingVector) -> bool:
    """True iff every entry equals 1 exactly; requires an exact-mode vector."""
    if vd.mode != "exact":
        raise ValueError("MDS predicate requires exact V_D")
    if vd.counts is not None:
        return all(c == t for c, t in zip(vd.counts, vd.totals))
    return bool((vd.rho == 1.0).all())


def simulate_ps(G: BinaryMatrix, p: float, trials: int, rng) -> SimulationResult:
    """Monte Carlo channel experiment: erase columns iid, test full rank.

    Runs ``trials`` independent experiments; success means the surviving
    columns still span all k rows.  Deterministic for a fixed seed.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"erasure probability must be in [0, 1], got {p}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    gen = np.random.default_rng(rng)
    k, n = G.rows, G.cols
    packed = G.packed_columns()
    successes = 0
    done = 0
    while done < trials:
        c = min(_CHUNK, trials - done)
        keep = gen.random((c, n)) >= p
        sets = keep.astype(np.uint64)[:, :, None] * packed[None, :, :]
        successes += int((rank_batch(sets, k) == k).sum())
        done += c
    est = successes / trials
    se = math.sqrt(est * (1.0 - est) / trials)
    return SimulationResult(p=p, estimate=est, stderr=se, trials=trials, successes=successes)


def _fmt(x: float) -> str:
    """Float with 9 significant digits; whole values keep a .0 marker."""
    s = format(float(x), ".9g")
    if "." not in s and "e" not in s and "E" not in s:
        s += ".0"
    return s


def vd_csv(vd: DecodingVector) -> str:
    """CSV rendering: header ``i,rho,mode,stderr``, one row per entry."""
    lines = ["i,rho,mode,stderr"]
    for i in range(len(vd)):
        if vd.mode == "exact" or vd.exact_entries[i]:
            mode, se = "exact", 0.0
        else:
            mode, se = "sampled", float(vd.stderr[i])
        lines.append(f"{i},{_fmt(vd.rho[i])},{mode},{_fmt(se)}")
    return "\n".join(lines) + "\n"


def sweep_csv(points) -> str:
    """CSV rendering: header ``p,p_s,p_u``, one row per operating point."""
    lines = ["p,p_s,p_u"]
    for pt in points:
        lines.append(f"{_fmt(pt.p)},{_fmt(pt.p_s)},{_fmt(pt.p_u)}")
    return "\n".join(lines) + "\n"


def display_round(x: float, ndigits: int = 3) -> float:
    """Round half away from zero, the convention used for printed tables."""
    q = Decimal(1).scaleb(-ndigits)
    return float(Decimal(repr(float(x))).quantize(q, rounding=ROUND_HALF_UP))
