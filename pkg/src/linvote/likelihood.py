"""Probabilistic analysis of rule and axiom events.

Ballots are drawn independently: alternative i is approved with probability
p_i, independently across alternatives and voters. Exact event probabilities
enumerate ballot-count compositions with rational arithmetic; Monte Carlo
estimation uses counter-based RNG streams so results are reproducible and
independent of thread scheduling (trial t always draws from the stream keyed
by (seed, t), and ballot j always sits at the same offset in that stream).
"""

from __future__ import annotations

import math
import sys
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import (
    DomainError,
    Histogram,
    Profile,
    Space,
    binomial,
    profile_from_masks,
    sort_committees,
)
from .axioms import gst_satisfies
from .mappings import property_at

_MASK64 = (1 << 64) - 1

REGIME_EXP = "exp-to-limit"
REGIME_POLY = "polynomial"
REGIME_DEGENERATE = "degenerate"

DECAY_INV_SQRT = "consistent-inverse-sqrt"
DECAY_EXP = "consistent-exp"
DECAY_INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class IndependentApprovalDist:
    """Product distribution over ballots; p[i] approves alternative i+1."""

    p: tuple

    def __post_init__(self):
        probs = tuple(Fraction(x) for x in self.p)
        if not 1 <= len(probs) <= 16:
            raise DomainError("need between 1 and 16 approval probabilities")
        for x in probs:
            if not 0 <= x <= 1:
                raise DomainError(f"approval probability {x} outside [0, 1]")
        object.__setattr__(self, "p", probs)

    @property
    def m(self):
        return len(self.p)

    def interior(self):
        return all(0 < x < 1 for x in self.p)


def impartial_culture(m, p=Fraction(1, 2)):
    return IndependentApprovalDist((Fraction(p),) * m)


def ballot_probability(dist, ballot_mask):
    prob = Fraction(1)
    for i, p_i in enumerate(dist.p):
        prob *= p_i if ballot_mask >> i & 1 else 1 - p_i
    return prob


def ballot_probability_vector(dist):
    return [ballot_probability(dist, a) for a in range(1 << dist.m)]


def top_k_committees(dist, k):
    """Committees consisting of k most-probable alternatives (all tie-breaks)."""
    if not 1 <= k <= dist.m:
        raise DomainError(f"k={k} outside 1..{dist.m}")
    ranked = sorted(dist.p, reverse=True)
    threshold = ranked[k - 1]
    must = [i + 1 for i, x in enumerate(dist.p) if x > threshold]
    may = [i + 1 for i, x in enumerate(dist.p) if x == threshold]
    need = k - len(must)
    from itertools import combinations

    return sort_committees(
        tuple(sorted(must + list(extra))) for extra in combinations(may, need)
    )


def _trial_generator(seed, trial):
    key = np.array([seed & _MASK64, trial & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def sample_ballot_masks(dist, n, seed, trial=0):
    """n ballots for one trial, as a list of int masks."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    rng = _trial_generator(seed, trial)
    uniforms = rng.random((n, dist.m))
    thresholds = np.array([float(x) for x in dist.p])
    powers = np.array([1 << i for i in range(dist.m)], dtype=np.int64)
    masks = ((uniforms < thresholds) * powers).sum(axis=1)
    return [int(a) for a in masks]


def sample_histogram(dist, n, seed, trial=0):
    return Histogram(dist.m, Counter(sample_ballot_masks(dist, n, seed, trial)))


def sample_profile(dist, n, seed, k=1, trial=0):
    space = Space(dist.m, k)
    return profile_from_masks(space, sample_ballot_masks(dist, n, seed, trial))


def exact_event_probability(predicate, dist, n, limit=1_000_000):
    """Exact probability that predicate holds for an n-voter histogram.

    Enumerates compositions of n over the positive-probability ballot types;
    refuses when the composition count exceeds limit.
    """
    if n < 1:
        raise DomainError("n must be positive")
    probs = ballot_probability_vector(dist)
    active = [a for a in range(1 << dist.m) if probs[a] > 0]
    arity = len(active)
    outcomes = binomial(n + arity - 1, arity - 1)
    if outcomes > limit:
        raise DomainError(
            f"{outcomes} compositions exceed exact-enumeration limit {limit}"
        )
    total = Fraction(0)
    counts = {}

    def rec(idx, remaining, coeff, prob):
        nonlocal total
        ballot = active[idx]
        if idx == arity - 1:
            weight = coeff * prob * probs[ballot] ** remaining
            if remaining:
                counts[ballot] = remaining
            if predicate(Histogram(dist.m, counts)):
                total += weight
            counts.pop(ballot, None)
            return
        p_power = Fraction(1)
        for c in range(remaining + 1):
            if c:
                counts[ballot] = c
            rec(idx + 1, remaining - c, coeff * binomial(remaining, c),
                prob * p_power)
            p_power *= probs[ballot]
        counts.pop(ballot, None)

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, arity + 500))
    try:
        rec(0, n, 1, Fraction(1))
    finally:
        sys.setrecursionlimit(old_limit)
    return total


def hoeffding_halfwidth(trials, confidence=0.95):
    if trials < 1:
        raise DomainError("trials must be positive")
    alpha = 1 - confidence
    return math.sqrt(math.log(2 / alpha) / (2 * trials))


@dataclass(frozen=True)
class McReport:
    n: int
    trials: int
    hits: int
    estimate: float
    ci_low: float
    ci_high: float
    halfwidth: float
    seed: int


def _chunk_hits(predicate, dist, n, seed, lo, hi):
    hits = 0
    for trial in range(lo, hi):
        if predicate(sample_histogram(dist, n, seed, trial)):
            hits += 1
    return hits


def mc_event_probability(
    predicate, dist, n, trials, seed, threads=1, confidence=0.95
):
    """Monte Carlo estimate with a Hoeffding confidence interval.

    The hit count is a sum over per-trial indicators whose streams depend only
    on (seed, trial), so the result is byte-identical for any thread count.
    """
    if trials < 1:
        raise DomainError("trials must be positive")
    if threads < 1:
        raise DomainError("threads must be positive")
    if threads == 1:
        hits = _chunk_hits(predicate, dist, n, seed, 0, trials)
    else:
        chunk = -(-trials // threads)
        bounds = [
            (lo, min(lo + chunk, trials)) for lo in range(0, trials, chunk)
        ]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [
                pool.submit(_chunk_hits, predicate, dist, n, seed, lo, hi)
                for lo, hi in bounds
            ]
            hits = sum(f.result() for f in futures)
    estimate = hits / trials
    hw = hoeffding_halfwidth(trials, confidence)
    return McReport(
        n,
        trials,
        hits,
        estimate,
        max(0.0, estimate - hw),
        min(1.0, estimate + hw),
        hw,
        seed,
    )


def recess_cone_contains(constraints, dist):
    """Whether the ballot-probability vector of dist satisfies every
    constraint with right-hand side sent to zero. constraints: iterable of
    (Hyperplane, relation) with relation '<=', '>=' or '='."""
    probs = ballot_probability_vector(dist)
    for hp, rel in constraints:
        value = hp.dot_distribution(probs)
        if rel == "<=" and value > 0:
            return False
        if rel == ">=" and value < 0:
            return False
        if rel == "=" and value != 0:
            return False
        if rel not in ("<=", ">=", "="):
            raise DomainError(f"bad relation {rel!r}")
    return True


def tie_system(scoring, space, w1, w2):
    """Constraint system: w1 and w2 tied at the top of the scoring's order."""
    from .core import committee_mask, enumerate_committees
    from .mappings import Hyperplane

    def score_row(wa, wb):
        mask_a, mask_b = committee_mask(wa), committee_mask(wb)
        sparse = {}
        for ballot in range(1 << space.m):
            d = scoring.ballot_score(ballot, mask_a) - scoring.ballot_score(
                ballot, mask_b
            )
            if d:
                sparse[ballot] = d
        return Hyperplane(space.m, tuple(sorted(sparse.items())), Fraction(0))

    constraints = [(score_row(tuple(w1), tuple(w2)), "=")]
    for w in enumerate_committees(space):
        if tuple(w) in (tuple(w1), tuple(w2)):
            continue
        constraints.append((score_row(w, tuple(w1)), "<="))
    return constraints


def deviation_system(space, committee, rival):
    """Single constraint: the group preferring rival over committee can afford
    the deviation (its share of voters reaches |rival|/k)."""
    from .core import committee_mask
    from .mappings import Hyperplane

    w_mask = committee_mask(tuple(committee))
    r_mask = committee_mask(tuple(rival)) if not isinstance(rival, int) else rival
    sparse = {
        a: Fraction(-1)
        for a in range(1 << space.m)
        if (a & r_mask).bit_count() > (a & w_mask).bit_count()
    }
    uniform = Fraction(r_mask.bit_count(), space.k)
    return [
        (
            Hyperplane(space.m, tuple(sorted(sparse.items())), uniform),
            "<=",
        )
    ]


def regime_predict(kind, operands, dist, k):
    """Asymptotic regime of an event family as the electorate grows.

    Families:
      resolute(thiele): exp-to-limit when the top-k committee is unique,
        else polynomial (resoluteness probability decays like 1/sqrt(n)).
      refinement/same/overlap(thiele, thiele): exp-to-limit when the top-k
        committee is unique, else degenerate (pinned away from 0 and 1).
      topk-subset-of-axiom(core | ejr+): exp-to-limit.
      satisfies(thiele, core): exp-to-limit.
    Requires every approval probability strictly inside (0, 1).
    """
    from .rules import ThieleVector

    if not dist.interior():
        raise DomainError("regime analysis requires p strictly inside (0,1)")
    if not 1 <= k <= dist.m:
        raise DomainError(f"k={k} outside 1..{dist.m}")
    unique_top = len(top_k_committees(dist, k)) == 1
    if kind == "resolute":
        (vector,) = operands
        if not isinstance(vector, ThieleVector):
            raise DomainError("resolute regime analyzed for Thiele rules only")
        return REGIME_EXP if unique_top else REGIME_POLY
    if kind in ("refinement", "same", "overlap"):
        v1, v2 = operands
        if not (isinstance(v1, ThieleVector) and isinstance(v2, ThieleVector)):
            raise DomainError("pairwise regime analyzed for Thiele rules only")
        return REGIME_EXP if unique_top else REGIME_DEGENERATE
    if kind == "topk-subset-of-axiom":
        (axiom_kind,) = operands
        if axiom_kind not in ("core", "ejr+"):
            raise DomainError(
                "top-k membership regime analyzed for core and ejr+ only"
            )
        return REGIME_EXP
    if kind == "satisfies":
        vector, axiom_kind = operands
        if not isinstance(vector, ThieleVector) or axiom_kind != "core":
            raise DomainError(
                "satisfaction regime analyzed for Thiele inside core only"
            )
        return REGIME_EXP
    raise DomainError(f"no regime analysis for event kind {kind!r}")


@dataclass(frozen=True)
class DecayRow:
    n: int
    report: McReport

    @property
    def failure(self):
        return 1.0 - self.report.estimate


@dataclass(frozen=True)
class DecayReport:
    label: str
    rows: tuple
    ratios: tuple  # failure-probability ratios across consecutive 4x steps


def decay_classify(
    predicate, dist, n_grid, trials, seed, threads=1, delta=0.6
):
    """Classify how the failure probability 1 - P(event) shrinks with n.

    Consecutive grid points n, 4n are compared: under an inverse-square-root
    law the failure ratio is ~2, under exponential decay it exceeds 2 and
    grows. Ratios within [2-delta, 2+delta] at every step read as
    inverse-sqrt; ratios all above 2+delta and non-decreasing (a vanishing
    denominator counts as infinite) read as exponential; anything else is
    inconclusive.
    """
    grid = list(n_grid)
    if not grid or any(b <= a for a, b in zip(grid, grid[1:])):
        raise DomainError("n_grid must be strictly increasing and nonempty")
    rows = []
    for idx, n in enumerate(grid):
        report = mc_event_probability(
            predicate, dist, n, trials, seed + idx, threads=threads
        )
        rows.append(DecayRow(n, report))
    ratios = []
    for a, b in zip(rows, rows[1:]):
        if b.n != 4 * a.n:
            continue
        if b.failure == 0:
            ratios.append(math.inf if a.failure > 0 else math.nan)
        else:
            ratios.append(a.failure / b.failure)
    usable = [r for r in ratios if not math.isnan(r)]
    label = DECAY_INCONCLUSIVE
    if usable and len(usable) == len(ratios):
        if all(2 - delta <= r <= 2 + delta for r in usable):
            label = DECAY_INV_SQRT
        elif all(r > 2 + delta for r in usable) and all(
            a <= b for a, b in zip(usable, usable[1:])
        ):
            label = DECAY_EXP
    return DecayReport(label, tuple(rows), tuple(ratios))


def property_event(prop, mappings):
    """Histogram predicate from a mapping property (see mappings module)."""
    operands = list(mappings)
    return lambda hist: property_at(prop, operands, hist)


def membership_event(mapping, committee, member=True):
    target = tuple(committee)
    if member:
        return lambda hist: target in mapping(hist)
    return lambda hist: target not in mapping(hist)


def conjunction_event(*events):
    return lambda hist: all(event(hist) for event in events)


def topk_in_axiom_event(axiom, dist):
    """Predicate: every top-k committee of dist satisfies the axiom."""
    tops = top_k_committees(dist, axiom.space.k)
    return lambda hist: all(gst_satisfies(hist, axiom, w) for w in tops)
