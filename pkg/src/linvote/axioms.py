"""Proportionality axioms for approval committees.

Every axiom here is encoded the same way: for each committee W there is a
finite family of "potential deviating groups", each a set of ballot types
with an integer threshold tau between 1 and k. W satisfies the axiom at a
profile iff every group's ballot count stays strictly below tau * n / k;
counts are compared exactly (count * k < tau * n in plain integers).
Group families whose threshold would exceed k are never materialized: such a
deviation would need more than n voters.

`brute_force_satisfies` is an independent oracle that evaluates the textbook
definitions directly by enumerating every nonempty voter subset (capped at
n <= 12). The two routes share no code and are tested for equivalence.

Approximate variants scale the thresholds by a rational beta (all axioms) and
additionally discretize the membership test through lambda(l) = floor(alpha*l)
(core stability only).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    DomainError,
    Space,
    enumerate_committees,
    mask_from_members,
)

JR = "jr"
PJR = "pjr"
EJR = "ejr"
PJR_PLUS = "pjr+"
EJR_PLUS = "ejr+"
FJR = "fjr"
CORE = "core"

AXIOM_KINDS = (JR, PJR, EJR, PJR_PLUS, EJR_PLUS, FJR, CORE)


@dataclass(frozen=True)
class GstAxiom:
    kind: str
    space: Space

    def __post_init__(self):
        if self.kind not in AXIOM_KINDS:
            raise DomainError(f"unknown axiom kind {self.kind!r}")


@dataclass(frozen=True)
class DeviatingGroup:
    """One potential deviating group: descriptor, membership test, threshold."""

    descriptor: tuple
    threshold: int
    member: object  # ballot mask -> bool

    def count(self, hist):
        return sum(c for ballot, c in hist.items() if self.member(ballot))


def _masks_of_size(universe_members, size):
    for combo in itertools.combinations(universe_members, size):
        yield mask_from_members(combo)


def potential_deviating_groups(axiom, committee):
    """Yield every potential deviating group (threshold <= k) for W."""
    space = axiom.space
    m, k = space.m, space.k
    w_mask = mask_from_members(committee)
    alternatives = list(space.alternatives)
    outside = [a for a in alternatives if not w_mask >> (a - 1) & 1]
    inside = [a for a in alternatives if w_mask >> (a - 1) & 1]
    kind = axiom.kind

    if kind == CORE:
        # Rival slates W' not contained in W; a ballot deviates if it likes
        # W' strictly more. tau = |W'|.
        for size in range(1, k + 1):
            for wp in _masks_of_size(alternatives, size):
                if wp & ~w_mask == 0:
                    continue
                yield DeviatingGroup(
                    ("rival", wp),
                    size,
                    lambda A, wp=wp: (A & wp).bit_count() > (A & w_mask).bit_count(),
                )
    elif kind == JR:
        # Unrepresented ballots jointly approving an outside alternative.
        for a in outside:
            bit = 1 << (a - 1)
            yield DeviatingGroup(
                ("joint", a),
                1,
                lambda A, bit=bit: A & bit and not A & w_mask,
            )
    elif kind == EJR:
        # Ballots containing a seed set A0 while fewer than |A0| of their
        # approvals made it into W. tau = |A0|.
        for size in range(1, k + 1):
            for seed in _masks_of_size(alternatives, size):
                yield DeviatingGroup(
                    ("seed", seed),
                    size,
                    lambda A, seed=seed, size=size: (
                        A & seed == seed and (A & w_mask).bit_count() < size
                    ),
                )
    elif kind == EJR_PLUS:
        for a in outside:
            bit = 1 << (a - 1)
            for level in range(1, k + 1):
                yield DeviatingGroup(
                    ("outside-level", a, level),
                    level,
                    lambda A, bit=bit, level=level: (
                        A & bit and (A & w_mask).bit_count() < level
                    ),
                )
    elif kind == PJR:
        # Seed set A0 plus a cap W' on how much of W the group may touch.
        for size in range(1, k + 1):
            for seed in _masks_of_size(alternatives, size):
                for wp in _masks_of_size(inside, size - 1):
                    yield DeviatingGroup(
                        ("seed-cap", seed, wp),
                        size,
                        lambda A, seed=seed, wp=wp: (
                            A & seed == seed and A & w_mask & ~wp == 0
                        ),
                    )
    elif kind == PJR_PLUS:
        # Singleton seed outside W, cap W' ranging over subsets of W.
        # tau = |W'| + 1, so W' = W itself is skipped (threshold k+1).
        for a in outside:
            bit = 1 << (a - 1)
            for size in range(0, k):
                for wp in _masks_of_size(inside, size):
                    yield DeviatingGroup(
                        ("outside-cap", a, wp),
                        size + 1,
                        lambda A, bit=bit, wp=wp: (
                            A & bit and A & w_mask & ~wp == 0
                        ),
                    )
    elif kind == FJR:
        # Ballots hitting a target set T at least beta times while holding
        # fewer than beta seats. tau = |T|.
        for beta in range(1, k + 1):
            for tsize in range(beta, k + 1):
                for target in _masks_of_size(alternatives, tsize):
                    yield DeviatingGroup(
                        ("target", beta, target),
                        tsize,
                        lambda A, beta=beta, target=target: (
                            (A & target).bit_count() >= beta
                            and (A & w_mask).bit_count() < beta
                        ),
                    )


def gst_satisfies(hist, axiom, committee):
    """Threshold test: every group count stays strictly below tau*n/k."""
    if hist.n < 1:
        raise DomainError("satisfaction needs a nonempty profile")
    k, n = axiom.space.k, hist.n
    for group in potential_deviating_groups(axiom, committee):
        if group.count(hist) * k >= group.threshold * n:
            return False
    return True


def axiom_set(hist, axiom):
    """All k-committees satisfying the axiom (may be empty for core)."""
    return [
        committee
        for committee in enumerate_committees(axiom.space)
        if gst_satisfies(hist, axiom, committee)
    ]


def max_violation_ratio(hist, axiom, committee):
    """max over groups of count*k / (tau*n); None when there are no groups.

    The committee satisfies the beta-scaled axiom iff beta > this ratio, which
    is what the beta learner fits.
    """
    best = None
    k, n = axiom.space.k, hist.n
    for group in potential_deviating_groups(axiom, committee):
        ratio = Fraction(group.count(hist) * k, group.threshold * n)
        if best is None or ratio > best:
            best = ratio
    return best


# -- independent oracle ------------------------------------------------------

BRUTE_FORCE_MAX_N = 12


def _expanded_ballots(profile_like):
    if hasattr(profile_like, "entries"):  # Profile
        if profile_like.variant != "approval":
            raise DomainError("oracle needs an approval profile")
        return list(profile_like.ballots())
    return [b for b, c in profile_like.items() for _ in range(c)]  # Histogram


def brute_force_satisfies(profile, kind, committee, space=None):
    """Textbook-definition oracle, enumerating every nonempty voter subset.

    Quantifier structure follows the original definitions: a subset violates
    if it is large enough for its demand level and the committee fails the
    corresponding representation guarantee. Per-subset aggregates (common
    approvals, union, best seat count, qualifying rival/target sets) are
    accumulated by lowest-set-bit recursion so the 2^n sweep stays cheap.
    """
    if kind not in AXIOM_KINDS:
        raise DomainError(f"unknown axiom kind {kind!r}")
    if space is None:
        space = profile.space if hasattr(profile, "space") else None
    if space is None:
        raise DomainError("histogram input needs an explicit space")
    ballots = _expanded_ballots(profile)
    n = len(ballots)
    if n > BRUTE_FORCE_MAX_N:
        raise DomainError(f"oracle capped at n <= {BRUTE_FORCE_MAX_N}, got {n}")
    if n < 1:
        raise DomainError("satisfaction needs a nonempty profile")
    m, k = space.m, space.k
    w_mask = mask_from_members(committee)
    full = space.full_mask

    seats = [
        (b & w_mask).bit_count() for b in ballots
    ]  # seats a voter already holds in W

    if kind == CORE:
        # Per voter, the set of rival slates it strictly prefers to W,
        # packed as a bitmask over nonempty W' in 1..2^m-1.
        pref = []
        for b in ballots:
            mask = 0
            for wp in range(1, full + 1):
                if (b & wp).bit_count() > (b & w_mask).bit_count():
                    mask |= 1 << wp
            pref.append(mask)
        # Slates small enough for a subset of s voters to afford.
        affordable = [0] * (n + 1)
        for s in range(1, n + 1):
            mask = 0
            for wp in range(1, full + 1):
                if wp.bit_count() * n <= s * k:
                    mask |= 1 << wp
            affordable[s] = mask
    if kind == FJR:
        # Per voter and demand level beta, the target sets it hits >= beta
        # times; and per subset size, the targets the subset can afford.
        hits = []
        for b in ballots:
            per_beta = [0] * (k + 1)
            for t in range(1, full + 1):
                overlap = (b & t).bit_count()
                for beta in range(1, min(overlap, k) + 1):
                    per_beta[beta] |= 1 << t
            hits.append(per_beta)
        affordable = [0] * (n + 1)
        for s in range(1, n + 1):
            mask = 0
            for t in range(1, full + 1):
                if t.bit_count() * n <= s * k:
                    mask |= 1 << t
            affordable[s] = mask

    size = [0] * (1 << n)
    inter = [0] * (1 << n)
    union = [0] * (1 << n)
    best_seats = [0] * (1 << n)
    if kind == CORE:
        all_pref = [0] * (1 << n)
    if kind == FJR:
        all_hits = [[0] * (k + 1) for _ in range(1 << n)]

    for subset in range(1, 1 << n):
        low = subset & -subset
        v = low.bit_length() - 1
        rest = subset ^ low
        if rest == 0:
            size[subset] = 1
            inter[subset] = ballots[v]
            union[subset] = ballots[v]
            best_seats[subset] = seats[v]
            if kind == CORE:
                all_pref[subset] = pref[v]
            if kind == FJR:
                all_hits[subset] = hits[v][:]
        else:
            size[subset] = size[rest] + 1
            inter[subset] = inter[rest] & ballots[v]
            union[subset] = union[rest] | ballots[v]
            best_seats[subset] = max(best_seats[rest], seats[v])
            if kind == CORE:
                all_pref[subset] = all_pref[rest] & pref[v]
            if kind == FJR:
                all_hits[subset] = [a & b for a, b in zip(all_hits[rest], hits[v])]

        s = size[subset]
        if kind == CORE:
            if all_pref[subset] & affordable[s]:
                return False
            continue
        if kind == FJR:
            for beta in range(1, k + 1):
                if best_seats[subset] < beta and all_hits[subset][beta] & affordable[s]:
                    return False
            continue
        common_outside = inter[subset] & ~w_mask
        for level in range(1, k + 1):
            if s * k < level * n:
                break  # larger levels demand even more voters
            if kind == JR:
                if level == 1 and inter[subset] and best_seats[subset] == 0:
                    return False
            elif kind == EJR:
                if inter[subset].bit_count() >= level and best_seats[subset] < level:
                    return False
            elif kind == PJR:
                if (
                    inter[subset].bit_count() >= level
                    and (union[subset] & w_mask).bit_count() < level
                ):
                    return False
            elif kind == EJR_PLUS:
                if common_outside and best_seats[subset] < level:
                    return False
            elif kind == PJR_PLUS:
                if common_outside and (union[subset] & w_mask).bit_count() < level:
                    return False
    return True


# -- approximate variants ----------------------------------------------------


def _floor(q):
    return math.floor(q)


@dataclass(frozen=True)
class ApproxCoreParams:
    """(alpha, beta)-relaxed core stability.

    A ballot joins the group for rival slate W' when
    |A cap W'| > lambda(|A cap W|) with lambda(l) = floor(alpha * l), and the
    threshold is beta * |W'| (not re-capped at k). alpha=beta=1 is exactly
    core stability.
    """

    space: Space
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))
        if self.alpha < 0 or self.beta < 0:
            raise DomainError("alpha and beta must be nonnegative")

    @property
    def lam(self):
        """lambda as a tuple over l = 0..k, clipped into 0..m."""
        return lambda_map(self.alpha, self.space)


def lambda_map(alpha, space):
    alpha = Fraction(alpha)
    return tuple(min(_floor(alpha * l), space.m) for l in range(space.k + 1))


def approx_core_rival_count(hist, lam, w_mask, wp_mask):
    count = 0
    for ballot, c in hist.items():
        if (ballot & wp_mask).bit_count() > lam[(ballot & w_mask).bit_count()]:
            count += c
    return count


def approx_core_satisfies(hist, params, committee):
    """Relaxed-core test over every rival slate with 1 <= |W'| <= k."""
    space = params.space
    lam = params.lam
    w_mask = mask_from_members(committee)
    n = hist.n
    for size in range(1, space.k + 1):
        for wp in _masks_of_size(list(space.alternatives), size):
            count = approx_core_rival_count(hist, lam, w_mask, wp)
            if Fraction(count * space.k) >= params.beta * size * n:
                return False
    return True


def approx_core_violation_ratio(hist, lam, space, committee):
    """max over rivals of count*k / (|W'|*n): satisfied iff beta > this."""
    w_mask = mask_from_members(committee)
    best = Fraction(0)
    n = hist.n
    for size in range(1, space.k + 1):
        for wp in _masks_of_size(list(space.alternatives), size):
            count = approx_core_rival_count(hist, lam, w_mask, wp)
            ratio = Fraction(count * space.k, size * n)
            if ratio > best:
                best = ratio
    return best


@dataclass(frozen=True)
class ApproxGstParams:
    """beta-scaled thresholds for any of the seven axioms (beta=1 = exact)."""

    base: GstAxiom
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "beta", Fraction(self.beta))
        if self.beta < 0:
            raise DomainError("beta must be nonnegative")


def approx_gst_satisfies(hist, params, committee):
    n = hist.n
    k = params.base.space.k
    for group in potential_deviating_groups(params.base, committee):
        if Fraction(group.count(hist) * k) >= params.beta * group.threshold * n:
            return False
    return True


def potential_group_count(axiom, committee):
    """Number of potential deviating groups for one committee."""
    return sum(1 for _ in potential_deviating_groups(axiom, committee))


def total_potential_groups(axiom):
    """Number of (W, group) pairs across all committees."""
    return sum(
        potential_group_count(axiom, committee)
        for committee in enumerate_committees(axiom.space)
    )
