"""Learning machinery: feature maps, exact LP learners, shattering checks,
and dimension-bound tables.

Every rule family here is a parameterized maximizer: a class-sensitive
feature map psi sends (profile, decision) to a rational vector, and a weight
vector w induces the rule argmax_d psi(P, d) . w. Learning a rule from
(profile, co-winners) samples is then exact rational LP feasibility: ties
among winners become equalities, winner-over-loser comparisons become
margin inequalities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from .core import (
    APPROVAL,
    RANKING,
    UTILITY,
    DomainError,
    Space,
    binomial,
    enumerate_committees,
    committee_mask,
    histogram,
    parse_profile,
    sort_committees,
)
from .rules import ThieleVector, PositionalVector, intersection_domain
from .axioms import (
    approx_core_violation_ratio,
    lambda_map,
    max_violation_ratio,
    potential_group_count,
    total_potential_groups,
)
from .lp import solve_lp

_ZERO = Fraction(0)


@dataclass(frozen=True)
class FeatureMap:
    """Class-sensitive feature map psi: (profile, decision) -> Q^eta.

    eta is the evaluator's true coordinate count; table_eta is the figure the
    dimension-bound tables use for the same class (they differ only for the
    Thiele family, whose bound tables quotient out one more degree of freedom
    than the construction pins).
    """

    name: str
    space: Space
    variant: str
    eta: int
    table_eta: int
    decisions: tuple
    evaluator: object = field(repr=False)

    def evaluate(self, profile, decision):
        if profile.variant != self.variant:
            raise DomainError(
                f"{self.name} features need a {self.variant} profile, "
                f"got {profile.variant}"
            )
        if decision not in self.decision_index:
            raise DomainError(f"{decision!r} not in the decision space")
        return self.evaluator(profile, decision)

    @cached_property
    def decision_index(self):
        return {d: i for i, d in enumerate(self.decisions)}


FEATURE_CLASSES = ("thiele", "abcs", "gabcs", "csr", "owa", "oowa", "pos")


def feature_map(name, space, u=None):
    """Build the feature map for one rule class over the given space.

    u supplies the intrinsic utility vector for 'oowa' (length m, rational).
    """
    m, k = space.m, space.k
    committees = tuple(enumerate_committees(space))

    if name == "thiele":
        def evaluator(profile, committee):
            w_mask = committee_mask(committee)
            counts = [0] * k
            for ballot, c in profile.grouped():
                overlap = (ballot & w_mask).bit_count()
                if overlap:
                    counts[overlap - 1] += c
            return tuple(Fraction(c) for c in counts)

        return FeatureMap("thiele", space, APPROVAL, k, k - 1, committees,
                          evaluator)

    if name == "abcs":
        coords = tuple(p for p in sorted(intersection_domain(m, k))
                       if p != (0, 0))
        index = {p: i for i, p in enumerate(coords)}

        def evaluator(profile, committee):
            w_mask = committee_mask(committee)
            vec = [_ZERO] * len(coords)
            for ballot, c in profile.grouped():
                key = ((ballot & w_mask).bit_count(), ballot.bit_count())
                if key in index:
                    vec[index[key]] += c
            return tuple(vec)

        eta = len(coords)
        return FeatureMap("abcs", space, APPROVAL, eta, eta, committees,
                          evaluator)

    if name == "gabcs":
        pinned = (0, committees[0])
        coords = tuple(
            (ballot, w)
            for ballot in range(1 << m)
            for w in committees
            if (ballot, w) != pinned
        )
        index = {p: i for i, p in enumerate(coords)}

        def evaluator(profile, committee):
            vec = [_ZERO] * len(coords)
            for ballot, c in profile.grouped():
                key = (ballot, committee)
                if key in index:
                    vec[index[key]] += c
            return tuple(vec)

        eta = len(coords)
        return FeatureMap("gabcs", space, APPROVAL, eta, eta, committees,
                          evaluator)

    if name == "csr":
        rank_sets = tuple(combinations(range(1, m + 1), k))
        coords = rank_sets[1:]  # pin the best rank set (1,...,k)
        index = {p: i for i, p in enumerate(coords)}

        def evaluator(profile, committee):
            vec = [_ZERO] * len(coords)
            for ranking, c in profile.grouped():
                position = {alt: t for t, alt in enumerate(ranking, start=1)}
                key = tuple(sorted(position[a] for a in committee))
                if key in index:
                    vec[index[key]] += c
            return tuple(vec)

        eta = len(coords)
        return FeatureMap("csr", space, RANKING, eta, eta, committees,
                          evaluator)

    if name == "owa":
        def evaluator(profile, committee):
            vec = [_ZERO] * k
            for utilities, c in profile.grouped():
                tops = sorted((utilities[a - 1] for a in committee),
                              reverse=True)
                for i, value in enumerate(tops):
                    vec[i] += c * Fraction(value)
            return tuple(vec)

        return FeatureMap("owa", space, UTILITY, k, k, committees, evaluator)

    if name == "oowa":
        if u is None:
            raise DomainError("ordinal weighted features need a utility vector")
        intrinsic = tuple(Fraction(x) for x in u)
        if len(intrinsic) != m:
            raise DomainError(f"utility vector must have length {m}")

        def evaluator(profile, committee):
            vec = [_ZERO] * k
            for ranking, c in profile.grouped():
                position = {alt: t for t, alt in enumerate(ranking, start=1)}
                tops = sorted((intrinsic[position[a] - 1] for a in committee),
                              reverse=True)
                for i, value in enumerate(tops):
                    vec[i] += c * value
            return tuple(vec)

        return FeatureMap("oowa", space, RANKING, k, k, committees, evaluator)

    if name == "pos":
        alternatives = tuple(range(1, m + 1))

        def evaluator(profile, alternative):
            vec = [_ZERO] * (m - 1)  # position m pinned to score 0
            for ranking, c in profile.grouped():
                position = ranking.index(alternative) + 1
                if position < m:
                    vec[position - 1] += c
            return tuple(vec)

        return FeatureMap("pos", space, RANKING, m - 1, m - 1, alternatives,
                          evaluator)

    raise DomainError(f"unknown feature class {name!r}")


def induced_winners(fm, w, profile):
    """Exact argmax of psi(P, d) . w over the decision space."""
    weights = tuple(Fraction(x) for x in w)
    if len(weights) != fm.eta:
        raise DomainError(f"weight vector must have length {fm.eta}")
    best = None
    winners = []
    for d in fm.decisions:
        score = sum(
            (wi * fi for wi, fi in zip(weights, fm.evaluate(profile, d))),
            _ZERO,
        )
        if best is None or score > best:
            best = score
            winners = [d]
        elif score == best:
            winners.append(d)
    return winners


@dataclass(frozen=True)
class LabeledSample:
    profile: object
    winners: tuple

    def __post_init__(self):
        winners = tuple(sorted(set(self.winners)))
        if not winners:
            raise DomainError("a sample needs at least one winner")
        object.__setattr__(self, "winners", winners)


def learn_maximizer(fm, samples, margin=Fraction(1)):
    """Fit a weight vector reproducing every sample's co-winner set.

    Returns w (list of Fractions) or None when the sample set is infeasible.
    Constraints are generated lazily: solve on a working subset, add the most
    violated constraint, repeat. The returned w is re-checked against every
    sample via induced_winners.
    """
    margin = Fraction(margin)
    if margin <= 0:
        raise DomainError("margin must be positive")
    if not samples:
        raise DomainError("no samples")
    samples = [
        s if isinstance(s, LabeledSample) else LabeledSample(*s)
        for s in samples
    ]
    rows = {}
    for sample in samples:
        for d in sample.winners:
            if d not in fm.decision_index:
                raise DomainError(f"winner {d!r} outside the decision space")
        feats = {d: fm.evaluate(sample.profile, d) for d in fm.decisions}
        anchor = feats[sample.winners[0]]
        losers = [d for d in fm.decisions if d not in sample.winners]
        for d in sample.winners[1:]:
            coeffs = tuple(a - b for a, b in zip(feats[d], anchor))
            rows.setdefault((coeffs, "=", _ZERO), None)
        for d in losers:
            coeffs = tuple(a - b for a, b in zip(anchor, feats[d]))
            rows.setdefault((coeffs, ">=", margin), None)
    rows = [row for row in rows if any(row[0])] + [
        row for row in rows if not any(row[0])
    ]
    # A zero-coefficient inequality row can never be satisfied; a zero
    # equality row always is.
    for coeffs, rel, rhs in rows:
        if not any(coeffs) and rel == ">=" and rhs > 0:
            return None
    rows = [row for row in rows if any(row[0])]
    if not rows:
        return [_ZERO] * fm.eta

    working = [row for row in rows if row[1] == "="]
    pending = [row for row in rows if row[1] != "="]
    point = [_ZERO] * fm.eta
    while True:
        violated = None
        worst = _ZERO
        for row in pending:
            coeffs, _, rhs = row
            slack = rhs - sum(
                (c * x for c, x in zip(coeffs, point)), _ZERO
            )
            if slack > worst:
                worst = slack
                violated = row
        if violated is None:
            break
        working.append(violated)
        pending.remove(violated)
        result = solve_lp(working, fm.eta)
        if result.status != "optimal":
            return None
        point = result.x

    for sample in samples:
        if tuple(induced_winners(fm, point, sample.profile)) != sample.winners:
            raise AssertionError("learned weights fail a training sample")
    return point


@dataclass(frozen=True)
class BetaInterval:
    """Consistent-beta interval (lo, hi] (lo closed when lo_open is False;
    hi=None means unbounded above)."""

    lo: Fraction
    hi: object  # Fraction or None
    lo_open: bool

    def contains(self, beta):
        beta = Fraction(beta)
        if beta < self.lo or (self.lo_open and beta == self.lo):
            return False
        return self.hi is None or beta <= self.hi

    def is_empty(self):
        if self.hi is None:
            return False
        if self.lo > self.hi:
            return True
        return self.lo == self.hi and self.lo_open


def _beta_fit(labeled_ratios):
    """Interval of beta consistent with (ratio, satisfied) pairs, where
    satisfaction at beta means beta > ratio. ratio None: satisfied at every
    beta (no potential deviating group)."""
    lo, lo_open, hi = _ZERO, False, None
    for ratio, satisfied in labeled_ratios:
        if ratio is None:
            if not satisfied:
                return None
            continue
        if satisfied:
            if ratio > lo or (ratio == lo and not lo_open):
                lo, lo_open = ratio, True
        else:
            if hi is None or ratio < hi:
                hi = ratio
    interval = BetaInterval(lo, hi, lo_open)
    return None if interval.is_empty() else interval


def learn_beta(base, samples):
    """Maximal beta interval consistent with (profile, committee, satisfied)
    labels for the scaled version of the base axiom. None when inconsistent."""
    if not samples:
        raise DomainError("no samples")
    ratios = []
    for profile, committee, satisfied in samples:
        hist = profile if hasattr(profile, "count") else histogram(profile)
        ratios.append(
            (max_violation_ratio(hist, base, tuple(committee)), bool(satisfied))
        )
    return _beta_fit(ratios)


@dataclass(frozen=True)
class LambdaFit:
    alpha: Fraction
    lam: tuple
    interval: BetaInterval


def candidate_lambdas(space):
    """All distinct slack maps achievable as alpha varies, in canonical
    (lexicographic) order, each with its smallest representative alpha."""
    m, k = space.m, space.k
    alphas = sorted(
        {Fraction(j, level) for level in range(1, k + 1)
         for j in range(0, m * level + 1)}
    )
    seen = {}
    for alpha in alphas:
        lam = lambda_map(alpha, space)
        if lam not in seen:
            seen[lam] = alpha
    return sorted(seen.items())


def fit_lambda(samples, lam, space):
    """Beta interval consistent with the labels under a fixed slack map."""
    ratios = []
    for profile, committee, satisfied in samples:
        hist = profile if hasattr(profile, "count") else histogram(profile)
        ratios.append(
            (
                approx_core_violation_ratio(hist, lam, space, tuple(committee)),
                bool(satisfied),
            )
        )
    return _beta_fit(ratios)


def learn_approx_core(samples, space):
    """First (canonical lambda order) slack map with a consistent beta
    interval, or None."""
    if not samples:
        raise DomainError("no samples")
    for lam, alpha in candidate_lambdas(space):
        interval = fit_lambda(samples, lam, space)
        if interval is not None:
            return LambdaFit(alpha, lam, interval)
    return None


@dataclass(frozen=True)
class ShatterInstance:
    """Profiles with two per-profile witness decision sets and, for every
    subset B of profile indices, a realizing hypothesis parameter."""

    profiles: tuple
    f0: tuple
    f1: tuple
    realizers: dict

    def __post_init__(self):
        t = len(self.profiles)
        if t > 20:
            raise DomainError("at most 20 profiles (2^t subsets enumerated)")
        if not (len(self.f0) == len(self.f1) == t):
            raise DomainError("witness lists must match the profile count")
        for i in range(t):
            if frozenset(self.f0[i]) == frozenset(self.f1[i]):
                raise DomainError(f"witnesses agree on profile {i}")
        object.__setattr__(
            self, "f0", tuple(frozenset(x) for x in self.f0)
        )
        object.__setattr__(
            self, "f1", tuple(frozenset(x) for x in self.f1)
        )


def verify_shattering(instance, hypothesis_eval):
    """Whether the realizers witness every subset labeling of the profiles."""
    t = len(instance.profiles)
    for subset_bits in range(1 << t):
        chosen = frozenset(i for i in range(t) if subset_bits >> i & 1)
        if chosen not in instance.realizers:
            raise DomainError(f"missing realizer for subset {sorted(chosen)}")
        param = instance.realizers[chosen]
        for i, profile in enumerate(instance.profiles):
            expected = instance.f1[i] if i in chosen else instance.f0[i]
            if frozenset(hypothesis_eval(param, profile)) != expected:
                return False
    return True


def thiele_shattering_instance(k=3, m=5):
    """Profiles P_1..P_{k-1} shattered by Thiele score vectors.

    Each profile stacks 3k copies of two reference committees' ballots with
    two tie-breaker ballots; the realizer for subset B walks s upward in
    steps of 1 (inside B) or 3 (outside), which tips the score comparison
    between the reference committees by exactly -1 or +1.
    """
    if k < 2 or m < k + 1:
        raise DomainError("need k >= 2 and m >= k+1")
    space = Space(m, k)
    w0 = tuple(sorted((1,) + tuple(range(3, k + 2))))
    w1 = tuple(range(2, k + 2))
    from .core import mask_from_members, profile_from_masks

    profiles = []
    for i in range(1, k):
        ballots = (
            [mask_from_members(w0)] * (3 * k)
            + [mask_from_members(w1)] * (3 * k)
            + [mask_from_members((1,) + tuple(range(3, i + 3)))]
            + [mask_from_members((2,))]
        )
        profiles.append(profile_from_masks(space, ballots))

    def realizer(chosen):
        s = [Fraction(0), Fraction(2)]
        for i in range(1, k):
            step = 1 if (i - 1) in chosen else 3
            s.append(s[-1] + step)
        return ThieleVector(tuple(s))

    realizers = {
        frozenset(bits): realizer(frozenset(bits))
        for size in range(k)
        for bits in combinations(range(k - 1), size)
    }
    return ShatterInstance(
        tuple(profiles),
        tuple({w0} for _ in profiles),
        tuple({w1} for _ in profiles),
        realizers,
    )


def positional_shattering_instance(m=5):
    """Profiles P_1..P_{m-2} shattered by positional score vectors.

    Mirror construction: 2m copies of two rankings that swap alternatives
    1 and 2 at the top, one ballot placing them at positions i, i+1, and one
    placing them at the bottom; the realizer builds s downward in steps of
    3 (inside B) or 1 (outside)."""
    if m < 3:
        raise DomainError("need m >= 3")
    space = Space(m, 1)
    from .core import Profile

    rest = tuple(range(3, m + 1))
    b1 = (1, 2) + rest
    b2 = (2, 1) + rest

    def special(i):
        ranking = [None] * m
        ranking[i - 1] = 1
        ranking[i] = 2
        fill = iter(rest)
        for j in range(m):
            if ranking[j] is None:
                ranking[j] = next(fill)
        return tuple(ranking)

    bottom = rest + (2, 1)

    profiles = []
    for i in range(1, m - 1):
        entries = [(b1, 2 * m), (b2, 2 * m), (special(i), 1), (bottom, 1)]
        profiles.append(Profile(space, entries, RANKING))

    def realizer(chosen):
        s = [0] * m
        s[m - 2] = 2
        for i in range(m - 2, 0, -1):
            step = 3 if (i - 1) in chosen else 1
            s[i - 1] = s[i] + step
        return PositionalVector(tuple(s))

    realizers = {
        frozenset(bits): realizer(frozenset(bits))
        for size in range(m - 1)
        for bits in combinations(range(m - 2), size)
    }
    return ShatterInstance(
        tuple(profiles),
        tuple({2} for _ in profiles),
        tuple({1} for _ in profiles),
        realizers,
    )


def sign_pattern_count(d, K):
    """Number of sign vectors K generic affine hyperplanes cut out of R^d:
    sum over s <= min(K, d) of C(K, s) * 2^s."""
    if d < 1:
        raise DomainError("dimension must be at least 1")
    if K < 0:
        raise DomainError("hyperplane count must be nonnegative")
    return sum(binomial(K, s) * 2 ** s for s in range(min(K, d) + 1))


@dataclass(frozen=True)
class NdimBounds:
    lower: object  # int, Fraction, float, or None
    upper: object
    provenance: str
    notes: tuple = ()


_LOG_8E = math.log2(8 * math.e)


def ndim_bounds(class_spec, m=None, k=None, E=None, D=None, K=None,
                eta=None, hypotheses=None, axiom=None):
    """Dimension bounds for one hypothesis class, with formula provenance.

    Maximizer classes take (m, k); 'linear' takes E (ballot types), D
    (decisions), K (hyperplanes); 'paramhyp' takes eta, K, hypotheses;
    'agst'/'agst-sym' take a base axiom. Logarithms are base 2.
    """
    def need(**kwargs):
        for name, value in kwargs.items():
            if value is None:
                raise DomainError(f"{class_spec} bounds need {name}")

    if class_spec == "thiele":
        need(k=k)
        return NdimBounds(
            k - 1, k - 1,
            "lower: explicit shattering of k-1 profiles; "
            "upper: parameter count k-1 after pinning the empty-overlap "
            "score and one scale degree of freedom",
            ("a conflicting tabulation lists k-2 for both bounds; the "
             "values here follow the explicit construction (k-1)",),
        )
    if class_spec == "abcs":
        need(m=m, k=k)
        size = len(intersection_domain(m, k))
        return NdimBounds(
            None, size - 1,
            "upper: one parameter per feasible (overlap, ballot-size) pair, "
            "minus the pinned (0,0) cell",
        )
    if class_spec == "gabcs":
        need(m=m, k=k)
        c = binomial(m, k)
        return NdimBounds(
            (2 ** m - 2) * (c - 1), 2 ** m * c - 1,
            "lower: shattering over nontrivial ballot/committee pairs, "
            "(2^m-2)(C(m,k)-1); upper: table size minus one global shift, "
            "2^m*C(m,k)-1",
        )
    if class_spec == "csr":
        need(m=m, k=k)
        c = binomial(m, k)
        return NdimBounds(
            c - 2, c - 1,
            "lower: C(m,k)-2 shattered profiles; upper: one parameter per "
            "rank set minus the pinned best set, C(m,k)-1",
        )
    if class_spec in ("owa", "oowa"):
        need(k=k)
        return NdimBounds(
            k - 2, k,
            "lower: k-2 shattered profiles; upper: k ordered weights",
        )
    if class_spec == "pos":
        need(m=m, k=k)
        return NdimBounds(
            k - 2, m - 1,
            "lower: tabulated value k-2; upper: m-1 position scores after "
            "pinning the last to 0",
            ("the explicit construction shatters m-2 profiles, which would "
             "strengthen the tabulated lower bound k-2",),
        )
    if class_spec == "gst":
        need(m=m, k=k)
        e = 2 ** m
        return NdimBounds(
            math.sqrt(2 / math.pi) * 2 ** e / e,
            2 ** e * binomial(m, k) * math.log2(k + 2),
            "lower: sqrt(2/pi)*2^E/E with E=2^m ballot types; upper: "
            "2^E*C(m,k)*log2(k+2) from counting threshold tables",
        )
    if class_spec == "sgst":
        need(m=m, k=k)
        e = 2 ** m
        return NdimBounds(
            math.sqrt(2 / math.pi) * 2 ** e / (e * math.factorial(m)),
            2 ** e * math.log2(k + 2),
            "lower: sqrt(2/pi)*2^(2^m)/(2^m*m!) after symmetrizing; upper: "
            "2^(2^m)*log2(k+2)",
        )
    if class_spec == "acore":
        need(m=m, k=k)
        return NdimBounds(
            None,
            4 * m + (8 * k + 4) * math.log2(m) + 4 * _LOG_8E,
            "upper: 4m+(8k+4)*log2(m)+4*log2(8e), parameter-counting over "
            "the slack-map grid times the scale parameter",
        )
    if class_spec == "agst":
        need(axiom=axiom)
        total = total_potential_groups(axiom)
        return NdimBounds(
            None,
            4 * math.log2(total) + 4 * _LOG_8E,
            "upper: 4*log2(total potential deviating groups)+4*log2(8e) for "
            "one scale parameter",
        )
    if class_spec == "agst-sym":
        need(axiom=axiom)
        base_committee = tuple(range(1, axiom.space.k + 1))
        count = potential_group_count(axiom, base_committee)
        return NdimBounds(
            None,
            4 * math.log2(count) + 4 * _LOG_8E,
            "upper: 4*log2(groups of one committee)+4*log2(8e); symmetry "
            "collapses the per-committee product",
        )
    if class_spec == "axioms":
        need(m=m, k=k)
        return NdimBounds(
            None,
            4 * (m + k + _LOG_8E),
            "upper: 4*(m+k+log2(8e)) covering the seven scaled "
            "group-stability axioms",
        )
    if class_spec == "linear":
        need(E=E, D=D, K=K)
        return NdimBounds(
            Fraction(K * E + sign_pattern_count(E, K), 4),
            4 * K * E * math.log2(12 * K) + 2 * 3 ** K * math.log2(D),
            "lower: (K*E + sign-pattern count A(E,K))/4; upper: "
            "4*K*E*log2(12K) + 2*3^K*log2(D)",
        )
    if class_spec == "paramhyp":
        need(eta=eta, K=K, hypotheses=hypotheses)
        return NdimBounds(
            None,
            2 * eta * math.log2(8 * math.e * K) + 2 * math.log2(hypotheses),
            "upper: 2*eta*log2(8eK) + 2*log2(|selector family|) for "
            "parameterized hyperplane banks",
        )
    raise DomainError(f"unknown class {class_spec!r}")


NDIM_TABLE_CLASSES = ("thiele", "abcs", "gabcs", "csr", "owa", "oowa", "pos",
                      "axioms")


def ndim_table(m, k):
    """Bound table across the maximizer classes plus the scaled-axiom family."""
    return {name: ndim_bounds(name, m=m, k=k) for name in NDIM_TABLE_CLASSES}


def parse_labeled_samples(text, fm):
    """Parse a samples file: blocks of a profile (core-module format) followed
    by one 'winners:' line. Committees are comma-joined indices, atomic
    alternatives bare integers; multiple winners are space-separated."""
    lines = text.splitlines()
    samples = []
    block = []
    winners_line = None

    def flush(end_line):
        nonlocal block, winners_line
        if not block:
            if winners_line is not None:
                raise DomainError(f"winners line without a profile "
                                  f"(line {end_line})")
            return
        if winners_line is None:
            raise DomainError(
                f"profile block ending at line {end_line} has no winners line"
            )
        profile = parse_profile("\n".join(block), fm.variant)
        if profile.space != fm.space:
            raise DomainError(
                f"sample space {profile.space} != feature space {fm.space}"
            )
        winners = []
        for token in winners_line.split():
            if "," in token:
                winners.append(tuple(sorted(int(x) for x in token.split(","))))
            else:
                winners.append(int(token))
        samples.append(LabeledSample(profile, tuple(winners)))
        block = []
        winners_line = None

    for idx, raw in enumerate(lines, start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        if stripped.startswith("winners:"):
            winners_line = stripped[len("winners:"):].strip()
            flush(idx)
        else:
            if stripped.startswith("m=") and block and winners_line is None:
                raise DomainError(
                    f"new profile at line {idx} before a winners line"
                )
            block.append(stripped)
    flush(len(lines))
    if not samples:
        raise DomainError("no samples in file")
    return samples


def sample_error(fm, w, samples):
    """Fraction of samples whose exact co-winner set is not reproduced."""
    if not samples:
        raise DomainError("no samples")
    wrong = sum(
        1
        for s in samples
        if tuple(induced_winners(fm, w, s.profile)) != s.winners
    )
    return Fraction(wrong, len(samples))
