"""Committee voting rules.

Approval-ballot rules share one shape: a committee's score is an exact sum of
per-ballot scores, and the rule returns every score-maximizing committee
(irresolute semantics). The scoring families form a hierarchy:

* counting vectors (score depends on |A intersect W|), with the classic
  presets; the proportional preset uses harmonic weights, the coverage preset
  is 0/1, and the utilitarian preset counts approved winners,
* intersection-size tables over (|A intersect W|, |A|) pairs,
* fully general sparse tables over (ballot, committee) pairs.

Sequential and reverse-sequential wrappers greedily grow or shrink committees
one alternative at a time. Ranking-ballot rules (rank-set tables, ordered
weighted averages with an intrinsic utility vector, positional scoring) and
cardinal-utility OWA round out the set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import (
    DomainError,
    ProfileFormatError,
    Space,
    binomial,
    enumerate_committees,
    mask_from_members,
    members_from_mask,
    parse_rational,
    sort_committees,
)

KEEP_ALL = "keep-all"
LEXICOGRAPHIC = "lexicographic"

_ZERO = Fraction(0)


@dataclass(frozen=True)
class ThieleVector:
    """Counting-vector scoring: a ballot contributes s[|A intersect W|].

    s has k+1 entries s_0..s_k. Components must not all be equal; by default
    the vector must also be non-decreasing with s_k > s_0 (pass
    allow_nonmonotone=True to accept decreasing or mixed vectors).
    """

    s: tuple
    allow_nonmonotone: bool = field(default=False, compare=False)

    def __post_init__(self):
        s = tuple(Fraction(x) for x in self.s)
        object.__setattr__(self, "s", s)
        if len(s) < 2:
            raise DomainError("counting vector needs at least s_0 and s_1")
        if len(set(s)) == 1:
            raise DomainError("counting vector components must not all be equal")
        if not self.allow_nonmonotone:
            if any(s[i] > s[i + 1] for i in range(len(s) - 1)) or s[-1] <= s[0]:
                raise DomainError(
                    "counting vector must be non-decreasing with s_k > s_0 "
                    "(allow_nonmonotone=True to relax)"
                )

    @property
    def k(self):
        return len(self.s) - 1

    def ballot_score(self, ballot, w_mask):
        return self.s[(ballot & w_mask).bit_count()]


def pav_vector(k):
    """Harmonic counting vector: s_i = 1 + 1/2 + ... + 1/i, exact."""
    s = [_ZERO]
    for i in range(1, k + 1):
        s.append(s[-1] + Fraction(1, i))
    return ThieleVector(tuple(s))


def cc_vector(k):
    """Coverage counting vector: (0, 1, ..., 1)."""
    return ThieleVector((_ZERO,) + (Fraction(1),) * k)


def av_vector(k):
    """Utilitarian counting vector: s_i = i."""
    return ThieleVector(tuple(Fraction(i) for i in range(k + 1)))


def intersection_domain(m, k):
    """All feasible (|A intersect W|, |A|) pairs for |W| = k over [m]."""
    return [
        (a, b)
        for b in range(m + 1)
        for a in range(max(b + k - m, 0), min(k, b) + 1)
    ]


@dataclass(frozen=True)
class AbcsScoring:
    """Intersection-size table: a ballot contributes table[(|A&W|, |A|)].

    The table's key set must be exactly the feasible pairs for (m, k).
    """

    space: Space
    table: dict

    def __post_init__(self):
        domain = set(intersection_domain(self.space.m, self.space.k))
        clean = {key: Fraction(v) for key, v in self.table.items()}
        if set(clean) != domain:
            missing = sorted(domain - set(clean))
            extra = sorted(set(clean) - domain)
            raise DomainError(
                f"intersection table must cover the feasible pairs exactly "
                f"(missing {missing}, extra {extra})"
            )
        object.__setattr__(self, "table", clean)

    def ballot_score(self, ballot, w_mask):
        key = ((ballot & w_mask).bit_count(), ballot.bit_count())
        # .get so the same table scores smaller committees inside sequential
        # wrappers (absent pairs score 0, matching the sparse-table rule).
        return self.table.get(key, _ZERO)


@dataclass(frozen=True)
class GabcsScoring:
    """Sparse (ballot, committee) table; absent pairs score 0."""

    space: Space
    table: dict

    def __post_init__(self):
        full = self.space.full_mask
        clean = {}
        for (ballot, w_mask), v in self.table.items():
            if ballot & ~full or w_mask & ~full:
                raise DomainError("table key outside the alternative space")
            v = Fraction(v)
            if v:
                clean[(ballot, w_mask)] = v
        object.__setattr__(self, "table", clean)

    def ballot_score(self, ballot, w_mask):
        return self.table.get((ballot, w_mask), _ZERO)


def committee_score(hist, scoring, w_mask):
    """Exact total score of one committee over a histogram."""
    total = _ZERO
    for ballot, count in hist.items():
        total += count * scoring.ballot_score(ballot, w_mask)
    return total


def thiele_score(hist, vector, committee):
    """Total counting-vector score of one committee (exact)."""
    w_mask = mask_from_members(committee)
    if vector.k != len(committee):
        raise DomainError(
            f"counting vector sized for k={vector.k}, committee has {len(committee)}"
        )
    return committee_score(hist, vector, w_mask)


def gabcs_winners(hist, scoring, space=None):
    """All score-maximizing k-committees (never empty)."""
    if space is None:
        space = getattr(scoring, "space", None)
    if space is None:
        raise DomainError("counting-vector scorings need an explicit space")
    best = None
    arg = []
    for committee in enumerate_committees(space):
        sc = committee_score(hist, scoring, mask_from_members(committee))
        if best is None or sc > best:
            best, arg = sc, [committee]
        elif sc == best:
            arg.append(committee)
    return arg


def per_size_scorings(scoring, sizes):
    """Per-size scorer list for the sequential wrappers.

    Counting vectors and both table scorings already score any committee size
    (table misses count 0), so the base scoring is reused at every size.
    """
    return [scoring for _ in sizes]


def _argmax_masks(hist, scoring, candidates):
    best = None
    arg = []
    for w_mask in candidates:
        sc = committee_score(hist, scoring, w_mask)
        if best is None or sc > best:
            best, arg = sc, [w_mask]
        elif sc == best:
            arg.append(w_mask)
    return arg


def _apply_tie_mode(masks, tie_mode):
    if tie_mode == KEEP_ALL:
        return masks
    if tie_mode == LEXICOGRAPHIC:
        return [min(masks, key=members_from_mask)]
    raise DomainError(f"unknown tie mode {tie_mode!r}")


def sequential_winners(hist, space, scorings, tie_mode=KEEP_ALL):
    """Grow committees greedily: k rounds of best single-alternative additions.

    scorings[i-1] scores size-i committees. Under keep-all every partial
    committee tied for the round's best score survives; under lexicographic
    only the lexicographically smallest does.
    """
    if len(scorings) != space.k:
        raise DomainError(f"need {space.k} per-size scorings, got {len(scorings)}")
    current = {0}
    for i in range(1, space.k + 1):
        candidates = set()
        for partial in current:
            for a in space.alternatives:
                bit = 1 << (a - 1)
                if not partial & bit:
                    candidates.add(partial | bit)
        current = set(_apply_tie_mode(_argmax_masks(hist, scorings[i - 1], candidates), tie_mode))
    return sort_committees(members_from_mask(w) for w in current)


def reverse_sequential_winners(hist, space, scorings, tie_mode=KEEP_ALL):
    """Shrink from the full set: m-k rounds of best single-alternative removals.

    scorings[j] scores committees of size m-1-j (sizes m-1 down to k). With
    m == k no scoring is evaluated and the full set is the sole winner.
    """
    steps = space.m - space.k
    if len(scorings) != steps:
        raise DomainError(f"need {steps} per-size scorings, got {len(scorings)}")
    current = {space.full_mask}
    for j in range(steps):
        candidates = set()
        for partial in current:
            for a in space.alternatives:
                bit = 1 << (a - 1)
                if partial & bit:
                    candidates.add(partial & ~bit)
        current = set(_apply_tie_mode(_argmax_masks(hist, scorings[j], candidates), tie_mode))
    return sort_committees(members_from_mask(w) for w in current)


@dataclass(frozen=True)
class CsrScoring:
    """Rank-set table: a voter contributes table[sorted ranks of W's members].

    Keys are increasing k-tuples of positions in 1..m; the table must cover
    all C(m, k) rank sets.
    """

    space: Space
    table: dict

    def __post_init__(self):
        m, k = self.space.m, self.space.k
        domain = set(enumerate_committees(Space(m, k)))  # rank sets = k-subsets of 1..m
        clean = {tuple(key): Fraction(v) for key, v in self.table.items()}
        if set(clean) != domain:
            raise DomainError(f"rank-set table must cover all {binomial(m, k)} rank sets")
        object.__setattr__(self, "table", clean)


@dataclass(frozen=True)
class OwaWeights:
    """Ordered-weighted-average weights over a committee's sorted utilities.

    w has k nonnegative entries; w[j] multiplies the (j+1)-th largest utility
    among the committee's members. The optional intrinsic utility vector u
    (length m) turns rankings into utilities: a voter's t-th ranked
    alternative is worth u[t-1].
    """

    w: tuple
    u: tuple = None

    def __post_init__(self):
        w = tuple(Fraction(x) for x in self.w)
        if any(x < 0 for x in w):
            raise DomainError("OWA weights must be nonnegative")
        object.__setattr__(self, "w", w)
        if self.u is not None:
            object.__setattr__(self, "u", tuple(Fraction(x) for x in self.u))

    @property
    def k(self):
        return len(self.w)


@dataclass(frozen=True)
class PositionalVector:
    """Positional scoring over rankings: integer s_1 >= ... >= s_m, s_1 > s_m.

    Decisions are single alternatives.
    """

    s: tuple

    def __post_init__(self):
        s = tuple(self.s)
        if any(not isinstance(x, int) for x in s):
            raise DomainError("positional scores must be integers")
        if len(s) < 2 or any(s[i] < s[i + 1] for i in range(len(s) - 1)) or s[0] <= s[-1]:
            raise DomainError("positional scores must be non-increasing with s_1 > s_m")
        object.__setattr__(self, "s", s)

    @property
    def m(self):
        return len(self.s)


def plurality_vector(m):
    return PositionalVector((1,) + (0,) * (m - 1))


def borda_vector(m):
    return PositionalVector(tuple(range(m - 1, -1, -1)))


def veto_vector(m):
    return PositionalVector((1,) * (m - 1) + (0,))


def _owa_committee_score(utility_rows, w):
    total = _ZERO
    for count, utilities in utility_rows:
        top = sorted(utilities, reverse=True)[: len(w.w)]
        total += count * sum((wj * xj for wj, xj in zip(w.w, top)), _ZERO)
    return total


def owa_winners(profile, w):
    """Argmax committees under OWA aggregation of cardinal utilities."""
    if profile.variant != "utility":
        raise DomainError("OWA with cardinal utilities needs a utility profile")
    if w.k != profile.space.k:
        raise DomainError(f"need {profile.space.k} OWA weights, got {w.k}")
    rows = [(count, u) for u, count in profile.grouped()]
    best = None
    arg = []
    for committee in enumerate_committees(profile.space):
        utilities = [
            (count, [u[i - 1] for i in committee]) for count, u in rows
        ]
        sc = _owa_committee_score(utilities, w)
        if best is None or sc > best:
            best, arg = sc, [committee]
        elif sc == best:
            arg.append(committee)
    return arg


def positional_scores(profile, vector):
    """Exact positional score per alternative, as a dict."""
    if profile.variant != "ranking":
        raise DomainError("positional scoring needs a ranking profile")
    if vector.m != profile.space.m:
        raise DomainError(f"positional vector sized for m={vector.m}")
    scores = {a: 0 for a in profile.space.alternatives}
    for ranking, count in profile.grouped():
        for position, alt in enumerate(ranking, start=1):
            scores[alt] += count * vector.s[position - 1]
    return scores


def rank_rule_winners(profile, rule):
    """Winners of a ranking-ballot rule.

    Rank-set tables and ordinal OWA return committees; positional vectors
    return single alternatives.
    """
    if profile.variant != "ranking":
        raise DomainError("ranking profile required")
    if isinstance(rule, PositionalVector):
        scores = positional_scores(profile, rule)
        best = max(scores.values())
        return [a for a in profile.space.alternatives if scores[a] == best]
    if isinstance(rule, CsrScoring):
        if rule.space != profile.space:
            raise DomainError("rank-set table space mismatch")
        best = None
        arg = []
        for committee in enumerate_committees(profile.space):
            sc = _ZERO
            for ranking, count in profile.grouped():
                position = {alt: t for t, alt in enumerate(ranking, start=1)}
                rank_set = tuple(sorted(position[a] for a in committee))
                sc += count * rule.table[rank_set]
            if best is None or sc > best:
                best, arg = sc, [committee]
            elif sc == best:
                arg.append(committee)
        return arg
    if isinstance(rule, OwaWeights):
        if rule.u is None:
            raise DomainError("ordinal OWA needs an intrinsic utility vector")
        if len(rule.u) != profile.space.m:
            raise DomainError(f"intrinsic utility vector must have length {profile.space.m}")
        best = None
        arg = []
        rows = [(count, ranking) for ranking, count in profile.grouped()]
        for committee in enumerate_committees(profile.space):
            utilities = []
            for count, ranking in rows:
                position = {alt: t for t, alt in enumerate(ranking, start=1)}
                utilities.append((count, [rule.u[position[a] - 1] for a in committee]))
            sc = _owa_committee_score(utilities, rule)
            if best is None or sc > best:
                best, arg = sc, [committee]
            elif sc == best:
                arg.append(committee)
        return arg
    raise DomainError(f"unsupported ranking rule {type(rule).__name__}")


def _table_lines(text):
    """Yield (line_no, key_part, value_part) for 'key = value' table files.

    '#' starts a comment; blank lines are skipped."""
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ProfileFormatError("expected 'key = value'", line_no)
        key, _, value = line.partition("=")
        yield line_no, key.strip(), value.strip()


def _rational(token, line_no):
    try:
        return parse_rational(token)
    except (DomainError, ValueError) as exc:
        raise ProfileFormatError(str(exc), line_no) from None


def parse_abcs_table(text, space):
    """Intersection-size table file: one 'a,b = q' line per feasible pair."""
    table = {}
    for line_no, key, value in _table_lines(text):
        parts = key.split(",")
        if len(parts) != 2:
            raise ProfileFormatError("key must be 'a,b'", line_no)
        try:
            pair = (int(parts[0]), int(parts[1]))
        except ValueError:
            raise ProfileFormatError("key must be two integers", line_no) from None
        if pair in table:
            raise ProfileFormatError(f"duplicate pair {pair}", line_no)
        table[pair] = _rational(value, line_no)
    return AbcsScoring(space, table)


def parse_gabcs_table(text, space):
    """Sparse (ballot, committee) table file: 'A | W = q' lines with
    space-separated 1-based indices on each side (an empty side is the
    empty set); omitted pairs score 0."""
    table = {}
    for line_no, key, value in _table_lines(text):
        if "|" not in key:
            raise ProfileFormatError("key must be 'ballot | committee'", line_no)
        left, _, right = key.partition("|")
        try:
            ballot = mask_from_members(int(x) for x in left.split())
            w_mask = mask_from_members(int(x) for x in right.split())
        except (ValueError, DomainError) as exc:
            raise ProfileFormatError(str(exc), line_no) from None
        if (ballot, w_mask) in table:
            raise ProfileFormatError("duplicate ballot/committee pair", line_no)
        table[(ballot, w_mask)] = _rational(value, line_no)
    return GabcsScoring(space, table)


def parse_csr_table(text, space):
    """Rank-set table file: 'r1 r2 ... rk = q' lines covering every rank set."""
    table = {}
    for line_no, key, value in _table_lines(text):
        try:
            ranks = tuple(sorted(int(x) for x in key.split()))
        except ValueError:
            raise ProfileFormatError("key must be rank positions", line_no) from None
        if ranks in table:
            raise ProfileFormatError(f"duplicate rank set {ranks}", line_no)
        table[ranks] = _rational(value, line_no)
    return CsrScoring(space, table)
