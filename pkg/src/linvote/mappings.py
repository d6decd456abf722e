"""Decision mappings, their combinators, and linear realizations.

A decision mapping sends an approval histogram to a set of committees. Voting
rules (argmax of a committee scoring) and axioms (the set of committees
passing a criterion) both fit this shape, so pairwise properties like
"refines", "co-satisfiable", or "characterized by" reduce to cardinality
checks on combined mappings.

The linear side realizes a mapping as a bank of affine hyperplanes over
ballot-count space plus a selector g that reads only the sign vector. Scores
and group thresholds are exact rationals, so sign evaluation is exact too.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    DomainError,
    Histogram,
    Space,
    enumerate_committees,
    committee_mask,
    members_from_mask,
    sort_committees,
)
from .rules import committee_score, gabcs_winners
from .axioms import GstAxiom, axiom_set, potential_deviating_groups

INTERSECT = "intersect"
EQUALS_Q = "equals?"
SUBSET_Q = "subset?"
COMBINATORS = (INTERSECT, EQUALS_Q, SUBSET_Q)

_ZERO = Fraction(0)


@dataclass(frozen=True)
class DecisionMapping:
    """A named map from approval histograms to committee sets."""

    space: Space
    evaluate: object  # callable Histogram -> iterable of committees
    descriptor: str

    def __call__(self, hist):
        return frozenset(tuple(w) for w in self.evaluate(hist))

    def winners(self, hist):
        return sort_committees(self.evaluate(hist))


def rule_mapping(scoring, space=None, descriptor=None):
    """Wrap a committee scoring (Thiele vector, ABCS, or GABCS table)."""
    space = getattr(scoring, "space", None) or space
    if space is None:
        raise DomainError("rule mapping needs a space")
    name = descriptor or f"rule[{type(scoring).__name__}]"
    return DecisionMapping(
        space, lambda hist: gabcs_winners(hist, scoring, space), name
    )


def sequential_mapping(fn, space, descriptor):
    """Wrap an already-bound sequential evaluator (Histogram -> committees)."""
    return DecisionMapping(space, fn, descriptor)


def axiom_mapping(axiom):
    return DecisionMapping(
        axiom.space,
        lambda hist: axiom_set(hist, axiom),
        f"axiom[{getattr(axiom, 'kind', type(axiom).__name__)}]",
    )


def predicate_mapping(space, satisfies, descriptor):
    """Mapping from a per-committee predicate (hist, committee) -> bool."""

    def evaluate(hist):
        return [w for w in enumerate_committees(space) if satisfies(hist, w)]

    return DecisionMapping(space, evaluate, descriptor)


def combine(kind, f1, f2):
    """Pointwise combinator of two mappings over the same space."""
    if f1.space != f2.space:
        raise DomainError("combinator operands live in different spaces")
    if kind == INTERSECT:
        def evaluate(hist):
            return f1(hist) & f2(hist)
    elif kind == EQUALS_Q:
        def evaluate(hist):
            a = f1(hist)
            return a if a == f2(hist) else frozenset()
    elif kind == SUBSET_Q:
        def evaluate(hist):
            a = f1(hist)
            return a if a <= f2(hist) else frozenset()
    else:
        raise DomainError(f"unknown combinator {kind!r}")
    return DecisionMapping(
        f1.space, evaluate, f"({kind} {f1.descriptor} {f2.descriptor})"
    )


# Pairwise properties, each a cardinality predicate on (combined) mappings.
RESOLUTE = "resolute"
REFINEMENT = "refinement"
OVERLAP = "overlap"
SAME = "same"
AXIOM_SATISFIED = "axiom-satisfied"
IMPLIES = "implies"
CO_SATISFIABLE = "co-satisfiable"
EQUIVALENT = "equivalent"
SATISFIES = "satisfies"
CO_WINNER_SATISFIES = "co-winner-satisfies"
CHARACTERIZED = "characterized"
AXIOM_CONTAINS_ALL = "axiom-contains-all"
TOPK_IN_AXIOM = "topk-subset-of-axiom"

UNARY_PROPERTIES = (RESOLUTE, AXIOM_SATISFIED, AXIOM_CONTAINS_ALL)
BINARY_PROPERTIES = (
    REFINEMENT,
    OVERLAP,
    SAME,
    IMPLIES,
    CO_SATISFIABLE,
    EQUIVALENT,
    SATISFIES,
    CO_WINNER_SATISFIES,
    CHARACTERIZED,
)


def property_at(prop, operands, hist):
    """Evaluate one property of the given mappings at one histogram."""
    if prop in UNARY_PROPERTIES:
        if len(operands) != 1:
            raise DomainError(f"{prop} takes one mapping")
        f = operands[0]
        if prop == RESOLUTE:
            return len(f(hist)) == 1
        if prop == AXIOM_SATISFIED:
            return len(f(hist)) > 0
        total = len(list(enumerate_committees(f.space)))
        return len(f(hist)) == total
    if prop not in BINARY_PROPERTIES:
        raise DomainError(f"unknown property {prop!r}")
    if len(operands) != 2:
        raise DomainError(f"{prop} takes two mappings")
    f1, f2 = operands
    if prop in (REFINEMENT, IMPLIES, SATISFIES):
        return len(combine(SUBSET_Q, f1, f2)(hist)) > 0
    if prop in (OVERLAP, CO_SATISFIABLE, CO_WINNER_SATISFIES):
        return len(combine(INTERSECT, f1, f2)(hist)) > 0
    return len(combine(EQUALS_Q, f1, f2)(hist)) > 0


@dataclass(frozen=True)
class Hyperplane:
    """Affine functional over ballot counts: sum over ballots A of
    (sparse[A] + uniform) * count(A). Stored sparse; the uniform part applies
    to every ballot, so dot(hist) = sparse . counts + uniform * n.
    """

    m: int
    sparse: tuple  # ((ballot_mask, Fraction), ...) sorted by mask
    uniform: Fraction = _ZERO

    @staticmethod
    def build(m, sparse, uniform=_ZERO):
        uniform = Fraction(uniform)
        cleaned = tuple(
            sorted(
                (int(a), Fraction(c))
                for a, c in dict(sparse).items()
                if Fraction(c) != 0
            )
        )
        for a, _ in cleaned:
            if not 0 <= a < (1 << m):
                raise DomainError(f"ballot mask {a} out of range for m={m}")
        hp = Hyperplane(m, cleaned, uniform)
        if hp.is_zero():
            raise DomainError("zero hyperplane")
        return hp

    def is_zero(self):
        if self.uniform == 0:
            return not self.sparse
        if len(self.sparse) < (1 << self.m):
            return False
        return all(c == -self.uniform for _, c in self.sparse)

    def coefficient(self, ballot_mask):
        for a, c in self.sparse:
            if a == ballot_mask:
                return c + self.uniform
        return self.uniform

    def dot(self, hist):
        lookup = hist.count
        acc = sum((c * lookup(a) for a, c in self.sparse), _ZERO)
        return acc + self.uniform * hist.n

    def dot_distribution(self, probabilities):
        """Same functional applied to a ballot probability vector (sums to 1)."""
        total = sum((c * probabilities[a] for a, c in self.sparse), _ZERO)
        return total + self.uniform


def sign(value):
    return (value > 0) - (value < 0)


@dataclass(frozen=True)
class LinearMapping:
    """Hyperplane bank plus a selector from sign vectors to committees."""

    space: Space
    hyperplanes: tuple
    selector: object  # callable sign-vector -> iterable of committees
    descriptor: str

    @property
    def bank_size(self):
        return len(self.hyperplanes)

    def sign_vector(self, hist):
        return tuple(sign(h.dot(hist)) for h in self.hyperplanes)

    def __call__(self, hist):
        return frozenset(tuple(w) for w in self.selector(self.sign_vector(hist)))

    def winners(self, hist):
        return sort_committees(self.selector(self.sign_vector(hist)))

    def as_mapping(self):
        return DecisionMapping(self.space, self.winners, self.descriptor)


def linearize_gabcs(scoring, space=None, descriptor=None):
    """Realize a committee-scoring rule with one hyperplane per committee pair.

    The plane for pair (i, j) carries the scorewise difference s(A, W_i) -
    s(A, W_j) at every ballot A, so its sign at a histogram is the sign of the
    total score difference. A committee wins iff it loses no pairwise
    comparison. Bank size is C(m,k) choose 2; building it enumerates all 2^m
    ballots, which caps practical m well below the package-wide limit.
    """
    space = getattr(scoring, "space", None) or space
    if space is None:
        raise DomainError("linearization needs a space")
    committees = list(enumerate_committees(space))
    masks = [committee_mask(w) for w in committees]
    per_ballot = []
    for w_mask in masks:
        per_ballot.append(
            [scoring.ballot_score(a, w_mask) for a in range(1 << space.m)]
        )
    hyperplanes = []
    pair_index = {}
    for i in range(len(committees)):
        for j in range(i + 1, len(committees)):
            diff = {
                a: per_ballot[i][a] - per_ballot[j][a]
                for a in range(1 << space.m)
                if per_ballot[i][a] != per_ballot[j][a]
            }
            if not diff:
                # The scoring never separates this pair; their comparison is
                # a constant tie and contributes no hyperplane.
                pair_index[(i, j)] = None
                continue
            pair_index[(i, j)] = len(hyperplanes)
            hyperplanes.append(
                Hyperplane(space.m, tuple(sorted(diff.items())), _ZERO)
            )

    def pair_sign(signs, i, j):
        if i == j:
            return 0
        idx = pair_index[(i, j)] if i < j else pair_index[(j, i)]
        if idx is None:
            return 0
        return signs[idx] if i < j else -signs[idx]

    def selector(signs):
        out = []
        for i, w in enumerate(committees):
            if all(
                pair_sign(signs, i, j) >= 0 for j in range(len(committees))
            ):
                out.append(w)
        return out

    name = descriptor or f"linear[{type(scoring).__name__}]"
    return LinearMapping(space, tuple(hyperplanes), selector, name)


def linearize_gst(axiom, descriptor=None):
    """Realize a group-stability axiom: one hyperplane per (committee, group).

    Each potential deviating group G with threshold tau yields the functional
    indicator(G) - tau/k, whose sign at a histogram is negative exactly when
    the group stays below its proportionality threshold. A committee is in the
    axiom set iff all of its group signs are strictly negative.
    """
    space = axiom.space
    committees = list(enumerate_committees(space))
    hyperplanes = []
    spans = []  # (start, end) per committee
    tau_over_k = {}
    for w in committees:
        start = len(hyperplanes)
        for group in potential_deviating_groups(axiom, w):
            member = group.member
            sparse = {
                a: Fraction(1)
                for a in range(1 << space.m)
                if member(a)
            }
            uniform = -Fraction(group.threshold, space.k)
            if not sparse and uniform == 0:
                continue
            hyperplanes.append(
                Hyperplane(space.m, tuple(sorted(sparse.items())), uniform)
            )
        spans.append((start, len(hyperplanes)))

    def selector(signs):
        out = []
        for w, (start, end) in zip(committees, spans):
            if all(signs[t] < 0 for t in range(start, end)):
                out.append(w)
        return out

    name = descriptor or f"linear[axiom:{axiom.kind}]"
    return LinearMapping(space, tuple(hyperplanes), selector, name)


def merge_linear(kind, lm1, lm2, descriptor=None):
    """Closure under combinators: concatenate banks, compose selectors."""
    if lm1.space != lm2.space:
        raise DomainError("combinator operands live in different spaces")
    if kind not in COMBINATORS:
        raise DomainError(f"unknown combinator {kind!r}")
    split = lm1.bank_size
    sel1, sel2 = lm1.selector, lm2.selector

    def selector(signs):
        a = frozenset(tuple(w) for w in sel1(signs[:split]))
        b = frozenset(tuple(w) for w in sel2(signs[split:]))
        if kind == INTERSECT:
            return a & b
        if kind == EQUALS_Q:
            return a if a == b else frozenset()
        return a if a <= b else frozenset()

    name = descriptor or f"({kind} {lm1.descriptor} {lm2.descriptor})"
    return LinearMapping(
        lm1.space, lm1.hyperplanes + lm2.hyperplanes, selector, name
    )


def verify_linearization(mapping, linear, histograms):
    """Compare a mapping against its linear form on given histograms.

    Returns (tested, mismatches) where mismatches is a list of offending
    histograms (capped at 10).
    """
    tested = 0
    mismatches = []
    for hist in histograms:
        tested += 1
        if mapping(hist) != linear(hist):
            if len(mismatches) < 10:
                mismatches.append(hist)
    return tested, mismatches


def enumerate_histograms(m, max_n, include_empty=False):
    """All approval histograms over m alternatives with 1 <= n <= max_n
    (0 <= n if include_empty). Exponential in 2^m; intended for m <= 3 or
    tiny max_n."""
    num_types = 1 << m

    def rec(idx, remaining, acc):
        if idx == num_types - 1:
            if remaining or acc:
                final = dict(acc)
                if remaining:
                    final[num_types - 1] = remaining
                yield Histogram(m, final)
            elif include_empty:
                yield Histogram(m, {})
            return
        for c in range(remaining + 1):
            nxt = dict(acc)
            if c:
                nxt[idx] = c
            yield from rec(idx + 1, remaining - c, nxt)

    for n in range(0 if include_empty else 1, max_n + 1):
        yield from rec(0, n, {})
