"""Shared vocabulary for approval-based committee voting.

Alternatives are the 1-based indices 1..m (m <= 16). An approval ballot is a
subset of them stored as an int bitmask (bit i-1 set means alternative i is
approved), a committee is a sorted tuple of k indices, and a profile is an
ordered multiset of ballots. Histograms collapse a profile to sparse
ballot-type counts; every rule and axiom in this package evaluates on the
histogram. All score and threshold arithmetic is exact (ints and
fractions.Fraction); floats never enter a comparison.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

MAX_ALTERNATIVES = 16

APPROVAL = "approval"
RANKING = "ranking"
UTILITY = "utility"


class DomainError(ValueError):
    """Invalid domain input (bad profile, dimension mismatch, cap exceeded)."""


class ProfileFormatError(DomainError):
    """Malformed profile text; carries a 1-based line number when known."""

    def __init__(self, message, line_no=None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


@dataclass(frozen=True)
class Space:
    """The (m, k) pair: m alternatives, committees of size k."""

    m: int
    k: int

    def __post_init__(self):
        if not 1 <= self.k <= self.m:
            raise DomainError(f"need 1 <= k <= m, got m={self.m} k={self.k}")
        if self.m > MAX_ALTERNATIVES:
            raise DomainError(f"m={self.m} exceeds the cap of {MAX_ALTERNATIVES}")

    @property
    def alternatives(self):
        return range(1, self.m + 1)

    @property
    def full_mask(self):
        return (1 << self.m) - 1


def mask_from_members(members):
    """Bitmask for an iterable of 1-based alternative indices."""
    mask = 0
    for i in members:
        mask |= 1 << (i - 1)
    return mask


def members_from_mask(mask):
    """Sorted tuple of 1-based indices present in a bitmask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def enumerate_committees(space):
    """All k-committees of [m], lexicographically ordered by member tuple."""
    return [tuple(c) for c in itertools.combinations(space.alternatives, space.k)]


def committee_mask(committee):
    return mask_from_members(committee)


def enumerate_committee_masks(space):
    return [mask_from_members(c) for c in enumerate_committees(space)]


def sort_committees(committees):
    """Canonical order for committee collections: lexicographic on members."""
    return sorted(set(tuple(sorted(c)) for c in committees))


class Histogram:
    """Sparse ballot-type counts of an approval profile.

    Iteration is deterministic: ascending bitmask value. Equality and hashing
    ignore insertion order, so any reordering of the underlying profile yields
    an identical histogram.
    """

    __slots__ = ("m", "_counts", "n")

    def __init__(self, m, counts):
        self.m = m
        full = (1 << m) - 1
        clean = {}
        n = 0
        for mask, count in counts.items():
            if count < 0:
                raise DomainError("negative ballot count")
            if mask & ~full:
                raise DomainError(f"ballot {bin(mask)} outside [1,{m}]")
            if count:
                clean[mask] = clean.get(mask, 0) + count
                n += count
        self._counts = clean
        self.n = n

    def items(self):
        """(ballot mask, count) pairs in ascending mask order."""
        return sorted(self._counts.items())

    def count(self, mask):
        return self._counts.get(mask, 0)

    def scale(self, t):
        return Histogram(self.m, {a: t * c for a, c in self._counts.items()})

    def __eq__(self, other):
        return (
            isinstance(other, Histogram)
            and self.m == other.m
            and self._counts == other._counts
        )

    def __hash__(self):
        return hash((self.m, tuple(self.items())))

    def __repr__(self):
        body = ", ".join(f"{members_from_mask(a)}x{c}" for a, c in self.items())
        return f"Histogram(m={self.m}, n={self.n}, {{{body}}})"


class Profile:
    """Ordered multiset of ballots over a Space.

    variant is one of 'approval' (int bitmask ballots), 'ranking' (total
    orders as m-tuples, leftmost = top), or 'utility' (m-tuples of Fractions,
    entry i-1 = utility of alternative i). Entries store (ballot, count) so
    file round trips preserve grouping.
    """

    __slots__ = ("space", "variant", "entries")

    def __init__(self, space, entries, variant=APPROVAL):
        if variant not in (APPROVAL, RANKING, UTILITY):
            raise DomainError(f"unknown profile variant {variant!r}")
        self.space = space
        self.variant = variant
        self.entries = []
        for ballot, count in entries:
            if count <= 0:
                raise DomainError("ballot counts must be positive")
            self._check_ballot(ballot)
            self.entries.append((ballot, count))

    def _check_ballot(self, ballot):
        m = self.space.m
        if self.variant == APPROVAL:
            if not isinstance(ballot, int) or ballot & ~self.space.full_mask:
                raise DomainError(f"approval ballot {ballot!r} outside [1,{m}]")
        elif self.variant == RANKING:
            if sorted(ballot) != list(range(1, m + 1)):
                raise DomainError(f"ranking {ballot!r} is not a total order of 1..{m}")
        else:
            if len(ballot) != m:
                raise DomainError(f"utility vector {ballot!r} must have length {m}")

    @property
    def n(self):
        return sum(c for _, c in self.entries)

    def ballots(self):
        """Expanded ballot sequence (respects multiplicities)."""
        for ballot, count in self.entries:
            for _ in range(count):
                yield ballot

    def grouped(self):
        """(ballot, total count) pairs with duplicates merged, input order."""
        totals = {}
        order = []
        for ballot, count in self.entries:
            if ballot not in totals:
                order.append(ballot)
            totals[ballot] = totals.get(ballot, 0) + count
        return [(b, totals[b]) for b in order]


def histogram(profile):
    """Collapse an approval profile to its Histogram."""
    if profile.variant != APPROVAL:
        raise DomainError(f"histogram needs an approval profile, got {profile.variant}")
    counts = {}
    for mask, count in profile.entries:
        counts[mask] = counts.get(mask, 0) + count
    return Histogram(profile.space.m, counts)


def profile_from_masks(space, masks):
    return Profile(space, [(mask, 1) for mask in masks], APPROVAL)


def profile_from_histogram(hist, k):
    space = Space(hist.m, k)
    return Profile(space, list(hist.items()), APPROVAL)


def parse_rational(text):
    """Exact rational from 'p/q', integer, or decimal text."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"bad rational {text!r}: {exc}") from None


def format_rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_profile(text, variant=APPROVAL):
    """Parse the profile file format.

    First non-comment line: ``m=<int> k=<int>``. Every following line:
    ``<count>: <entries>`` where entries are approval indices (any number,
    possibly none), a full ranking (m indices, leftmost = top), or m utilities
    (decimal or p/q). '#' starts a comment; 1-based indices throughout.
    """
    header = None
    entries = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            header = _parse_header(line, line_no)
            continue
        count, ballot = _parse_entry(line, header, variant, line_no)
        entries.append((ballot, count))
    if header is None:
        raise ProfileFormatError("missing 'm=<int> k=<int>' header")
    return Profile(header, entries, variant)


def _parse_header(line, line_no):
    parts = line.split()
    fields = {}
    for part in parts:
        key, sep, value = part.partition("=")
        if not sep or key not in ("m", "k") or key in fields:
            raise ProfileFormatError(f"bad header field {part!r}", line_no)
        try:
            fields[key] = int(value)
        except ValueError:
            raise ProfileFormatError(f"bad integer in {part!r}", line_no) from None
    if set(fields) != {"m", "k"}:
        raise ProfileFormatError("header must be 'm=<int> k=<int>'", line_no)
    try:
        return Space(fields["m"], fields["k"])
    except DomainError as exc:
        raise ProfileFormatError(str(exc), line_no) from None


def _parse_entry(line, space, variant, line_no):
    head, sep, rest = line.partition(":")
    if not sep:
        raise ProfileFormatError("expected '<count>: <entries>'", line_no)
    try:
        count = int(head)
    except ValueError:
        raise ProfileFormatError(f"bad count {head.strip()!r}", line_no) from None
    if count <= 0:
        raise ProfileFormatError(f"count must be positive, got {count}", line_no)
    tokens = rest.split()
    m = space.m
    if variant == APPROVAL:
        members = _parse_indices(tokens, m, line_no)
        if len(set(members)) != len(members):
            raise ProfileFormatError("duplicate index in approval ballot", line_no)
        return count, mask_from_members(members)
    if variant == RANKING:
        members = _parse_indices(tokens, m, line_no)
        if sorted(members) != list(range(1, m + 1)):
            raise ProfileFormatError(f"ranking must list 1..{m} exactly once", line_no)
        return count, tuple(members)
    if len(tokens) != m:
        raise ProfileFormatError(f"need {m} utilities, got {len(tokens)}", line_no)
    try:
        return count, tuple(parse_rational(t) for t in tokens)
    except DomainError as exc:
        raise ProfileFormatError(str(exc), line_no) from None


def _parse_indices(tokens, m, line_no):
    members = []
    for tok in tokens:
        try:
            i = int(tok)
        except ValueError:
            raise ProfileFormatError(f"bad index {tok!r}", line_no) from None
        if not 1 <= i <= m:
            raise ProfileFormatError(f"index {i} outside [1,{m}]", line_no)
        members.append(i)
    return members


def serialize_profile(profile):
    """Inverse of parse_profile (round-trip stable on the histogram)."""
    lines = [f"m={profile.space.m} k={profile.space.k}"]
    for ballot, count in profile.entries:
        if profile.variant == APPROVAL:
            body = " ".join(str(i) for i in members_from_mask(ballot))
        elif profile.variant == RANKING:
            body = " ".join(str(i) for i in ballot)
        else:
            body = " ".join(format_rational(q) for q in ballot)
        lines.append(f"{count}: {body}".rstrip())
    return "\n".join(lines) + "\n"


def binomial(n, k):
    return math.comb(n, k) if 0 <= k <= n else 0
