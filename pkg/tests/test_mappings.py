import random
from fractions import Fraction

import pytest

from conftest import random_histogram
from linvote.axioms import GstAxiom, gst_satisfies
from linvote.core import (
    DomainError,
    Histogram,
    Space,
    enumerate_committees,
    histogram,
    parse_profile,
)
from linvote.mappings import (
    AXIOM_CONTAINS_ALL,
    AXIOM_SATISFIED,
    EQUALS_Q,
    IMPLIES,
    INTERSECT,
    OVERLAP,
    REFINEMENT,
    RESOLUTE,
    SAME,
    SATISFIES,
    SUBSET_Q,
    Hyperplane,
    LinearMapping,
    axiom_mapping,
    combine,
    enumerate_histograms,
    linearize_gabcs,
    linearize_gst,
    merge_linear,
    predicate_mapping,
    property_at,
    rule_mapping,
    sign,
    verify_linearization,
)
from linvote.rules import GabcsScoring, av_vector, cc_vector, pav_vector


def hist_of(text):
    return histogram(parse_profile(text))


def test_sign():
    assert sign(Fraction(5, 3)) == 1
    assert sign(0) == 0
    assert sign(-2) == -1


def test_hyperplane_build_and_dot():
    hp = Hyperplane.build(2, {0b01: 1, 0b10: -1})
    assert hp.coefficient(0b01) == 1
    assert hp.coefficient(0b10) == -1
    assert hp.coefficient(0b00) == 0
    hist = Histogram(2, {0b01: 3, 0b10: 1, 0b11: 5})
    assert hp.dot(hist) == 2

    shifted = Hyperplane.build(2, {0b01: 1}, uniform=Fraction(-1, 2))
    assert shifted.coefficient(0b01) == Fraction(1, 2)
    assert shifted.coefficient(0b11) == Fraction(-1, 2)
    assert shifted.dot(Histogram(2, {0b01: 1, 0b00: 1})) == 0

    probs = [Fraction(1, 4)] * 4
    assert hp.dot_distribution(probs) == 0
    assert shifted.dot_distribution(probs) == Fraction(-1, 4)


def test_hyperplane_rejects_zero_and_bad_masks():
    with pytest.raises(DomainError):
        Hyperplane.build(2, {})
    with pytest.raises(DomainError):
        Hyperplane.build(1, {0b0: -1, 0b1: -1}, uniform=1)  # cancels everywhere
    with pytest.raises(DomainError):
        Hyperplane.build(2, {0b100: 1})
    # zero-valued sparse entries are dropped, not stored
    hp = Hyperplane.build(2, {0b01: 1, 0b10: 0})
    assert hp.sparse == ((0b01, Fraction(1)),)


def test_rule_mapping_basics():
    space = Space(2, 1)
    f = rule_mapping(av_vector(1), space)
    tied = hist_of("m=2 k=1\n1: 1\n1: 2\n")
    assert f(tied) == frozenset({(1,), (2,)})
    assert f.winners(tied) == [(1,), (2,)]
    with pytest.raises(DomainError):
        rule_mapping(av_vector(1))  # vector carries no space


def test_combine_semantics():
    space = Space(4, 2)
    jr = axiom_mapping(GstAxiom("jr", space))
    core = axiom_mapping(GstAxiom("core", space))
    rng = random.Random(73)
    for _ in range(50):
        hist = random_histogram(rng, 4, rng.randint(1, 8))
        jr_set, core_set = jr(hist), core(hist)
        assert combine(INTERSECT, jr, core)(hist) == jr_set & core_set
        assert combine(INTERSECT, jr, core)(hist) == core_set  # core <= jr
        assert combine(EQUALS_Q, jr, jr)(hist) == jr_set
        got = combine(SUBSET_Q, core, jr)(hist)
        assert got == core_set  # subset always holds here
        back = combine(SUBSET_Q, jr, core)(hist)
        assert back == (jr_set if jr_set <= core_set else frozenset())


def test_combine_space_mismatch():
    a = axiom_mapping(GstAxiom("jr", Space(3, 2)))
    b = axiom_mapping(GstAxiom("jr", Space(4, 2)))
    with pytest.raises(DomainError):
        combine(INTERSECT, a, b)
    with pytest.raises(DomainError):
        combine("union", a, a)


def test_property_fixtures():
    pair = Space(2, 1)
    av1 = rule_mapping(av_vector(1), pair)
    split = hist_of("m=2 k=1\n1: 1\n1: 2\n")
    assert not property_at(RESOLUTE, (av1,), split)
    lopsided = hist_of("m=2 k=1\n2: 1\n1: 2\n")
    assert property_at(RESOLUTE, (av1,), lopsided)

    space = Space(4, 2)
    ones = hist_of("m=4 k=2\n2: 1\n")
    pav = rule_mapping(pav_vector(2), space)
    jr = axiom_mapping(GstAxiom("jr", space))
    assert property_at(SATISFIES, (pav, jr), ones)
    assert property_at(REFINEMENT, (rule_mapping(av_vector(2), space), jr), ones)
    assert property_at(AXIOM_SATISFIED, (jr,), ones)
    assert not property_at(AXIOM_CONTAINS_ALL, (jr,), ones)
    assert property_at(AXIOM_CONTAINS_ALL, (jr,), Histogram(4, {0: 3}))

    core = axiom_mapping(GstAxiom("core", space))
    rng = random.Random(99)
    for _ in range(40):
        hist = random_histogram(rng, 4, rng.randint(1, 8))
        assert property_at(IMPLIES, (core, jr), hist) == bool(core(hist))
        assert property_at(SAME, (jr, jr), hist)
        assert property_at(OVERLAP, (pav, jr), hist) == bool(pav(hist) & jr(hist))


def test_property_validation():
    space = Space(2, 1)
    f = rule_mapping(av_vector(1), space)
    hist = Histogram(2, {1: 1})
    with pytest.raises(DomainError):
        property_at(RESOLUTE, (f, f), hist)
    with pytest.raises(DomainError):
        property_at(SAME, (f,), hist)
    with pytest.raises(DomainError):
        property_at("majority", (f, f), hist)


def test_linearize_thiele_m2():
    space = Space(2, 1)
    s0, s1 = Fraction(0), Fraction(1)
    lm = linearize_gabcs(av_vector(1), space)
    assert lm.bank_size == 1
    (hp,) = lm.hyperplanes
    assert hp.coefficient(0b01) == s1 - s0
    assert hp.coefficient(0b10) == s0 - s1
    assert hp.coefficient(0b00) == 0
    assert hp.coefficient(0b11) == 0

    assert lm(hist_of("m=2 k=1\n2: 1\n1: 2\n")) == frozenset({(1,)})
    assert lm(hist_of("m=2 k=1\n1: 1\n1: 2\n")) == frozenset({(1,), (2,)})
    assert lm.winners(Histogram(2, {0b10: 1})) == [(2,)]


def test_linearize_av_m3_matches_rule():
    space = Space(3, 1)
    lm = linearize_gabcs(av_vector(1), space)
    assert lm.bank_size == 3
    mapping = rule_mapping(av_vector(1), space)
    tested, mismatches = verify_linearization(
        mapping, lm, enumerate_histograms(3, 3)
    )
    assert tested == 164  # multisets over 8 ballot types: 8 + 36 + 120
    assert mismatches == []


def test_linearize_never_separated_pair():
    space = Space(3, 2)
    # scoring only ever rewards committee {1,2}; the other two stay tied
    scoring = GabcsScoring(space, {(0b001, 0b011): 1})
    lm = linearize_gabcs(scoring)
    assert lm.bank_size == 2  # pairs ((1,2),(1,3)) and ((1,2),(2,3)) only
    assert lm(Histogram(3, {0b001: 1})) == frozenset({(1, 2)})
    assert lm(Histogram(3, {0b010: 1})) == frozenset(
        {(1, 2), (1, 3), (2, 3)}
    )


def test_all_tied_scoring_selects_everything():
    space = Space(3, 2)
    lm = linearize_gabcs(GabcsScoring(space, {}))
    assert lm.bank_size == 0
    assert lm(Histogram(3, {0b101: 2})) == frozenset(enumerate_committees(space))


def test_linearize_jr_m3():
    space = Space(3, 2)
    axiom = GstAxiom("jr", space)
    lm = linearize_gst(axiom)
    assert lm.bank_size == 3  # one group per committee
    first = lm.hyperplanes[0]  # committee (1,2), outside alternative 3
    assert first.coefficient(0b100) == Fraction(1, 2)
    assert first.coefficient(0b000) == Fraction(-1, 2)
    tested, mismatches = verify_linearization(
        axiom_mapping(axiom), lm, enumerate_histograms(3, 3)
    )
    assert mismatches == []
    assert tested > 100


def test_linearize_core_m2():
    space = Space(2, 1)
    axiom = GstAxiom("core", space)
    lm = linearize_gst(axiom)
    assert lm.bank_size == 2
    tested, mismatches = verify_linearization(
        axiom_mapping(axiom), lm, enumerate_histograms(2, 4)
    )
    assert mismatches == []

    # only empty ballots: every group functional is strictly negative
    assert lm(Histogram(2, {0: 5})) == frozenset({(1,), (2,)})


def test_linear_scale_invariance():
    space = Space(3, 2)
    rng = random.Random(660)
    lms = (
        linearize_gabcs(pav_vector(2), space),
        linearize_gst(GstAxiom("ejr", space)),
    )
    for _ in range(40):
        hist = random_histogram(rng, 3, rng.randint(1, 9))
        for lm in lms:
            assert lm(hist.scale(3)) == lm(hist)


def test_custom_single_hyperplane_mapping():
    space = Space(2, 1)
    hp = Hyperplane.build(2, {0b01: 1, 0b11: 1}, uniform=Fraction(-1, 2))

    def selector(signs):
        return [(1,)] if signs[0] > 0 else [(2,)]

    lm = LinearMapping(space, (hp,), selector, "majority-for-1")
    assert lm(Histogram(2, {0b01: 2, 0b10: 1})) == frozenset({(1,)})
    assert lm(Histogram(2, {0b10: 2, 0b01: 1})) == frozenset({(2,)})
    assert lm(Histogram(2, {0b01: 1, 0b10: 1})) == frozenset({(2,)})  # tie -> 0


def test_merge_linear_matches_combine():
    space = Space(3, 2)
    rng = random.Random(512)
    lm_rule = linearize_gabcs(pav_vector(2), space)
    lm_axiom = linearize_gst(GstAxiom("jr", space))
    f_rule = rule_mapping(pav_vector(2), space)
    f_axiom = axiom_mapping(GstAxiom("jr", space))
    for kind in (INTERSECT, EQUALS_Q, SUBSET_Q):
        merged = merge_linear(kind, lm_rule, lm_axiom)
        assert merged.bank_size == lm_rule.bank_size + lm_axiom.bank_size
        combined = combine(kind, f_rule, f_axiom)
        for _ in range(70):
            hist = random_histogram(rng, 3, rng.randint(1, 10))
            assert merged(hist) == combined(hist)


def test_merge_linear_validation():
    lm1 = linearize_gabcs(av_vector(1), Space(2, 1))
    lm2 = linearize_gabcs(av_vector(1), Space(3, 1))
    with pytest.raises(DomainError):
        merge_linear(INTERSECT, lm1, lm2)
    with pytest.raises(DomainError):
        merge_linear("xor", lm1, lm1)


def test_verify_linearization_detects_mismatches():
    space = Space(3, 1)
    av_map = rule_mapping(av_vector(1), space)
    cc_linear = linearize_gabcs(
        GabcsScoring(space, {(0b001, 0b001): 1})  # only rewards {1} via ballot {1}
    )
    tested, mismatches = verify_linearization(
        av_map, cc_linear, enumerate_histograms(3, 2)
    )
    assert mismatches
    assert len(mismatches) <= 10
    assert all(isinstance(h, Histogram) for h in mismatches)


def test_enumerate_histograms_counts():
    hists = list(enumerate_histograms(2, 3))
    assert len(hists) == 34  # 4 + 10 + 20
    assert len(set(hists)) == 34
    assert all(1 <= h.n <= 3 for h in hists)
    with_empty = list(enumerate_histograms(2, 3, include_empty=True))
    assert len(with_empty) == 35


def test_predicate_mapping_round_trip():
    space = Space(3, 2)
    axiom = GstAxiom("pjr", space)
    direct = axiom_mapping(axiom)
    via_predicate = predicate_mapping(
        space, lambda hist, w: gst_satisfies(hist, axiom, w), "pjr-pred"
    )
    rng = random.Random(31)
    for _ in range(25):
        hist = random_histogram(rng, 3, rng.randint(1, 7))
        assert direct(hist) == via_predicate(hist)
    assert via_predicate.descriptor == "pjr-pred"
