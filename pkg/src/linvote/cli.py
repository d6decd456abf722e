"""Command-line driver.

Every subcommand prints one canonical JSON document to stdout (sorted keys,
committees as sorted index arrays, rationals as 'p/q' strings) so identical
inputs and seeds produce byte-identical output; timing diagnostics go to
stderr. Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import functools
import hashlib
import json
import math
import sys
import time
from fractions import Fraction
from pathlib import Path

import click

from . import __version__
from .core import (
    APPROVAL,
    DomainError,
    Histogram,
    Space,
    committee_mask,
    enumerate_committees,
    format_rational,
    histogram,
    parse_profile,
    parse_rational,
    serialize_profile,
    _parse_header,
)
from .rules import (
    KEEP_ALL,
    LEXICOGRAPHIC,
    AbcsScoring,
    CsrScoring,
    GabcsScoring,
    OwaWeights,
    PositionalVector,
    ThieleVector,
    av_vector,
    borda_vector,
    cc_vector,
    committee_score,
    gabcs_winners,
    owa_winners,
    parse_abcs_table,
    parse_csr_table,
    parse_gabcs_table,
    pav_vector,
    per_size_scorings,
    plurality_vector,
    positional_scores,
    rank_rule_winners,
    reverse_sequential_winners,
    sequential_winners,
    veto_vector,
)
from .axioms import (
    AXIOM_KINDS,
    ApproxCoreParams,
    ApproxGstParams,
    GstAxiom,
    approx_core_satisfies,
    approx_gst_satisfies,
    axiom_set,
    gst_satisfies,
)
from .mappings import (
    DecisionMapping,
    axiom_mapping,
    enumerate_histograms,
    linearize_gabcs,
    linearize_gst,
    predicate_mapping,
    property_at,
    rule_mapping,
    sequential_mapping,
    verify_linearization,
)
from .likelihood import (
    IndependentApprovalDist,
    decay_classify,
    mc_event_probability,
    regime_predict,
    sample_profile,
    top_k_committees,
    _trial_generator,
)
from .learning import (
    FEATURE_CLASSES,
    feature_map,
    learn_maximizer,
    ndim_bounds,
    ndim_table,
    parse_labeled_samples,
    sample_error,
)

RULE_PRESETS = {"av": av_vector, "pav": pav_vector, "cc": cc_vector}
POS_PRESETS = {
    "plurality": plurality_vector,
    "borda": borda_vector,
    "veto": veto_vector,
}

RULE_RULE_PROPS = ("resolute", "refinement", "overlap", "same")
AXIOM_AXIOM_PROPS = (
    "axiom-satisfied",
    "implies",
    "co-satisfiable",
    "equivalent",
    "axiom-contains-all",
)
MIXED_PROPS = ("satisfies", "co-winner-satisfies", "characterized")
PROPERTY_CHOICES = RULE_RULE_PROPS + AXIOM_AXIOM_PROPS + MIXED_PROPS
EVENT_CHOICES = PROPERTY_CHOICES + ("topk-subset-of-axiom",)

NDIM_CLASSES = (
    "thiele", "abcs", "gabcs", "csr", "owa", "oowa", "pos",
    "gst", "sgst", "acore", "agst", "agst-sym", "axioms",
    "linear", "paramhyp",
)


def canonical(value):
    """Fold a payload into JSON-encodable form with stable text for exact
    rationals and non-finite floats."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
        return value
    if isinstance(value, dict):
        return {str(k): canonical(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [canonical(v) for v in items]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def emit(payload, out_path=None):
    payload = dict(payload)
    payload["version"] = __version__
    text = json.dumps(canonical(payload), sort_keys=True, indent=2)
    if out_path is not None:
        Path(out_path).write_text(text + "\n", "utf-8")
    click.echo(text)


def guarded(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        try:
            return fn(*args, **kwargs)
        except DomainError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)
        except OSError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)
        finally:
            click.echo(
                f"wall_time_s={time.perf_counter() - start:.3f}", err=True
            )
    return wrapper


class BoundRule:
    """A rule spec resolved against a space: winners, optional per-decision
    score, optional histogram mapping and linearization."""

    def __init__(self, spec, variant, winners, score=None, scoring=None,
                 space=None, thiele=None, sequential=None, atomic=False):
        self.spec = spec
        self.variant = variant
        self.winners = winners           # Profile -> list of decisions
        self._score = score              # (Profile, decision) -> Fraction
        self.scoring = scoring           # linearizable committee scoring
        self.space = space
        self.thiele = thiele             # ThieleVector when applicable
        self.sequential = sequential     # Histogram -> committees
        self.atomic = atomic             # decisions are single alternatives

    def score(self, profile, decision):
        if self._score is None:
            raise DomainError(f"rule {self.spec!r} has no per-decision score")
        return self._score(profile, decision)

    def mapping(self):
        if self.scoring is not None:
            return rule_mapping(self.scoring, self.space, descriptor=self.spec)
        if self.sequential is not None:
            return sequential_mapping(self.sequential, self.space, self.spec)
        raise DomainError(
            f"rule {self.spec!r} is not a histogram mapping (ranking or "
            f"utility ballots)"
        )

    def linear(self):
        if self.scoring is None:
            raise DomainError(f"rule {self.spec!r} has no linearization")
        return linearize_gabcs(self.scoring, self.space, descriptor=self.spec)


def _rationals(text):
    return tuple(parse_rational(x) for x in text.split(","))


def resolve_rule(spec, space, tie_mode=KEEP_ALL):
    name, _, arg = spec.partition(":")
    if name in RULE_PRESETS or name == "thiele":
        if name == "thiele":
            values = _rationals(arg)
            if len(values) != space.k + 1:
                raise DomainError(
                    f"counting vector needs {space.k + 1} entries for k={space.k}"
                )
            vector = ThieleVector(values)
        else:
            if arg:
                raise DomainError(f"{name} takes no argument")
            vector = RULE_PRESETS[name](space.k)
        return BoundRule(
            spec, APPROVAL,
            lambda p: gabcs_winners(histogram(p), vector, space),
            score=lambda p, w: committee_score(
                histogram(p), vector, _mask(w)
            ),
            scoring=vector, space=space, thiele=vector,
        )
    if name in ("abcs", "gabcs", "csr"):
        text = Path(arg).read_text()
        if name == "abcs":
            scoring = parse_abcs_table(text, space)
        elif name == "gabcs":
            scoring = parse_gabcs_table(text, space)
        else:
            table = parse_csr_table(text, space)
            return BoundRule(
                spec, "ranking",
                lambda p: rank_rule_winners(p, table),
                score=lambda p, w: _csr_score(p, table, w),
            )
        return BoundRule(
            spec, APPROVAL,
            lambda p: gabcs_winners(histogram(p), scoring, space),
            score=lambda p, w: committee_score(
                histogram(p), scoring, _mask(w)
            ),
            scoring=scoring, space=space,
        )
    if name in ("seq", "revseq"):
        base = resolve_rule(arg, space, tie_mode)
        if base.scoring is None:
            raise DomainError("sequential wrappers need a committee scoring")
        if name == "seq":
            sizes = range(1, space.k + 1)
            def run(hist):
                return sequential_winners(
                    hist, space, per_size_scorings(base.scoring, sizes),
                    tie_mode,
                )
        else:
            sizes = range(space.m - 1, space.k - 1, -1)
            def run(hist):
                return reverse_sequential_winners(
                    hist, space, per_size_scorings(base.scoring, sizes),
                    tie_mode,
                )
        return BoundRule(
            spec, APPROVAL, lambda p: run(histogram(p)),
            space=space, sequential=run,
        )
    if name == "owa":
        w_part, _, u_part = arg.partition(";")
        weights = _rationals(w_part)
        if len(weights) != space.k:
            raise DomainError(f"need {space.k} ordered weights")
        if u_part:
            u = _rationals(u_part)
            if len(u) != space.m:
                raise DomainError(f"intrinsic utilities need length {space.m}")
            rule = OwaWeights(weights, u)
            return BoundRule(
                spec, "ranking", lambda p: rank_rule_winners(p, rule),
            )
        rule = OwaWeights(weights)
        return BoundRule(
            spec, "utility", lambda p: owa_winners(p, rule),
        )
    if name == "pos":
        if arg in POS_PRESETS:
            vector = POS_PRESETS[arg](space.m)
        else:
            values = tuple(int(x) for x in arg.split(","))
            if len(values) != space.m:
                raise DomainError(f"need {space.m} position scores")
            vector = PositionalVector(values)
        return BoundRule(
            spec, "ranking", lambda p: rank_rule_winners(p, vector),
            score=lambda p, a: Fraction(positional_scores(p, vector)[a]),
            atomic=True,
        )
    raise DomainError(f"unknown rule spec {spec!r}")


def _mask(committee):
    return committee_mask(committee)


def _csr_score(profile, table, committee):
    total = Fraction(0)
    for ranking, count in profile.grouped():
        position = {alt: t for t, alt in enumerate(ranking, start=1)}
        rank_set = tuple(sorted(position[a] for a in committee))
        total += count * table.table[rank_set]
    return total


class BoundAxiom:
    def __init__(self, spec, kind, satisfies, space, gst=None):
        self.spec = spec
        self.kind = kind
        self.satisfies = satisfies       # (Histogram, committee) -> bool
        self.space = space
        self.gst = gst                   # underlying GstAxiom when exact

    def mapping(self):
        if self.gst is not None:
            return axiom_mapping(self.gst)
        return predicate_mapping(self.space, self.satisfies, self.spec)

    def linear(self):
        if self.gst is None:
            raise DomainError(f"axiom {self.spec!r} has no linearization")
        return linearize_gst(self.gst, descriptor=self.spec)


def resolve_axiom(spec, space):
    name, _, arg = spec.partition(":")
    if name in AXIOM_KINDS:
        if arg:
            raise DomainError(f"{name} takes no argument")
        ax = GstAxiom(name, space)
        return BoundAxiom(
            spec, name, lambda h, w: gst_satisfies(h, ax, w), space, gst=ax
        )
    if name == "acore":
        try:
            alpha_text, beta_text = arg.split(",")
        except ValueError:
            raise DomainError("expected acore:<alpha>,<beta>") from None
        params = ApproxCoreParams(
            space, parse_rational(alpha_text), parse_rational(beta_text)
        )
        return BoundAxiom(
            spec, "acore",
            lambda h, w: approx_core_satisfies(h, params, w), space,
        )
    if name == "agst":
        base_name, _, beta_text = arg.partition(":")
        if base_name not in AXIOM_KINDS or not beta_text:
            raise DomainError("expected agst:<base>:<beta>")
        params = ApproxGstParams(
            GstAxiom(base_name, space), parse_rational(beta_text)
        )
        return BoundAxiom(
            spec, "agst",
            lambda h, w: approx_gst_satisfies(h, params, w), space,
        )
    raise DomainError(f"unknown axiom spec {spec!r}")


def load_profile(path, variant):
    data = Path(path).read_bytes()
    profile = parse_profile(data.decode("utf-8"), variant)
    return profile, hashlib.sha256(data).hexdigest()


def parse_committee_flag(text, space, size=None):
    try:
        members = tuple(sorted(int(x) for x in text.split(",")))
    except ValueError:
        raise click.UsageError(f"bad committee {text!r}")
    if len(set(members)) != len(members):
        raise click.UsageError(f"repeated index in committee {text!r}")
    if any(not 1 <= a <= space.m for a in members):
        raise click.UsageError(f"committee {text!r} outside 1..{space.m}")
    size = space.k if size is None else size
    if len(members) != size:
        raise click.UsageError(
            f"committee {text!r} has {len(members)} members, expected {size}"
        )
    return members


def parse_dist(p_text, m_flag):
    parts = p_text.split(",")
    try:
        values = [parse_rational(x) for x in parts]
    except DomainError as exc:
        raise click.UsageError(str(exc)) from None
    if len(values) == 1:
        if m_flag is None:
            raise click.UsageError("scalar --p needs --m to broadcast")
        values = values * m_flag
    elif m_flag is not None and m_flag != len(values):
        raise click.UsageError(f"--m {m_flag} != {len(values)} probabilities")
    return IndependentApprovalDist(tuple(values))


@click.group()
@click.version_option(version=__version__, prog_name="linvote")
def main():
    """Committee rules, proportionality axioms, and their analysis."""


tie_mode_option = click.option(
    "--tie-mode", type=click.Choice([KEEP_ALL, LEXICOGRAPHIC]),
    default=KEEP_ALL, show_default=True,
    help="Round-tie handling inside sequential rules.",
)


@main.command()
@click.option("--rule", required=True, help="Rule spec (e.g. pav, thiele:0,1,3/2).")
@click.option("--profile", "profile_path", required=True, help="Profile file.")
@tie_mode_option
@guarded
def winners(rule, profile_path, tie_mode):
    """Winning decisions of a rule on a profile."""
    peek = _peek_space(profile_path)
    bound = resolve_rule(rule, peek, tie_mode)
    profile, digest = load_profile(profile_path, bound.variant)
    result = bound.winners(profile)
    emit({
        "command": "winners",
        "rule": rule,
        "profile": profile_path,
        "profile_sha256": digest,
        "m": profile.space.m,
        "k": profile.space.k,
        "winners": sorted(result),
    })


def _peek_space(path):
    for raw in Path(path).read_text("utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            return _parse_header(line, 1)
    raise DomainError(f"{path}: missing profile header")


@main.command()
@click.option("--rule", required=True)
@click.option("--profile", "profile_path", required=True)
@click.option("--committee", required=True,
              help="Committee as comma-joined indices (one index for "
                   "single-alternative rules).")
@tie_mode_option
@guarded
def score(rule, profile_path, committee, tie_mode):
    """Exact score of one decision under a rule."""
    peek = _peek_space(profile_path)
    bound = resolve_rule(rule, peek, tie_mode)
    profile, digest = load_profile(profile_path, bound.variant)
    if bound.atomic:
        decision = parse_committee_flag(committee, profile.space, size=1)[0]
        echo = [decision]
    else:
        decision = parse_committee_flag(committee, profile.space)
        echo = list(decision)
    emit({
        "command": "score",
        "rule": rule,
        "profile": profile_path,
        "profile_sha256": digest,
        "committee": echo,
        "score": bound.score(profile, decision),
    })


@main.command()
@click.option("--axiom", "axiom_spec", required=True,
              help="Axiom spec (jr, pjr, ejr, pjr+, ejr+, fjr, core, "
                   "acore:<a>,<b>, agst:<base>:<b>).")
@click.option("--profile", "profile_path", required=True)
@click.option("--committee", default=None,
              help="Check one committee; omit to list all satisfying ones.")
@guarded
def axiom(axiom_spec, profile_path, committee):
    """Axiom check for one committee, or the full satisfying set."""
    profile, digest = load_profile(profile_path, APPROVAL)
    bound = resolve_axiom(axiom_spec, profile.space)
    hist = histogram(profile)
    payload = {
        "command": "axiom",
        "axiom": axiom_spec,
        "profile": profile_path,
        "profile_sha256": digest,
        "m": profile.space.m,
        "k": profile.space.k,
    }
    if committee is not None:
        w = parse_committee_flag(committee, profile.space)
        payload["committee"] = list(w)
        payload["satisfied"] = bound.satisfies(hist, w)
    else:
        payload["satisfying"] = [
            list(w) for w in enumerate_committees(profile.space)
            if bound.satisfies(hist, w)
        ]
    emit(payload)


def _resolve_operands(prop, space, tie_mode, rule, rule2, axiom_spec,
                      axiom2):
    def need(flag, value):
        if value is None:
            raise click.UsageError(f"property {prop!r} needs {flag}")
        return value

    def rule_map(spec):
        bound = resolve_rule(spec, space, tie_mode)
        if bound.variant != APPROVAL:
            raise DomainError(
                f"property evaluation needs approval rules, {spec!r} is not"
            )
        return bound.mapping()

    if prop == "resolute":
        return [rule_map(need("--rule", rule))]
    if prop in RULE_RULE_PROPS:
        return [rule_map(need("--rule", rule)), rule_map(need("--rule2", rule2))]
    if prop in ("axiom-satisfied", "axiom-contains-all"):
        return [resolve_axiom(need("--axiom", axiom_spec), space).mapping()]
    if prop in AXIOM_AXIOM_PROPS:
        return [
            resolve_axiom(need("--axiom", axiom_spec), space).mapping(),
            resolve_axiom(need("--axiom2", axiom2), space).mapping(),
        ]
    return [
        rule_map(need("--rule", rule)),
        resolve_axiom(need("--axiom", axiom_spec), space).mapping(),
    ]


@main.command(name="property")
@click.option("--property", "prop", required=True,
              type=click.Choice(list(PROPERTY_CHOICES)))
@click.option("--profile", "profile_path", required=True)
@click.option("--rule", default=None)
@click.option("--rule2", default=None)
@click.option("--axiom", "axiom_spec", default=None)
@click.option("--axiom2", default=None)
@tie_mode_option
@guarded
def property_cmd(prop, profile_path, rule, rule2, axiom_spec, axiom2,
                 tie_mode):
    """Evaluate a rule/axiom property at one profile."""
    profile, digest = load_profile(profile_path, APPROVAL)
    operands = _resolve_operands(
        prop, profile.space, tie_mode, rule, rule2, axiom_spec, axiom2
    )
    emit({
        "command": "property",
        "property": prop,
        "profile": profile_path,
        "profile_sha256": digest,
        "rule": rule,
        "rule2": rule2,
        "axiom": axiom_spec,
        "axiom2": axiom2,
        "holds": property_at(prop, operands, histogram(profile)),
    })


@main.command(name="verify-linear")
@click.option("--rule", default=None)
@click.option("--axiom", "axiom_spec", default=None)
@click.option("--m", "m", type=int, required=True)
@click.option("--k", "k", type=int, required=True)
@click.option("--max-n", type=int, default=3, show_default=True,
              help="Exhaustive histogram size bound (0 to skip).")
@click.option("--random", "random_count", type=int, default=0,
              show_default=True, help="Extra seeded random histograms.")
@click.option("--seed", type=int, default=None)
@click.option("--n-cap", type=int, default=12, show_default=True,
              help="Voter-count cap for random histograms.")
@tie_mode_option
@guarded
def verify_linear(rule, axiom_spec, m, k, max_n, random_count, seed, n_cap,
                  tie_mode):
    """Compare a mapping against its hyperplane realization."""
    if (rule is None) == (axiom_spec is None):
        raise click.UsageError("pass exactly one of --rule / --axiom")
    space = Space(m, k)
    if rule is not None:
        bound = resolve_rule(rule, space, tie_mode)
        direct, linear = bound.mapping(), bound.linear()
    else:
        bound = resolve_axiom(axiom_spec, space)
        direct, linear = bound.mapping(), bound.linear()
    if random_count and seed is None:
        raise click.UsageError("--random needs --seed")
    hists = []
    if max_n:
        if m > 4:
            raise DomainError("exhaustive check is limited to m <= 4")
        hists.extend(enumerate_histograms(m, max_n))
    for t in range(random_count):
        rng = _trial_generator(seed, t)
        size = int(rng.integers(1, n_cap + 1))
        counts = rng.multinomial(size, [1.0 / (1 << m)] * (1 << m))
        hists.append(
            Histogram(m, {a: int(c) for a, c in enumerate(counts) if c})
        )
    tested, mismatches = verify_linearization(direct, linear, hists)
    emit({
        "command": "verify-linear",
        "rule": rule,
        "axiom": axiom_spec,
        "m": m,
        "k": k,
        "seed": seed,
        "bank_size": linear.bank_size,
        "tested": tested,
        "mismatch_count": len(mismatches),
        "mismatches": [[list(pair) for pair in h.items()] for h in mismatches],
    })


def _regime_for(event, rule_bound, rule2_bound, axiom_bound, dist, k):
    try:
        if event == "resolute" and rule_bound and rule_bound.thiele:
            return regime_predict("resolute", (rule_bound.thiele,), dist, k)
        if event in ("refinement", "same", "overlap") and rule_bound and \
                rule2_bound and rule_bound.thiele and rule2_bound.thiele:
            return regime_predict(
                event, (rule_bound.thiele, rule2_bound.thiele), dist, k
            )
        if event == "satisfies" and rule_bound and rule_bound.thiele and \
                axiom_bound and axiom_bound.kind == "core":
            return regime_predict(
                "satisfies", (rule_bound.thiele, "core"), dist, k
            )
        if event == "topk-subset-of-axiom" and axiom_bound and \
                axiom_bound.kind in ("core", "ejr+"):
            return regime_predict(
                "topk-subset-of-axiom", (axiom_bound.kind,), dist, k
            )
    except DomainError:
        return None
    return None


@main.command()
@click.option("--event", required=True, type=click.Choice(list(EVENT_CHOICES)))
@click.option("--rule", default=None)
@click.option("--rule2", default=None)
@click.option("--axiom", "axiom_spec", default=None)
@click.option("--axiom2", default=None)
@click.option("--p", "p_text", required=True,
              help="Approval probabilities, comma-joined; a scalar "
                   "broadcasts over --m alternatives.")
@click.option("--m", "m_flag", type=int, default=None)
@click.option("--k", "k", type=int, required=True)
@click.option("--n", "n", type=int, default=None)
@click.option("--n-grid", default=None,
              help="Comma-joined electorate sizes for decay classification.")
@click.option("--trials", type=int, required=True)
@click.option("--seed", type=int, required=True)
@click.option("--threads", type=int, default=1, show_default=True)
@click.option("--out", "out_path", default=None,
              help="Also write the report to this file.")
@tie_mode_option
@guarded
def simulate(event, rule, rule2, axiom_spec, axiom2, p_text, m_flag, k, n,
             n_grid, trials, seed, threads, out_path, tie_mode):
    """Monte Carlo probability of a rule/axiom event under ballot sampling."""
    dist = parse_dist(p_text, m_flag)
    space = Space(dist.m, k)
    if (n is None) == (n_grid is None):
        raise click.UsageError("pass exactly one of --n / --n-grid")

    rule_bound = resolve_rule(rule, space, tie_mode) if rule else None
    rule2_bound = resolve_rule(rule2, space, tie_mode) if rule2 else None
    axiom_bound = resolve_axiom(axiom_spec, space) if axiom_spec else None
    axiom2_bound = resolve_axiom(axiom2, space) if axiom2 else None

    if event == "topk-subset-of-axiom":
        if axiom_bound is None:
            raise click.UsageError("event topk-subset-of-axiom needs --axiom")
        tops = top_k_committees(dist, k)
        sat = axiom_bound.satisfies
        predicate = lambda h: all(sat(h, w) for w in tops)
    else:
        def pick(flag, value):
            if value is None:
                raise click.UsageError(f"event {event!r} needs {flag}")
            return value

        for bound in (rule_bound, rule2_bound):
            if bound is not None and bound.variant != APPROVAL:
                raise DomainError("simulation needs approval-ballot rules")
        if event == "resolute":
            operands = [pick("--rule", rule_bound).mapping()]
        elif event in RULE_RULE_PROPS:
            operands = [
                pick("--rule", rule_bound).mapping(),
                pick("--rule2", rule2_bound).mapping(),
            ]
        elif event in ("axiom-satisfied", "axiom-contains-all"):
            operands = [pick("--axiom", axiom_bound).mapping()]
        elif event in AXIOM_AXIOM_PROPS:
            operands = [
                pick("--axiom", axiom_bound).mapping(),
                pick("--axiom2", axiom2_bound).mapping(),
            ]
        else:
            operands = [
                pick("--rule", rule_bound).mapping(),
                pick("--axiom", axiom_bound).mapping(),
            ]
        predicate = lambda h: property_at(event, operands, h)

    payload = {
        "command": "simulate",
        "event": event,
        "rule": rule,
        "rule2": rule2,
        "axiom": axiom_spec,
        "axiom2": axiom2,
        "p": list(dist.p),
        "m": dist.m,
        "k": k,
        "trials": trials,
        "seed": seed,
        "regime": _regime_for(
            event, rule_bound, rule2_bound, axiom_bound, dist, k
        ),
    }
    if n is not None:
        report = mc_event_probability(
            predicate, dist, n, trials, seed, threads=threads
        )
        payload.update({
            "n": n,
            "hits": report.hits,
            "estimate": report.estimate,
            "ci": [report.ci_low, report.ci_high],
        })
    else:
        try:
            grid = [int(x) for x in n_grid.split(",")]
        except ValueError:
            raise click.UsageError(f"bad --n-grid {n_grid!r}") from None
        decay = decay_classify(
            predicate, dist, grid, trials, seed, threads=threads
        )
        payload.update({
            "n_grid": grid,
            "decay_label": decay.label,
            "failure_ratios": list(decay.ratios),
            "rows": [
                {
                    "n": row.n,
                    "hits": row.report.hits,
                    "estimate": row.report.estimate,
                    "failure": row.failure,
                    "ci": [row.report.ci_low, row.report.ci_high],
                }
                for row in decay.rows
            ],
        })
    emit(payload, out_path)


@main.command()
@click.option("--class", "class_name", required=True,
              type=click.Choice(list(FEATURE_CLASSES)))
@click.option("--samples", "samples_path", required=True,
              help="Profile blocks each followed by a 'winners:' line.")
@click.option("--margin", default="1", show_default=True)
@click.option("--test-samples", "test_path", default=None)
@click.option("--u", "u_text", default=None,
              help="Intrinsic utilities for the ordinal weighted class.")
@guarded
def learn(class_name, samples_path, margin, test_path, u_text):
    """Fit maximizer weights reproducing labeled co-winner samples."""
    text = Path(samples_path).read_text("utf-8")
    space = _peek_space(samples_path)
    u = _rationals(u_text) if u_text else None
    fm = feature_map(class_name, space, u=u)
    samples = parse_labeled_samples(text, fm)
    w = learn_maximizer(fm, samples, parse_rational(margin))
    payload = {
        "command": "learn",
        "class": class_name,
        "m": space.m,
        "k": space.k,
        "eta": fm.eta,
        "margin": parse_rational(margin),
        "samples": len(samples),
        "feasible": w is not None,
        "weights": list(w) if w is not None else None,
        "train_error": sample_error(fm, w, samples) if w is not None else None,
        "test_error": None,
    }
    if test_path is not None and w is not None:
        test_samples = parse_labeled_samples(
            Path(test_path).read_text("utf-8"), fm
        )
        payload["test_error"] = sample_error(fm, w, test_samples)
    emit(payload)


@main.command()
@click.option("--class", "class_name", default=None,
              type=click.Choice(list(NDIM_CLASSES)))
@click.option("--m", "m", type=int, default=None)
@click.option("--k", "k", type=int, default=None)
@click.option("--E", "e_param", type=int, default=None)
@click.option("--D", "d_param", type=int, default=None)
@click.option("--K", "k_param", type=int, default=None)
@click.option("--eta", type=int, default=None)
@click.option("--hypotheses", type=int, default=None)
@click.option("--axiom", "axiom_spec", default=None,
              help="Base axiom for the scaled-axiom classes.")
@guarded
def ndim(class_name, m, k, e_param, d_param, k_param, eta, hypotheses,
         axiom_spec):
    """Dimension-bound table (or one class's bounds)."""
    def fold(bounds):
        return {
            "lower": bounds.lower,
            "upper": bounds.upper,
            "provenance": bounds.provenance,
            "notes": list(bounds.notes),
        }

    if class_name is None:
        if m is None or k is None:
            raise click.UsageError("the full table needs --m and --k")
        emit({
            "command": "ndim",
            "m": m,
            "k": k,
            "entries": {
                name: fold(b) for name, b in ndim_table(m, k).items()
            },
        })
        return
    axiom_obj = None
    if class_name in ("agst", "agst-sym"):
        if axiom_spec is None or m is None or k is None:
            raise click.UsageError(f"{class_name} needs --axiom, --m, --k")
        if axiom_spec not in AXIOM_KINDS:
            raise click.UsageError(f"--axiom must be one of {AXIOM_KINDS}")
        axiom_obj = GstAxiom(axiom_spec, Space(m, k))
    bounds = ndim_bounds(
        class_name, m=m, k=k, E=e_param, D=d_param, K=k_param,
        eta=eta, hypotheses=hypotheses, axiom=axiom_obj,
    )
    payload = {"command": "ndim", "class": class_name}
    for flag, value in (("m", m), ("k", k), ("E", e_param), ("D", d_param),
                        ("K", k_param), ("eta", eta),
                        ("hypotheses", hypotheses), ("axiom", axiom_spec)):
        if value is not None:
            payload[flag] = value
    payload.update(fold(bounds))
    emit(payload)


@main.command()
@click.option("--p", "p_text", required=True)
@click.option("--m", "m_flag", type=int, default=None)
@click.option("--k", "k", type=int, default=1, show_default=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--seed", type=int, required=True)
@click.option("--out", "out_path", required=True)
@guarded
def gen(p_text, m_flag, k, n, seed, out_path):
    """Sample an approval profile and write it as a profile file."""
    dist = parse_dist(p_text, m_flag)
    profile = sample_profile(dist, n, seed, k=k)
    text = serialize_profile(profile)
    data = text.encode("utf-8")
    Path(out_path).write_bytes(data)
    emit({
        "command": "gen",
        "out": out_path,
        "p": list(dist.p),
        "m": dist.m,
        "k": k,
        "n": n,
        "seed": seed,
        "sha256": hashlib.sha256(data).hexdigest(),
    })


if __name__ == "__main__":
    main()
