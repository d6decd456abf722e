import json

from click.testing import CliRunner

from linvote import __version__
from linvote.cli import main

PAV_EXAMPLE = "m=3 k=2\n1: 1 2\n1: 2 3\n1: 3\n"
SEQ_EXAMPLE = "m=3 k=2\n2: 1\n1: 2\n1: 3\n"
ONES_EXAMPLE = "m=4 k=2\n2: 1\n"
SPLIT_EXAMPLE = "m=2 k=1\n1: 1\n1: 2\n"


def invoke(args):
    return CliRunner().invoke(main, args)


def run_json(args):
    result = invoke(args)
    assert result.exit_code == 0, result.stderr or result.stdout
    return json.loads(result.stdout)


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, "utf-8")
    return str(path)


def test_winners_pav_example(tmp_path):
    path = write(tmp_path, "p.profile", PAV_EXAMPLE)
    payload = run_json(["winners", "--rule", "pav", "--profile", path])
    assert payload["winners"] == [[2, 3]]
    assert payload["m"] == 3 and payload["k"] == 2
    assert payload["version"] == __version__
    assert len(payload["profile_sha256"]) == 64


def test_winners_rule_specs(tmp_path):
    path = write(tmp_path, "p.profile", PAV_EXAMPLE)
    direct = run_json(
        ["winners", "--rule", "thiele:0,1,3/2", "--profile", path]
    )
    assert direct["winners"] == [[2, 3]]

    seq_path = write(tmp_path, "s.profile", SEQ_EXAMPLE)
    keep = run_json(["winners", "--rule", "seq:cc", "--profile", seq_path])
    assert keep["winners"] == [[1, 2], [1, 3]]
    lexi = run_json(
        [
            "winners", "--rule", "seq:cc", "--profile", seq_path,
            "--tie-mode", "lexicographic",
        ]
    )
    assert lexi["winners"] == [[1, 2]]


def test_winners_ranking_rule(tmp_path):
    text = "m=3 k=1\n1: 1 2 3\n1: 2 1 3\n"
    path = write(tmp_path, "r.profile", text)
    payload = run_json(["winners", "--rule", "pos:borda", "--profile", path])
    assert payload["winners"] == [1, 2]


def test_score_exact_rational(tmp_path):
    path = write(tmp_path, "p.profile", PAV_EXAMPLE)
    payload = run_json(
        ["score", "--rule", "pav", "--profile", path, "--committee", "2,3"]
    )
    assert payload["score"] == "7/2"
    assert payload["committee"] == [2, 3]

    bad = invoke(
        ["score", "--rule", "pav", "--profile", path, "--committee", "1,2,3"]
    )
    assert bad.exit_code == 2
    dup = invoke(
        ["score", "--rule", "pav", "--profile", path, "--committee", "2,2"]
    )
    assert dup.exit_code == 2


def test_axiom_single_committee(tmp_path):
    path = write(tmp_path, "p.profile", ONES_EXAMPLE)
    sat = run_json(
        ["axiom", "--axiom", "jr", "--profile", path, "--committee", "1,4"]
    )
    assert sat["satisfied"] is True
    unsat = run_json(
        ["axiom", "--axiom", "jr", "--profile", path, "--committee", "2,3"]
    )
    assert unsat["satisfied"] is False


def test_axiom_satisfying_set(tmp_path):
    path = write(tmp_path, "p.profile", ONES_EXAMPLE)
    payload = run_json(["axiom", "--axiom", "jr", "--profile", path])
    assert payload["satisfying"] == [[1, 2], [1, 3], [1, 4]]


def test_axiom_approx_specs(tmp_path):
    path = write(tmp_path, "p.profile", SPLIT_EXAMPLE)
    acore = run_json(
        [
            "axiom", "--axiom", "acore:1,1", "--profile", path,
            "--committee", "1",
        ]
    )
    assert acore["satisfied"] is True
    agst = run_json(
        [
            "axiom", "--axiom", "agst:jr:2", "--profile", path,
            "--committee", "1",
        ]
    )
    assert agst["satisfied"] is True
    bad = invoke(
        ["axiom", "--axiom", "grandcoalition", "--profile", path]
    )
    assert bad.exit_code == 1
    assert "error:" in bad.stderr


def test_property_fixtures(tmp_path):
    split = write(tmp_path, "split.profile", SPLIT_EXAMPLE)
    resolute = run_json(
        ["property", "--property", "resolute", "--rule", "av",
         "--profile", split]
    )
    assert resolute["holds"] is False

    ones = write(tmp_path, "ones.profile", ONES_EXAMPLE)
    satisfies = run_json(
        ["property", "--property", "satisfies", "--rule", "pav",
         "--axiom", "jr", "--profile", ones]
    )
    assert satisfies["holds"] is True

    implies = run_json(
        ["property", "--property", "implies", "--axiom", "core",
         "--axiom2", "jr", "--profile", ones]
    )
    assert implies["holds"] is True


def test_property_usage_errors(tmp_path):
    split = write(tmp_path, "split.profile", SPLIT_EXAMPLE)
    missing = invoke(
        ["property", "--property", "same", "--rule", "av", "--profile", split]
    )
    assert missing.exit_code == 2
    unknown = invoke(
        ["property", "--property", "monotone", "--rule", "av",
         "--profile", split]
    )
    assert unknown.exit_code == 2
    ranking_rule = invoke(
        ["property", "--property", "resolute", "--rule", "pos:borda",
         "--profile", split]
    )
    assert ranking_rule.exit_code == 1


def test_verify_linear_rule_and_axiom():
    rule = run_json(
        ["verify-linear", "--rule", "pav", "--m", "3", "--k", "2"]
    )
    assert rule["bank_size"] == 3
    assert rule["mismatch_count"] == 0
    assert rule["tested"] > 100
    assert rule["mismatches"] == []

    axiom = run_json(
        ["verify-linear", "--axiom", "jr", "--m", "3", "--k", "2"]
    )
    assert axiom["bank_size"] == 3
    assert axiom["mismatch_count"] == 0

    random_only = run_json(
        [
            "verify-linear", "--rule", "av", "--m", "5", "--k", "1",
            "--max-n", "0", "--random", "6", "--seed", "11",
        ]
    )
    assert random_only["tested"] == 6
    assert random_only["mismatch_count"] == 0


def test_verify_linear_guards():
    both = invoke(
        ["verify-linear", "--rule", "pav", "--axiom", "jr", "--m", "3",
         "--k", "2"]
    )
    assert both.exit_code == 2
    neither = invoke(["verify-linear", "--m", "3", "--k", "2"])
    assert neither.exit_code == 2
    no_seed = invoke(
        ["verify-linear", "--rule", "av", "--m", "3", "--k", "1",
         "--random", "4"]
    )
    assert no_seed.exit_code == 2
    too_big = invoke(
        ["verify-linear", "--rule", "av", "--m", "5", "--k", "1"]
    )
    assert too_big.exit_code == 1


SIMULATE_ARGS = [
    "simulate", "--event", "resolute", "--rule", "av",
    "--p", "0.8,0.5,0.2", "--k", "1", "--n", "40", "--trials", "200",
    "--seed", "7",
]


def test_simulate_deterministic_and_regime():
    first = invoke(SIMULATE_ARGS)
    second = invoke(SIMULATE_ARGS)
    assert first.exit_code == second.exit_code == 0
    assert first.stdout == second.stdout
    payload = json.loads(first.stdout)
    assert payload["regime"] == "exp-to-limit"
    assert payload["hits"] <= 200
    assert 0.0 <= payload["estimate"] <= 1.0
    assert len(payload["ci"]) == 2

    threaded = invoke(SIMULATE_ARGS + ["--threads", "8"])
    assert threaded.stdout == first.stdout


def test_simulate_out_file(tmp_path):
    out = tmp_path / "report.json"
    result = invoke(SIMULATE_ARGS + ["--out", str(out)])
    assert result.exit_code == 0
    assert out.read_text("utf-8") == result.stdout


def test_simulate_decay_grid():
    payload = run_json(
        [
            "simulate", "--event", "resolute", "--rule", "av",
            "--p", "1/2", "--m", "2", "--k", "1", "--n-grid", "16,64",
            "--trials", "150", "--seed", "5",
        ]
    )
    assert payload["n_grid"] == [16, 64]
    assert payload["decay_label"] in (
        "consistent-inverse-sqrt", "consistent-exp", "inconclusive"
    )
    assert len(payload["rows"]) == 2
    assert payload["regime"] == "polynomial"


def test_simulate_topk_event():
    payload = run_json(
        [
            "simulate", "--event", "topk-subset-of-axiom", "--axiom", "core",
            "--p", "0.8,0.7,0.3,0.2", "--k", "2", "--n", "30",
            "--trials", "100", "--seed", "3",
        ]
    )
    assert payload["regime"] == "exp-to-limit"
    assert payload["estimate"] > 0.5


def test_simulate_usage_errors():
    both_n = invoke(SIMULATE_ARGS + ["--n-grid", "4,16"])
    assert both_n.exit_code == 2
    neither_n = invoke(
        [
            "simulate", "--event", "resolute", "--rule", "av",
            "--p", "0.8,0.5,0.2", "--k", "1", "--trials", "10", "--seed", "1",
        ]
    )
    assert neither_n.exit_code == 2
    scalar_no_m = invoke(
        [
            "simulate", "--event", "resolute", "--rule", "av", "--p", "1/2",
            "--k", "1", "--n", "5", "--trials", "10", "--seed", "1",
        ]
    )
    assert scalar_no_m.exit_code == 2
    topk_no_axiom = invoke(
        [
            "simulate", "--event", "topk-subset-of-axiom", "--p", "1/2,1/2",
            "--k", "1", "--n", "5", "--trials", "10", "--seed", "1",
        ]
    )
    assert topk_no_axiom.exit_code == 2
    missing_rule = invoke(
        [
            "simulate", "--event", "resolute", "--p", "1/2,1/2", "--k", "1",
            "--n", "5", "--trials", "10", "--seed", "1",
        ]
    )
    assert missing_rule.exit_code == 2


# labels generated by PAV on each profile
LEARN_SAMPLES = (
    "m=3 k=2\n2: 1 2\n1: 2 3\nwinners: 1,2\n"
    "m=3 k=2\n2: 3\n1: 1\nwinners: 1,3\n"
    "m=3 k=2\n1: 1 2 3\nwinners: 1,2 1,3 2,3\n"
)


def test_learn_thiele(tmp_path):
    path = write(tmp_path, "train.samples", LEARN_SAMPLES)
    payload = run_json(
        ["learn", "--class", "thiele", "--samples", path]
    )
    assert payload["feasible"] is True
    assert payload["train_error"] == "0"
    assert payload["eta"] == 2
    assert len(payload["weights"]) == 2

    with_test = run_json(
        ["learn", "--class", "thiele", "--samples", path,
         "--test-samples", path]
    )
    assert with_test["test_error"] == "0"


def test_learn_infeasible(tmp_path):
    text = (
        "m=3 k=2\n2: 1\n1: 2\nwinners: 1,2\n"
        "m=3 k=2\n2: 1\n1: 2\nwinners: 1,3\n"
    )
    path = write(tmp_path, "bad.samples", text)
    payload = run_json(["learn", "--class", "thiele", "--samples", path])
    assert payload["feasible"] is False
    assert payload["weights"] is None
    assert payload["train_error"] is None


def test_learn_positional(tmp_path):
    text = (
        "m=3 k=1\n1: 1 2 3\n1: 2 1 3\nwinners: 1 2\n"
        "m=3 k=1\n2: 1 3 2\nwinners: 1\n"
    )
    path = write(tmp_path, "rank.samples", text)
    payload = run_json(["learn", "--class", "pos", "--samples", path])
    assert payload["feasible"] is True
    assert payload["eta"] == 2


def test_ndim_single_and_table():
    thiele = run_json(["ndim", "--class", "thiele", "--k", "5"])
    assert thiele["lower"] == 4 and thiele["upper"] == 4
    assert thiele["notes"]

    table = run_json(["ndim", "--m", "4", "--k", "2"])
    assert set(table["entries"]) == {
        "thiele", "abcs", "gabcs", "csr", "owa", "oowa", "pos", "axioms"
    }
    assert table["entries"]["abcs"]["upper"] == 8

    linear = run_json(
        ["ndim", "--class", "linear", "--E", "4", "--D", "3", "--K", "2"]
    )
    assert linear["lower"] == "17/4"

    agst = run_json(
        ["ndim", "--class", "agst", "--axiom", "jr", "--m", "3", "--k", "2"]
    )
    assert agst["axiom"] == "jr"
    assert agst["lower"] is None


def test_ndim_usage_errors():
    assert invoke(["ndim"]).exit_code == 2
    assert invoke(["ndim", "--class", "agst", "--m", "3", "--k", "2"]).exit_code == 2
    assert (
        invoke(
            ["ndim", "--class", "agst", "--axiom", "av", "--m", "3", "--k", "2"]
        ).exit_code
        == 2
    )
    assert invoke(["ndim", "--class", "thiele"]).exit_code == 1


def test_gen_deterministic(tmp_path):
    out1 = tmp_path / "a.profile"
    out2 = tmp_path / "b.profile"
    args = ["gen", "--p", "0.3,0.6", "--n", "25", "--seed", "9"]
    p1 = run_json(args + ["--out", str(out1)])
    p2 = run_json(args + ["--out", str(out2)])
    assert out1.read_bytes() == out2.read_bytes()
    assert p1["sha256"] == p2["sha256"]

    import hashlib

    assert hashlib.sha256(out1.read_bytes()).hexdigest() == p1["sha256"]
    other = run_json(
        ["gen", "--p", "0.3,0.6", "--n", "25", "--seed", "10",
         "--out", str(out1)]
    )
    assert other["sha256"] != p1["sha256"]


def test_gen_point_mass_and_broadcast(tmp_path):
    out = tmp_path / "point.profile"
    payload = run_json(
        ["gen", "--p", "1,0", "--n", "3", "--seed", "1", "--out", str(out)]
    )
    from linvote.core import histogram, parse_profile

    profile = parse_profile(out.read_text("utf-8"))
    assert profile.space.m == 2
    assert histogram(profile).count(0b01) == 3

    broadcast = run_json(
        ["gen", "--p", "1/2", "--m", "3", "--k", "2", "--n", "4",
         "--seed", "2", "--out", str(out)]
    )
    assert broadcast["p"] == ["1/2", "1/2", "1/2"]
    assert broadcast["k"] == 2
    assert parse_profile(out.read_text("utf-8")).space.k == 2

    no_m = invoke(
        ["gen", "--p", "1/2", "--n", "4", "--seed", "2", "--out", str(out)]
    )
    assert no_m.exit_code == 2


def test_error_exit_codes(tmp_path):
    missing = invoke(
        ["winners", "--rule", "pav", "--profile", str(tmp_path / "nope")]
    )
    assert missing.exit_code == 1
    assert "error:" in missing.stderr

    bad_header = write(tmp_path, "bad.profile", "m=2 k=3\n1: 1\n")
    oversized = invoke(["winners", "--rule", "pav", "--profile", bad_header])
    assert oversized.exit_code == 1

    unknown_flag = invoke(["winners", "--rule", "pav", "--frobnicate", "x"])
    assert unknown_flag.exit_code == 2

    bad_rule = write(tmp_path, "ok.profile", SPLIT_EXAMPLE)
    unknown_rule = invoke(
        ["winners", "--rule", "kemeny", "--profile", bad_rule]
    )
    assert unknown_rule.exit_code == 1


def test_help_screens():
    top = invoke(["--help"])
    assert top.exit_code == 0
    for name in (
        "winners", "score", "axiom", "property", "verify-linear",
        "simulate", "learn", "ndim", "gen",
    ):
        assert name in top.stdout
        sub = invoke([name, "--help"])
        assert sub.exit_code == 0
        assert "--" in sub.stdout


def test_wall_time_always_on_stderr(tmp_path):
    path = write(tmp_path, "p.profile", SPLIT_EXAMPLE)
    ok = invoke(["winners", "--rule", "av", "--profile", path])
    assert "wall_time_s=" in ok.stderr
    failing = invoke(
        ["winners", "--rule", "av", "--profile", str(tmp_path / "gone")]
    )
    assert "wall_time_s=" in failing.stderr
