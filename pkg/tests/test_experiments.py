"""Experiment-layer tests: exact identities, process invariants, report plumbing."""

import io
import json
import math
from fractions import Fraction

import pytest

from coverforge.covering import BallSpec, SpaceBitmap, covering_radius
from coverforge.ensembles import EnsembleParams, sample
from coverforge.errors import GuardError
from coverforge.experiments import (
    ExperimentReport,
    collision_pair_count,
    concat_radius_report,
    direct_sum_radius_check,
    exact_intersection_stats,
    gv_check,
    lemma1_trial,
    lemma2_conditional_check,
    lemma2_process,
    quasicyclic_experiment,
    second_moment_check,
    standard_ball,
    theorem1_sweep,
    theorem1_trial,
    varshamov_distance,
)
from coverforge.rng import SplitMix64, trial_seed


def test_standard_ball_flags_and_frozen_radius():
    ball, degenerate, exceeds = standard_ball(4)
    assert degenerate and ball.radius == 8 and exceeds
    assert not standard_ball(1)[1]
    for n in range(2, 10):
        assert standard_ball(n)[1]
    ball10, degenerate10, _ = standard_ball(10)
    assert not degenerate10
    assert ball10.radius == 14


def test_lemma2_process_trivial_starts():
    trace = lemma2_process(SpaceBitmap.full(6), 10, 1)
    assert trace.sizes == (0,)
    assert trace.u_list == ()
    single = SpaceBitmap.from_points(6, [0])
    trace = lemma2_process(single, 4, 17)
    for i, size in enumerate(trace.sizes):
        assert size >= (1 << 6) - (1 << i)
    with pytest.raises(ValueError):
        lemma2_process(single, -1, 0)


def test_lemma2_process_invariants():
    stream = SplitMix64(0x11A)
    for m in (4, 6, 8):
        space = 1 << m
        start = SpaceBitmap.from_value(m, stream.bits(space))
        trace = lemma2_process(start, 3 * m, stream.next64())
        assert trace.m == m
        assert len(trace.sizes) == len(trace.u_list) + 1
        assert len(trace.y_flags) == len(trace.u_list)
        for i, u in enumerate(trace.u_list):
            assert 0 <= u < space
            assert trace.sizes[i + 1] <= trace.sizes[i]
            assert trace.sizes[i + 1] >= 2 * trace.sizes[i] - space
            want = 1 if trace.sizes[i + 1] * space <= 2 * trace.sizes[i] ** 2 else 0
            assert trace.y_flags[i] == want
        # early termination leaves no trailing zero-size steps
        if trace.sizes[-1] == 0:
            assert all(s > 0 for s in trace.sizes[:-1])


def test_translation_sum_identity_exact():
    # sum over all shifts u of |U ∩ (U+u)| equals |U|^2 for any set U
    stream = SplitMix64(0x22B)
    for m in (3, 5, 7, 9):
        bm = SpaceBitmap.from_value(m, stream.bits(1 << m))
        total = sum(
            bm.intersection(bm.translate(u)).popcount() for u in range(1 << m)
        )
        assert total == bm.popcount() ** 2


def test_translation_mean_fixed_example():
    # 192 covered points in F_2^8: mean uncovered after one step is exactly 16
    m = 8
    covered = SpaceBitmap.from_points(m, range(192))
    uncovered = covered.complement()
    assert uncovered.popcount() == 64
    total = sum(
        uncovered.intersection(uncovered.translate(u)).popcount()
        for u in range(1 << m)
    )
    assert Fraction(total, 1 << m) == 16


def test_lemma2_exact_path():
    report = lemma2_conditional_check(10, 5, 0x33C)
    assert report.summary["exact_starts"] == 5
    assert report.summary["all_exact_match"] is True
    for rec in report.trials:
        assert rec["exact_match"]
        u0 = rec["u0"]
        assert int(rec["translation_sum"]) == u0 * u0
    with pytest.raises(GuardError):
        lemma2_conditional_check(17, 1, 0)


def test_lemma2_sampled_path():
    t = 12
    report = lemma2_conditional_check(8, 20, 0x44D, t=t)
    assert report.summary["t"] == t
    assert report.summary["tail_bound"] == pytest.approx(math.exp(-t / 32))
    executed = 0
    for rec in report.trials:
        assert "exact_match" not in rec
        assert len(rec["steps"]) == rec["steps_run"] <= t
        flags = sum(s["y"] for s in rec["steps"])
        assert rec["y_sum"] == flags + (t - rec["steps_run"])
        assert rec["tail_event"] == (4 * rec["y_sum"] <= t)
        executed += rec["steps_run"]
    assert report.summary["executed_steps"] == executed
    assert report.summary["tail_count"] == sum(
        1 for r in report.trials if r["tail_event"]
    )
    # mixed mode: leading trials also carry the exact check
    mixed = lemma2_conditional_check(8, 6, 0x55E, t=4, exact_starts=2)
    assert sum(1 for r in mixed.trials if "exact_match" in r) == 2
    assert mixed.summary["exact_starts"] == 2


def test_exact_intersection_identity_and_chebyshev():
    for n in (2, 3, 4):
        stats = exact_intersection_stats(n)
        assert stats["mean_matches_identity"] is True
        assert stats["mean"] == stats["expected_mean"]
        assert stats["empty_le_chebyshev"] in (True, None)
        hist_total = sum(stats["histogram"].values())
        assert hist_total == stats["pairs"] == 1 << (2 * n)
    with pytest.raises(GuardError):
        exact_intersection_stats(9)
    with pytest.raises(ValueError):
        exact_intersection_stats(3, u=1 << 6)


def test_exact_intersection_shift_invariance():
    # shifting the ball permutes (alpha, b2) pairs: histogram is unchanged
    n = 4
    base = exact_intersection_stats(n, radius=3, u=0)
    stream = SplitMix64(0x66F)
    for _ in range(3):
        u = stream.bits(2 * n)
        shifted = exact_intersection_stats(n, radius=3, u=u)
        assert shifted["histogram"] == base["histogram"]
        assert shifted["mean"] == base["mean"]
        assert shifted["variance"] == base["variance"]


def test_exact_intersection_full_space_degenerate():
    # radius 2n: every shifted code lies inside the ball, variance zero
    n = 2
    stats = exact_intersection_stats(n, radius=2 * n)
    assert stats["variance"] == "0/1"
    assert stats["prob_empty"] == "0/1"
    assert stats["histogram"] == {str(1 << n): 1 << (2 * n)}


def naive_collision_count(n: int, radius: int) -> int:
    # ordered pairs of distinct equal-weight ball points sharing low n bits
    mask = (1 << n) - 1
    groups: dict[tuple[int, int], int] = {}
    for x in range(1 << (2 * n)):
        w = x.bit_count()
        if w <= radius:
            key = (x & mask, w)
            groups[key] = groups.get(key, 0) + 1
    return sum(c * (c - 1) for c in groups.values())


def test_collision_count_formula_vs_enumeration():
    assert collision_pair_count(2, BallSpec(4, 0)) == 0
    assert collision_pair_count(2, BallSpec(4, 1)) == 2
    for n in (2, 3, 4, 5):
        for radius in range(2 * n + 1):
            ball = BallSpec(2 * n, radius)
            assert collision_pair_count(n, ball) == naive_collision_count(n, radius)
    with pytest.raises(ValueError):
        collision_pair_count(3, BallSpec(5, 2))
    with pytest.raises(GuardError):
        collision_pair_count(13, BallSpec(26, 3))


def test_collision_ratio_trend():
    # |S| / (2^n * |A|) falls as n grows at the standard ball radius
    ratios = []
    for n in (4, 6, 8, 10):
        ball, _, _ = standard_ball(n)
        s = collision_pair_count(n, ball)
        ratios.append(s / ((1 << n) * ball.volume))
    assert all(ratios[i + 1] < ratios[i] for i in range(len(ratios) - 1))


def test_lemma1_trial_records_and_summary():
    report = lemma1_trial(10, 3, 0x77A)
    assert report.name == "lemma1"
    assert report.params["radius"] == 14
    assert len(report.trials) == 3
    for rec in report.trials:
        covered = Fraction(rec["covered"])
        uncovered = Fraction(rec["uncovered"])
        assert covered + uncovered == 1
        assert rec["uncovered_float"] == pytest.approx(float(uncovered))
    mean = sum(Fraction(r["uncovered"]) for r in report.trials) / 3
    assert report.summary["mean_uncovered"] == f"{mean.numerator}/{mean.denominator}"
    hits = sum(1 for r in report.trials if Fraction(r["uncovered"]) >= Fraction(1, 10))
    assert report.summary["count_uncovered_ge_1_over_n"] == hits


def test_second_moment_embeds_exact_enumeration_at_small_n():
    report = second_moment_check(4, 50, 0x88B)
    exact = report.summary["exact_enumeration"]
    assert exact["mean_matches_identity"] is True
    # degenerate full-space ball at n=4: every sample counts all 16 codewords
    assert report.params["degenerate_ball"] is True
    assert all(r["count"] == 16 for r in report.trials)
    assert report.summary["mean_rel_error"] == 0.0
    larger = second_moment_check(10, 40, 0x99C)
    assert "exact_enumeration" not in larger.summary
    assert larger.summary["empirical_mean"] > 0


def test_theorem1_trial_structure():
    report = theorem1_trial(8, 3.0, 6, 0xAAD)
    assert report.params["t"] == 9
    assert report.params["c"] == 3.0
    assert report.summary["rate"] == (8 + 9) / 16
    for rec in report.trials:
        assert rec["rank"] <= 8 + 9
        assert isinstance(rec["covers"], bool)
        if rec["covers"]:
            assert rec["uncovered"] == "0/1"
    explicit = theorem1_trial(8, 3.0, 2, 0xBBE, t=2)
    assert explicit.params["c"] is None
    assert explicit.params["t"] == 2


def test_theorem1_sweep_rows():
    report = theorem1_sweep([4, 5], 2.0, 4, 0xCCF)
    assert [r["n"] for r in report.trials] == [4, 5]
    assert len(report.summary["failure_rates"]) == 2
    assert report.summary["failure_rate_nonincreasing"] in (True, False)
    # each sweep row reproduces the standalone run at the same seed
    solo = theorem1_trial(4, 2.0, 4, 0xCCF)
    assert report.trials[0]["failures"] == solo.summary["failures"]
    with pytest.raises(ValueError):
        theorem1_sweep([], 2.0, 4, 0)


def test_direct_sum_radius_additivity():
    report = direct_sum_radius_check(20, 0xDD0)
    assert report.summary["all_additive"] is True
    assert report.summary["violations"] == 0
    for rec in report.trials:
        assert rec["radius_sum"] == rec["radius_a"] + rec["radius_b"]


def naive_varshamov(n: int) -> int:
    best = 1
    for d in range(2, 2 * n + 2):
        if sum(math.comb(2 * n - 1, i) for i in range(d - 1)) < (1 << n):
            best = d
        else:
            break
    return best


def test_varshamov_distance_oracle_and_frozen_value():
    for n in range(1, 17):
        assert varshamov_distance(n) == naive_varshamov(n)
    assert varshamov_distance(10) == 4
    with pytest.raises(ValueError):
        varshamov_distance(0)


def test_gv_check_consistency():
    report = gv_check(6, 30, 0xEE1)
    dstar = report.summary["varshamov_distance"]
    assert dstar == varshamov_distance(6)
    hist_total = sum(report.summary["distance_histogram"].values())
    assert hist_total == 30
    for rec in report.trials:
        assert 1 <= rec["distance"] <= 12
        assert rec["meets_threshold"] == (rec["distance"] >= dstar)
        if rec["alpha_hex"] == "0":
            assert rec["distance"] == 1
    meeting = sum(1 for r in report.trials if r["meets_threshold"])
    assert report.summary["count_meeting"] == meeting
    with pytest.raises(GuardError):
        gv_check(15, 1, 0)


def test_concat_single_member_matches_direct_radius():
    report = concat_radius_report(4, 3.0, 1, 0xFF2)
    member = sample(EnsembleParams.from_c(4, 3.0), trial_seed(0xFF2, 0))
    assert report.summary["total_radius"] == covering_radius(member.code())
    assert report.summary["total_blocklength"] == 8
    assert report.trials[0]["alpha_hex"] == member.alpha.hex()


def test_concat_multiple_members_sum():
    report = concat_radius_report(4, 3.0, 5, 0x103)
    assert report.summary["total_radius"] == sum(r["radius"] for r in report.trials)
    assert report.summary["total_blocklength"] == 5 * 8
    assert report.summary["bad_count"] == sum(1 for r in report.trials if r["bad"])
    with pytest.raises(GuardError):
        concat_radius_report(9, 3.0, 1, 0)
    with pytest.raises(ValueError):
        concat_radius_report(4, 3.0, 0, 0)


def test_quasicyclic_experiment_structure():
    report = quasicyclic_experiment(4, 6, 0x114)
    for rec in report.trials:
        for key in ("qc_radius", "woz_radius", "rl_radius"):
            assert 0 <= rec[key] <= 8
    stats = report.summary["qc"]
    assert sum(stats["histogram"].values()) == 6
    assert stats["max"] >= stats["mean"]
    with pytest.raises(GuardError):
        quasicyclic_experiment(9, 1, 0)


def test_empty_reports_are_valid():
    for report in (
        lemma1_trial(10, 0, 5),
        second_moment_check(10, 0, 5),
        theorem1_trial(8, 3.0, 0, 5),
        gv_check(6, 0, 5),
        quasicyclic_experiment(4, 0, 5),
        direct_sum_radius_check(0, 5),
    ):
        doc = json.loads(report.to_json())
        assert doc["trials"] == []
        assert "summary" in doc


def test_reports_deterministic_and_thread_invariant():
    builders = [
        lambda th: lemma1_trial(10, 4, 0x125, threads=th),
        lambda th: second_moment_check(10, 20, 0x136, threads=th),
        lambda th: theorem1_trial(8, 3.0, 4, 0x147, threads=th),
        lambda th: direct_sum_radius_check(8, 0x158, threads=th),
        lambda th: gv_check(6, 10, 0x169, threads=th),
        lambda th: lemma2_conditional_check(8, 6, 0x17A, t=8, threads=th),
    ]
    for build in builders:
        base = build(1).to_json()
        assert build(1).to_json() == base
        assert build(4).to_json() == base


def test_json_excludes_timings_unless_asked():
    report = lemma1_trial(10, 1, 0x18B)
    doc = json.loads(report.to_json())
    assert "timings" not in doc
    with_timings = json.loads(report.to_json(include_timings=True))
    assert "elapsed_s" in with_timings["timings"]


def test_csv_matches_json_content():
    report = lemma1_trial(10, 3, 0x19C)
    buf = io.StringIO()
    report.write_csv(buf)
    lines = buf.getvalue().splitlines()
    data = [ln for ln in lines if not ln.startswith("#")]
    header = data[0].split(",")
    assert len(data) == 1 + len(report.trials)
    for row_text, rec in zip(data[1:], report.trials):
        row = dict(zip(header, row_text.split(",")))
        assert row["covered"] == rec["covered"]
        assert int(row["trial"]) == rec["trial"]
        assert row["seed"] == rec["seed"]
    joined = buf.getvalue()
    assert f"# summary count_uncovered_ge_1_over_n = " in joined
    assert "# param n = 10" in joined


def test_csv_flattens_trace_steps():
    report = lemma2_conditional_check(8, 3, 0x1AD, t=5)
    buf = io.StringIO()
    report.write_csv(buf)
    data = [ln for ln in buf.getvalue().splitlines() if not ln.startswith("#")]
    expect_rows = sum(max(r["steps_run"], 1) for r in report.trials)
    assert len(data) == 1 + expect_rows


def test_csv_bool_encoding():
    report = theorem1_trial(8, 3.0, 2, 0x1BE)
    buf = io.StringIO()
    report.write_csv(buf)
    text = buf.getvalue()
    assert "true" in text or "false" in text
    assert "True" not in text and "False" not in text


def test_report_regenerates_from_params_and_seed():
    first = theorem1_trial(8, 3.0, 5, 0x1CF)
    doc = json.loads(first.to_json())
    again = theorem1_trial(
        doc["params"]["n"],
        doc["params"]["c"],
        doc["params"]["trials"],
        int(doc["master_seed"]),
    )
    assert again.to_json() == first.to_json()


def test_experiment_guard_on_large_n():
    with pytest.raises(GuardError):
        lemma1_trial(15, 1, 0)
    with pytest.raises(GuardError):
        theorem1_trial(15, 3.0, 1, 0)
