"""Seeded, reproducible experiment harnesses.

Each experiment takes a master seed and derives one independent stream
per trial, so trials can run in any order (or in parallel) and still
produce byte-identical reports.  Summaries mix exact rational statistics
(serialized as "p/q" strings) with floating-point conveniences; exact
identities are checked with no tolerance at all.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, IO

import numpy as np

from .covering import (
    M_MAX,
    BallSpec,
    SpaceBitmap,
    covered_fraction,
    covering_radius,
    entropy_inverse,
    format_fraction,
)
from .ensembles import (
    EnsembleParams,
    quasicyclic,
    random_linear,
    sample,
    wozencraft,
)
from .errors import GuardError
from .gf2 import find_irreducible
from .linalg import BinaryMatrix, LinearCode, direct_sum, min_distance, span_array
from .rng import SplitMix64, trial_seed


def standard_ball(n: int) -> tuple[BallSpec, bool, bool]:
    """The experiment ball in F_2^(2n): smallest radius holding n^3 * 2^n points.

    The target is clamped to the space size; the first returned flag marks
    that degenerate regime (n^3 * 2^n >= 2^(2n), true for 2 <= n <= 9), the
    second marks a resolved radius above n/2, where the asymptotic radius
    bound is vacuous at this scale.
    """
    m = 2 * n
    target = n**3 << n
    space = 1 << m
    ball = BallSpec.from_volume(m, min(target, space))
    return ball, target >= space, 2 * ball.radius > n


@dataclass(frozen=True)
class TranslationTrace:
    """Record of the union-of-translates process C <- C | (C + u).

    sizes[i] is the uncovered count before step i+1; u_list and y_flags
    have one entry per executed step.  y_flags[i] is 1 iff the step kept
    sizes[i+1] * 2^m <= 2 * sizes[i]^2, the exact-integer form of falling
    under twice the conditional mean.
    """

    m: int
    seed: int
    u_list: tuple[int, ...]
    sizes: tuple[int, ...]
    y_flags: tuple[int, ...]


def lemma2_process(start: SpaceBitmap, t: int, master_seed: int) -> TranslationTrace:
    """Run up to t random-translate union steps from a starting covered set.

    Each step draws u uniformly from F_2^m and replaces the covered set C
    by C | (C + u).  Stops early once nothing is uncovered.
    """
    if t < 0:
        raise ValueError(f"step count must be >= 0, got {t}")
    stream = SplitMix64(master_seed)
    m = start.m
    space = 1 << m
    covered = start.copy()
    sizes = [space - covered.popcount()]
    u_list: list[int] = []
    y_flags: list[int] = []
    for _ in range(t):
        if sizes[-1] == 0:
            break
        u = stream.bits(m)
        covered.union_with(covered.translate(u))
        nxt = space - covered.popcount()
        u_list.append(u)
        y_flags.append(1 if nxt * space <= 2 * sizes[-1] ** 2 else 0)
        sizes.append(nxt)
    return TranslationTrace(
        m, master_seed, tuple(u_list), tuple(sizes), tuple(y_flags)
    )


@dataclass(frozen=True)
class ExperimentReport:
    """Experiment output: params, per-trial records, summary, timings.

    The JSON serialization covers name, params, master_seed, trials and
    summary; wall-clock timings are kept out of it so identical seeds
    produce byte-identical documents.
    """

    name: str
    params: dict
    master_seed: int
    trials: list
    summary: dict
    timings: dict = field(default_factory=dict)

    def to_json_dict(self, include_timings: bool = False) -> dict:
        out = {
            "name": self.name,
            "params": self.params,
            "master_seed": str(self.master_seed),
            "trials": self.trials,
            "summary": self.summary,
        }
        if include_timings:
            out["timings"] = self.timings
        return out

    def to_json(self, include_timings: bool = False) -> str:
        return json.dumps(
            self.to_json_dict(include_timings), indent=2, sort_keys=True
        )

    def write_json(self, fp: IO[str], include_timings: bool = False) -> None:
        fp.write(self.to_json(include_timings))
        fp.write("\n")

    def flat_rows(self) -> list[dict]:
        """Trial records flattened for CSV: one row per trial or per step."""
        rows = []
        for rec in self.trials:
            if "steps" in rec:
                base = {k: v for k, v in rec.items() if k != "steps"}
                for step in rec["steps"]:
                    rows.append({**base, **step})
                if not rec["steps"]:
                    rows.append(base)
            else:
                rows.append(rec)
        return rows

    def write_csv(self, fp: IO[str]) -> None:
        """Delimited form with the same numeric content as the JSON.

        Scalar params lead as '#' comments, then one row per trial (or per
        trace step), then the summary as trailing comments.
        """
        fp.write(f"# name = {self.name}\n")
        fp.write(f"# master_seed = {self.master_seed}\n")
        for key in sorted(self.params):
            fp.write(f"# param {key} = {_csv_value(self.params[key])}\n")
        rows = self.flat_rows()
        if rows:
            columns = list(rows[0].keys())
            fp.write(",".join(columns) + "\n")
            for row in rows:
                fp.write(",".join(_csv_value(row.get(c)) for c in columns) + "\n")
        for key in sorted(self.summary):
            fp.write(f"# summary {key} = {_csv_value(self.summary[key])}\n")


def _csv_value(v: object) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True).replace(",", ";")
    return str(v)


def run_trials(
    count: int,
    master_seed: int,
    worker: Callable[[int, int], dict],
    threads: int = 1,
) -> list[dict]:
    """Run worker(index, derived_seed) for each trial, in index order.

    Per-trial seeds come from the documented derivation rule (SplitMix64
    output for master_seed XOR index), and results are reduced in index
    order whatever the completion order, so the thread count never
    changes a report.
    """
    seeds = [trial_seed(master_seed, i) for i in range(count)]
    if threads <= 1:
        return [worker(i, s) for i, s in enumerate(seeds)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(worker, range(count), seeds))


def _require_dimension(n: int, what: str = "2n") -> None:
    if 2 * n > M_MAX:
        raise GuardError(f"experiment needs {what} <= {M_MAX}, got {2 * n}")


def lemma1_trial(
    n: int, trials: int, master_seed: int, threads: int = 1
) -> ExperimentReport:
    """Uncovered fraction of single balls around random rate-1/2 codes.

    Per trial: draw alpha uniformly, take the code {(x, alpha x)}, grow
    the standard ball around it, and record the exact uncovered fraction.
    The summary reports how often the uncovered fraction reaches 1/n, the
    quantity the second-moment argument bounds by 1/n^2.
    """
    _require_dimension(n)
    start = time.perf_counter()
    ball, degenerate, _ = standard_ball(n)
    spec = find_irreducible(n)

    def worker(i: int, seed: int) -> dict:
        stream = SplitMix64(seed)
        alpha = spec.element(stream.bits(n))
        frac = covered_fraction(wozencraft(alpha), ball)
        unc = 1 - frac
        return {
            "trial": i,
            "seed": str(seed),
            "alpha_hex": alpha.hex(),
            "covered": format_fraction(frac),
            "uncovered": format_fraction(unc),
            "uncovered_float": float(unc),
        }

    records = run_trials(trials, master_seed, worker, threads)
    uncovered = [Fraction(r["uncovered"]) for r in records]
    threshold = Fraction(1, n)
    hits = sum(1 for u in uncovered if u >= threshold)
    if trials:
        mean = sum(uncovered, Fraction(0)) / trials
        summary = {
            "trials": trials,
            "mean_uncovered": format_fraction(mean),
            "mean_uncovered_float": float(mean),
            "count_uncovered_ge_1_over_n": hits,
            "freq_uncovered_ge_1_over_n": hits / trials,
            "reference_bound_1_over_n2": 1.0 / (n * n),
        }
    else:
        summary = {
            "trials": 0,
            "mean_uncovered": None,
            "mean_uncovered_float": None,
            "count_uncovered_ge_1_over_n": 0,
            "freq_uncovered_ge_1_over_n": None,
            "reference_bound_1_over_n2": 1.0 / (n * n),
        }
    return ExperimentReport(
        name="lemma1",
        params={
            "n": n,
            "trials": trials,
            "radius": ball.radius,
            "ball_volume": str(ball.volume),
            "ball_target": str(n**3 << n),
            "degenerate_ball": degenerate,
        },
        master_seed=master_seed,
        trials=records,
        summary=summary,
        timings={"elapsed_s": time.perf_counter() - start},
    )


def _woz_intersection_count(n: int, alpha_bits: int, b2: int, radius: int) -> int:
    """|(shifted code) ∩ ball| for the code {(x, alpha x)} shifted by (0, b2)."""
    spec = find_irreducible(n)
    code = wozencraft(spec.element(alpha_bits))
    words = span_array(code) ^ np.uint64(b2 << n)
    return int((np.bitwise_count(words) <= radius).sum())


def exact_intersection_stats(
    n: int, radius: int | None = None, u: int = 0
) -> dict:
    """Distribution of |(code + (0, b2)) ∩ (ball + u)| over all (alpha, b2).

    Full enumeration over all 2^n * 2^n pairs with exact rational
    statistics.  The mean must equal ball_volume * 2^(-n) identically
    (each point lands in the shifted code with probability exactly
    2^(-n)), and the exact probability of an empty intersection must not
    exceed variance / mean^2.
    """
    if n > 8:
        raise GuardError(f"full enumeration needs n <= 8, got {n}")
    if radius is None:
        ball, _, _ = standard_ball(n)
        radius = ball.radius
    else:
        ball = BallSpec(2 * n, radius)
    if not 0 <= u < (1 << (2 * n)):
        raise ValueError(f"shift {u:#x} outside F_2^{2 * n}")
    spec = find_irreducible(n)
    size = 1 << n
    b2_shifts = (np.arange(size, dtype=np.uint64) << np.uint64(n)) ^ np.uint64(u)
    histogram: dict[int, int] = {}
    total = 0
    total_sq = 0
    empty = 0
    for alpha_bits in range(size):
        words = span_array(wozencraft(spec.element(alpha_bits)))
        table = words[None, :] ^ b2_shifts[:, None]
        counts = (np.bitwise_count(table) <= radius).sum(axis=1)
        for c in counts.tolist():
            histogram[c] = histogram.get(c, 0) + 1
            total += c
            total_sq += c * c
            if c == 0:
                empty += 1
    pairs = size * size
    mean = Fraction(total, pairs)
    expected = Fraction(ball.volume, size)
    variance = Fraction(total_sq, pairs) - mean * mean
    prob_empty = Fraction(empty, pairs)
    chebyshev = variance / (mean * mean) if mean else None
    return {
        "n": n,
        "radius": radius,
        "u_hex": format(u, "x"),
        "pairs": pairs,
        "mean": format_fraction(mean),
        "expected_mean": format_fraction(expected),
        "mean_matches_identity": mean == expected,
        "variance": format_fraction(variance),
        "prob_empty": format_fraction(prob_empty),
        "chebyshev_bound": format_fraction(chebyshev) if chebyshev is not None else None,
        "empty_le_chebyshev": (
            prob_empty <= chebyshev if chebyshev is not None else None
        ),
        "histogram": {str(k): histogram[k] for k in sorted(histogram)},
    }


def second_moment_check(
    n: int, samples: int, master_seed: int, threads: int = 1
) -> ExperimentReport:
    """Mean and variance of |(code + (0, b2)) ∩ ball| against their targets.

    Per sample: draw alpha and b2 uniformly, shift the code {(x, alpha x)}
    by (0, b2), and count members inside the standard ball around zero
    exactly.  The mean must track ball_volume * 2^(-n); the variance is
    reported against the same number.  For n <= 5 the summary also embeds
    the full-enumeration statistics, which are exact rational identities.
    """
    _require_dimension(n)
    start = time.perf_counter()
    ball, degenerate, exceeds = standard_ball(n)

    def worker(i: int, seed: int) -> dict:
        stream = SplitMix64(seed)
        alpha_bits = stream.bits(n)
        b2 = stream.bits(n)
        count = _woz_intersection_count(n, alpha_bits, b2, ball.radius)
        return {
            "sample": i,
            "seed": str(seed),
            "alpha_hex": format(alpha_bits, "x"),
            "b2_hex": format(b2, "x"),
            "count": count,
        }

    records = run_trials(samples, master_seed, worker, threads)
    expected = Fraction(ball.volume, 1 << n)
    summary: dict = {
        "samples": samples,
        "expected_mean": format_fraction(expected),
        "expected_mean_float": float(expected),
    }
    if samples:
        counts = np.array([r["count"] for r in records], dtype=np.float64)
        emp_mean = float(counts.mean())
        summary["empirical_mean"] = emp_mean
        summary["mean_rel_error"] = abs(emp_mean - float(expected)) / float(expected)
        summary["empirical_variance"] = (
            float(counts.var(ddof=1)) if samples > 1 else None
        )
    else:
        summary["empirical_mean"] = None
        summary["mean_rel_error"] = None
        summary["empirical_variance"] = None
    if n <= 5:
        summary["exact_enumeration"] = exact_intersection_stats(n, ball.radius)
    return ExperimentReport(
        name="moments",
        params={
            "n": n,
            "samples": samples,
            "radius": ball.radius,
            "ball_volume": str(ball.volume),
            "degenerate_ball": degenerate,
            "radius_exceeds_half": exceeds,
        },
        master_seed=master_seed,
        trials=records,
        summary=summary,
        timings={"elapsed_s": time.perf_counter() - start},
    )


def collision_pair_count(n: int, ball: BallSpec) -> int:
    """Ordered pairs of distinct ball points sharing their first n bits.

    Counted through the weight convolution: a pair in the ball of radius
    r splits as first-half weight i plus second-half weights j - i on
    both sides, giving sum over j <= r, i <= j of
    C(n,i) * C(n,j-i) * (C(n,j-i) - 1) with exact big integers.
    """
    if ball.m != 2 * n:
        raise ValueError(f"ball dimension {ball.m} is not 2n = {2 * n}")
    if 2 * n > 24:
        raise GuardError(f"collision count needs 2n <= 24, got {2 * n}")
    total = 0
    for j in range(ball.radius + 1):
        for i in range(j + 1):
            second = math.comb(n, j - i)
            total += math.comb(n, i) * second * (second - 1)
    return total


def _draw_start(stream: SplitMix64, m: int) -> SpaceBitmap:
    """Start set for translation experiments: 2^m independent fair bits."""
    return SpaceBitmap.from_value(m, stream.bits(1 << m))


def _translation_sum(uncovered: SpaceBitmap) -> int:
    """Sum over every shift u of |U ∩ (U + u)|, by full enumeration."""
    total = 0
    for u in range(1 << uncovered.m):
        total += uncovered.intersection(uncovered.translate(u)).popcount()
    return total


def lemma2_conditional_check(
    m: int,
    trials: int,
    master_seed: int,
    t: int | None = None,
    exact_starts: int | None = None,
    threads: int = 1,
) -> ExperimentReport:
    """Conditional-mean identity and tail behavior of the translate process.

    Exact path (default, needs m <= 16): for each trial draw a random
    covered set, enumerate all 2^m translations, and check that the mean
    uncovered size after one step equals |U_0|^2 / 2^m as exact rationals.

    Sampled path (t > 0): per trial, run a t-step translate process and
    record the per-step halving flags; the summary compares the frequency
    of {sum of flags <= t/4} with exp(-t/32) and reports the per-step
    flag rate (at least 1/2 in expectation by the conditional-mean
    argument).  Steps past early termination count as successes, since an
    empty uncovered set satisfies the halving bound vacuously.  By
    default the sampled path skips per-trial full enumeration; pass
    exact_starts to add it for that many leading trials.
    """
    space = 1 << m
    run_exact_default = t is None
    if run_exact_default and m > 16:
        raise GuardError(
            f"exact path needs m <= 16, got {m}; pass t for the sampled path"
        )
    if t is not None and t < 0:
        raise ValueError(f"step count must be >= 0, got {t}")
    if exact_starts is None:
        exact_starts = trials if run_exact_default else 0
    if exact_starts > 0 and m > 16:
        raise GuardError(f"exact path needs m <= 16, got {m}")
    start_time = time.perf_counter()

    def worker(i: int, seed: int) -> dict:
        stream = SplitMix64(seed)
        start = _draw_start(stream, m)
        uncovered = start.complement()
        u0 = uncovered.popcount()
        rec: dict = {"trial": i, "seed": str(seed), "u0": u0}
        if i < exact_starts:
            total = _translation_sum(uncovered)
            rec["translation_sum"] = str(total)
            rec["mean_next"] = format_fraction(Fraction(total, space))
            rec["expected_mean_next"] = format_fraction(Fraction(u0 * u0, space))
            rec["exact_match"] = total == u0 * u0
        if t is not None:
            trace_seed = stream.next64()
            trace = lemma2_process(start, t, trace_seed)
            y_sum = sum(trace.y_flags) + (t - len(trace.y_flags))
            rec["trace_seed"] = str(trace_seed)
            rec["steps_run"] = len(trace.u_list)
            rec["y_sum"] = y_sum
            rec["tail_event"] = 4 * y_sum <= t
            rec["steps"] = [
                {
                    "step": s + 1,
                    "u_hex": format(trace.u_list[s], "x"),
                    "size": trace.sizes[s + 1],
                    "y": trace.y_flags[s],
                }
                for s in range(len(trace.u_list))
            ]
        return rec

    records = run_trials(trials, master_seed, worker, threads)
    summary: dict = {"trials": trials, "m": m}
    if exact_starts:
        checked = [r for r in records if "exact_match" in r]
        summary["exact_starts"] = len(checked)
        summary["all_exact_match"] = all(r["exact_match"] for r in checked)
    if t is not None:
        executed = sum(r["steps_run"] for r in records)
        flagged = sum(
            sum(s["y"] for s in r["steps"]) for r in records
        )
        tail_count = sum(1 for r in records if r["tail_event"])
        summary["t"] = t
        summary["executed_steps"] = executed
        summary["y_rate_executed"] = flagged / executed if executed else None
        summary["tail_count"] = tail_count
        summary["tail_freq"] = tail_count / trials if trials else None
        summary["tail_bound"] = math.exp(-t / 32.0)
    return ExperimentReport(
        name="lemma2",
        params={
            "m": m,
            "trials": trials,
            "t": t,
            "exact_starts": exact_starts,
        },
        master_seed=master_seed,
        trials=records,
        summary=summary,
        timings={"elapsed_s": time.perf_counter() - start_time},
    )


def theorem1_trial(
    n: int,
    c: float,
    trials: int,
    master_seed: int,
    threads: int = 1,
    t: int | None = None,
) -> ExperimentReport:
    """Full-coverage rate of the augmented ensemble at the standard ball.

    Per trial: sample (alpha, M) with t = ceil(c log2 n) extra rows (or
    an explicit t overriding c), and test exactly whether every point of
    F_2^(2n) lies within the ball radius of the stacked code.  Raw
    failure counts are reported; no asymptotic rate is asserted.
    """
    _require_dimension(n)
    start = time.perf_counter()
    params = (
        EnsembleParams(n, t) if t is not None else EnsembleParams.from_c(n, c)
    )
    ball, degenerate, _ = standard_ball(n)

    def worker(i: int, seed: int) -> dict:
        smp = sample(params, seed)
        code = smp.code()
        frac = covered_fraction(code, ball)
        return {
            "trial": i,
            "seed": str(seed),
            "alpha_hex": smp.alpha.hex(),
            "rank": code.rank,
            "covers": frac == 1,
            "uncovered": format_fraction(1 - frac),
        }

    records = run_trials(trials, master_seed, worker, threads)
    failures = sum(1 for r in records if not r["covers"])
    summary = {
        "trials": trials,
        "failures": failures,
        "failure_rate": failures / trials if trials else None,
        "radius": ball.radius,
        "relative_radius": ball.radius / (2 * n),
        "entropy_inverse_half": entropy_inverse(0.5),
        "rate": (n + params.t) / (2 * n),
        "degenerate_ball": degenerate,
    }
    return ExperimentReport(
        name="theorem1",
        params={
            "n": n,
            "c": None if t is not None else c,
            "t": params.t,
            "trials": trials,
            "radius": ball.radius,
            "ball_volume": str(ball.volume),
            "degenerate_ball": degenerate,
        },
        master_seed=master_seed,
        trials=records,
        summary=summary,
        timings={"elapsed_s": time.perf_counter() - start},
    )


def theorem1_sweep(
    ns: list[int],
    c: float,
    trials: int,
    master_seed: int,
    threads: int = 1,
    t: int | None = None,
) -> ExperimentReport:
    """Coverage runs across several n, one summary row each."""
    if not ns:
        raise ValueError("sweep needs at least one n")
    start = time.perf_counter()
    rows = []
    for n in ns:
        rep = theorem1_trial(n, c, trials, master_seed, threads, t=t)
        rows.append(
            {
                "n": n,
                "t": rep.params["t"],
                "trials": trials,
                "failures": rep.summary["failures"],
                "failure_rate": rep.summary["failure_rate"],
                "radius": rep.params["radius"],
                "relative_radius": rep.summary["relative_radius"],
                "degenerate_ball": rep.params["degenerate_ball"],
            }
        )
    rates = [r["failure_rate"] for r in rows]
    nonincreasing = all(
        rates[i + 1] <= rates[i] for i in range(len(rates) - 1)
    ) if trials else None
    return ExperimentReport(
        name="sweep",
        params={
            "ns": list(ns),
            "c": None if t is not None else c,
            "t": t,
            "trials": trials,
        },
        master_seed=master_seed,
        trials=rows,
        summary={
            "failure_rates": rates,
            "failure_rate_nonincreasing": nonincreasing,
        },
        timings={"elapsed_s": time.perf_counter() - start},
    )


def direct_sum_radius_check(
    trials: int, master_seed: int, threads: int = 1
) -> ExperimentReport:
    """Exact additivity of covering radii under block-diagonal joins.

    Per trial: draw two random codes with blocklengths up to 8 from the
    trial stream (dimensions first, then the generator rows), compute all
    three covering radii exactly, and assert the sum matches.
    """
    start = time.perf_counter()

    def draw_code(stream: SplitMix64) -> LinearCode:
        m = 1 + stream.randrange(8)
        k = stream.randrange(m + 1)
        rows = tuple(stream.bits(m) for _ in range(k))
        return LinearCode(BinaryMatrix(k, m, rows))

    def worker(i: int, seed: int) -> dict:
        stream = SplitMix64(seed)
        a = draw_code(stream)
        b = draw_code(stream)
        ra = covering_radius(a)
        rb = covering_radius(b)
        rs = covering_radius(direct_sum(a, b))
        return {
            "trial": i,
            "seed": str(seed),
            "m_a": a.blocklength,
            "k_a": a.dimension,
            "radius_a": ra,
            "m_b": b.blocklength,
            "k_b": b.dimension,
            "radius_b": rb,
            "radius_sum": rs,
            "additive": rs == ra + rb,
        }

    records = run_trials(trials, master_seed, worker, threads)
    violations = sum(1 for r in records if not r["additive"])
    return ExperimentReport(
        name="directsum",
        params={"trials": trials, "max_blocklength": 8},
        master_seed=master_seed,
        trials=records,
        summary={
            "trials": trials,
            "violations": violations,
            "all_additive": violations == 0,
        },
        timings={"elapsed_s": time.perf_counter() - start},
    )


def varshamov_distance(n: int) -> int:
    """Largest d whose cumulative binomial sum C(2n-1, <= d-2) stays below 2^n."""
    if n < 1:
        raise ValueError(f"inner dimension must be >= 1, got {n}")
    best = 1
    cum = 0
    term = 1
    for d in range(2, 2 * n + 2):
        cum += term  # now cum = sum of C(2n-1, i) for i <= d-2
        if cum < (1 << n):
            best = d
        else:
            break
        term = term * (2 * n - 1 - (d - 2)) // (d - 1)
    return best


def gv_check(
    n: int, trials: int, master_seed: int, threads: int = 1
) -> ExperimentReport:
    """Minimum-distance distribution of random rate-1/2 ensemble members.

    Per trial: draw alpha uniformly and compute the exact minimum
    distance of the code {(x, alpha x)}.  The summary reports the
    fraction of samples meeting the finite-length existence threshold
    (the Varshamov-style largest d with C(2n-1, <= d-2) < 2^n) and the
    gap between the mean relative distance and the asymptotic target.
    """
    if n > 14:
        raise GuardError(f"distance enumeration needs n <= 14, got {n}")
    start = time.perf_counter()
    spec = find_irreducible(n)
    dstar = varshamov_distance(n)

    def worker(i: int, seed: int) -> dict:
        stream = SplitMix64(seed)
        alpha = spec.element(stream.bits(n))
        d = min_distance(wozencraft(alpha))
        return {
            "trial": i,
            "seed": str(seed),
            "alpha_hex": alpha.hex(),
            "distance": d,
            "relative_distance": d / (2 * n),
            "meets_threshold": d >= dstar,
        }

    records = run_trials(trials, master_seed, worker, threads)
    meeting = sum(1 for r in records if r["meets_threshold"])
    histogram: dict[str, int] = {}
    for r in records:
        key = str(r["distance"])
        histogram[key] = histogram.get(key, 0) + 1
    summary: dict = {
        "trials": trials,
        "varshamov_distance": dstar,
        "count_meeting": meeting,
        "fraction_meeting": meeting / trials if trials else None,
        "majority_meets": meeting * 2 > trials if trials else None,
        "distance_histogram": {k: histogram[k] for k in sorted(histogram, key=int)},
        "entropy_inverse_half": entropy_inverse(0.5),
    }
    if trials:
        mean_rel = sum(r["relative_distance"] for r in records) / trials
        summary["mean_relative_distance"] = mean_rel
        summary["gap_to_entropy_inverse_half"] = mean_rel - entropy_inverse(0.5)
    else:
        summary["mean_relative_distance"] = None
        summary["gap_to_entropy_inverse_half"] = None
    return ExperimentReport(
        name="gv",
        params={"n": n, "trials": trials},
        master_seed=master_seed,
        trials=records,
        summary=summary,
        timings={"elapsed_s": time.perf_counter() - start},
    )


def concat_radius_report(
    inner_n: int,
    c: float,
    members: int,
    master_seed: int,
    threads: int = 1,
    t: int | None = None,
) -> ExperimentReport:
    """Aggregate covering radius of independently sampled inner codes.

    Each member is an augmented-ensemble sample whose exact covering
    radius is computed separately; radii add under the block-diagonal
    join, so the aggregate radius is their sum.  A member is flagged bad
    when its relative radius exceeds the inverse-entropy target plus a
    log2(inner_n)/inner_n slack.
    """
    if 2 * inner_n > 16:
        raise GuardError(f"exact member radii need 2n <= 16, got {2 * inner_n}")
    if members < 1:
        raise ValueError(f"member count must be >= 1, got {members}")
    start = time.perf_counter()
    params = (
        EnsembleParams(inner_n, t)
        if t is not None
        else EnsembleParams.from_c(inner_n, c)
    )
    threshold = entropy_inverse(0.5) + math.log2(inner_n) / inner_n

    def worker(i: int, seed: int) -> dict:
        smp = sample(params, seed)
        code = smp.code()
        r = covering_radius(code)
        rel = r / (2 * inner_n)
        return {
            "member": i,
            "seed": str(seed),
            "alpha_hex": smp.alpha.hex(),
            "rank": code.rank,
            "radius": r,
            "relative_radius": rel,
            "bad": rel > threshold,
        }

    records = run_trials(members, master_seed, worker, threads)
    total_radius = sum(r["radius"] for r in records)
    total_blocklength = members * 2 * inner_n
    bad = sum(1 for r in records if r["bad"])
    return ExperimentReport(
        name="concat",
        params={
            "inner_n": inner_n,
            "c": None if t is not None else c,
            "t": params.t,
            "members": members,
        },
        master_seed=master_seed,
        trials=records,
        summary={
            "members": members,
            "total_radius": total_radius,
            "total_blocklength": total_blocklength,
            "relative_radius": total_radius / total_blocklength,
            "gap_to_entropy_inverse_half": (
                total_radius / total_blocklength - entropy_inverse(0.5)
            ),
            "bad_count": bad,
            "bad_fraction": bad / members,
            "bad_threshold": threshold,
        },
        timings={"elapsed_s": time.perf_counter() - start},
    )


def _radius_stats(values: list[int]) -> dict:
    histogram: dict[str, int] = {}
    for v in values:
        histogram[str(v)] = histogram.get(str(v), 0) + 1
    return {
        "histogram": {k: histogram[k] for k in sorted(histogram, key=int)},
        "mean": sum(values) / len(values) if values else None,
        "max": max(values) if values else None,
    }


def quasicyclic_experiment(
    n: int, trials: int, master_seed: int, threads: int = 1
) -> ExperimentReport:
    """Covering radii of circulant codes against two baselines.

    Per trial, one seed drives all three draws: the circulant code takes
    the stream's first n bits as its first row, the rate-1/2 ensemble
    reads the same n bits as alpha, and the random-linear baseline draws
    a fresh n x 2n generator from its own stream at the same seed.  All
    radii are exact.
    """
    if 2 * n > 16:
        raise GuardError(f"exact radii need 2n <= 16, got {2 * n}")
    start = time.perf_counter()
    spec = find_irreducible(n)

    def worker(i: int, seed: int) -> dict:
        stream = SplitMix64(seed)
        first_row = stream.bits(n)
        qc = quasicyclic(first_row, n)
        woz = wozencraft(spec.element(first_row))
        rl = random_linear(n, 2 * n, seed)
        return {
            "trial": i,
            "seed": str(seed),
            "first_row_hex": format(first_row, "x"),
            "qc_radius": covering_radius(qc),
            "woz_radius": covering_radius(woz),
            "rl_radius": covering_radius(rl),
        }

    records = run_trials(trials, master_seed, worker, threads)
    return ExperimentReport(
        name="quasicyclic",
        params={"n": n, "trials": trials},
        master_seed=master_seed,
        trials=records,
        summary={
            "trials": trials,
            "qc": _radius_stats([r["qc_radius"] for r in records]),
            "woz": _radius_stats([r["woz_radius"] for r in records]),
            "rl": _radius_stats([r["rl_radius"] for r in records]),
        },
        timings={"elapsed_s": time.perf_counter() - start},
    )
