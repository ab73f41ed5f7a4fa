"""Spreading dynamics: round semantics, traces, coupling, summaries, and the
growth/doubling diagnostics."""

import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import connected_graphs
from rumorspread import (
    GrowthCheckReport,
    IncompleteSpreadError,
    InputError,
    ProtocolConfig,
    boundary,
    complete,
    cycle,
    default_max_rounds,
    doubling_times,
    dumbbell,
    first_arrival_times,
    harmonic_mass,
    monte_carlo,
    path,
    pull_growth_check,
    run,
    run_restricted,
    single_round,
    star,
    write_summary_csv,
    write_trace_csv,
)
from rumorspread.rng import stream


class TestConfig:
    def test_variant_validation(self):
        with pytest.raises(InputError):
            ProtocolConfig(variant="flood")

    def test_empty_initial_rejected(self):
        with pytest.raises(InputError):
            ProtocolConfig(initial_informed=frozenset())

    def test_max_rounds_validation(self):
        with pytest.raises(InputError):
            ProtocolConfig(max_rounds=0)

    def test_default_cap(self):
        assert default_max_rounds(2) == 64
        assert default_max_rounds(1024) == 640


class TestSingleRuns:
    def test_pair_push(self):
        cfg = ProtocolConfig(variant="push", initial_informed=frozenset({0}))
        trace = run(complete(2), cfg)
        assert trace.informed == [1, 2]
        assert trace.t_all == 1 and trace.completed

    def test_pair_pull(self):
        cfg = ProtocolConfig(variant="pull", initial_informed=frozenset({0}))
        trace = run(complete(2), cfg)
        assert trace.t_all == 1

    def test_star_center_pull_one_round(self):
        # every leaf's only neighbor is the informed center
        cfg = ProtocolConfig(variant="pull", initial_informed=frozenset({0}))
        trace = run(star(50), cfg)
        assert trace.t_all == 1

    def test_star_center_push_needs_a_round_per_leaf(self):
        cfg = ProtocolConfig(variant="push", initial_informed=frozenset({0}), rng_seed=3)
        trace = run(star(3), cfg)
        assert trace.t_all >= 3

    def test_everything_informed_at_start(self):
        g = cycle(5)
        cfg = ProtocolConfig(initial_informed=g.node_set)
        trace = run(g, cfg)
        assert trace.t_all == 0 and trace.rounds == 0 and trace.completed

    def test_random_origin_varies_by_trial(self):
        g = cycle(32)
        cfg = ProtocolConfig(record_sets=True)
        origins = set()
        for trial in range(12):
            trace = run(g, cfg, trial)
            origins |= trace.sets[0]
        assert len(origins) >= 4

    def test_target_stopping(self):
        g = path(10)
        cfg = ProtocolConfig(initial_informed=frozenset({0}), rng_seed=1)
        trace = run(g, cfg, target={9}, stop_at_target=True)
        assert trace.t_target == trace.rounds
        assert trace.t_target >= 9  # one hop per round at most
        at_start = run(g, cfg, target={0}, stop_at_target=True)
        assert at_start.t_target == 0 and at_start.rounds == 0


class TestTraceInvariants:
    @given(connected_graphs(max_nodes=10), st.sampled_from(("push", "pull", "pushpull")), st.integers(0, 5))
    @settings(max_examples=60)
    def test_stats_match_recorded_sets(self, g, variant, seed):
        cfg = ProtocolConfig(variant=variant, rng_seed=seed, record_sets=True)
        trace = run(g, cfg)
        assert trace.sets is not None
        last = None
        for t, s in enumerate(trace.sets):
            b = boundary(g, s)
            assert trace.informed[t] == len(s)
            assert trace.boundary[t] == len(b)
            assert trace.closure[t] == len(s | b)
            assert trace.psi[t] == pytest.approx(len(s) + len(b) / 2)
            assert trace.harmonic_mass[t] == pytest.approx(
                harmonic_mass(g, s), abs=1e-9
            )
            if last is not None:
                assert last <= s  # informed only grows
                # growth happens along edges only
                for v in s - last:
                    assert any(u in last for u in g.adj[v])
            last = s
        assert trace.completed == (trace.informed[-1] == g.n)
        if trace.completed:
            assert trace.psi[-1] == g.n
            assert trace.t_all == trace.rounds

    @given(connected_graphs(max_nodes=10), st.integers(0, 5))
    @settings(max_examples=40)
    def test_psi_monotone_and_half_time(self, g, seed):
        cfg = ProtocolConfig(rng_seed=seed)
        trace = run(g, cfg)
        for a, b in zip(trace.psi, trace.psi[1:]):
            assert a <= b
        half = g.n // 2 + 1
        if trace.t_half is not None:
            assert trace.informed[trace.t_half] >= half
            if trace.t_half > 0:
                assert trace.informed[trace.t_half - 1] < half

    def test_path_advances_one_hop_per_round(self):
        g = path(12)
        for variant in ("push", "pull", "pushpull"):
            for seed in range(4):
                cfg = ProtocolConfig(
                    variant=variant,
                    initial_informed=frozenset({0}),
                    rng_seed=seed,
                    record_sets=True,
                )
                trace = run(g, cfg)
                for t, s in enumerate(trace.sets):
                    assert max(s) <= t


class TestCoupling:
    @given(connected_graphs(max_nodes=10), st.integers(0, 9))
    @settings(max_examples=60)
    def test_pushpull_dominates_both(self, g, seed):
        traces = {}
        for variant in ("push", "pull", "pushpull"):
            cfg = ProtocolConfig(
                variant=variant,
                initial_informed=frozenset({0}),
                rng_seed=seed,
                record_sets=True,
            )
            traces[variant] = run(g, cfg)
        pp = traces["pushpull"].sets
        for variant in ("push", "pull"):
            solo = traces[variant].sets
            for t in range(len(solo)):
                combined = pp[t] if t < len(pp) else g.node_set
                assert solo[t] <= combined
            if traces["pushpull"].completed and traces[variant].completed:
                assert traces["pushpull"].t_all <= traces[variant].t_all

    def test_single_round_matches_oracle(self):
        rand = random.Random(3)
        from helpers import random_connected

        for case in range(30):
            g = random_connected(rand, rand.randint(2, 10))
            k = rand.randint(1, g.n - 1)
            informed = frozenset(rand.sample(range(g.n), k))
            variant = ("push", "pull", "pushpull")[case % 3]
            u = stream(1000 + case, 0).random(g.n)
            draws = {
                v: g.adj[v][min(int(u[v] * len(g.adj[v])), len(g.adj[v]) - 1)]
                for v in range(g.n)
            }
            want = oracles.naive_round(g.adj, informed, draws, variant)
            got = single_round(g, informed, variant, stream(1000 + case, 0))
            assert got == want


class TestRestrictedRuns:
    def test_unrestricted_equals_plain_pushpull(self):
        from helpers import random_connected

        g = random_connected(random.Random(5), 12)
        cfg = ProtocolConfig(rng_seed=7, record_sets=True)
        direct = run(
            g,
            ProtocolConfig(
                initial_informed=frozenset({2}), rng_seed=7, record_sets=True
            ),
        )
        restricted = run_restricted(
            g, {0}, 2, cfg, participating=g.node_set, active=g.node_set
        )
        assert restricted.informed == direct.informed
        assert restricted.boundary == direct.boundary

    def test_informed_stays_participating(self):
        from helpers import random_connected

        g = random_connected(random.Random(6), 14)
        part = frozenset(range(10))
        act = frozenset(range(6))
        cfg = ProtocolConfig(rng_seed=2, record_sets=True, max_rounds=40)
        trace = run_restricted(g, {9}, 0, cfg, participating=part, active=act)
        for s in trace.sets:
            assert s <= part

    def test_validation(self):
        g = cycle(6)
        cfg = ProtocolConfig()
        with pytest.raises(InputError):
            run_restricted(g, {0}, 1, cfg, participating={1, 2}, active={1, 3})
        with pytest.raises(InputError):
            run_restricted(g, {0}, 5, cfg, participating={1, 2}, active={1})


class TestMonteCarlo:
    def test_summary_shapes_and_determinism(self):
        g = cycle(12)
        cfg = ProtocolConfig(rng_seed=4)
        a, _ = monte_carlo(g, cfg, 25)
        b, _ = monte_carlo(g, cfg, 25)
        assert a.t_all == b.t_all and a.t_half == b.t_half
        assert a.trials == 25 and a.completed_count == 25
        assert a.median_t_all >= 1

    def test_incomplete_runs_fold_into_quantiles(self):
        g = path(16)
        cfg = ProtocolConfig(
            variant="push", initial_informed=frozenset({0}), max_rounds=3, rng_seed=0
        )
        summary, _ = monte_carlo(g, cfg, 10)
        assert summary.completed_count == 0
        assert math.isinf(summary.quantile_t_all(0.5))
        assert all(t is None for t in summary.t_all)

    def test_trials_validation(self):
        with pytest.raises(InputError):
            monte_carlo(cycle(4), ProtocolConfig(), 0)


class TestFirstArrival:
    def test_deterministic_and_plausible(self):
        g = cycle(20)
        a = first_arrival_times(g, {0}, {10}, "pushpull", 300, rng_seed=1)
        b = first_arrival_times(g, {0}, {10}, "pushpull", 300, rng_seed=1)
        assert np.array_equal(a, b)
        assert a.min() >= 10  # distance bound: one hop per round

    def test_zero_when_already_there(self):
        g = cycle(6)
        times = first_arrival_times(g, {0, 3}, {3}, "push", 5, rng_seed=0)
        assert np.array_equal(times, np.zeros(5, dtype=np.int64))

    def test_incomplete_raises(self):
        g = path(10)
        with pytest.raises(IncompleteSpreadError):
            first_arrival_times(
                g, {0}, {9}, "push", 8, rng_seed=0, max_rounds=3
            )

    def test_validation(self):
        g = cycle(6)
        with pytest.raises(InputError):
            first_arrival_times(g, {0}, {1}, "flood", 5, rng_seed=0)
        with pytest.raises(InputError):
            first_arrival_times(g, set(), {1}, "push", 5, rng_seed=0)


class TestGrowthCheck:
    def test_cycle_instance(self):
        rep = pull_growth_check(cycle(6), {0}, trials=4000, rng_seed=2)
        assert isinstance(rep, GrowthCheckReport)
        assert rep.floor == pytest.approx(1.0)  # h = 1/2 times boundary 2
        assert rep.boundary_size == 2
        assert rep.passed
        assert rep.mean_growth >= rep.floor - 4 * rep.stderr

    def test_dominating_set_short_circuit(self):
        rep = pull_growth_check(star(8), {0}, trials=10, rng_seed=0)
        assert rep.mean_growth == 0.0 and rep.floor == 0.0 and rep.passed

    def test_deterministic(self):
        a = pull_growth_check(dumbbell(4), {0}, trials=500, rng_seed=3)
        b = pull_growth_check(dumbbell(4), {0}, trials=500, rng_seed=3)
        assert a.mean_growth == b.mean_growth and a.stderr == b.stderr

    def test_validation(self):
        with pytest.raises(InputError):
            pull_growth_check(cycle(6), {0}, trials=1, rng_seed=0)
        with pytest.raises(InputError):
            pull_growth_check(cycle(6), set(range(6)), trials=10, rng_seed=0)


class TestDoubling:
    def test_pair_frozen(self):
        cfg = ProtocolConfig(variant="push", initial_informed=frozenset({0}))
        trace = run(complete(2), cfg)
        assert doubling_times(trace) == [(0, 1)]

    def test_structure_on_larger_runs(self):
        cfg = ProtocolConfig(initial_informed=frozenset({0}), rng_seed=5)
        trace = run(cycle(32), cfg)
        checkpoints = doubling_times(trace)
        times = [t for t, _ in checkpoints]
        assert times[0] == 0
        assert times == sorted(set(times))
        for t, window in checkpoints:
            assert window >= 0
            assert t + window <= trace.rounds

    def test_requires_completed(self):
        cfg = ProtocolConfig(
            variant="push", initial_informed=frozenset({0}), max_rounds=2
        )
        trace = run(path(16), cfg)
        assert not trace.completed
        with pytest.raises(InputError):
            doubling_times(trace)


class TestCsvOutput:
    def test_trace_csv(self, tmp_path):
        g = cycle(8)
        cfg = ProtocolConfig(rng_seed=1)
        summary, traces = monte_carlo(g, cfg, 3, keep_traces=True)
        out = tmp_path / "trace.csv"
        write_trace_csv(traces, str(out))
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "trial,round,informed,boundary,closure,psi,harmonic_mass"
        assert len(lines) == 1 + sum(len(tr.informed) for tr in traces)
        assert lines[1].startswith("0,0,1,2,3,2,")

    def test_summary_csv_blanks_for_incomplete(self, tmp_path):
        g = path(16)
        cfg = ProtocolConfig(
            variant="push", initial_informed=frozenset({0}), max_rounds=2
        )
        summary, _ = monte_carlo(g, cfg, 2)
        out = tmp_path / "summary.csv"
        write_summary_csv(summary, str(out))
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "trial,t_half,t_all,completed"
        assert lines[1] == "0,,,0"

    def test_byte_identical_reruns(self, tmp_path):
        g = dumbbell(3)
        cfg = ProtocolConfig(rng_seed=9)
        for name in ("a", "b"):
            summary, traces = monte_carlo(g, cfg, 5, keep_traces=True)
            write_trace_csv(traces, str(tmp_path / f"{name}_trace.csv"))
            write_summary_csv(summary, str(tmp_path / f"{name}_summary.csv"))
        assert (tmp_path / "a_trace.csv").read_bytes() == (
            tmp_path / "b_trace.csv"
        ).read_bytes()
        assert (tmp_path / "a_summary.csv").read_bytes() == (
            tmp_path / "b_summary.csv"
        ).read_bytes()
