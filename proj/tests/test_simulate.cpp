#include <doctest.h>

#include <cmath>

#include "ctmdp/benchmarks.hpp"
#include "ctmdp/simulate.hpp"
#include "oracles.hpp"

using namespace ctmdp;

namespace {
const double kInf = std::numeric_limits<double>::infinity();

FiniteCtmdp absorbing_model() {
    FiniteCtmdp m;
    m.num_states = 1;
    m.actions = {{0}};
    m.rates = {{{0.0}}};
    m.reward = {{3.0}};
    m.alpha = 2.0;
    m.gamma = {1.0};
    return m;
}
} // namespace

TEST_CASE("absorbing state never jumps") {
    const FiniteCtmdp m = absorbing_model();
    Rng rng(1);
    const FiniteTrajectory traj =
        sample_trajectory(m, StationaryPolicy::deterministic(m, std::vector<int>{0}), 0, 100.0, rng);
    CHECK(traj.records.size() == 1);
    CHECK_FALSE(traj.exploded);
    CHECK(traj.state_at(57.0) == 0);
}

TEST_CASE("identical seeds reproduce trajectories; different streams differ") {
    const FiniteCtmdp m = oracles::load_fixture("two_state.json");
    const StationaryPolicy f = StationaryPolicy::deterministic(m, std::vector<int>{0, 0});
    Rng a = Rng::for_stream(42, 7);
    Rng b = Rng::for_stream(42, 7);
    Rng c = Rng::for_stream(42, 8);
    const FiniteTrajectory ta = sample_trajectory(m, f, 0, 50.0, a);
    const FiniteTrajectory tb = sample_trajectory(m, f, 0, 50.0, b);
    const FiniteTrajectory tc = sample_trajectory(m, f, 0, 50.0, c);
    REQUIRE(ta.records.size() == tb.records.size());
    for (std::size_t i = 0; i < ta.records.size(); ++i) {
        CHECK(ta.records[i].time == tb.records[i].time);
        CHECK(ta.records[i].state == tb.records[i].state);
    }
    bool differs = tc.records.size() != ta.records.size();
    for (std::size_t i = 0; !differs && i < ta.records.size(); ++i)
        differs = ta.records[i].time != tc.records[i].time;
    CHECK(differs);
}

TEST_CASE("first sojourn of the two-state chain passes a KS test against Exp(1)") {
    const FiniteCtmdp m = oracles::load_fixture("two_state.json");
    const StationaryPolicy f = StationaryPolicy::deterministic(m, std::vector<int>{0, 0});
    const int n = 100000;
    std::vector<double> sojourns;
    sojourns.reserve(n);
    for (int k = 0; k < n; ++k) {
        Rng rng = Rng::for_stream(0, static_cast<std::uint64_t>(k));
        const FiniteTrajectory traj = sample_trajectory(m, f, 0, 60.0, rng);
        if (traj.records.size() > 1) sojourns.push_back(traj.records[1].time);
    }
    REQUIRE(sojourns.size() > 0.99 * n);
    const double d = oracles::ks_statistic(
        std::move(sojourns), [](double t) { return 1.0 - std::exp(-t); });
    CHECK(d < 1.628 / std::sqrt(static_cast<double>(n))); // level 0.01
}

TEST_CASE("sojourn under a randomized policy uses the mixed exit rate") {
    // state 0 mixes rates 1 and 3 equally: mean sojourn 1/2
    FiniteCtmdp m = oracles::load_fixture("two_state_2a.json");
    StationaryPolicy phi;
    phi.probs = {{0.5, 0.5}, {1.0}};
    const int n = 20000;
    double sum = 0.0;
    int hits = 0;
    for (int k = 0; k < n; ++k) {
        Rng rng = Rng::for_stream(3, static_cast<std::uint64_t>(k));
        const FiniteTrajectory traj = sample_trajectory(m, phi, 0, 50.0, rng);
        if (traj.records.size() > 1) {
            sum += traj.records[1].time;
            ++hits;
        }
    }
    CHECK(sum / hits == doctest::Approx(0.5).epsilon(0.03));
}

TEST_CASE("history policy via thinning matches the stationary sampler in law") {
    const FiniteCtmdp m = oracles::load_fixture("two_state.json");
    FiniteHistoryPolicy policy;
    policy.act = [](std::span<const double>, std::span<const int>, double) {
        return std::vector<double>{1.0};
    };
    const int n = 20000;
    double mean_state = 0.0;
    for (int k = 0; k < n; ++k) {
        Rng rng = Rng::for_stream(5, static_cast<std::uint64_t>(k));
        const FiniteTrajectory traj = sample_trajectory(m, policy, 0, 1.0, rng);
        CHECK_FALSE(traj.exploded);
        mean_state += traj.records.back().state;
    }
    mean_state /= n;
    const auto p = oracles::two_state_transient(1.0, 2.0, 1.0);
    CHECK(mean_state == doctest::Approx(p[0][1]).epsilon(0.05));
}

TEST_CASE("thinning reproduces a genuinely time-varying sojourn law") {
    // switch from the rate-1 action to the rate-3 action after 0.5 time units;
    // the first sojourn then has survival exp(-t) before the switch and
    // exp(-0.5 - 3(t - 0.5)) after it
    const FiniteCtmdp m = oracles::load_fixture("two_state_2a.json");
    FiniteHistoryPolicy policy;
    policy.act = [](std::span<const double>, std::span<const int> states, double elapsed) {
        if (states.back() != 0) return std::vector<double>{1.0};
        return elapsed < 0.5 ? std::vector<double>{1.0, 0.0} : std::vector<double>{0.0, 1.0};
    };
    const int n = 100000;
    std::vector<double> sojourns;
    sojourns.reserve(n);
    for (int k = 0; k < n; ++k) {
        Rng rng = Rng::for_stream(21, static_cast<std::uint64_t>(k));
        const FiniteTrajectory traj = sample_trajectory(m, policy, 0, 40.0, rng);
        if (traj.records.size() > 1) sojourns.push_back(traj.records[1].time);
    }
    REQUIRE(sojourns.size() > 0.999 * n);
    const double d = oracles::ks_statistic(std::move(sojourns), [](double t) {
        return t < 0.5 ? 1.0 - std::exp(-t) : 1.0 - std::exp(-0.5 - 3.0 * (t - 0.5));
    });
    CHECK(d < 1.628 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("empirical occupation of a randomized policy matches the exact solve") {
    const FiniteCtmdp m = oracles::load_fixture("two_state_2a.json");
    StationaryPolicy phi;
    phi.probs = {{0.7, 0.3}, {1.0}};
    const OccupationMeasure exact = occupation_of_stationary(m, phi);
    const std::uint64_t n = 30000;
    const OccupationMeasure mc = empirical_occupation(m, phi, m.gamma, n, 0);
    for (int x = 0; x < m.num_states; ++x)
        for (int ai = 0; ai < m.num_actions(x); ++ai) {
            const double p = exact.mass[x][ai];
            const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
            CHECK(std::abs(mc.mass[x][ai] - p) <= 3.0 * se + 1e-12);
        }
}

TEST_CASE("explosion guard trips loudly on runaway jump counts") {
    FiniteCtmdp m = oracles::load_fixture("two_state.json");
    m.rates = {{{-1e7, 1e7}}, {{1e7, -1e7}}};
    const StationaryPolicy f = StationaryPolicy::deterministic(m, std::vector<int>{0, 0});
    SimOptions opts;
    opts.max_jumps = 1000;
    Rng rng(9);
    const FiniteTrajectory traj = sample_trajectory(m, f, 0, 1.0, rng, opts);
    CHECK(traj.exploded);
    CHECK_THROWS_AS(discounted_value_mc(m, f, m.gamma, Criterion::Reward, 0, 10, 1.0, 0, opts),
                    std::runtime_error);
}

TEST_CASE("discounted_value_mc exact cases") {
    SUBCASE("zero rate estimates zero with zero spread") {
        FiniteCtmdp m = oracles::load_fixture("two_state.json");
        m.reward = {{0.0}, {0.0}};
        const StationaryPolicy f = StationaryPolicy::deterministic(m, std::vector<int>{0, 0});
        const McEstimate est = discounted_value_mc(m, f, m.gamma, Criterion::Reward, 0, 200, 30.0, 0);
        CHECK(est.mean == 0.0);
        CHECK(est.std_error == 0.0);
    }
    SUBCASE("constant rate c gives exactly c/alpha on every trajectory") {
        const FiniteCtmdp m = absorbing_model(); // alpha = 2, reward 3, infinite horizon
        const StationaryPolicy f = StationaryPolicy::deterministic(m, std::vector<int>{0});
        const McEstimate est = discounted_value_mc(m, f, m.gamma, Criterion::Reward, 0, 100, kInf, 0);
        CHECK(est.mean == doctest::Approx(1.5).epsilon(1e-14));
        CHECK(est.std_error <= 1e-14);
    }
}

TEST_CASE("two-state value estimate brackets the exact 1.5") {
    const FiniteCtmdp m = oracles::load_fixture("two_state.json");
    const StationaryPolicy f = StationaryPolicy::deterministic(m, std::vector<int>{0, 0});
    const double T = truncation_horizon(2.0, 1.0, 1.0, m.alpha, 0.0, 1e-6);
    const McEstimate est =
        discounted_value_mc(m, f, m.gamma, Criterion::Reward, 0, 20000, T, 0);
    CHECK(std::abs(est.mean - 1.5) <= est.half_width());
    CHECK(est.std_error < 0.02);
}

TEST_CASE("empirical occupation") {
    SUBCASE("absorbing model concentrates at (x0, f(x0))") {
        const FiniteCtmdp m = absorbing_model();
        const StationaryPolicy f = StationaryPolicy::deterministic(m, std::vector<int>{0});
        const OccupationMeasure eta = empirical_occupation(m, f, m.gamma, 500, 0);
        CHECK(eta.mass[0][0] == doctest::Approx(1.0));
    }
    SUBCASE("total mass is one for any sample size") {
        const FiniteCtmdp m = oracles::load_fixture("two_state.json");
        const StationaryPolicy f = StationaryPolicy::deterministic(m, std::vector<int>{0, 0});
        for (std::uint64_t n : {1u, 7u, 500u}) {
            const OccupationMeasure eta = empirical_occupation(m, f, m.gamma, n, 1);
            CHECK(eta.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("two-state estimate lands near (0.75, 0.25)") {
        const FiniteCtmdp m = oracles::load_fixture("two_state.json");
        const StationaryPolicy f = StationaryPolicy::deterministic(m, std::vector<int>{0, 0});
        const std::uint64_t n = 20000;
        const OccupationMeasure eta = empirical_occupation(m, f, m.gamma, n, 0);
        const double se = std::sqrt(0.75 * 0.25 / static_cast<double>(n));
        CHECK(std::abs(eta.marginal(0) - 0.75) <= 3.0 * se);
        CHECK(std::abs(eta.marginal(1) - 0.25) <= 3.0 * se);
    }
}

TEST_CASE("moment bound holds and tracks the matrix-exponential oracle") {
    const FiniteCtmdp m = oracles::load_fixture("two_state.json");
    const StationaryPolicy f = StationaryPolicy::deterministic(m, std::vector<int>{0, 0});
    const std::vector<double> w{1.0, 2.0};
    const DriftReport drift = check_drift(m, w, 0.0);
    REQUIRE(drift.feasible);

    for (double t : {0.5, 1.0, 2.0}) {
        const MomentBoundReport report =
            check_moment_bound(m, f, w, 0.0, drift.b_min, t, 10000, 0);
        CHECK(report.pass);
        // independent transient: E_0[w(xi_t)] = p00 w0 + p01 w1
        const auto p = oracles::two_state_transient(1.0, 2.0, t);
        const double exact = p[0][0] * w[0] + p[0][1] * w[1];
        CHECK(std::abs(report.empirical_mean - exact) <= 3.0 * report.std_error);
        CHECK(exact <= report.bound);
    }
}

TEST_CASE("continuous benchmark simulation") {
    const Benchmark bench = build_example(2);
    const ClosedFormSolution closed = example2_closed_form(1.0, 1.0, 2.0);
    const ContinuousPolicy policy = stationary_1d([&](double x) { return closed.policy(x); });

    SUBCASE("empirical jump rate out of x is about |x|+1") {
        const double x0 = 3.0;
        const int n = 20000;
        double sum = 0.0;
        int hits = 0;
        for (int k = 0; k < n; ++k) {
            Rng rng = Rng::for_stream(11, static_cast<std::uint64_t>(k));
            const ContinuousTrajectory traj = sample_trajectory(bench.model, policy, x0, 10.0, rng);
            if (traj.records.size() > 1) {
                sum += traj.records[1].time;
                ++hits;
            }
        }
        CHECK(sum / hits == doctest::Approx(1.0 / (x0 + 1.0)).epsilon(0.05));
    }
    SUBCASE("moment bound for w = x^4+1 holds at t = 1") {
        LyapunovPair pair = bench.lyapunov;
        BasisPoly w;
        w.c_one = 1.0;
        w.c_quartic = 1.0;
        std::vector<std::pair<double, double>> grid;
        for (int i = 0; i <= 100; ++i) {
            const double x = -50.0 + i;
            grid.emplace_back(x, bench.model.action_lo(x));
            grid.emplace_back(x, bench.model.action_hi(x));
        }
        const DriftReport drift = check_drift(pair, grid, [&](double x, double a) {
            return gaussian_generator_moment(bench.model, x, a, w);
        });
        REQUIRE(drift.feasible);
        pair.b = drift.b_min;
        const MomentBoundReport report = check_moment_bound(bench.model, policy, pair, 0.0, 1.0, 10000, 0);
        CHECK(report.pass);
        CHECK(report.empirical_mean < 100.0); // far inside the crude bound
    }
    SUBCASE("a lying rate bound is a hard error naming the point") {
        Benchmark broken = bench;
        broken.model.rate_bound = [](double x) { return 0.5 * (std::abs(x) + 1.0); };
        Rng rng(3);
        CHECK_THROWS_WITH_AS(sample_trajectory(broken.model, policy, 0.0, 5.0, rng),
                             doctest::Contains("thinning bound violated"), std::runtime_error);
    }
}

TEST_CASE("estimator values are invariant to unrelated stream consumption") {
    // stream k is derived from the master seed by counter, not by draw order
    const FiniteCtmdp m = oracles::load_fixture("two_state.json");
    const StationaryPolicy f = StationaryPolicy::deterministic(m, std::vector<int>{0, 0});
    const McEstimate a = discounted_value_mc(m, f, m.gamma, Criterion::Reward, 0, 500, 10.0, 77);
    const McEstimate b = discounted_value_mc(m, f, m.gamma, Criterion::Reward, 0, 500, 10.0, 77);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
}
