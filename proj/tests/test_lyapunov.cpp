#include <doctest.h>

#include <cmath>

#include "ctmdp/benchmarks.hpp"
#include "ctmdp/lyapunov.hpp"
#include "oracles.hpp"

using namespace ctmdp;

TEST_CASE("constant w on a conservative finite model has zero drift offset") {
    const FiniteCtmdp m = oracles::load_fixture("two_state.json");
    for (double rho : {0.0, 0.3, 2.0}) {
        const DriftReport report = check_drift(m, {1.0, 1.0}, rho);
        CHECK(report.feasible);
        CHECK(report.b_min == doctest::Approx(0.0));
    }
    Rng rng(63);
    for (int trial = 0; trial < 20; ++trial) {
        const FiniteCtmdp random = oracles::random_instance(rng, {});
        CHECK(check_drift(random, std::vector<double>(random.num_states, 1.0), 0.0).b_min ==
              doctest::Approx(0.0));
    }
}

TEST_CASE("finite drift offset matches the hand-computed moment gap") {
    // rows [-1,1] and [2,-2], w = (1,2): moments are 1 and -2
    const FiniteCtmdp m = oracles::load_fixture("two_state.json");
    const DriftReport report = check_drift(m, {1.0, 2.0}, 0.0);
    CHECK(report.feasible);
    CHECK(report.b_min == doctest::Approx(1.0));
    CHECK(report.worst_x == doctest::Approx(0.0));
}

TEST_CASE("example-1 moment oracle at (1,1) is 18") {
    const Benchmark bench = build_example(1);
    BasisPoly w;
    w.c_one = 1.0;
    w.c_quartic = 1.0;
    CHECK(gaussian_generator_moment(bench.model, 1.0, 1.0, w) == doctest::Approx(18.0).epsilon(1e-12));
}

TEST_CASE("example-1 drift is feasible at rho = 6 beta + 0.1 on |x| <= 50") {
    const Benchmark bench = build_example(1);
    BasisPoly w;
    w.c_one = 1.0;
    w.c_quartic = 1.0;

    std::vector<std::pair<double, double>> grid;
    for (int i = 0; i <= 200; ++i) {
        const double x = -50.0 + 0.5 * i;
        const double lo = bench.model.action_lo(x);
        const double hi = bench.model.action_hi(x);
        for (int j = 0; j <= 10; ++j) grid.emplace_back(x, lo + (hi - lo) * j / 10.0);
    }
    const DriftReport report = check_drift(bench.lyapunov, grid, [&](double x, double a) {
        return gaussian_generator_moment(bench.model, x, a, w);
    });
    CHECK(report.rho_used == doctest::Approx(6.0 * 0.3 + 0.1));
    CHECK(report.feasible);
    CHECK(std::isfinite(report.b_min));
    CHECK(report.b_min > 0.0);
}

TEST_CASE("oracle failure reports the offending grid point") {
    LyapunovPair pair;
    pair.w = [](double) { return 1.0; };
    pair.rho = 0.0;
    const std::vector<std::pair<double, double>> grid{{0.0, 0.0}, {1.0, 2.0}};
    const DriftReport report = check_drift(pair, grid, [](double x, double) -> double {
        if (x > 0.5) throw std::runtime_error("quadrature blew up");
        return 0.0;
    });
    CHECK_FALSE(report.feasible);
    CHECK(report.worst_x == doctest::Approx(1.0));
    CHECK(report.worst_a == doctest::Approx(2.0));
    CHECK(report.note.find("quadrature") != std::string::npos);
}

TEST_CASE("moment_bound closed forms") {
    CHECK(moment_bound(3.0, 0.7, 2.0, 0.0) == doctest::Approx(3.0));   // t = 0 is w0
    CHECK(moment_bound(1.0, 0.0, 2.0, 3.0) == doctest::Approx(7.0));   // linear branch
    CHECK(moment_bound(1.0, 1.0, 0.0, std::log(2.0)) == doctest::Approx(2.0));
}

TEST_CASE("moment_bound is monotone and continuous in rho at zero") {
    double prev = 0.0;
    for (int i = 0; i <= 20; ++i) {
        const double t = 0.3 * i;
        const double v = moment_bound(1.5, 0.4, 0.2, t);
        CHECK(v >= prev);
        prev = v;
    }
    const double at_zero = moment_bound(2.0, 0.0, 3.0, 1.7);
    CHECK(moment_bound(2.0, 1e-9, 3.0, 1.7) == doctest::Approx(at_zero).epsilon(1e-7));
    CHECK(moment_bound(2.0, -1e-9, 3.0, 1.7) == doctest::Approx(at_zero).epsilon(1e-7));
    CHECK(moment_bound(2.0, 1e-15, 3.0, 1.7) == doctest::Approx(at_zero));
}

TEST_CASE("value_bound") {
    CHECK(value_bound(1.0, 1.0, 0.0, 2.0, 1.0) == doctest::Approx(1.0));
    CHECK(value_bound(0.0, 5.0, 3.0, 2.0, 1.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(value_bound(1.0, 1.0, 0.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("truncation_horizon") {
    SUBCASE("eps above the whole value bound needs no simulation at all") {
        const double vb = value_bound(2.0, 1.5, 0.5, 2.0, 0.7);
        CHECK(truncation_horizon(2.0, 1.5, 0.5, 2.0, 0.7, vb * 1.01) == doctest::Approx(0.0));
    }
    SUBCASE("b = 0 solves analytically") {
        CHECK(truncation_horizon(1.0, 1.0, 0.0, 2.0, 1.0, std::exp(-1.0)) == doctest::Approx(1.0));
    }
    SUBCASE("doubling eps never increases the horizon") {
        double prev = truncation_horizon(2.0, 1.5, 0.5, 2.0, 0.7, 1e-8);
        for (double eps = 2e-8; eps < 1.0; eps *= 2.0) {
            const double T = truncation_horizon(2.0, 1.5, 0.5, 2.0, 0.7, eps);
            CHECK(T <= prev + 1e-12);
            prev = T;
        }
    }
    SUBCASE("returned horizon meets the target under quadrature") {
        // independent check: integrate the discounted moment bound numerically
        const double M = 2.0, w0 = 1.5, b = 0.5, alpha = 2.0, rho = 0.7;
        for (double eps : {1e-2, 1e-4, 1e-6}) {
            const double T = truncation_horizon(M, w0, b, alpha, rho, eps);
            const double tail = oracles::simpson(
                [&](double t) { return std::exp(-alpha * t) * M * moment_bound(w0, rho, b, t); },
                T, T + 60.0, 20000);
            CHECK(tail <= eps * (1.0 + 1e-6));
            // and the horizon is not wastefully large: a slightly earlier cut misses eps
            if (T > 0.1) {
                const double early = oracles::simpson(
                    [&](double t) { return std::exp(-alpha * t) * M * moment_bound(w0, rho, b, t); },
                    T - 0.1, T + 60.0, 20000);
                CHECK(early > eps);
            }
        }
    }
}
