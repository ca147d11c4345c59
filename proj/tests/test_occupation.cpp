#include <doctest.h>

#include <cmath>

#include "ctmdp/lyapunov.hpp"
#include "ctmdp/occupation.hpp"
#include "oracles.hpp"

using namespace ctmdp;

namespace {
FiniteCtmdp absorbing_model() {
    FiniteCtmdp m;
    m.num_states = 1;
    m.actions = {{0}};
    m.rates = {{{0.0}}};
    m.reward = {{3.0}};
    m.alpha = 1.0;
    m.gamma = {1.0};
    return m;
}
} // namespace

TEST_CASE("two-state marginal solves the balance system by hand: (0.75, 0.25)") {
    const FiniteCtmdp m = oracles::load_fixture("two_state.json");
    const StationaryPolicy f = StationaryPolicy::deterministic(m, std::vector<int>{0, 0});
    const OccupationMeasure eta = occupation_of_stationary(m, f);
    CHECK(eta.marginal(0) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(eta.marginal(1) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(eta.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(balance_residual(m, eta) <= 1e-12);
}

TEST_CASE("absorbing state concentrates the measure") {
    const FiniteCtmdp m = absorbing_model();
    const OccupationMeasure eta =
        occupation_of_stationary(m, StationaryPolicy::deterministic(m, std::vector<int>{0}));
    CHECK(eta.mass[0][0] == doctest::Approx(1.0));
}

TEST_CASE("occupation measures of random policies are probabilities with tiny residual") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const FiniteCtmdp m = oracles::random_instance(rng, {});
        const StationaryPolicy phi = oracles::random_policy(m, rng);
        const OccupationMeasure eta = occupation_of_stationary(m, phi);
        CHECK(eta.total_mass() == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(balance_residual(m, eta) <= 1e-10);
        for (const auto& row : eta.mass)
            for (double v : row) CHECK(v >= 0.0);
    }
}

TEST_CASE("balance residual") {
    const FiniteCtmdp m = oracles::load_fixture("two_state.json");
    const StationaryPolicy f = StationaryPolicy::deterministic(m, std::vector<int>{0, 0});
    const OccupationMeasure balanced = occupation_of_stationary(m, f);

    SUBCASE("uniform measure on this model is not balanced") {
        OccupationMeasure uniform;
        uniform.mass = {{0.5}, {0.5}};
        CHECK(balance_residual(m, uniform) > 0.1);
    }
    SUBCASE("perturbation grows the residual linearly") {
        auto perturbed = [&](double eps) {
            OccupationMeasure eta = balanced;
            eta.mass[0][0] += eps;
            return balance_residual(m, eta);
        };
        const double r1 = perturbed(1e-6);
        const double r2 = perturbed(2e-6);
        CHECK(r1 > 0.0);
        CHECK(r2 / r1 == doctest::Approx(2.0).epsilon(1e-3));
    }
}

TEST_CASE("value_of_measure") {
    const FiniteCtmdp m = oracles::load_fixture("two_state.json");
    const StationaryPolicy f = StationaryPolicy::deterministic(m, std::vector<int>{0, 0});
    const OccupationMeasure eta = occupation_of_stationary(m, f);

    SUBCASE("reward oracle value 1.5") {
        CHECK(value_of_measure(m, eta, Criterion::Reward) == doctest::Approx(1.5).epsilon(1e-12));
    }
    SUBCASE("zero rate gives zero value") {
        FiniteCtmdp zero = m;
        zero.reward = {{0.0}, {0.0}};
        CHECK(value_of_measure(zero, eta, Criterion::Reward) == doctest::Approx(0.0));
    }
    SUBCASE("constant rate k gives k/alpha for any alpha") {
        FiniteCtmdp constant = m;
        constant.alpha = 1.7;
        constant.reward = {{4.0}, {4.0}};
        const OccupationMeasure eta2 = occupation_of_stationary(
            constant, StationaryPolicy::deterministic(constant, std::vector<int>{0, 0}));
        CHECK(value_of_measure(constant, eta2, Criterion::Reward) ==
              doctest::Approx(4.0 / 1.7).epsilon(1e-12));
    }
    SUBCASE("cost index bounds are enforced") {
        CHECK_THROWS_AS(value_of_measure(m, eta, Criterion::Cost, 1), std::out_of_range);
    }
}

TEST_CASE("extract_policy") {
    SUBCASE("ratio formula") {
        OccupationMeasure eta;
        eta.mass = {{0.5, 0.25}, {0.25}};
        const StationaryPolicy phi = extract_policy(eta);
        CHECK(phi.probs[0][0] == doctest::Approx(2.0 / 3.0));
        CHECK(phi.probs[0][1] == doctest::Approx(1.0 / 3.0));
        CHECK(phi.probs[1][0] == doctest::Approx(1.0));
    }
    SUBCASE("zero marginal falls back to the chosen action") {
        OccupationMeasure eta;
        eta.mass = {{1.0}, {0.0, 0.0}};
        const StationaryPolicy first = extract_policy(eta);
        CHECK(first.probs[1][0] == doctest::Approx(1.0));
        const StationaryPolicy second = extract_policy(eta, [](int) { return 1; });
        CHECK(second.probs[1][1] == doctest::Approx(1.0));
        CHECK_THROWS_AS(extract_policy(eta, [](int) { return 5; }), std::invalid_argument);
    }
    SUBCASE("point-mass measure gives a deterministic policy") {
        OccupationMeasure eta;
        eta.mass = {{0.6, 0.0}, {0.4}};
        CHECK(extract_policy(eta).is_deterministic());
    }
}

TEST_CASE("randomization_count") {
    StationaryPolicy phi;
    phi.probs = {{1.0, 0.0}, {1.0}};
    CHECK(randomization_count(phi) == 0);
    phi.probs = {{0.5, 0.5}, {1.0}};
    CHECK(randomization_count(phi) == 1);
    phi.probs = {{0.4, 0.3, 0.3}, {0.2, 0.5, 0.3}};
    CHECK(randomization_count(phi) == 4);
    phi.probs = {{1.0 - 1e-12, 1e-12}};
    CHECK(randomization_count(phi) == 0); // below the support tolerance
}

TEST_CASE("discounted values respect the Lyapunov value bound with w = 1") {
    // with constant w the drift offset is 0 and M is the largest |rate| / w
    Rng rng(77);
    for (int trial = 0; trial < 25; ++trial) {
        const FiniteCtmdp m = oracles::random_instance(rng, {});
        const StationaryPolicy phi = oracles::random_policy(m, rng);
        const OccupationMeasure eta = occupation_of_stationary(m, phi);
        double M = 0.0;
        for (const auto& row : m.reward)
            for (double r : row) M = std::max(M, std::abs(r));
        const double bound = value_bound(M, 1.0, 0.0, m.alpha, 0.0);
        CHECK(std::abs(value_of_measure(m, eta, Criterion::Reward)) <= bound + 1e-12);
    }
}

TEST_CASE("round trip: extract_policy after occupation_of_stationary is the identity") {
    Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const FiniteCtmdp m = oracles::random_instance(rng, {});
        const StationaryPolicy phi = oracles::random_policy(m, rng);
        const StationaryPolicy back = extract_policy(occupation_of_stationary(m, phi));
        for (int x = 0; x < m.num_states; ++x)
            for (std::size_t ai = 0; ai < phi.probs[x].size(); ++ai)
                CHECK(back.probs[x][ai] == doctest::Approx(phi.probs[x][ai]).epsilon(1e-9));
    }
}
