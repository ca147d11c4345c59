#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ctmdp/model.hpp"

namespace ctmdp {

/// Randomized stationary policy: one probability vector over A(x) per state.
struct StationaryPolicy {
    std::vector<std::vector<double>> probs; // [x][ai]

    static StationaryPolicy deterministic(const FiniteCtmdp& model, std::span<const int> choice);
    static StationaryPolicy uniform(const FiniteCtmdp& model);

    bool is_deterministic(double tol = 1e-12) const;
    /// Throws std::invalid_argument unless every row is a probability vector
    /// (entries >= 0, sum within 1e-12 of 1) with the model's shape.
    void validate(const FiniteCtmdp& model) const;
};

/// Probability table on state-action pairs. Produced either exactly (from the
/// balance equation) or empirically (Monte Carlo); consumers only rely on the
/// table itself.
struct OccupationMeasure {
    std::vector<std::vector<double>> mass; // [x][ai] >= 0

    double total_mass() const;
    double marginal(int x) const;
    std::vector<double> marginals() const;
};

/// Exact occupation measure of a stationary policy: solves the balance system
/// (alpha I - Q_phi^T) etahat = alpha gamma with Q_phi the policy-mixed
/// generator, then splits etahat(x) across actions by phi(a|x). The system is
/// nonsingular for alpha > 0 and a conservative generator; a singular solve is
/// still detected and reported.
OccupationMeasure occupation_of_stationary(const FiniteCtmdp& model, const StationaryPolicy& phi);

/// Max over states of |alpha etahat(x) - alpha gamma(x) - sum_{y,a} q(x|y,a) eta(y,a)|.
double balance_residual(const FiniteCtmdp& model, const OccupationMeasure& eta);

enum class Criterion { Reward, Cost };

/// Discounted value of a measure: (1/alpha) sum u(x,a) eta(x,a), with u the
/// reward or the n-th cost rate (n in 1..N).
double value_of_measure(const FiniteCtmdp& model, const OccupationMeasure& eta,
                        Criterion which, int cost_index = 0);

/// phi(a|x) = eta(x,a)/etahat(x) on states with positive marginal; a point
/// mass at fallback(x) elsewhere. The default fallback is the first action.
StationaryPolicy extract_policy(const OccupationMeasure& eta,
                                const std::function<int(int)>& fallback = {});

/// Number of randomizations: sum over states of (#actions with phi(a|x) > tol) - 1.
int randomization_count(const StationaryPolicy& phi, double tol = 1e-9);

} // namespace ctmdp
