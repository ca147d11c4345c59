#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ctmdp/rng.hpp"

namespace ctmdp {

// Validation tolerances. Model files carry decimal literals, so row sums are
// checked against an absolute tolerance instead of exact zero.
inline constexpr double kConservativityTol = 1e-12;
inline constexpr double kDistributionTol = 1e-12;

struct Violation {
    std::string check;
    std::string location;
    double magnitude = 0.0;
};

struct ValidationReport {
    bool passed = true;
    std::vector<Violation> violations;
};

/// Finite-state, finite-action continuous-time MDP with a signed rate kernel,
/// one reward rate, N cost rates with bounds, a discount rate and an initial
/// distribution. Immutable after construction; safe to share across threads.
///
/// Per-(state, action) arrays are indexed by the *position* of the action in
/// `actions[x]`; the entries of `actions[x]` are display labels only.
struct FiniteCtmdp {
    int num_states = 0;
    std::vector<std::vector<int>> actions;                 // labels, per state
    std::vector<std::vector<std::vector<double>>> rates;   // q[x][ai][y], 1/time
    std::vector<std::vector<double>> reward;               // r[x][ai], reward/time
    std::vector<std::vector<std::vector<double>>> costs;   // c[n][x][ai], cost/time
    std::vector<double> bounds;                            // d_n
    double alpha = 1.0;                                    // discount rate, 1/time
    std::vector<double> gamma;                             // initial distribution

    // optional Lyapunov data carried by model files for drift checking
    std::vector<double> lyapunov_w;                        // empty if absent
    double lyapunov_rho = 0.0;

    int num_constraints() const { return static_cast<int>(bounds.size()); }
    int num_actions(int x) const { return static_cast<int>(actions[x].size()); }
    int kernel_size() const {
        int k = 0;
        for (const auto& ax : actions) k += static_cast<int>(ax.size());
        return k;
    }
};

/// Checks the transition-rate axioms (conservative rows, nonnegative
/// off-diagonal rates) and that gamma is a probability vector. Structural
/// problems (mismatched array shapes) throw std::invalid_argument; axiom
/// violations are collected in the report with their worst magnitude.
ValidationReport validate_finite(const FiniteCtmdp& model);

/// Largest exit rate at x over admissible actions: max_a |q(x|x,a)|.
double q_star(const FiniteCtmdp& model, int x);

/// Parse / load the JSON interchange format:
/// {"states": S, "actions": [[...]], "rates": [[[...]]], "reward": [[...]],
///  "costs": [[[...]]], "bounds": [...], "alpha": a, "gamma": [...]}
/// plus an optional "lyapunov": {"w": [...], "rho": r} block.
FiniteCtmdp parse_finite_ctmdp(const std::string& json_text);
FiniteCtmdp load_finite_ctmdp(const std::string& path);

/// Real-line model: controlled exit rate with a Gaussian post-jump kernel and
/// interval action sets [action_lo(x), action_hi(x)]. The caller supplies
/// rate_bound(x) >= sup_a exit_rate(x, a); the supremum over an interval of
/// actions is model knowledge, not something inferred here.
struct ContinuousCtmdp1D {
    std::function<double(double, double)> exit_rate;   // lambda(x,a) >= 0, 1/time
    std::function<double(double, double)> jump_mean;   // post-jump Gaussian mean
    std::function<double(double, double)> jump_var;    // post-jump Gaussian variance > 0
    std::function<double(double)> action_lo;
    std::function<double(double)> action_hi;
    std::function<double(double, double)> reward;
    std::vector<std::function<double(double, double)>> costs;
    std::vector<double> bounds;
    double alpha = 1.0;
    std::function<double(Rng&)> gamma_sampler;         // initial-state sampler
    std::function<double(double)> rate_bound;          // dominating rate for thinning
};

} // namespace ctmdp
