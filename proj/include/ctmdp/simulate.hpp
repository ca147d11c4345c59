#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ctmdp/lyapunov.hpp"
#include "ctmdp/model.hpp"
#include "ctmdp/occupation.hpp"
#include "ctmdp/rng.hpp"

namespace ctmdp {

struct SimOptions {
    /// Explosion guard: a diagnostic, not a proof. Trajectories exceeding this
    /// many jumps are flagged exploded and estimators refuse them loudly.
    std::uint64_t max_jumps = 1000000;
};

/// Piecewise-constant sample path: state x_k on [T_k, T_{k+1}). The action
/// entry is a descriptor drawn at sojourn start (for randomized laws the
/// dynamics mix over actions continuously; the descriptor is bookkeeping).
template <class StateT, class ActionT>
struct TrajectoryT {
    struct Jump {
        double time = 0.0;
        StateT state{};
        ActionT action{};
    };
    std::vector<Jump> records; // records.front().time == 0
    double horizon = 0.0;      // simulated end time (may be +inf for absorbing runs)
    bool exploded = false;

    StateT state_at(double t) const {
        auto it = std::upper_bound(records.begin(), records.end(), t,
                                   [](double value, const Jump& j) { return value < j.time; });
        return std::prev(it)->state;
    }
};

using FiniteTrajectory = TrajectoryT<int, int>;
using ContinuousTrajectory = TrajectoryT<double, double>;

/// Action law measurable in the truncated jump history and the elapsed sojourn
/// time: finite models return a probability vector over A(current state).
struct FiniteHistoryPolicy {
    std::function<std::vector<double>(std::span<const double> jump_times,
                                      std::span<const int> states, double elapsed)>
        act;
};

/// Continuous models use a deterministic action in [a_lo(x), a_hi(x)].
struct ContinuousPolicy {
    std::function<double(std::span<const double> jump_times,
                         std::span<const double> states, double elapsed)>
        act;
};

/// Stationary feedback rule a = f(current state).
ContinuousPolicy stationary_1d(std::function<double(double)> f);

/// Exact path of a randomized stationary policy: the action law is constant
/// within sojourns, so the sojourn is exponential with the policy-mixed exit
/// rate and the destination follows the policy-mixed kernel.
FiniteTrajectory sample_trajectory(const FiniteCtmdp& model, const StationaryPolicy& phi,
                                   int x0, double horizon, Rng& rng, const SimOptions& opts = {});

/// Time-varying action laws go through thinning against q*(x): proposals at
/// the dominating rate, accepted with probability (mixed rate)/q*(x).
FiniteTrajectory sample_trajectory(const FiniteCtmdp& model, const FiniteHistoryPolicy& policy,
                                   int x0, double horizon, Rng& rng, const SimOptions& opts = {});

/// Thinning against rate_bound(x); a proposal whose acceptance probability
/// exceeds one (the supplied bound is wrong) is a hard error naming the point.
ContinuousTrajectory sample_trajectory(const ContinuousCtmdp1D& model, const ContinuousPolicy& policy,
                                       double x0, double horizon, Rng& rng,
                                       const SimOptions& opts = {});

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
    double z = 3.0; // half-width multiplier the acceptance suites test at

    double half_width() const { return z * std_error; }
};

/// Monte Carlo estimate of the discounted criterion: per trajectory it
/// accumulates ubar(x_k) (e^{-alpha T_k} - e^{-alpha (T_{k+1} and T)}) / alpha
/// with ubar the policy-expected reward/cost rate. Initial states are drawn
/// from gamma; trajectory k uses the k-th stream of the master seed.
McEstimate discounted_value_mc(const FiniteCtmdp& model, const StationaryPolicy& phi,
                               const std::vector<double>& gamma, Criterion which, int cost_index,
                               std::uint64_t n, double horizon, std::uint64_t seed,
                               const SimOptions& opts = {});

/// Samples the alpha e^{-alpha t} dt weight of the occupation integral with an
/// exponential time draw: simulate to tau ~ Exp(alpha), record the state there
/// and an action drawn from the policy. Exactly normalized by construction.
OccupationMeasure empirical_occupation(const FiniteCtmdp& model, const StationaryPolicy& phi,
                                       const std::vector<double>& gamma, std::uint64_t n,
                                       std::uint64_t seed, const SimOptions& opts = {});

struct MomentBoundReport {
    double t = 0.0;
    double empirical_mean = 0.0;
    double std_error = 0.0;
    double bound = 0.0;
    bool pass = false; // empirical mean <= bound + z std errors
};

MomentBoundReport check_moment_bound(const FiniteCtmdp& model, const StationaryPolicy& phi,
                                     const std::vector<double>& w, double rho, double b, double t,
                                     std::uint64_t n, std::uint64_t seed,
                                     const SimOptions& opts = {});

MomentBoundReport check_moment_bound(const ContinuousCtmdp1D& model, const ContinuousPolicy& policy,
                                     const LyapunovPair& pair, double x0, double t, std::uint64_t n,
                                     std::uint64_t seed, const SimOptions& opts = {});

/// Reward-criterion estimate for continuous models from a fixed start state;
/// the action is frozen at its sojourn-start value, which is exact for
/// stationary feedback rules.
McEstimate discounted_value_mc(const ContinuousCtmdp1D& model, const ContinuousPolicy& policy,
                               double x0, std::uint64_t n, double horizon, std::uint64_t seed,
                               const SimOptions& opts = {});

} // namespace ctmdp
