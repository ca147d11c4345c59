#include "ctmdp/simulate.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ctmdp {

namespace {

constexpr double kAcceptSlack = 1e-9; // relative slack before a bound violation is an error

int sample_initial_state(const std::vector<double>& gamma, Rng& rng) {
    return rng.categorical(gamma);
}

void validate_distribution(const std::vector<double>& gamma) {
    double total = 0.0;
    for (double g : gamma) {
        if (g < 0.0) throw std::invalid_argument("initial distribution has a negative entry");
        total += g;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("initial distribution does not sum to 1");
}

/// Policy-mixed exit rate and off-diagonal kernel row at state x.
double mixed_rate(const FiniteCtmdp& model, const std::vector<double>& action_probs, int x,
                  std::vector<double>& mixed_row) {
    const int s = model.num_states;
    mixed_row.assign(s, 0.0);
    double rate = 0.0;
    for (int ai = 0; ai < model.num_actions(x); ++ai) {
        const double p = action_probs[ai];
        if (p == 0.0) continue;
        rate += p * (-model.rates[x][ai][x]);
        for (int y = 0; y < s; ++y)
            if (y != x) mixed_row[y] += p * model.rates[x][ai][y];
    }
    if (rate < 0.0) throw std::domain_error("negative exit rate; rate kernel is invalid");
    return rate;
}

} // namespace

ContinuousPolicy stationary_1d(std::function<double(double)> f) {
    ContinuousPolicy policy;
    policy.act = [f = std::move(f)](std::span<const double>, std::span<const double> states,
                                    double) { return f(states.back()); };
    return policy;
}

FiniteTrajectory sample_trajectory(const FiniteCtmdp& model, const StationaryPolicy& phi, int x0,
                                   double horizon, Rng& rng, const SimOptions& opts) {
    if (x0 < 0 || x0 >= model.num_states)
        throw std::out_of_range("sample_trajectory: initial state out of range");

    FiniteTrajectory traj;
    traj.horizon = horizon;
    int x = x0;
    double t = 0.0;
    std::vector<double> mixed_row;

    traj.records.push_back({0.0, x, rng.categorical(phi.probs[x])});
    while (true) {
        const double rate = mixed_rate(model, phi.probs[x], x, mixed_row);
        if (rate <= 0.0) break; // absorbing under phi: constant to the horizon
        const double sojourn = rng.exponential(rate);
        if (t + sojourn >= horizon) break;
        t += sojourn;
        x = rng.categorical(mixed_row);
        traj.records.push_back({t, x, rng.categorical(phi.probs[x])});
        if (traj.records.size() > opts.max_jumps) {
            traj.exploded = true;
            break;
        }
    }
    return traj;
}

FiniteTrajectory sample_trajectory(const FiniteCtmdp& model, const FiniteHistoryPolicy& policy,
                                   int x0, double horizon, Rng& rng, const SimOptions& opts) {
    if (x0 < 0 || x0 >= model.num_states)
        throw std::out_of_range("sample_trajectory: initial state out of range");

    FiniteTrajectory traj;
    traj.horizon = horizon;
    std::vector<double> jump_times{0.0};
    std::vector<int> states{x0};
    std::vector<double> mixed_row;

    int x = x0;
    double sojourn_start = 0.0;
    double elapsed = 0.0;
    double bound = q_star(model, x);
    traj.records.push_back({0.0, x, rng.categorical(policy.act(jump_times, states, 0.0))});

    while (true) {
        if (bound <= 0.0) break; // every action is absorbing here
        elapsed += rng.exponential(bound);
        if (sojourn_start + elapsed >= horizon) break;

        const std::vector<double> law = policy.act(jump_times, states, elapsed);
        const double rate = mixed_rate(model, law, x, mixed_row);
        if (rate > bound * (1.0 + kAcceptSlack)) {
            std::ostringstream os;
            os << "thinning bound violated at state " << x << ": mixed rate " << rate
               << " exceeds q*(x) = " << bound;
            throw std::runtime_error(os.str());
        }
        if (rng.uniform() > rate / bound) continue; // thinned proposal

        const double t = sojourn_start + elapsed;
        x = rng.categorical(mixed_row);
        jump_times.push_back(t);
        states.push_back(x);
        sojourn_start = t;
        elapsed = 0.0;
        bound = q_star(model, x);
        traj.records.push_back({t, x, rng.categorical(policy.act(jump_times, states, 0.0))});
        if (traj.records.size() > opts.max_jumps) {
            traj.exploded = true;
            break;
        }
    }
    return traj;
}

ContinuousTrajectory sample_trajectory(const ContinuousCtmdp1D& model,
                                       const ContinuousPolicy& policy, double x0, double horizon,
                                       Rng& rng, const SimOptions& opts) {
    ContinuousTrajectory traj;
    traj.horizon = horizon;
    std::vector<double> jump_times{0.0};
    std::vector<double> states{x0};

    double x = x0;
    double sojourn_start = 0.0;
    double elapsed = 0.0;
    double bound = model.rate_bound(x);
    traj.records.push_back({0.0, x, policy.act(jump_times, states, 0.0)});

    while (true) {
        if (bound <= 0.0) break;
        elapsed += rng.exponential(bound);
        if (sojourn_start + elapsed >= horizon) break;

        const double a = policy.act(jump_times, states, elapsed);
        if (a < model.action_lo(x) || a > model.action_hi(x)) {
            std::ostringstream os;
            os << "policy action " << a << " outside A(x) at x = " << x;
            throw std::runtime_error(os.str());
        }
        const double rate = model.exit_rate(x, a);
        if (rate < 0.0) throw std::domain_error("negative exit rate in continuous model");
        if (rate > bound * (1.0 + kAcceptSlack)) {
            std::ostringstream os;
            os << "thinning bound violated at (x = " << x << ", a = " << a
               << "): rate " << rate << " exceeds rate_bound(x) = " << bound;
            throw std::runtime_error(os.str());
        }
        if (rng.uniform() > rate / bound) continue;

        const double var = model.jump_var(x, a);
        if (!(var > 0.0)) throw std::domain_error("jump variance must be positive");
        const double t = sojourn_start + elapsed;
        x = rng.normal(model.jump_mean(x, a), std::sqrt(var));
        jump_times.push_back(t);
        states.push_back(x);
        sojourn_start = t;
        elapsed = 0.0;
        bound = model.rate_bound(x);
        traj.records.push_back({t, x, policy.act(jump_times, states, 0.0)});
        if (traj.records.size() > opts.max_jumps) {
            traj.exploded = true;
            break;
        }
    }
    return traj;
}

namespace {

McEstimate reduce_mean(const std::vector<double>& values) {
    McEstimate est;
    est.n = values.size();
    double sum = 0.0;
    for (double v : values) sum += v;
    est.mean = sum / static_cast<double>(est.n);
    double var = 0.0;
    for (double v : values) var += (v - est.mean) * (v - est.mean);
    if (est.n > 1) var /= static_cast<double>(est.n - 1);
    est.std_error = std::sqrt(var / static_cast<double>(est.n));
    return est;
}

void refuse_exploded(bool exploded) {
    if (exploded)
        throw std::runtime_error("trajectory tripped the explosion guard; "
                                 "check the drift condition or raise max_jumps");
}

} // namespace

McEstimate discounted_value_mc(const FiniteCtmdp& model, const StationaryPolicy& phi,
                               const std::vector<double>& gamma, Criterion which, int cost_index,
                               std::uint64_t n, double horizon, std::uint64_t seed,
                               const SimOptions& opts) {
    if (n == 0) throw std::invalid_argument("discounted_value_mc: n must be positive");
    validate_distribution(gamma);
    phi.validate(model);

    const std::vector<std::vector<double>>* u = nullptr;
    if (which == Criterion::Reward) {
        u = &model.reward;
    } else {
        if (cost_index < 1 || cost_index > static_cast<int>(model.costs.size()))
            throw std::out_of_range("discounted_value_mc: cost index outside 1..N");
        u = &model.costs[cost_index - 1];
    }

    // policy-expected running rate per state
    std::vector<double> ubar(model.num_states, 0.0);
    for (int x = 0; x < model.num_states; ++x)
        for (int ai = 0; ai < model.num_actions(x); ++ai)
            ubar[x] += phi.probs[x][ai] * (*u)[x][ai];

    const double alpha = model.alpha;
    std::vector<double> values;
    values.reserve(n);
    for (std::uint64_t k = 0; k < n; ++k) {
        Rng rng = Rng::for_stream(seed, k);
        const int x0 = sample_initial_state(gamma, rng);
        const FiniteTrajectory traj = sample_trajectory(model, phi, x0, horizon, rng, opts);
        refuse_exploded(traj.exploded);

        double v = 0.0;
        for (std::size_t j = 0; j < traj.records.size(); ++j) {
            const double t_k = traj.records[j].time;
            const double t_next = (j + 1 < traj.records.size()) ? traj.records[j + 1].time : horizon;
            const double weight = (std::exp(-alpha * t_k) - std::exp(-alpha * t_next)) / alpha;
            v += ubar[traj.records[j].state] * weight;
        }
        values.push_back(v);
    }
    return reduce_mean(values);
}

OccupationMeasure empirical_occupation(const FiniteCtmdp& model, const StationaryPolicy& phi,
                                       const std::vector<double>& gamma, std::uint64_t n,
                                       std::uint64_t seed, const SimOptions& opts) {
    if (n == 0) throw std::invalid_argument("empirical_occupation: n must be positive");
    validate_distribution(gamma);
    phi.validate(model);

    OccupationMeasure eta;
    eta.mass.resize(model.num_states);
    for (int x = 0; x < model.num_states; ++x) eta.mass[x].assign(model.actions[x].size(), 0.0);

    const double weight = 1.0 / static_cast<double>(n);
    for (std::uint64_t k = 0; k < n; ++k) {
        Rng rng = Rng::for_stream(seed, k);
        const double tau = rng.exponential(model.alpha);
        const int x0 = sample_initial_state(gamma, rng);
        const FiniteTrajectory traj = sample_trajectory(model, phi, x0, tau, rng, opts);
        refuse_exploded(traj.exploded);
        const int x = traj.records.back().state;
        const int ai = rng.categorical(phi.probs[x]);
        eta.mass[x][ai] += weight;
    }
    return eta;
}

MomentBoundReport check_moment_bound(const FiniteCtmdp& model, const StationaryPolicy& phi,
                                     const std::vector<double>& w, double rho, double b, double t,
                                     std::uint64_t n, std::uint64_t seed, const SimOptions& opts) {
    if (n == 0) throw std::invalid_argument("check_moment_bound: n must be positive");
    if (w.size() != static_cast<std::size_t>(model.num_states))
        throw std::invalid_argument("check_moment_bound: w must have one entry per state");
    validate_distribution(model.gamma);

    double w0 = 0.0;
    for (int x = 0; x < model.num_states; ++x) w0 += model.gamma[x] * w[x];

    std::vector<double> values;
    values.reserve(n);
    for (std::uint64_t k = 0; k < n; ++k) {
        Rng rng = Rng::for_stream(seed, k);
        const int x0 = sample_initial_state(model.gamma, rng);
        const FiniteTrajectory traj = sample_trajectory(model, phi, x0, t, rng, opts);
        refuse_exploded(traj.exploded);
        values.push_back(w[traj.records.back().state]);
    }
    const McEstimate est = reduce_mean(values);

    MomentBoundReport report;
    report.t = t;
    report.empirical_mean = est.mean;
    report.std_error = est.std_error;
    report.bound = moment_bound(w0, rho, b, t);
    report.pass = est.mean <= report.bound + est.half_width();
    return report;
}

MomentBoundReport check_moment_bound(const ContinuousCtmdp1D& model, const ContinuousPolicy& policy,
                                     const LyapunovPair& pair, double x0, double t, std::uint64_t n,
                                     std::uint64_t seed, const SimOptions& opts) {
    if (n == 0) throw std::invalid_argument("check_moment_bound: n must be positive");
    std::vector<double> values;
    values.reserve(n);
    for (std::uint64_t k = 0; k < n; ++k) {
        Rng rng = Rng::for_stream(seed, k);
        const ContinuousTrajectory traj = sample_trajectory(model, policy, x0, t, rng, opts);
        refuse_exploded(traj.exploded);
        values.push_back(pair.w(traj.records.back().state));
    }
    const McEstimate est = reduce_mean(values);

    MomentBoundReport report;
    report.t = t;
    report.empirical_mean = est.mean;
    report.std_error = est.std_error;
    report.bound = moment_bound(pair.w(x0), pair.rho, pair.b, t);
    report.pass = est.mean <= report.bound + est.half_width();
    return report;
}

McEstimate discounted_value_mc(const ContinuousCtmdp1D& model, const ContinuousPolicy& policy,
                               double x0, std::uint64_t n, double horizon, std::uint64_t seed,
                               const SimOptions& opts) {
    if (n == 0) throw std::invalid_argument("discounted_value_mc: n must be positive");
    const double alpha = model.alpha;

    std::vector<double> values;
    values.reserve(n);
    for (std::uint64_t k = 0; k < n; ++k) {
        Rng rng = Rng::for_stream(seed, k);
        const ContinuousTrajectory traj = sample_trajectory(model, policy, x0, horizon, rng, opts);
        refuse_exploded(traj.exploded);

        double v = 0.0;
        for (std::size_t j = 0; j < traj.records.size(); ++j) {
            const double t_k = traj.records[j].time;
            const double t_next = (j + 1 < traj.records.size()) ? traj.records[j + 1].time : horizon;
            const double weight = (std::exp(-alpha * t_k) - std::exp(-alpha * t_next)) / alpha;
            v += model.reward(traj.records[j].state, traj.records[j].action) * weight;
        }
        values.push_back(v);
    }
    return reduce_mean(values);
}

} // namespace ctmdp
