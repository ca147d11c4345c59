#include "ctmdp/occupation.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace ctmdp {

StationaryPolicy StationaryPolicy::deterministic(const FiniteCtmdp& model, std::span<const int> choice) {
    if (choice.size() != static_cast<std::size_t>(model.num_states))
        throw std::invalid_argument("deterministic policy: one action per state required");
    StationaryPolicy phi;
    phi.probs.resize(model.num_states);
    for (int x = 0; x < model.num_states; ++x) {
        if (choice[x] < 0 || choice[x] >= model.num_actions(x))
            throw std::invalid_argument("deterministic policy: action out of A(x) at state " + std::to_string(x));
        phi.probs[x].assign(model.actions[x].size(), 0.0);
        phi.probs[x][choice[x]] = 1.0;
    }
    return phi;
}

StationaryPolicy StationaryPolicy::uniform(const FiniteCtmdp& model) {
    StationaryPolicy phi;
    phi.probs.resize(model.num_states);
    for (int x = 0; x < model.num_states; ++x)
        phi.probs[x].assign(model.actions[x].size(), 1.0 / model.num_actions(x));
    return phi;
}

bool StationaryPolicy::is_deterministic(double tol) const {
    for (const auto& row : probs) {
        int big = 0;
        for (double p : row)
            if (p > tol) ++big;
        if (big != 1) return false;
    }
    return true;
}

void StationaryPolicy::validate(const FiniteCtmdp& model) const {
    if (probs.size() != static_cast<std::size_t>(model.num_states))
        throw std::invalid_argument("policy: row count != number of states");
    for (int x = 0; x < model.num_states; ++x) {
        if (probs[x].size() != model.actions[x].size())
            throw std::invalid_argument("policy: row " + std::to_string(x) + " length != |A(x)|");
        double sum = 0.0;
        for (double p : probs[x]) {
            if (p < 0.0) throw std::invalid_argument("policy: negative probability at state " + std::to_string(x));
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("policy: row " + std::to_string(x) + " does not sum to 1");
    }
}

double OccupationMeasure::total_mass() const {
    double total = 0.0;
    for (const auto& row : mass)
        for (double m : row) total += m;
    return total;
}

double OccupationMeasure::marginal(int x) const {
    double total = 0.0;
    for (double m : mass[x]) total += m;
    return total;
}

std::vector<double> OccupationMeasure::marginals() const {
    std::vector<double> out(mass.size());
    for (std::size_t x = 0; x < mass.size(); ++x) out[x] = marginal(static_cast<int>(x));
    return out;
}

OccupationMeasure occupation_of_stationary(const FiniteCtmdp& model, const StationaryPolicy& phi) {
    phi.validate(model);
    const int s = model.num_states;

    // policy-mixed generator: Q[x][y] = sum_a phi(a|x) q(y|x,a)
    Eigen::MatrixXd mixed = Eigen::MatrixXd::Zero(s, s);
    for (int x = 0; x < s; ++x)
        for (int ai = 0; ai < model.num_actions(x); ++ai) {
            const double p = phi.probs[x][ai];
            if (p == 0.0) continue;
            for (int y = 0; y < s; ++y) mixed(x, y) += p * model.rates[x][ai][y];
        }

    Eigen::MatrixXd system = model.alpha * Eigen::MatrixXd::Identity(s, s) - mixed.transpose();
    Eigen::VectorXd rhs = model.alpha * Eigen::Map<const Eigen::VectorXd>(model.gamma.data(), s);

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
    Eigen::VectorXd marginal = lu.solve(rhs);
    if (!marginal.allFinite() || (system * marginal - rhs).cwiseAbs().maxCoeff() > 1e-8 * (1.0 + rhs.cwiseAbs().maxCoeff()))
        throw std::runtime_error("occupation_of_stationary: balance system is numerically singular");

    OccupationMeasure eta;
    eta.mass.resize(s);
    for (int x = 0; x < s; ++x) {
        double hx = marginal(x);
        if (hx < 0.0) {
            if (hx < -1e-10)
                throw std::runtime_error("occupation_of_stationary: negative marginal beyond round-off");
            hx = 0.0; // round-off only
        }
        eta.mass[x].resize(model.actions[x].size());
        for (int ai = 0; ai < model.num_actions(x); ++ai)
            eta.mass[x][ai] = hx * phi.probs[x][ai];
    }
    return eta;
}

double balance_residual(const FiniteCtmdp& model, const OccupationMeasure& eta) {
    if (eta.mass.size() != static_cast<std::size_t>(model.num_states))
        throw std::invalid_argument("balance_residual: measure shape mismatch");
    const int s = model.num_states;
    double worst = 0.0;
    for (int x = 0; x < s; ++x) {
        double inflow = 0.0;
        for (int y = 0; y < s; ++y)
            for (int ai = 0; ai < model.num_actions(y); ++ai)
                inflow += model.rates[y][ai][x] * eta.mass[y][ai];
        const double residual = model.alpha * eta.marginal(x) - model.alpha * model.gamma[x] - inflow;
        worst = std::max(worst, std::abs(residual));
    }
    return worst;
}

double value_of_measure(const FiniteCtmdp& model, const OccupationMeasure& eta,
                        Criterion which, int cost_index) {
    const std::vector<std::vector<double>>* u = nullptr;
    if (which == Criterion::Reward) {
        u = &model.reward;
    } else {
        if (cost_index < 1 || cost_index > static_cast<int>(model.costs.size()))
            throw std::out_of_range("value_of_measure: cost index outside 1..N");
        u = &model.costs[cost_index - 1];
    }
    double total = 0.0;
    for (int x = 0; x < model.num_states; ++x)
        for (int ai = 0; ai < model.num_actions(x); ++ai)
            total += (*u)[x][ai] * eta.mass[x][ai];
    return total / model.alpha;
}

StationaryPolicy extract_policy(const OccupationMeasure& eta,
                                const std::function<int(int)>& fallback) {
    StationaryPolicy phi;
    phi.probs.resize(eta.mass.size());
    for (std::size_t x = 0; x < eta.mass.size(); ++x) {
        const int na = static_cast<int>(eta.mass[x].size());
        phi.probs[x].assign(na, 0.0);
        const double hx = eta.marginal(static_cast<int>(x));
        if (hx > 0.0) {
            for (int ai = 0; ai < na; ++ai) phi.probs[x][ai] = eta.mass[x][ai] / hx;
        } else {
            const int a0 = fallback ? fallback(static_cast<int>(x)) : 0;
            if (a0 < 0 || a0 >= na)
                throw std::invalid_argument("extract_policy: fallback action outside A(x) at state " + std::to_string(x));
            phi.probs[x][a0] = 1.0;
        }
    }
    return phi;
}

int randomization_count(const StationaryPolicy& phi, double tol) {
    int count = 0;
    for (const auto& row : phi.probs) {
        int support = 0;
        for (double p : row)
            if (p > tol) ++support;
        if (support > 1) count += support - 1;
    }
    return count;
}

} // namespace ctmdp
