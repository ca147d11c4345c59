#include "ctmdp/lyapunov.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ctmdp/model.hpp"

namespace ctmdp {

namespace {
constexpr double kRhoZeroSwitch = 1e-14;
constexpr double kInf = std::numeric_limits<double>::infinity();
} // namespace

DriftReport check_drift(const LyapunovPair& pair,
                        std::span<const std::pair<double, double>> grid,
                        const std::function<double(double, double)>& moment_oracle) {
    if (grid.empty()) throw std::invalid_argument("check_drift: empty grid");

    DriftReport report;
    report.rho_used = pair.rho;
    double worst = -kInf;
    for (const auto& [x, a] : grid) {
        const double wx = pair.w(x);
        if (!(wx >= 1.0))
            throw std::domain_error("check_drift: w(x) < 1 at x = " + std::to_string(x));
        double moment;
        try {
            moment = moment_oracle(x, a);
        } catch (const std::exception& e) {
            report.feasible = false;
            report.b_min = kInf;
            report.worst_x = x;
            report.worst_a = a;
            report.note = std::string("moment oracle failed: ") + e.what();
            return report;
        }
        if (!std::isfinite(moment)) {
            report.feasible = false;
            report.b_min = kInf;
            report.worst_x = x;
            report.worst_a = a;
            report.note = "moment oracle returned non-finite value";
            return report;
        }
        const double gap = moment - pair.rho * wx;
        if (gap > worst) {
            worst = gap;
            report.worst_x = x;
            report.worst_a = a;
        }
    }
    report.b_min = std::max(0.0, worst);
    report.feasible = std::isfinite(report.b_min);
    return report;
}

DriftReport check_drift(const FiniteCtmdp& model, const std::vector<double>& w, double rho) {
    if (w.size() != static_cast<std::size_t>(model.num_states))
        throw std::invalid_argument("check_drift: w must have one entry per state");

    std::vector<std::pair<double, double>> grid;
    for (int x = 0; x < model.num_states; ++x)
        for (int ai = 0; ai < model.num_actions(x); ++ai)
            grid.emplace_back(static_cast<double>(x), static_cast<double>(ai));

    LyapunovPair pair;
    pair.rho = rho;
    pair.w = [&w](double x) { return w[static_cast<std::size_t>(x)]; };
    auto oracle = [&](double x, double ai) {
        const auto& row = model.rates[static_cast<int>(x)][static_cast<int>(ai)];
        double moment = 0.0;
        for (int y = 0; y < model.num_states; ++y) moment += row[y] * w[y];
        return moment;
    };
    return check_drift(pair, grid, oracle);
}

double moment_bound(double w0, double rho, double b, double t) {
    if (w0 < 1.0) throw std::domain_error("moment_bound: w0 must be >= 1");
    if (b < 0.0) throw std::domain_error("moment_bound: b must be >= 0");
    if (t < 0.0) throw std::domain_error("moment_bound: t must be >= 0");
    if (std::abs(rho) < kRhoZeroSwitch) return w0 + b * t;
    // expm1 keeps (e^{rho t} - 1)/rho stable for small rho
    return std::exp(rho * t) * w0 + b * (std::expm1(rho * t) / rho);
}

double value_bound(double M, double w0, double b, double alpha, double rho) {
    if (!(alpha > rho))
        throw std::domain_error("value_bound: requires alpha > rho");
    if (alpha <= 0.0) throw std::domain_error("value_bound: alpha must be positive");
    return M * (alpha * w0 + b) / (alpha * (alpha - rho));
}

double truncation_horizon(double M, double w0, double b, double alpha, double rho, double eps) {
    if (!(alpha > rho)) throw std::domain_error("truncation_horizon: requires alpha > rho");
    if (!(eps > 0.0)) throw std::domain_error("truncation_horizon: eps must be positive");

    auto tail = [&](double T) {
        return std::exp(-alpha * T) * value_bound(M, moment_bound(w0, rho, b, T), b, alpha, rho);
    };

    if (tail(0.0) <= eps) return 0.0;

    if (b == 0.0) {
        // tail(T) = M w0 e^{-(alpha-rho)T} / (alpha-rho)
        return std::log(M * w0 / ((alpha - rho) * eps)) / (alpha - rho);
    }

    double lo = 0.0, hi = 1.0;
    while (tail(hi) > eps) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) return hi; // eps astronomically small; give the caller the cap
    }
    for (int i = 0; i < 200 && (hi - lo) > 1e-13 * (1.0 + hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        (tail(mid) > eps ? lo : hi) = mid;
    }
    return hi;
}

} // namespace ctmdp
