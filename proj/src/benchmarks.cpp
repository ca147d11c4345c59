#include "ctmdp/benchmarks.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ctmdp {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kSqrt2OverPi = 0.7978845608028654; // sqrt(2/pi)

void require_param(bool ok, const std::string& assumption) {
    if (!ok) throw std::domain_error("benchmark parameters violate " + assumption);
}

/// E|Y| - |x| for Y ~ N(x, sigma^2). Everything is expressed through erfc of
/// |x|/(sigma sqrt 2); both terms decay like the Gaussian tail, so no
/// significance is lost when |x| >> sigma.
double folded_mean_shift(double x, double var) {
    const double sigma = std::sqrt(var);
    const double z = std::abs(x) / (sigma * kSqrt2);
    return sigma * kSqrt2OverPi * std::exp(-z * z) - std::abs(x) * std::erfc(z);
}

/// E|Y| for Y ~ N(mu, sigma^2), general mean.
double folded_mean(double mu, double var) {
    const double sigma = std::sqrt(var);
    const double z = mu / (sigma * kSqrt2);
    return sigma * kSqrt2OverPi * std::exp(-z * z) + mu * std::erf(z);
}

} // namespace

Benchmark build_example(int id, const ExampleParams& params) {
    const auto [beta0, beta, p, delta, alpha] = params;
    require_param(p > 0.0 && delta > 0.0 && alpha > 0.0, "positivity of p, delta, alpha");

    Benchmark bench;
    bench.id = id;
    bench.params = params;
    ContinuousCtmdp1D& m = bench.model;
    m.alpha = alpha;
    m.gamma_sampler = [](Rng&) { return 0.0; };

    switch (id) {
    case 1:
    case 2:
        require_param(0.0 < beta0 && beta0 < beta, "0 < beta0 < beta (examples 1-2)");
        m.exit_rate = [](double x, double) { return std::abs(x) + 1.0; };
        m.rate_bound = [](double x) { return std::abs(x) + 1.0; };
        m.jump_mean = [](double x, double) { return x; };
        m.jump_var = [](double, double a) { return a; };
        m.action_lo = [beta0](double) { return beta0; };
        m.action_hi = [beta](double x) { return beta * (std::abs(x) + 1.0); };
        m.reward = (id == 2)
                       ? std::function<double(double, double)>(
                             [p, delta](double x, double a) { return p * x * x - delta * a * a; })
                       : std::function<double(double, double)>([](double, double) { return 0.0; });
        bench.lyapunov.w = [](double x) { return x * x * x * x + 1.0; };
        bench.lyapunov.w_prime = [](double x) { return x * x + 1.0; };
        bench.lyapunov.rho = 6.0 * beta + 0.1;
        break;
    case 3:
        require_param(alpha > beta * beta, "alpha > beta^2 (example 3)");
        require_param(beta >= std::max(1.0, p / (2.0 * delta)),
                      "beta >= max{1, p/(2 delta)} (example 3)");
        m.exit_rate = [beta](double x, double a) { return beta * std::abs(x) + a; };
        m.rate_bound = [beta](double x) { return beta * (2.0 * std::abs(x) + 1.0); };
        m.jump_mean = [](double x, double) { return x; };
        m.jump_var = [beta](double x, double a) { return beta * (std::abs(x) + 1.0) - a + 1.0; };
        m.action_lo = [](double) { return 0.0; };
        m.action_hi = [beta](double x) { return beta * (std::abs(x) + 1.0); };
        m.reward = [p, delta](double x, double a) { return p * std::abs(x) * a - delta * a * a; };
        bench.lyapunov.w = [](double x) { return x * x + 1.0; };
        bench.lyapunov.w_prime = [](double x) { return std::abs(x) + 1.0; };
        // leading drift term of w = x^2+1 is beta^2 x^2, so any rate in
        // (beta^2, alpha) dominates it; take the midpoint
        bench.lyapunov.rho = 0.5 * (beta * beta + alpha);
        break;
    default:
        throw std::invalid_argument("build_example: id must be 1, 2 or 3");
    }
    return bench;
}

Example2Coefficients example2_coefficients(double p, double delta, double alpha) {
    require_param(p > 0.0 && delta > 0.0 && alpha > 0.0, "positivity of p, delta, alpha");
    const double discriminant = delta * delta * alpha * alpha - p * delta;
    if (discriminant < 0.0)
        throw std::domain_error("example2_coefficients: p/delta > alpha^2 (negative discriminant)");

    Example2Coefficients c;
    c.l2 = 2.0 * delta * alpha - 2.0 * std::sqrt(discriminant);
    c.l0 = c.l2 - p / alpha;
    c.l1_plus = 2.0 * c.l2 - 2.0 * p / alpha;
    c.l1_minus = -c.l1_plus;
    return c;
}

double ClosedFormSolution::value(double x) const {
    return c2 * x * x + c1_abs * std::abs(x) + c0;
}

double ClosedFormSolution::policy(double x) const {
    return policy_slope * std::abs(x) + policy_intercept;
}

ClosedFormSolution example2_closed_form(double p, double delta, double alpha) {
    ClosedFormSolution sol;
    sol.example_id = 2;
    sol.coefficients = example2_coefficients(p, delta, alpha);
    sol.c2 = sol.coefficients.l2;
    sol.c1_abs = sol.coefficients.l1_plus;
    sol.c0 = sol.coefficients.l0;
    // f*(x) = (alpha - sqrt(alpha^2 - p/delta)) (|x|+1) = l2 (|x|+1) / (2 delta)
    const double k = alpha - std::sqrt(alpha * alpha - p / delta);
    sol.policy_slope = k;
    sol.policy_intercept = k;
    return sol;
}

ClosedFormSolution example3_closed_form(double beta, double p, double delta, double alpha) {
    require_param(alpha > beta * beta, "alpha > beta^2 (example 3)");
    require_param(beta >= std::max(1.0, p / (2.0 * delta)),
                  "beta >= max{1, p/(2 delta)} (example 3)");

    ClosedFormSolution sol;
    sol.example_id = 3;
    const double kappa = p * p / (delta * delta * (alpha - beta * beta));
    const double s = std::sqrt(kappa + 1.0) - 1.0;
    sol.kappa = kappa;
    sol.c2 = 0.5 * delta * s;
    sol.c1_abs = (p * s + kappa * delta * beta) * (beta + 1.0) * s / (2.0 * alpha * kappa);
    sol.c0 = delta * (beta + 1.0) * (beta + 1.0) * s * s * s / (8.0 * alpha * kappa);
    sol.policy_slope = p * s / (delta * kappa);
    sol.policy_intercept = (beta + 1.0) * s * s / (2.0 * kappa);
    return sol;
}

double BasisPoly::eval(double x) const {
    return c_one + c_abs * std::abs(x) + c_lin * x + c_sq * x * x +
           c_quartic * x * x * x * x;
}

double gaussian_generator_moment(const ContinuousCtmdp1D& model, double x, double a,
                                 MomentBasis g) {
    const double rate = model.exit_rate(x, a);
    const double mu = model.jump_mean(x, a);
    const double var = model.jump_var(x, a);
    if (!(var > 0.0))
        throw std::domain_error("gaussian_generator_moment: jump variance must be positive");

    // E[g(Y)] - g(x), expanded around x: with Y = x + (m + Z), m = mu - x and
    // Z ~ N(0, var), only raw moments of m + Z appear and the g(x) term cancels
    // symbolically.
    const double m = mu - x;
    const double m1 = m;
    const double m2 = m * m + var;
    const double m3 = m * m * m + 3.0 * m * var;
    const double m4 = m * m * m * m + 6.0 * m * m * var + 3.0 * var * var;

    double shift = 0.0;
    switch (g) {
    case MomentBasis::One:
        return 0.0; // conservativity, exactly
    case MomentBasis::Linear:
        shift = m1;
        break;
    case MomentBasis::Square:
        shift = 2.0 * x * m1 + m2;
        break;
    case MomentBasis::Quartic:
        shift = 4.0 * x * x * x * m1 + 6.0 * x * x * m2 + 4.0 * x * m3 + m4;
        break;
    case MomentBasis::Abs:
        shift = (m == 0.0) ? folded_mean_shift(x, var) : folded_mean(mu, var) - std::abs(x);
        break;
    }
    return rate * shift;
}

double gaussian_generator_moment(const ContinuousCtmdp1D& model, double x, double a,
                                 const BasisPoly& g) {
    double total = 0.0;
    if (g.c_abs != 0.0) total += g.c_abs * gaussian_generator_moment(model, x, a, MomentBasis::Abs);
    if (g.c_lin != 0.0) total += g.c_lin * gaussian_generator_moment(model, x, a, MomentBasis::Linear);
    if (g.c_sq != 0.0) total += g.c_sq * gaussian_generator_moment(model, x, a, MomentBasis::Square);
    if (g.c_quartic != 0.0)
        total += g.c_quartic * gaussian_generator_moment(model, x, a, MomentBasis::Quartic);
    return total; // the constant part integrates to zero
}

std::vector<ResidualPoint> bellman_residual(const ContinuousCtmdp1D& model,
                                            const ClosedFormSolution& u,
                                            std::span<const double> grid,
                                            int action_grid_points) {
    if (action_grid_points < 2)
        throw std::invalid_argument("bellman_residual: need at least two action grid points");

    BasisPoly poly;
    poly.c_one = u.c0;
    poly.c_abs = u.c1_abs;
    poly.c_sq = u.c2;

    std::vector<ResidualPoint> profile;
    profile.reserve(grid.size());
    for (double x : grid) {
        const double lo = model.action_lo(x);
        const double hi = model.action_hi(x);
        if (lo > hi)
            throw std::domain_error("bellman_residual: empty action interval at x = " + std::to_string(x));

        auto maximand = [&](double a) {
            return model.reward(x, a) + gaussian_generator_moment(model, x, a, poly);
        };

        double best = -std::numeric_limits<double>::infinity();
        double best_a = lo;
        auto consider = [&](double a) {
            const double v = maximand(a);
            if (v > best) {
                best = v;
                best_a = a;
            }
        };
        for (int i = 0; i < action_grid_points; ++i)
            consider(lo + (hi - lo) * i / (action_grid_points - 1));
        const double vertex = u.policy(x);
        if (vertex >= lo && vertex <= hi) consider(vertex);

        profile.push_back({x, model.alpha * u.value(x) - best, best_a});
    }
    return profile;
}

} // namespace ctmdp
