#pragma once

#include <span>
#include <vector>

#include "ctmdp/lyapunov.hpp"
#include "ctmdp/model.hpp"

namespace ctmdp {

/// Parameters of the Gaussian-kernel benchmark family. Examples 1 and 2 use
/// action intervals [beta0, beta(|x|+1)] with 0 < beta0 < beta; example 3 uses
/// [0, beta(|x|+1)] and ignores beta0.
struct ExampleParams {
    double beta0 = 0.25;
    double beta = 0.3;
    double p = 1.0;
    double delta = 1.0;
    double alpha = 2.0;
};

struct Benchmark {
    int id = 0;
    ExampleParams params;
    ContinuousCtmdp1D model;
    LyapunovPair lyapunov;
};

/// Example 1: exit rate |x|+1 with post-jump kernel N(x, a).
/// Example 2: example 1 dynamics with reward p x^2 - delta a^2.
/// Example 3: exit rate beta|x|+a, kernel N(x, beta(|x|+1)-a+1), reward
/// p|x|a - delta a^2.
/// The initial distribution is a point mass at 0. Parameter constraints are
/// checked and violations name the offended assumption.
Benchmark build_example(int id, const ExampleParams& params = {});

/// Coefficients of the example-2 value function u = l2 x^2 + l1 |x| + l0,
/// from the quadratic system alpha l2 = p + l2^2/(4 delta),
/// alpha l1 = +-l2^2/(2 delta), alpha l0 = l2^2/(4 delta). The smaller root
/// of the quadratic is taken; it vanishes as p -> 0.
struct Example2Coefficients {
    double l0 = 0.0;
    double l1_plus = 0.0;
    double l1_minus = 0.0;
    double l2 = 0.0;
};
Example2Coefficients example2_coefficients(double p, double delta, double alpha);

/// Closed-form optimal value and policy for examples 2 and 3, both of the
/// shape u(x) = c2 x^2 + c1 |x| + c0 and f*(x) = slope |x| + intercept.
struct ClosedFormSolution {
    int example_id = 0;
    double c2 = 0.0, c1_abs = 0.0, c0 = 0.0;
    double policy_slope = 0.0, policy_intercept = 0.0;
    double kappa = 0.0;              // example 3 only
    Example2Coefficients coefficients; // example 2 only

    double value(double x) const;
    double policy(double x) const;
};

ClosedFormSolution example2_closed_form(double p, double delta, double alpha);
ClosedFormSolution example3_closed_form(double beta, double p, double delta, double alpha);

/// Basis functions with exact Gaussian generator moments. Abs uses the folded
/// normal mean, evaluated through erfc so that E|Y| - |x| keeps full relative
/// accuracy far from the origin.
enum class MomentBasis { One, Abs, Linear, Square, Quartic };

/// Linear combination over the moment basis; evaluates pointwise and
/// integrates against the generator by linearity.
struct BasisPoly {
    double c_one = 0.0;
    double c_abs = 0.0;
    double c_lin = 0.0;
    double c_sq = 0.0;
    double c_quartic = 0.0;

    double eval(double x) const;
};

/// Generator moment integral g dq (.|x,a) = lambda(x,a) (E[g(Y)] - g(x)) for
/// the model's Gaussian post-jump law Y. Polynomial differences are expanded
/// around x, which avoids the catastrophic cancellation of forming
/// E[Y^4] - x^4 directly.
double gaussian_generator_moment(const ContinuousCtmdp1D& model, double x, double a,
                                 MomentBasis g);
double gaussian_generator_moment(const ContinuousCtmdp1D& model, double x, double a,
                                 const BasisPoly& g);

struct ResidualPoint {
    double x = 0.0;
    double residual = 0.0;          // alpha u(x) - sup_a [r(x,a) + integral u dq]
    double maximizing_action = 0.0;
};

/// Optimality-equation residual profile of a candidate value function over a
/// state grid. The supremum over actions is taken on an action grid
/// supplemented by the closed-form policy point (the maximand is a concave
/// quadratic up to the folded-normal correction, so the analytic vertex is
/// the natural extra candidate). The |y| moment is exact, so the profile
/// surfaces the folded-normal correction instead of hiding it.
std::vector<ResidualPoint> bellman_residual(const ContinuousCtmdp1D& model,
                                            const ClosedFormSolution& u,
                                            std::span<const double> grid,
                                            int action_grid_points = 400);

} // namespace ctmdp
