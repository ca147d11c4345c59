#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ctmdp {

struct FiniteCtmdp;

/// Lyapunov data for a real-line model: the norm-like function w >= 1 used in
/// the drift inequality, its companion w' >= 1, the drift rate rho, offset b
/// and the cost-domination constant M (|c_n(x,a)| <= M w(x)).
struct LyapunovPair {
    std::function<double(double)> w;
    std::function<double(double)> w_prime;
    double rho = 0.0;
    double b = 0.0;
    double M = 1.0;
};

struct DriftReport {
    bool feasible = false;
    double rho_used = 0.0;
    double b_min = 0.0;     // smallest offset making the inequality hold on the grid
    double worst_x = 0.0;   // grid point attaining max of (integral w dq - rho w)
    double worst_a = 0.0;
    std::string note;       // filled on oracle failure
};

/// Evaluates b_min = max over the grid of (integral of w dq - rho * w(x)),
/// clamped below at 0, using the supplied moment oracle for the integral.
/// An oracle failure (exception or non-finite value) marks the report
/// infeasible and records the offending grid point.
DriftReport check_drift(const LyapunovPair& pair,
                        std::span<const std::pair<double, double>> grid,
                        const std::function<double(double, double)>& moment_oracle);

/// Finite-model drift check over all (x,a); the moment integral is the exact
/// sum over the rate row. Grid coordinates in the report are state/action
/// indices.
DriftReport check_drift(const FiniteCtmdp& model, const std::vector<double>& w, double rho);

/// Moment bound at time t from drift constants:
///   e^{rho t} w0 + (b/rho)(e^{rho t} - 1),  or  w0 + b t when rho = 0.
/// The rho = 0 branch is taken for |rho| < 1e-14 and the general branch uses
/// expm1, so the function is continuous in rho at 0.
double moment_bound(double w0, double rho, double b, double t);

/// M (alpha w0 + b) / (alpha (alpha - rho)); requires alpha > rho.
double value_bound(double M, double w0, double b, double alpha, double rho);

/// Smallest T >= 0 with integral_T^inf e^{-alpha t} M moment_bound(w0,rho,b,t) dt <= eps.
/// The tail integral has the closed form
///   tail(T) = e^{-alpha T} * value_bound(M, moment_bound(w0,rho,b,T), b, alpha, rho),
/// obtained by shifting the integration origin to T (the moment bound
/// propagates: m(T+s) = e^{rho s} m(T) + (b/rho)(e^{rho s}-1)). For b = 0 the
/// equation tail(T) = eps solves in closed form; otherwise the strictly
/// decreasing tail is bisected.
double truncation_horizon(double M, double w0, double b, double alpha, double rho, double eps);

} // namespace ctmdp
