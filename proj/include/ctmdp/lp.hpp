#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "ctmdp/model.hpp"
#include "ctmdp/occupation.hpp"

namespace ctmdp {

/// Thrown by solve_constrained when the LP is infeasible, i.e. the set of
/// constrained policies is empty.
class InfeasibleError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LpColumn {
    int x = -1;      // state/action position for a measure column
    int action = -1;
    int slack = -1;  // constraint index for a slack column
    bool is_slack() const { return slack >= 0; }
};

/// Occupation LP in standard form. Columns are the measure variables eta(x,a)
/// followed by one slack per cost constraint; the cost rows already carry the
/// +1 slack coefficient, so every row is an equality over nonnegative
/// variables. The normalization sum(eta) = 1 is implied by the balance rows
/// (the rate columns sum to zero) and is deliberately not added as a row.
struct LpStandardForm {
    Eigen::VectorXd objective;    // (1/alpha) c0 on measure columns, 0 on slacks
    Eigen::MatrixXd eq_matrix;    // S balance rows
    Eigen::VectorXd eq_rhs;       // alpha * gamma
    Eigen::MatrixXd ineq_matrix;  // N cost rows, slack-augmented
    Eigen::VectorXd ineq_rhs;     // alpha * d_n
    std::vector<LpColumn> columns;
    int num_measure_columns = 0;

    std::vector<int> column_offset; // first measure column of each state
    int column_of(int x, int ai) const { return column_offset[x] + ai; }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, Numerical };

struct LpSolution {
    LpStatus status = LpStatus::Numerical;
    Eigen::VectorXd solution;
    double objective_value = 0.0;
    std::vector<int> basis;      // basic columns, one per retained row
    std::vector<int> kept_rows;  // rows surviving dependent-row elimination
    double infeasibility = 0.0;  // phase-one artificial mass at termination
};

struct SimplexOptions {
    double feasibility_tol = 1e-9;
    double pivot_tol = 1e-10;
    long max_iterations = 200000;
};

/// Builds the finite occupation LP: minimize (1/alpha) sum c0(x,a) eta(x,a)
/// with c0 = -r, subject to the balance equalities
///   alpha sum_a eta(x,a) - sum_{y,a} q(x|y,a) eta(y,a) = alpha gamma(x)
/// and the cost rows sum c_n(x,a) eta(x,a) <= alpha d_n, eta >= 0.
LpStandardForm build_lp(const FiniteCtmdp& model);

/// Two-phase dense simplex with Bland's anti-cycling rule on
/// min c^T z s.t. A z = b, z >= 0. Dependent rows are detected in phase one
/// and dropped. Numerical breakdown is reported as its own status rather than
/// a bogus optimum.
LpSolution simplex_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                         const Eigen::VectorXd& c, const SimplexOptions& opts = {});
LpSolution simplex_solve(const LpStandardForm& lp, const SimplexOptions& opts = {});

struct ConstrainedSolution {
    OccupationMeasure eta;
    StationaryPolicy policy;
    double value = 0.0; // V_r(U) = -objective
    LpSolution lp;      // basis bookkeeping for randomization counting
};

/// Solves the constrained problem through the occupation LP and extracts the
/// optimal randomized stationary policy. Throws InfeasibleError when the
/// constrained policy set is empty.
ConstrainedSolution solve_constrained(const FiniteCtmdp& model);

struct UnconstrainedSolution {
    std::vector<int> policy; // deterministic action choice per state
    double value = 0.0;
};

/// Constraint-free solve; an optimal basic solution randomizes nowhere, so the
/// result is a deterministic policy.
UnconstrainedSolution solve_unconstrained(const FiniteCtmdp& model);

} // namespace ctmdp
