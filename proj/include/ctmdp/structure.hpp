#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "ctmdp/model.hpp"
#include "ctmdp/occupation.hpp"

namespace ctmdp {

/// Balance equalities of the occupation polytope in matrix form (rows =
/// states, columns = measure variables), plus nonnegativity. Active cost
/// constraints may be appended as extra equality rows to tighten the polytope
/// before extremality tests.
struct OccupationPolytope {
    Eigen::MatrixXd eq;
    Eigen::VectorXd rhs;
    std::vector<std::pair<int, int>> columns; // column -> (x, action position)

    void append_equality(const Eigen::RowVectorXd& row, double value);
};

OccupationPolytope occupation_polytope(const FiniteCtmdp& model);

/// Flattens a measure into the polytope's column order.
Eigen::VectorXd flatten_measure(const OccupationPolytope& polytope, const OccupationMeasure& eta);

struct DeterministicPolicyMeasure {
    std::vector<int> actions;
    OccupationMeasure eta;
};

/// All deterministic policies with their exact occupation measures. Refuses
/// when the policy count Prod_x |A(x)| exceeds cap.
std::vector<DeterministicPolicyMeasure> enumerate_deterministic(const FiniteCtmdp& model,
                                                                std::uint64_t cap);

/// Vertex test: eta is extreme iff the equality columns restricted to its
/// support have full column rank. Throws if eta is not feasible within tol.
bool is_extreme(const OccupationMeasure& eta, const OccupationPolytope& polytope,
                double tol = 1e-9);

struct MixtureDecomposition {
    std::vector<double> weights;              // > 0, sum to 1
    std::vector<std::vector<int>> policies;   // deterministic action choices
    OccupationMeasure reconstructed;          // sum of weighted measures
    double residual = 0.0;                    // max entrywise reconstruction error
};

/// Writes eta_star as a convex combination of deterministic occupation
/// measures by solving the combination system with the simplex; a basic
/// feasible solution of that system puts weight on affinely independent
/// measures inside the minimal face containing eta_star, hence on at most
/// N+1 of them when eta_star is an optimal basic point of the N-constraint
/// problem. Throws (with the best residual in the message) when no exact
/// decomposition exists within tolerance.
MixtureDecomposition decompose_mixture(const OccupationMeasure& eta_star,
                                       const FiniteCtmdp& model, int n_constraints,
                                       std::uint64_t cap);

/// Policy of the mixed measure sum_k p_k eta^{f_k} via the ratio formula.
StationaryPolicy mixture_policy(const MixtureDecomposition& decomposition,
                                const FiniteCtmdp& model);

} // namespace ctmdp
