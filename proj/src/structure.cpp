#include "ctmdp/structure.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ctmdp/lp.hpp"

namespace ctmdp {

void OccupationPolytope::append_equality(const Eigen::RowVectorXd& row, double value) {
    if (row.size() != eq.cols())
        throw std::invalid_argument("append_equality: row length mismatch");
    eq.conservativeResize(eq.rows() + 1, Eigen::NoChange);
    eq.row(eq.rows() - 1) = row;
    rhs.conservativeResize(rhs.size() + 1);
    rhs(rhs.size() - 1) = value;
}

OccupationPolytope occupation_polytope(const FiniteCtmdp& model) {
    const LpStandardForm lp = build_lp(model);
    OccupationPolytope polytope;
    polytope.eq = lp.eq_matrix.leftCols(lp.num_measure_columns);
    polytope.rhs = lp.eq_rhs;
    polytope.columns.reserve(lp.num_measure_columns);
    for (int j = 0; j < lp.num_measure_columns; ++j)
        polytope.columns.emplace_back(lp.columns[j].x, lp.columns[j].action);
    return polytope;
}

Eigen::VectorXd flatten_measure(const OccupationPolytope& polytope, const OccupationMeasure& eta) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(polytope.columns.size()));
    for (std::size_t j = 0; j < polytope.columns.size(); ++j) {
        const auto [x, ai] = polytope.columns[j];
        v(static_cast<Eigen::Index>(j)) = eta.mass[x][ai];
    }
    return v;
}

std::vector<DeterministicPolicyMeasure> enumerate_deterministic(const FiniteCtmdp& model,
                                                                std::uint64_t cap) {
    std::uint64_t count = 1;
    for (int x = 0; x < model.num_states; ++x) {
        count *= static_cast<std::uint64_t>(model.num_actions(x));
        if (count > cap) {
            std::ostringstream os;
            os << "enumerate_deterministic: policy count exceeds cap " << cap;
            throw std::length_error(os.str());
        }
    }

    std::vector<DeterministicPolicyMeasure> out;
    out.reserve(count);
    std::vector<int> choice(model.num_states, 0);
    for (std::uint64_t k = 0; k < count; ++k) {
        DeterministicPolicyMeasure item;
        item.actions = choice;
        item.eta = occupation_of_stationary(model, StationaryPolicy::deterministic(model, choice));
        out.push_back(std::move(item));
        // mixed-radix increment
        for (int x = 0; x < model.num_states; ++x) {
            if (++choice[x] < model.num_actions(x)) break;
            choice[x] = 0;
        }
    }
    return out;
}

bool is_extreme(const OccupationMeasure& eta, const OccupationPolytope& polytope, double tol) {
    const Eigen::VectorXd v = flatten_measure(polytope, eta);
    if (v.minCoeff() < -tol)
        throw std::invalid_argument("is_extreme: measure has negative mass beyond tolerance");
    const double scale = 1.0 + polytope.rhs.cwiseAbs().maxCoeff();
    if ((polytope.eq * v - polytope.rhs).cwiseAbs().maxCoeff() > tol * scale * 100.0)
        throw std::invalid_argument("is_extreme: measure violates the equality system");

    std::vector<Eigen::Index> support;
    for (Eigen::Index j = 0; j < v.size(); ++j)
        if (v(j) > tol) support.push_back(j);
    if (support.empty()) return true;

    Eigen::MatrixXd sub(polytope.eq.rows(), static_cast<Eigen::Index>(support.size()));
    for (std::size_t k = 0; k < support.size(); ++k)
        sub.col(static_cast<Eigen::Index>(k)) = polytope.eq.col(support[k]);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sub);
    qr.setThreshold(1e-10);
    return qr.rank() == static_cast<Eigen::Index>(support.size());
}

MixtureDecomposition decompose_mixture(const OccupationMeasure& eta_star,
                                       const FiniteCtmdp& model, int n_constraints,
                                       std::uint64_t cap) {
    const auto deterministic = enumerate_deterministic(model, cap);
    const OccupationPolytope polytope = occupation_polytope(model);
    const Eigen::VectorXd target = flatten_measure(polytope, eta_star);
    const Eigen::Index n_cells = target.size();
    const Eigen::Index n_policies = static_cast<Eigen::Index>(deterministic.size());

    // convex-combination system: columns are flattened deterministic measures,
    // the last row forces the weights to sum to one
    Eigen::MatrixXd A(n_cells + 1, n_policies);
    for (Eigen::Index k = 0; k < n_policies; ++k) {
        A.col(k).head(n_cells) = flatten_measure(polytope, deterministic[k].eta);
        A(n_cells, k) = 1.0;
    }
    Eigen::VectorXd b(n_cells + 1);
    b.head(n_cells) = target;
    b(n_cells) = 1.0;

    const LpSolution sol = simplex_solve(A, b, Eigen::VectorXd::Zero(n_policies));
    if (sol.status != LpStatus::Optimal) {
        std::ostringstream os;
        os << "decompose_mixture: no exact decomposition (best residual "
           << sol.infeasibility << ")";
        throw std::runtime_error(os.str());
    }

    MixtureDecomposition out;
    constexpr double kWeightTol = 1e-10;
    for (Eigen::Index k = 0; k < n_policies; ++k) {
        if (sol.solution(k) > kWeightTol) {
            out.weights.push_back(sol.solution(k));
            out.policies.push_back(deterministic[k].actions);
        }
    }
    if (static_cast<int>(out.weights.size()) > n_constraints + 1) {
        std::ostringstream os;
        os << "decompose_mixture: support " << out.weights.size() << " exceeds N+1 = "
           << n_constraints + 1 << "; eta_star is not a basic point of the constrained problem";
        throw std::runtime_error(os.str());
    }

    out.reconstructed.mass.resize(model.num_states);
    for (int x = 0; x < model.num_states; ++x)
        out.reconstructed.mass[x].assign(model.actions[x].size(), 0.0);
    for (Eigen::Index k = 0; k < n_policies; ++k) {
        const double p = sol.solution(k);
        if (p <= kWeightTol) continue;
        for (int x = 0; x < model.num_states; ++x)
            for (int ai = 0; ai < model.num_actions(x); ++ai)
                out.reconstructed.mass[x][ai] += p * deterministic[k].eta.mass[x][ai];
    }
    double residual = 0.0;
    for (int x = 0; x < model.num_states; ++x)
        for (int ai = 0; ai < model.num_actions(x); ++ai)
            residual = std::max(residual,
                                std::abs(out.reconstructed.mass[x][ai] - eta_star.mass[x][ai]));
    out.residual = residual;
    return out;
}

StationaryPolicy mixture_policy(const MixtureDecomposition& decomposition,
                                const FiniteCtmdp& model) {
    if (decomposition.reconstructed.mass.size() != static_cast<std::size_t>(model.num_states))
        throw std::invalid_argument("mixture_policy: decomposition does not match model");
    return extract_policy(decomposition.reconstructed);
}

} // namespace ctmdp
