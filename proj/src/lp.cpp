#include "ctmdp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ctmdp {

LpStandardForm build_lp(const FiniteCtmdp& model) {
    const int s = model.num_states;
    const int n_constraints = model.num_constraints();
    const int n_measure = model.kernel_size();
    const int n_cols = n_measure + n_constraints;

    LpStandardForm lp;
    lp.num_measure_columns = n_measure;
    lp.columns.reserve(n_cols);
    lp.column_offset.resize(s);
    for (int x = 0; x < s; ++x) {
        lp.column_offset[x] = static_cast<int>(lp.columns.size());
        for (int ai = 0; ai < model.num_actions(x); ++ai)
            lp.columns.push_back({x, ai, -1});
    }
    for (int n = 0; n < n_constraints; ++n) lp.columns.push_back({-1, -1, n});

    lp.objective = Eigen::VectorXd::Zero(n_cols);
    for (int x = 0; x < s; ++x)
        for (int ai = 0; ai < model.num_actions(x); ++ai)
            lp.objective(lp.column_of(x, ai)) = -model.reward[x][ai] / model.alpha;

    lp.eq_matrix = Eigen::MatrixXd::Zero(s, n_cols);
    lp.eq_rhs = Eigen::VectorXd::Zero(s);
    for (int x = 0; x < s; ++x) {
        lp.eq_rhs(x) = model.alpha * model.gamma[x];
        for (int y = 0; y < s; ++y)
            for (int ai = 0; ai < model.num_actions(y); ++ai) {
                double coeff = -model.rates[y][ai][x];
                if (y == x) coeff += model.alpha;
                lp.eq_matrix(x, lp.column_of(y, ai)) = coeff;
            }
    }

    lp.ineq_matrix = Eigen::MatrixXd::Zero(n_constraints, n_cols);
    lp.ineq_rhs = Eigen::VectorXd::Zero(n_constraints);
    for (int n = 0; n < n_constraints; ++n) {
        for (int x = 0; x < s; ++x)
            for (int ai = 0; ai < model.num_actions(x); ++ai)
                lp.ineq_matrix(n, lp.column_of(x, ai)) = model.costs[n][x][ai];
        lp.ineq_matrix(n, n_measure + n) = 1.0;
        lp.ineq_rhs(n) = model.alpha * model.bounds[n];
    }
    return lp;
}

namespace {

/// Dense tableau with the reduced-cost row appended as the last row and the
/// right-hand side as the last column.
class Tableau {
public:
    Tableau(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const SimplexOptions& opts)
        : opts_(opts), m_(static_cast<int>(A.rows())), n_(static_cast<int>(A.cols())),
          rhs_col_(n_ + m_) {
        tab_.resize(m_ + 1, n_ + m_ + 1);
        tab_.setZero();
        tab_.topLeftCorner(m_, n_) = A;
        tab_.col(rhs_col_).head(m_) = b;
        // flip rows with negative rhs before installing the artificial
        // identity block, so every artificial starts basic and feasible
        for (int i = 0; i < m_; ++i)
            if (tab_(i, rhs_col_) < 0.0) tab_.row(i) = -tab_.row(i);
        tab_.block(0, n_, m_, m_).setIdentity();
        basis_.resize(m_);
        for (int i = 0; i < m_; ++i) basis_[i] = n_ + i;
        row_ids_.resize(m_);
        for (int i = 0; i < m_; ++i) row_ids_[i] = i;
    }

    int rows() const { return m_; }
    int cols() const { return n_; }
    const std::vector<int>& basis() const { return basis_; }
    const std::vector<int>& row_ids() const { return row_ids_; }
    double rhs(int i) const { return tab_(i, rhs_col_); }
    double objective() const { return -tab_(m_, rhs_col_); }

    void set_costs_phase1() {
        // min sum of artificials; price out the artificial basis
        tab_.row(m_).setZero();
        for (int j = n_; j < n_ + m_; ++j) tab_(m_, j) = 1.0;
        for (int i = 0; i < m_; ++i) tab_.row(m_) -= tab_.row(i);
    }

    void set_costs_phase2(const Eigen::VectorXd& c) {
        tab_.row(m_).setZero();
        tab_.row(m_).head(n_) = c.transpose();
        for (int i = 0; i < m_; ++i) {
            const int j = basis_[i];
            const double cb = (j < n_) ? c(j) : 0.0;
            if (cb != 0.0) tab_.row(m_) -= cb * tab_.row(i);
        }
    }

    enum class Outcome { Optimal, Unbounded, IterationLimit };

    /// Bland's rule: entering column is the lowest index with a negative
    /// reduced cost; the leaving row breaks ratio-test ties by the lowest
    /// basic column index. Guarantees no cycling on degenerate vertices.
    /// Artificials never enter: once one leaves the basis it is dead, which
    /// keeps phase-one optimality arguments over structural columns exact.
    Outcome iterate(long& budget) {
        while (budget-- > 0) {
            int entering = -1;
            for (int j = 0; j < n_; ++j)
                if (tab_(m_, j) < -opts_.pivot_tol) { entering = j; break; }
            if (entering < 0) return Outcome::Optimal;

            int leaving = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m_; ++i) {
                const double a = tab_(i, entering);
                if (a <= opts_.pivot_tol) continue;
                const double ratio = rhs(i) / a;
                if (ratio < best_ratio - 1e-15 ||
                    (std::abs(ratio - best_ratio) <= 1e-15 && (leaving < 0 || basis_[i] < basis_[leaving]))) {
                    best_ratio = ratio;
                    leaving = i;
                }
            }
            if (leaving < 0) return Outcome::Unbounded;
            pivot(leaving, entering);
        }
        return Outcome::IterationLimit;
    }

    void pivot(int row, int col) {
        tab_.row(row) /= tab_(row, col);
        for (int i = 0; i <= m_; ++i) {
            if (i == row) continue;
            const double factor = tab_(i, col);
            if (factor != 0.0) tab_.row(i) -= factor * tab_.row(row);
        }
        basis_[row] = col;
    }

    /// Pivot basic artificials out; rows where no structural column can carry
    /// the pivot are linearly dependent and get dropped.
    void eliminate_artificials() {
        std::vector<int> keep;
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] < n_) {
                keep.push_back(i);
                continue;
            }
            int col = -1;
            for (int j = 0; j < n_; ++j)
                if (std::abs(tab_(i, j)) > opts_.pivot_tol) { col = j; break; }
            if (col >= 0) {
                pivot(i, col); // rhs is zero here, so feasibility is preserved
                keep.push_back(i);
            }
            // else: dependent row, dropped below
        }
        if (static_cast<int>(keep.size()) != m_) {
            Eigen::MatrixXd shrunk(static_cast<int>(keep.size()) + 1, tab_.cols());
            std::vector<int> new_basis, new_ids;
            for (std::size_t k = 0; k < keep.size(); ++k) {
                shrunk.row(static_cast<int>(k)) = tab_.row(keep[k]);
                new_basis.push_back(basis_[keep[k]]);
                new_ids.push_back(row_ids_[keep[k]]);
            }
            shrunk.row(static_cast<int>(keep.size())) = tab_.row(m_);
            tab_ = std::move(shrunk);
            basis_ = std::move(new_basis);
            row_ids_ = std::move(new_ids);
            m_ = static_cast<int>(keep.size());
        }
    }

    Eigen::VectorXd extract_solution() const {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(n_);
        for (int i = 0; i < m_; ++i)
            if (basis_[i] < n_) x(basis_[i]) = std::max(0.0, rhs(i));
        return x;
    }

private:
    SimplexOptions opts_;
    int m_, n_;
    int rhs_col_; // fixed at construction; row drops must not move it
    Eigen::MatrixXd tab_;
    std::vector<int> basis_;
    std::vector<int> row_ids_;
};

} // namespace

LpSolution simplex_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                         const Eigen::VectorXd& c, const SimplexOptions& opts) {
    if (A.rows() != b.size() || A.cols() != c.size())
        throw std::invalid_argument("simplex_solve: inconsistent dimensions");

    LpSolution out;
    Tableau tab(A, b, opts);
    long budget = opts.max_iterations;

    tab.set_costs_phase1();
    switch (tab.iterate(budget)) {
    case Tableau::Outcome::Optimal: break;
    case Tableau::Outcome::Unbounded: // phase-1 objective is bounded below by 0
    case Tableau::Outcome::IterationLimit:
        out.status = LpStatus::Numerical;
        return out;
    }
    out.infeasibility = std::max(0.0, tab.objective());
    if (out.infeasibility > opts.feasibility_tol) {
        out.status = LpStatus::Infeasible;
        return out;
    }
    tab.eliminate_artificials();

    tab.set_costs_phase2(c);
    switch (tab.iterate(budget)) {
    case Tableau::Outcome::Optimal: break;
    case Tableau::Outcome::Unbounded:
        out.status = LpStatus::Unbounded;
        return out;
    case Tableau::Outcome::IterationLimit:
        out.status = LpStatus::Numerical;
        return out;
    }

    out.solution = tab.extract_solution();
    const double scale = 1.0 + b.cwiseAbs().maxCoeff();
    if ((A * out.solution - b).cwiseAbs().maxCoeff() > 100.0 * opts.feasibility_tol * scale) {
        out.status = LpStatus::Numerical; // a wrong "optimal" is never reported
        return out;
    }
    out.objective_value = c.dot(out.solution);
    out.basis = tab.basis();
    out.kept_rows = tab.row_ids();
    out.status = LpStatus::Optimal;
    return out;
}

LpSolution simplex_solve(const LpStandardForm& lp, const SimplexOptions& opts) {
    const int rows = static_cast<int>(lp.eq_matrix.rows() + lp.ineq_matrix.rows());
    Eigen::MatrixXd A(rows, lp.objective.size());
    Eigen::VectorXd b(rows);
    A << lp.eq_matrix, lp.ineq_matrix;
    b << lp.eq_rhs, lp.ineq_rhs;
    return simplex_solve(A, b, lp.objective, opts);
}

namespace {

void require_valid(const FiniteCtmdp& model) {
    const ValidationReport report = validate_finite(model);
    if (!report.passed) {
        std::ostringstream os;
        os << "model fails validation: " << report.violations.front().check << " at "
           << report.violations.front().location;
        throw std::invalid_argument(os.str());
    }
}

OccupationMeasure measure_from_solution(const FiniteCtmdp& model, const LpStandardForm& lp,
                                        const Eigen::VectorXd& solution) {
    OccupationMeasure eta;
    eta.mass.resize(model.num_states);
    for (int x = 0; x < model.num_states; ++x) {
        eta.mass[x].resize(model.actions[x].size());
        for (int ai = 0; ai < model.num_actions(x); ++ai)
            eta.mass[x][ai] = std::max(0.0, solution(lp.column_of(x, ai)));
    }
    return eta;
}

} // namespace

ConstrainedSolution solve_constrained(const FiniteCtmdp& model) {
    require_valid(model);
    const LpStandardForm lp = build_lp(model);
    LpSolution sol = simplex_solve(lp);
    switch (sol.status) {
    case LpStatus::Optimal: break;
    case LpStatus::Infeasible:
        throw InfeasibleError("constrained set empty: occupation LP infeasible");
    case LpStatus::Unbounded:
        throw std::runtime_error("occupation LP unbounded; model data is inconsistent");
    case LpStatus::Numerical:
        throw std::runtime_error("simplex terminated with numerical breakdown");
    }

    ConstrainedSolution out;
    out.eta = measure_from_solution(model, lp, sol.solution);
    out.policy = extract_policy(out.eta);
    out.value = -sol.objective_value;
    out.lp = std::move(sol);
    return out;
}

UnconstrainedSolution solve_unconstrained(const FiniteCtmdp& model) {
    FiniteCtmdp unconstrained = model;
    unconstrained.costs.clear();
    unconstrained.bounds.clear();
    const ConstrainedSolution sol = solve_constrained(unconstrained);

    UnconstrainedSolution out;
    out.value = sol.value;
    out.policy.resize(model.num_states);
    for (int x = 0; x < model.num_states; ++x) {
        const auto& row = sol.policy.probs[x];
        out.policy[x] = static_cast<int>(std::max_element(row.begin(), row.end()) - row.begin());
    }
    return out;
}

} // namespace ctmdp
