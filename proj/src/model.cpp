#include "ctmdp/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ctmdp {

namespace {

std::string loc_xa(int x, int ai) {
    std::ostringstream os;
    os << "(x=" << x << ", a#" << ai << ")";
    return os.str();
}

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("model structure: " + what);
}

void check_shapes(const FiniteCtmdp& m) {
    const std::size_t s = static_cast<std::size_t>(m.num_states);
    require(m.num_states > 0, "states must be positive");
    require(m.actions.size() == s, "actions list must have one entry per state");
    require(m.rates.size() == s, "rates must have one block per state");
    require(m.reward.size() == s, "reward must have one row per state");
    require(m.gamma.size() == s, "gamma must have one entry per state");
    require(m.alpha > 0.0, "alpha must be positive");
    for (int x = 0; x < m.num_states; ++x) {
        const std::size_t na = m.actions[x].size();
        require(na > 0, "state " + std::to_string(x) + " has no admissible action");
        require(m.rates[x].size() == na, "rates[" + std::to_string(x) + "] rows != |A(x)|");
        require(m.reward[x].size() == na, "reward[" + std::to_string(x) + "] != |A(x)|");
        for (std::size_t ai = 0; ai < na; ++ai)
            require(m.rates[x][ai].size() == s, "rates" + loc_xa(x, static_cast<int>(ai)) + " row length != S");
    }
    require(m.costs.size() == m.bounds.size(), "one cost matrix per bound required");
    for (std::size_t n = 0; n < m.costs.size(); ++n) {
        require(m.costs[n].size() == s, "costs[" + std::to_string(n) + "] must have one row per state");
        for (int x = 0; x < m.num_states; ++x)
            require(m.costs[n][x].size() == m.actions[x].size(),
                    "costs[" + std::to_string(n) + "][" + std::to_string(x) + "] != |A(x)|");
    }
    if (!m.lyapunov_w.empty())
        require(m.lyapunov_w.size() == s, "lyapunov w must have one entry per state");
}

} // namespace

ValidationReport validate_finite(const FiniteCtmdp& model) {
    check_shapes(model);

    ValidationReport report;
    auto flag = [&](const std::string& check, const std::string& where, double mag) {
        report.violations.push_back({check, where, mag});
    };

    for (int x = 0; x < model.num_states; ++x) {
        for (int ai = 0; ai < model.num_actions(x); ++ai) {
            const auto& row = model.rates[x][ai];
            double sum = 0.0;
            double worst_neg = 0.0;
            for (int y = 0; y < model.num_states; ++y) {
                sum += row[y];
                if (y != x && row[y] < 0.0) worst_neg = std::min(worst_neg, row[y]);
                if (!std::isfinite(row[y])) flag("finite rate", loc_xa(x, ai), row[y]);
            }
            if (std::abs(sum) > kConservativityTol)
                flag("conservativity", loc_xa(x, ai), std::abs(sum));
            if (worst_neg < 0.0)
                flag("off-diagonal negative", loc_xa(x, ai), -worst_neg);
        }
    }

    double gsum = 0.0;
    for (int x = 0; x < model.num_states; ++x) {
        gsum += model.gamma[x];
        if (model.gamma[x] < 0.0)
            flag("gamma negative", "x=" + std::to_string(x), -model.gamma[x]);
    }
    if (std::abs(gsum - 1.0) > kDistributionTol)
        flag("gamma normalization", "total", std::abs(gsum - 1.0));

    report.passed = report.violations.empty();
    return report;
}

double q_star(const FiniteCtmdp& model, int x) {
    if (x < 0 || x >= model.num_states) throw std::out_of_range("q_star: state out of range");
    double worst = 0.0;
    for (int ai = 0; ai < model.num_actions(x); ++ai)
        worst = std::max(worst, std::abs(model.rates[x][ai][x]));
    return worst;
}

FiniteCtmdp parse_finite_ctmdp(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("model JSON parse error: ") + e.what());
    }

    FiniteCtmdp m;
    try {
        m.num_states = doc.at("states").get<int>();
        m.actions = doc.at("actions").get<std::vector<std::vector<int>>>();
        m.rates = doc.at("rates").get<std::vector<std::vector<std::vector<double>>>>();
        m.reward = doc.at("reward").get<std::vector<std::vector<double>>>();
        m.costs = doc.value("costs", std::vector<std::vector<std::vector<double>>>{});
        m.bounds = doc.value("bounds", std::vector<double>{});
        m.alpha = doc.at("alpha").get<double>();
        m.gamma = doc.at("gamma").get<std::vector<double>>();
        if (doc.contains("lyapunov")) {
            m.lyapunov_w = doc["lyapunov"].value("w", std::vector<double>{});
            m.lyapunov_rho = doc["lyapunov"].value("rho", 0.0);
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("model JSON field error: ") + e.what());
    }
    check_shapes(m);
    return m;
}

FiniteCtmdp load_finite_ctmdp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_finite_ctmdp(buf.str());
}

} // namespace ctmdp
