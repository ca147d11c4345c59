#include "ctmdp/report.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace ctmdp {

std::string to_csv(const CsvTable& table) {
    std::ostringstream os;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) os << ',';
        os << table.header[i];
    }
    os << '\n';
    char cell[40];
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            std::snprintf(cell, sizeof cell, "%.17g", row[i]);
            os << cell;
        }
        os << '\n';
    }
    return os.str();
}

std::string render_report(const Report& report) {
    return report.dump(2) + "\n";
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open output file: " + path);
    out << text;
    if (!out) throw std::ios_base::failure("write failed: " + path);
}

StationaryPolicy parse_policy(const std::string& json_text, const FiniteCtmdp& model) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("policy JSON parse error: ") + e.what());
    }
    StationaryPolicy phi;
    try {
        phi.probs = doc.at("probs").get<std::vector<std::vector<double>>>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("policy JSON field error: ") + e.what());
    }
    phi.validate(model);
    return phi;
}

StationaryPolicy load_policy(const std::string& path, const FiniteCtmdp& model) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open policy file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_policy(buf.str(), model);
}

Report report_of_measure(const FiniteCtmdp& model, const OccupationMeasure& eta) {
    Report r;
    r["mass"] = eta.mass;
    r["marginals"] = eta.marginals();
    r["total_mass"] = eta.total_mass();
    r["balance_residual"] = {{"value", balance_residual(model, eta)},
                             {"tolerance", 1e-8},
                             {"units", "probability/time"}};
    return r;
}

Report report_of_policy(const FiniteCtmdp& model, const StationaryPolicy& phi) {
    phi.validate(model);
    Report r;
    r["probs"] = phi.probs;
    r["deterministic"] = phi.is_deterministic();
    r["randomization_count"] = {{"value", randomization_count(phi)}, {"support_tolerance", 1e-9}};
    return r;
}

} // namespace ctmdp
