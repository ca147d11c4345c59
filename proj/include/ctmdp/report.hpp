#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ctmdp/model.hpp"
#include "ctmdp/occupation.hpp"

namespace ctmdp {

/// Machine-readable command report. Ordered so that identical configs and
/// seeds serialize to byte-identical documents; anything nondeterministic
/// (wall-clock timings in particular) stays out of the report and goes to
/// stderr instead.
using Report = nlohmann::ordered_json;

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// CSV with %.17g cells: round-trip exact and stable across runs.
std::string to_csv(const CsvTable& table);

std::string render_report(const Report& report);

/// Writes to the path, or to stdout when the path is empty or "-".
/// IO failures throw std::ios_base::failure.
void write_text(const std::string& path, const std::string& text);

/// Policy interchange document: {"probs": [[...], ...]} with one probability
/// row per state, aligned with A(x).
StationaryPolicy parse_policy(const std::string& json_text, const FiniteCtmdp& model);
StationaryPolicy load_policy(const std::string& path, const FiniteCtmdp& model);

Report report_of_measure(const FiniteCtmdp& model, const OccupationMeasure& eta);
Report report_of_policy(const FiniteCtmdp& model, const StationaryPolicy& phi);

} // namespace ctmdp
