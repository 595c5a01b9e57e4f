// io.hpp
// CSV and JSON serialization for scans, sweeps, counts and sizing
// comparisons. CSV: header row, LF line ends, RFC-4180 quoting, no
// trailing delimiter. JSON: alphabetical keys; numbers carry 12
// significant digits so both formats agree exactly.

#pragma once

#include "noonsim/measure.hpp"
#include "noonsim/sizing.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace noonsim::io {

// 12-significant-digit text used for every emitted number.
std::string format_number(double value);

// The double obtained by reading format_number(value) back.
double round_trip_number(double value);

struct LossSweepRow {
    int n_photons = 1;
    double eta = 1.0;
    double visibility = 0.0;
    double coherence = 0.0;
};

// CSV: columns phi,p_plus,p_minus. Loses run metadata (JSON keeps it).
std::string to_csv(const measure::FringeScan& scan);
measure::FringeScan fringe_scan_from_csv(const std::string& text);

// CSV: columns n,eta,visibility,coherence.
std::string to_csv(const std::vector<LossSweepRow>& rows);
std::vector<LossSweepRow> loss_sweep_from_csv(const std::string& text);

// CSV: columns n_a2,n_b2,count, ascending by (n_a2, n_b2).
std::string to_csv(const std::map<FockIndex, long long>& counts);
std::map<FockIndex, long long> counts_from_csv(const std::string& text);

// CSV: one flat row of the numeric comparison (metadata strings appear
// in the JSON form only).
std::string to_csv(const sizing::DesignComparison& comparison);
sizing::DesignComparison design_comparison_from_csv(const std::string& text);

nlohmann::json to_json(const measure::FringeScan& scan);
measure::FringeScan fringe_scan_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const std::vector<LossSweepRow>& rows);
std::vector<LossSweepRow> loss_sweep_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const std::map<FockIndex, long long>& counts);
std::map<FockIndex, long long> counts_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const sizing::SensorDesign& design);
nlohmann::json to_json(const sizing::DesignComparison& comparison);
sizing::DesignComparison design_comparison_from_json(const nlohmann::json& doc);

}  // namespace noonsim::io
