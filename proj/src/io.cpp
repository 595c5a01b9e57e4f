#include "noonsim/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace noonsim::io {

using nlohmann::json;

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

double round_trip_number(double value) {
    return std::strtod(format_number(value).c_str(), nullptr);
}

namespace {

std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) {
        return value;
    }
    std::string quoted = "\"";
    for (char c : value) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

// Splits one CSV record, honoring quoted fields.
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        rows.push_back(split_csv_line(line));
    }
    return rows;
}

double parse_double(const std::string& field) {
    std::size_t used = 0;
    const double value = std::stod(field, &used);
    if (used != field.size()) {
        throw std::invalid_argument("malformed numeric field '" + field + "'");
    }
    return value;
}

long long parse_int(const std::string& field) {
    std::size_t used = 0;
    const long long value = std::stoll(field, &used);
    if (used != field.size()) {
        throw std::invalid_argument("malformed integer field '" + field + "'");
    }
    return value;
}

void expect_header(const std::vector<std::string>& row, const std::vector<std::string>& expected) {
    if (row != expected) {
        std::string want;
        for (const auto& f : expected) {
            if (!want.empty()) want += ',';
            want += f;
        }
        throw std::invalid_argument("unexpected CSV header, want '" + want + "'");
    }
}

json json_number(double value) {
    return json(round_trip_number(value));
}

}  // namespace

std::string to_csv(const measure::FringeScan& scan) {
    std::string out = "phi,p_plus,p_minus\n";
    for (std::size_t i = 0; i < scan.phi.size(); ++i) {
        out += format_number(scan.phi[i]);
        out += ',';
        out += format_number(scan.p_plus[i]);
        out += ',';
        out += format_number(scan.p_minus[i]);
        out += '\n';
    }
    return out;
}

measure::FringeScan fringe_scan_from_csv(const std::string& text) {
    const auto rows = parse_csv(text);
    if (rows.empty()) {
        throw std::invalid_argument("empty fringe CSV");
    }
    expect_header(rows[0], {"phi", "p_plus", "p_minus"});
    measure::FringeScan scan;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != 3) {
            throw std::invalid_argument("fringe CSV row has " + std::to_string(rows[r].size()) +
                                        " fields, expected 3");
        }
        scan.phi.push_back(parse_double(rows[r][0]));
        scan.p_plus.push_back(parse_double(rows[r][1]));
        scan.p_minus.push_back(parse_double(rows[r][2]));
        scan.weight.push_back(scan.p_plus.back() + scan.p_minus.back());
    }
    return scan;
}

std::string to_csv(const std::vector<LossSweepRow>& rows) {
    std::string out = "n,eta,visibility,coherence\n";
    for (const auto& row : rows) {
        out += std::to_string(row.n_photons);
        out += ',';
        out += format_number(row.eta);
        out += ',';
        out += format_number(row.visibility);
        out += ',';
        out += format_number(row.coherence);
        out += '\n';
    }
    return out;
}

std::vector<LossSweepRow> loss_sweep_from_csv(const std::string& text) {
    const auto rows = parse_csv(text);
    if (rows.empty()) {
        throw std::invalid_argument("empty loss-sweep CSV");
    }
    expect_header(rows[0], {"n", "eta", "visibility", "coherence"});
    std::vector<LossSweepRow> out;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != 4) {
            throw std::invalid_argument("loss-sweep CSV row has wrong field count");
        }
        out.push_back(LossSweepRow{static_cast<int>(parse_int(rows[r][0])),
                                   parse_double(rows[r][1]), parse_double(rows[r][2]),
                                   parse_double(rows[r][3])});
    }
    return out;
}

std::string to_csv(const std::map<FockIndex, long long>& counts) {
    std::string out = "n_a2,n_b2,count\n";
    for (const auto& [idx, count] : counts) {
        out += std::to_string(idx.n_a);
        out += ',';
        out += std::to_string(idx.n_b);
        out += ',';
        out += std::to_string(count);
        out += '\n';
    }
    return out;
}

std::map<FockIndex, long long> counts_from_csv(const std::string& text) {
    const auto rows = parse_csv(text);
    if (rows.empty()) {
        throw std::invalid_argument("empty counts CSV");
    }
    expect_header(rows[0], {"n_a2", "n_b2", "count"});
    std::map<FockIndex, long long> counts;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != 3) {
            throw std::invalid_argument("counts CSV row has wrong field count");
        }
        counts[FockIndex{static_cast<int>(parse_int(rows[r][0])),
                         static_cast<int>(parse_int(rows[r][1]))}] = parse_int(rows[r][2]);
    }
    return counts;
}

std::string to_csv(const sizing::DesignComparison& comparison) {
    std::string out =
        "baseline_name,miniaturized_name,wavelength_m,baseline_aperture_m,"
        "miniaturized_aperture_m,photons,baseline_resolution_rad,"
        "miniaturized_resolution_rad,aperture_ratio,mass_factor\n";
    out += csv_field(comparison.baseline.name);
    out += ',';
    out += csv_field(comparison.miniaturized.name);
    out += ',';
    out += format_number(comparison.baseline.wavelength);
    out += ',';
    out += format_number(comparison.baseline.aperture);
    out += ',';
    out += format_number(comparison.miniaturized.aperture);
    out += ',';
    out += std::to_string(comparison.miniaturized.photons);
    out += ',';
    out += format_number(comparison.resolution_baseline);
    out += ',';
    out += format_number(comparison.resolution_miniaturized);
    out += ',';
    out += format_number(comparison.aperture_ratio);
    out += ',';
    out += format_number(comparison.mass_factor);
    out += '\n';
    return out;
}

sizing::DesignComparison design_comparison_from_csv(const std::string& text) {
    const auto rows = parse_csv(text);
    if (rows.size() != 2 || rows[1].size() != 10) {
        throw std::invalid_argument("malformed design-comparison CSV");
    }
    sizing::DesignComparison cmp;
    cmp.baseline.name = rows[1][0];
    cmp.miniaturized.name = rows[1][1];
    cmp.baseline.wavelength = parse_double(rows[1][2]);
    cmp.miniaturized.wavelength = cmp.baseline.wavelength;
    cmp.baseline.aperture = parse_double(rows[1][3]);
    cmp.miniaturized.aperture = parse_double(rows[1][4]);
    cmp.baseline.photons = 1;
    cmp.miniaturized.photons = static_cast<int>(parse_int(rows[1][5]));
    cmp.resolution_baseline = parse_double(rows[1][6]);
    cmp.resolution_miniaturized = parse_double(rows[1][7]);
    cmp.aperture_ratio = parse_double(rows[1][8]);
    cmp.mass_factor = parse_double(rows[1][9]);
    return cmp;
}

json to_json(const measure::FringeScan& scan) {
    json doc;
    doc["n"] = scan.n_photons;
    doc["eta"] = scan.eta ? json(json_number(*scan.eta)) : json(nullptr);
    doc["shots"] = scan.shots ? json(*scan.shots) : json(nullptr);
    doc["seed"] = scan.seed;
    doc["postselected"] = scan.postselected;
    doc["phi"] = json::array();
    doc["p_plus"] = json::array();
    doc["p_minus"] = json::array();
    doc["weight"] = json::array();
    for (std::size_t i = 0; i < scan.phi.size(); ++i) {
        doc["phi"].push_back(json_number(scan.phi[i]));
        doc["p_plus"].push_back(json_number(scan.p_plus[i]));
        doc["p_minus"].push_back(json_number(scan.p_minus[i]));
        doc["weight"].push_back(json_number(scan.weight[i]));
    }
    return doc;
}

measure::FringeScan fringe_scan_from_json(const json& doc) {
    measure::FringeScan scan;
    scan.n_photons = doc.at("n").get<int>();
    if (!doc.at("eta").is_null()) scan.eta = doc.at("eta").get<double>();
    if (!doc.at("shots").is_null()) scan.shots = doc.at("shots").get<long long>();
    scan.seed = doc.at("seed").get<std::uint64_t>();
    scan.postselected = doc.at("postselected").get<bool>();
    scan.phi = doc.at("phi").get<std::vector<double>>();
    scan.p_plus = doc.at("p_plus").get<std::vector<double>>();
    scan.p_minus = doc.at("p_minus").get<std::vector<double>>();
    scan.weight = doc.at("weight").get<std::vector<double>>();
    return scan;
}

json to_json(const std::vector<LossSweepRow>& rows) {
    json doc;
    doc["rows"] = json::array();
    for (const auto& row : rows) {
        doc["rows"].push_back({{"n", row.n_photons},
                               {"eta", json_number(row.eta)},
                               {"visibility", json_number(row.visibility)},
                               {"coherence", json_number(row.coherence)}});
    }
    return doc;
}

std::vector<LossSweepRow> loss_sweep_from_json(const json& doc) {
    std::vector<LossSweepRow> rows;
    for (const auto& item : doc.at("rows")) {
        rows.push_back(LossSweepRow{item.at("n").get<int>(), item.at("eta").get<double>(),
                                    item.at("visibility").get<double>(),
                                    item.at("coherence").get<double>()});
    }
    return rows;
}

json to_json(const std::map<FockIndex, long long>& counts) {
    json doc;
    doc["counts"] = json::array();
    for (const auto& [idx, count] : counts) {
        doc["counts"].push_back({{"n_a2", idx.n_a}, {"n_b2", idx.n_b}, {"count", count}});
    }
    return doc;
}

std::map<FockIndex, long long> counts_from_json(const json& doc) {
    std::map<FockIndex, long long> counts;
    for (const auto& item : doc.at("counts")) {
        counts[FockIndex{item.at("n_a2").get<int>(), item.at("n_b2").get<int>()}] =
            item.at("count").get<long long>();
    }
    return counts;
}

json to_json(const sizing::SensorDesign& design) {
    json doc;
    doc["wavelength"] = json_number(design.wavelength);
    doc["aperture"] = json_number(design.aperture);
    doc["photons"] = design.photons;
    doc["name"] = design.name;
    doc["metadata"] = json(design.metadata);
    return doc;
}

json to_json(const sizing::DesignComparison& comparison) {
    json doc;
    doc["baseline"] = to_json(comparison.baseline);
    doc["miniaturized"] = to_json(comparison.miniaturized);
    doc["resolutions"] = {{"baseline", json_number(comparison.resolution_baseline)},
                          {"miniaturized", json_number(comparison.resolution_miniaturized)}};
    doc["aperture_ratio"] = json_number(comparison.aperture_ratio);
    doc["mass_factor"] = json_number(comparison.mass_factor);
    doc["mass_factor_bound"] = "lower";
    return doc;
}

sizing::DesignComparison design_comparison_from_json(const json& doc) {
    auto design = [](const json& j) {
        sizing::SensorDesign d;
        d.wavelength = j.at("wavelength").get<double>();
        d.aperture = j.at("aperture").get<double>();
        d.photons = j.at("photons").get<int>();
        d.name = j.at("name").get<std::string>();
        d.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
        return d;
    };
    sizing::DesignComparison cmp;
    cmp.baseline = design(doc.at("baseline"));
    cmp.miniaturized = design(doc.at("miniaturized"));
    cmp.resolution_baseline = doc.at("resolutions").at("baseline").get<double>();
    cmp.resolution_miniaturized = doc.at("resolutions").at("miniaturized").get<double>();
    cmp.aperture_ratio = doc.at("aperture_ratio").get<double>();
    cmp.mass_factor = doc.at("mass_factor").get<double>();
    return cmp;
}

}  // namespace noonsim::io
