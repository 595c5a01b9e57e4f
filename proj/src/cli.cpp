#include "noonsim/cli.hpp"

#include "noonsim/io.hpp"
#include "noonsim/loss.hpp"
#include "noonsim/measure.hpp"
#include "noonsim/sizing.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace noonsim::cli {

using nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

json make_metadata(const std::string& subcommand, json parameters) {
    json meta;
    meta["version"] = kVersion;
    meta["subcommand"] = subcommand;
    meta["rng_algorithm"] = measure::kRngAlgorithm;
    meta["parameters"] = std::move(parameters);
    return meta;
}

std::string dump_json(json doc) {
    return doc.dump(2) + "\n";
}

int write_output(const std::string& text, const std::string& path, std::ostream& out,
                 std::ostream& err) {
    if (path.empty()) {
        out << text;
        return 0;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        err << "error: cannot open output file '" << path << "'\n";
        return 1;
    }
    file << text;
    file.close();
    if (!file) {
        err << "error: failed writing output file '" << path << "'\n";
        return 1;
    }
    return 0;
}

std::vector<double> linspace_half_open(double lo, double hi, int steps) {
    std::vector<double> grid(static_cast<std::size_t>(steps));
    const double step = (hi - lo) / double(steps);
    for (int i = 0; i < steps; ++i) {
        grid[static_cast<std::size_t>(i)] = lo + step * i;
    }
    return grid;
}

std::vector<double> linspace_inclusive(double lo, double hi, int steps) {
    if (steps == 1) return {lo};
    std::vector<double> grid(static_cast<std::size_t>(steps));
    const double step = (hi - lo) / double(steps - 1);
    for (int i = 0; i < steps; ++i) {
        grid[static_cast<std::size_t>(i)] = lo + step * i;
    }
    return grid;
}

json optional_number(const std::optional<double>& v) {
    return v ? json(io::round_trip_number(*v)) : json(nullptr);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"noonsim: two-mode N00N-state interferometry and sensor-sizing toolkit"};
    app.require_subcommand(1);

    // fringe
    auto* fringe = app.add_subcommand("fringe", "Exact or sampled N00N fringe over a phase grid");
    int fr_n = 1;
    double fr_phi_min = 0.0;
    double fr_phi_max = kTwoPi;
    int fr_steps = 64;
    std::optional<double> fr_eta;
    std::optional<long long> fr_shots;
    std::uint64_t fr_seed = 0;
    bool fr_postselect = false;
    std::string fr_format = "csv";
    std::string fr_out;
    fringe->add_option("--n", fr_n, "Photon number N")->required()->check(CLI::Range(1, 1000));
    fringe->add_option("--phi-min", fr_phi_min, "Grid start (radians)");
    fringe->add_option("--phi-max", fr_phi_max, "Grid end, excluded (radians)");
    fringe->add_option("--steps", fr_steps, "Grid points")->check(CLI::Range(1, 1000000));
    fringe->add_option("--eta", fr_eta, "Equal-arm loss transmissivity")
        ->check(CLI::Range(0.0, 1.0));
    fringe->add_option("--shots", fr_shots, "Sample this many shots per point")
        ->check(CLI::Range(1LL, 1000000000LL));
    fringe->add_option("--seed", fr_seed, "Base RNG seed (per-point seed is seed + index)");
    fringe->add_flag("--postselect", fr_postselect, "Renormalize to the surviving sector");
    fringe->add_option("--format", fr_format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    fringe->add_option("--out", fr_out, "Output path (default: standard output)");

    // loss-sweep
    auto* sweep = app.add_subcommand("loss-sweep", "Visibility and coherence over an eta grid");
    std::vector<int> ls_n_list;
    double ls_eta_min = 0.0;
    double ls_eta_max = 1.0;
    int ls_eta_steps = 1;
    std::string ls_format = "csv";
    std::string ls_out;
    sweep->add_option("--n-list", ls_n_list, "Comma-separated photon numbers")
        ->required()
        ->delimiter(',')
        ->check(CLI::Range(1, 1000));
    sweep->add_option("--eta-min", ls_eta_min, "Smallest transmissivity")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    sweep->add_option("--eta-max", ls_eta_max, "Largest transmissivity")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    sweep->add_option("--eta-steps", ls_eta_steps, "Grid points, endpoints included")
        ->required()
        ->check(CLI::Range(1, 100000));
    sweep->add_option("--format", ls_format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--out", ls_out, "Output path (default: standard output)");

    // mc
    auto* mc = app.add_subcommand(
        "mc", "Sampled photon counts at the output ports for one phase");
    int mc_n = 1;
    double mc_phi = 0.0;
    long long mc_shots = 1;
    std::uint64_t mc_seed = 0;
    std::optional<double> mc_eta;
    double mc_dark_rate = 0.0;
    std::string mc_format = "csv";
    std::string mc_out;
    mc->add_option("--n", mc_n, "Photon number N")->required()->check(CLI::Range(1, 1000));
    mc->add_option("--phi", mc_phi, "Path-B phase (radians)")->required();
    mc->add_option("--shots", mc_shots, "Shots")->required()->check(CLI::Range(1LL, 1000000000LL));
    mc->add_option("--seed", mc_seed, "RNG seed")->required();
    mc->add_option("--eta", mc_eta, "Equal-arm loss transmissivity")->check(CLI::Range(0.0, 1.0));
    mc->add_option("--dark-rate", mc_dark_rate,
                   "Poisson dark counts per detector per shot")
        ->check(CLI::NonNegativeNumber);
    mc->add_option("--format", mc_format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    mc->add_option("--out", mc_out, "Output path (default: standard output)");

    // size
    auto* size = app.add_subcommand("size", "Aperture/resolution trade for one design");
    double sz_wavelength = 0.0;
    double sz_aperture = 0.0;
    int sz_n = 1;
    double sz_prefactor = 1.0;
    std::string sz_format = "csv";
    std::string sz_out;
    size->add_option("--wavelength", sz_wavelength, "Wavelength (meters)")
        ->required()
        ->check(CLI::PositiveNumber);
    size->add_option("--aperture", sz_aperture, "Baseline aperture diameter (meters)")
        ->required()
        ->check(CLI::PositiveNumber);
    size->add_option("--n", sz_n, "Entangled photon number N")
        ->required()
        ->check(CLI::Range(1, 1000));
    size->add_option("--prefactor", sz_prefactor,
                     "Resolution prefactor (1.22 for the Airy criterion)")
        ->check(CLI::PositiveNumber);
    size->add_option("--format", sz_format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    size->add_option("--out", sz_out, "Output path (default: standard output)");

    // lite
    auto* lite = app.add_subcommand("lite", "Built-in LITE versus entangled-LITE comparison");
    std::string lt_format = "csv";
    std::string lt_out;
    lite->add_option("--format", lt_format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    lite->add_option("--out", lt_out, "Output path (default: standard output)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (fringe->parsed()) {
            if (!(fr_phi_max > fr_phi_min)) {
                err << "usage error: --phi-max must exceed --phi-min\n";
                return 2;
            }
            measure::FringeScanOptions options;
            options.eta = fr_eta;
            options.shots = fr_shots;
            options.seed = fr_seed;
            options.postselect = fr_postselect;
            const measure::FringeScan scan = measure::fringe_scan(
                fr_n, linspace_half_open(fr_phi_min, fr_phi_max, fr_steps), options);

            std::string text;
            if (fr_format == "csv") {
                text = io::to_csv(scan);
            } else {
                json doc = io::to_json(scan);
                doc["metadata"] = make_metadata(
                    "fringe", json{{"n", fr_n},
                                   {"phi_min", io::round_trip_number(fr_phi_min)},
                                   {"phi_max", io::round_trip_number(fr_phi_max)},
                                   {"steps", fr_steps},
                                   {"eta", optional_number(fr_eta)},
                                   {"shots", fr_shots ? json(*fr_shots) : json(nullptr)},
                                   {"seed", fr_seed},
                                   {"postselect", fr_postselect}});
                text = dump_json(std::move(doc));
            }
            return write_output(text, fr_out, out, err);
        }

        if (sweep->parsed()) {
            if (ls_eta_max < ls_eta_min) {
                err << "usage error: --eta-max must be at least --eta-min\n";
                return 2;
            }
            if (ls_eta_steps > 1 && !(ls_eta_max > ls_eta_min)) {
                err << "usage error: --eta-steps > 1 needs --eta-max > --eta-min\n";
                return 2;
            }
            const std::vector<double> etas =
                linspace_inclusive(ls_eta_min, ls_eta_max, ls_eta_steps);
            const std::vector<double> phi_grid = linspace_half_open(0.0, kTwoPi, 64);

            std::vector<io::LossSweepRow> rows;
            for (int n : ls_n_list) {
                for (double eta : etas) {
                    measure::FringeScanOptions options;
                    options.eta = eta;
                    const measure::FringeScan scan = measure::fringe_scan(n, phi_grid, options);
                    const measure::FringeFit fit = measure::estimate_period_and_visibility(scan);
                    const DensityOperator lossy =
                        loss::apply_loss(to_density(fock::make_noon(n, n)), eta, eta);
                    rows.push_back(io::LossSweepRow{
                        n, eta, fit.visibility, std::abs(loss::noon_coherence(lossy, n))});
                }
            }

            std::string text;
            if (ls_format == "csv") {
                text = io::to_csv(rows);
            } else {
                json doc = io::to_json(rows);
                doc["metadata"] = make_metadata(
                    "loss-sweep", json{{"n_list", ls_n_list},
                                       {"eta_min", io::round_trip_number(ls_eta_min)},
                                       {"eta_max", io::round_trip_number(ls_eta_max)},
                                       {"eta_steps", ls_eta_steps},
                                       {"phi_steps", 64}});
                text = dump_json(std::move(doc));
            }
            return write_output(text, ls_out, out, err);
        }

        if (mc->parsed()) {
            const DensityOperator output = measure::noon_port_output(mc_n, mc_phi, mc_eta);
            const measure::OutcomeDistribution dist =
                measure::number_resolved_distribution(output);
            const std::map<FockIndex, long long> counts =
                measure::sample_counts(dist, mc_shots, mc_seed, mc_dark_rate);

            std::string text;
            if (mc_format == "csv") {
                text = io::to_csv(counts);
            } else {
                json doc = io::to_json(counts);
                doc["metadata"] = make_metadata(
                    "mc", json{{"n", mc_n},
                               {"phi", io::round_trip_number(mc_phi)},
                               {"shots", mc_shots},
                               {"seed", mc_seed},
                               {"eta", optional_number(mc_eta)},
                               {"dark_rate", io::round_trip_number(mc_dark_rate)}});
                text = dump_json(std::move(doc));
            }
            return write_output(text, mc_out, out, err);
        }

        if (size->parsed()) {
            sizing::SensorDesign design;
            design.wavelength = sz_wavelength;
            design.aperture = sz_aperture;
            design.photons = 1;
            const sizing::DesignComparison cmp = sizing::compare(design, sz_n, sz_prefactor);

            std::string text;
            if (sz_format == "csv") {
                text = io::to_csv(cmp);
            } else {
                json doc = io::to_json(cmp);
                doc["metadata"] = make_metadata(
                    "size", json{{"wavelength", io::round_trip_number(sz_wavelength)},
                                 {"aperture", io::round_trip_number(sz_aperture)},
                                 {"n", sz_n},
                                 {"prefactor", io::round_trip_number(sz_prefactor)}});
                text = dump_json(std::move(doc));
            }
            return write_output(text, sz_out, out, err);
        }

        // lite
        const sizing::DesignComparison cmp = sizing::lite_scenario();
        std::string text;
        if (lt_format == "csv") {
            text = io::to_csv(cmp);
        } else {
            json doc = io::to_json(cmp);
            doc["metadata"] = make_metadata("lite", json::object());
            text = dump_json(std::move(doc));
        }
        return write_output(text, lt_out, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace noonsim::cli
