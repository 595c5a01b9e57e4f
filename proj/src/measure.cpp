#include "noonsim/measure.hpp"

#include "noonsim/loss.hpp"
#include "noonsim/optics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace noonsim::measure {

using fock::flat_index;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Deterministic 53-bit uniform source; see kRngAlgorithm.
class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

    double uniform() {
        return double(engine_() >> 11) * 0x1.0p-53;
    }

    long long poisson(double rate) {
        // Inversion by sequential search; rates here are small.
        const double u = uniform();
        double p = std::exp(-rate);
        double cdf = p;
        long long k = 0;
        while (u > cdf && k < 1000000) {
            ++k;
            p *= rate / double(k);
            cdf += p;
        }
        return k;
    }

private:
    std::mt19937_64 engine_;
};

// One multinomial draw of `shots` outcomes from `probs` (normalized by
// their sum), by CDF inversion per shot.
std::vector<long long> multinomial(const std::vector<double>& probs, long long shots,
                                   SampleRng& rng) {
    std::vector<double> cdf(probs.size());
    double total = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        total += std::max(0.0, probs[i]);
        cdf[i] = total;
    }
    if (total <= 0.0) {
        throw std::invalid_argument("outcome probabilities sum to zero");
    }
    std::vector<long long> counts(probs.size(), 0);
    for (long long s = 0; s < shots; ++s) {
        const double u = rng.uniform() * total;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::size_t idx = std::min<std::size_t>(
            static_cast<std::size_t>(it - cdf.begin()), probs.size() - 1);
        ++counts[idx];
    }
    return counts;
}

double clamp_probability(double p) {
    return p < 0.0 ? 0.0 : p;
}

struct CosineFit {
    double offset = 0.0;
    double amplitude = 0.0;
    double sse = std::numeric_limits<double>::infinity();
};

// Linear least squares of p ~ offset + amplitude * cos(k phi) at fixed k.
CosineFit fit_at_frequency(const std::vector<double>& phi, const std::vector<double>& p,
                           double k) {
    const std::size_t m = phi.size();
    double sc = 0.0, scc = 0.0, sp = 0.0, spc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double c = std::cos(k * phi[i]);
        sc += c;
        scc += c * c;
        sp += p[i];
        spc += p[i] * c;
    }
    const double s1 = double(m);
    const double det = s1 * scc - sc * sc;
    CosineFit fit;
    if (det <= 1e-9 * s1 * std::max(scc, 1.0)) {
        // cos(k phi) indistinguishable from a constant on this grid
        fit.offset = sp / s1;
        fit.amplitude = 0.0;
    } else {
        fit.offset = (scc * sp - sc * spc) / det;
        fit.amplitude = (s1 * spc - sc * sp) / det;
    }
    fit.sse = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = p[i] - fit.offset - fit.amplitude * std::cos(k * phi[i]);
        fit.sse += r * r;
    }
    return fit;
}

double golden_section_minimum(const std::vector<double>& phi, const std::vector<double>& p,
                              double lo, double hi) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = fit_at_frequency(phi, p, x1).sse;
    double f2 = fit_at_frequency(phi, p, x2).sse;
    for (int iter = 0; iter < 200 && (hi - lo) > 1e-12; ++iter) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = fit_at_frequency(phi, p, x1).sse;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = fit_at_frequency(phi, p, x2).sse;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double OutcomeDistribution::probability(FockIndex idx) const {
    const auto it = entries.find(idx);
    return it == entries.end() ? 0.0 : it->second;
}

OutcomeDistribution number_resolved_distribution(const DensityOperator& rho) {
    OutcomeDistribution dist;
    for (int n_a = 0; n_a <= rho.n_max(); ++n_a) {
        for (int n_b = 0; n_b <= rho.n_max(); ++n_b) {
            dist.entries[FockIndex{n_a, n_b}] = rho.diagonal_probability(n_a, n_b);
        }
    }
    return dist;
}

NoonBasisProbs noon_basis_probs(const DensityOperator& rho, int n_photons) {
    if (n_photons < 1 || n_photons > rho.n_max()) {
        throw std::out_of_range("N00N basis photon number " + std::to_string(n_photons) +
                                " out of range for n_max " + std::to_string(rho.n_max()));
    }
    const Eigen::Index a = rho.flat(n_photons, 0);
    const Eigen::Index b = rho.flat(0, n_photons);
    const double diag = rho.matrix()(a, a).real() + rho.matrix()(b, b).real();
    const double cross = 2.0 * rho.matrix()(a, b).real();
    return NoonBasisProbs{clamp_probability(0.5 * (diag + cross)),
                          clamp_probability(0.5 * (diag - cross))};
}

double parity_expectation(const DensityOperator& rho, Mode mode) {
    double parity = 0.0;
    for (int n_a = 0; n_a <= rho.n_max(); ++n_a) {
        for (int n_b = 0; n_b <= rho.n_max(); ++n_b) {
            const int n_mode = (mode == Mode::A) ? n_a : n_b;
            const double sign = (n_mode % 2 == 0) ? 1.0 : -1.0;
            parity += sign * rho.diagonal_probability(n_a, n_b);
        }
    }
    return parity;
}

std::map<FockIndex, long long> sample_counts(const OutcomeDistribution& dist,
                                             long long shots, std::uint64_t seed,
                                             double dark_rate) {
    if (shots < 1) {
        throw std::invalid_argument("shots must be at least 1, got " + std::to_string(shots));
    }
    if (dark_rate < 0.0) {
        throw std::invalid_argument("dark rate must be non-negative");
    }
    std::vector<FockIndex> outcomes;
    std::vector<double> probs;
    double total = 0.0;
    for (const auto& [idx, p] : dist.entries) {
        outcomes.push_back(idx);
        probs.push_back(clamp_probability(p));
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("outcome probabilities sum to " + std::to_string(total) +
                                    ", expected 1");
    }

    SampleRng rng(seed);
    std::map<FockIndex, long long> counts;
    if (dark_rate == 0.0) {
        const std::vector<long long> drawn = multinomial(probs, shots, rng);
        for (std::size_t i = 0; i < outcomes.size(); ++i) {
            if (drawn[i] > 0) counts[outcomes[i]] += drawn[i];
        }
        return counts;
    }

    // With dark counts every shot is drawn individually so the recorded
    // outcome can move off the ideal grid.
    std::vector<double> cdf(probs.size());
    double running = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        running += probs[i];
        cdf[i] = running;
    }
    for (long long s = 0; s < shots; ++s) {
        const double u = rng.uniform() * running;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::size_t idx = std::min<std::size_t>(
            static_cast<std::size_t>(it - cdf.begin()), probs.size() - 1);
        FockIndex detected = outcomes[idx];
        detected.n_a += static_cast<int>(rng.poisson(dark_rate));
        detected.n_b += static_cast<int>(rng.poisson(dark_rate));
        ++counts[detected];
    }
    return counts;
}

FringeScan fringe_scan(int n_photons, const std::vector<double>& phi_grid,
                       const FringeScanOptions& options) {
    if (phi_grid.empty()) {
        throw std::invalid_argument("phase grid is empty");
    }
    for (std::size_t i = 1; i < phi_grid.size(); ++i) {
        if (!(phi_grid[i] > phi_grid[i - 1])) {
            throw std::invalid_argument("phase grid must be strictly increasing");
        }
    }
    if (options.shots && *options.shots < 1) {
        throw std::invalid_argument("shots must be at least 1");
    }

    const int n_max = n_photons;
    DensityOperator rho = to_density(fock::make_noon(n_photons, n_max));
    if (options.eta) {
        rho = loss::apply_loss(rho, *options.eta, *options.eta);
    }

    FringeScan scan;
    scan.phi = phi_grid;
    scan.n_photons = n_photons;
    scan.eta = options.eta;
    scan.shots = options.shots;
    scan.seed = options.seed;
    scan.postselected = options.postselect;
    scan.p_plus.reserve(phi_grid.size());
    scan.p_minus.reserve(phi_grid.size());
    scan.weight.reserve(phi_grid.size());

    for (std::size_t i = 0; i < phi_grid.size(); ++i) {
        const DensityOperator shifted =
            optics::apply(optics::phase_operator(phi_grid[i], Mode::B, n_max), rho);
        const NoonBasisProbs probs = noon_basis_probs(shifted, n_photons);

        double p_plus = probs.p_plus;
        double p_minus = probs.p_minus;
        double weight = probs.surviving();

        if (options.shots) {
            SampleRng rng(options.seed + static_cast<std::uint64_t>(i));
            const std::vector<long long> counts =
                multinomial({probs.p_plus, probs.p_minus,
                             clamp_probability(1.0 - probs.surviving())},
                            *options.shots, rng);
            p_plus = double(counts[0]) / double(*options.shots);
            p_minus = double(counts[1]) / double(*options.shots);
            weight = p_plus + p_minus;
        }

        if (options.postselect) {
            if (weight <= 0.0) {
                throw std::domain_error("post-selection impossible: no surviving weight at phi = " +
                                        std::to_string(phi_grid[i]));
            }
            p_plus /= weight;
            p_minus /= weight;
        }

        scan.p_plus.push_back(p_plus);
        scan.p_minus.push_back(p_minus);
        scan.weight.push_back(weight);
    }
    return scan;
}

FringeFit estimate_period_and_visibility(const FringeScan& scan) {
    const std::size_t m = scan.phi.size();
    if (m != scan.p_plus.size() || (scan.p_minus.size() != 0 && scan.p_minus.size() != m)) {
        throw std::invalid_argument("fringe scan arrays have mismatched lengths");
    }
    if (m < 3) {
        throw std::invalid_argument("under-sampled scan: needs at least 3 points");
    }
    for (std::size_t i = 1; i < m; ++i) {
        if (!(scan.phi[i] > scan.phi[i - 1])) {
            throw std::invalid_argument("phase grid must be strictly increasing");
        }
    }
    if (scan.n_photons < 1) {
        throw std::invalid_argument("scan photon number must be at least 1");
    }

    // Treat a uniform half-open grid over [a, b) as covering the full
    // interval: each point owns one grid cell.
    const double span = scan.phi.back() - scan.phi.front();
    const double coverage = span * double(m) / double(m - 1);
    const double expected_period = kTwoPi / double(scan.n_photons);
    if (coverage < expected_period * (1.0 - 1e-9)) {
        throw std::invalid_argument("under-sampled scan: grid covers " +
                                    std::to_string(coverage / expected_period) +
                                    " of the expected period");
    }
    const double points_per_period = double(m) * expected_period / coverage;
    if (points_per_period < 8.0 - 1e-9) {
        throw std::invalid_argument("under-sampled scan: " + std::to_string(points_per_period) +
                                    " points per expected period, need 8");
    }

    // Integer frequency candidates up to the 8-points-per-period bound,
    // then golden-section refinement around the best one.
    const int k_max = std::max(1, int(std::floor(double(m) * kTwoPi / (8.0 * coverage) + 1e-9)));
    int best_k = 1;
    double best_sse = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= k_max; ++k) {
        const double sse = fit_at_frequency(scan.phi, scan.p_plus, double(k)).sse;
        if (sse < best_sse) {
            best_sse = sse;
            best_k = k;
        }
    }
    const double lo = std::max(0.25, double(best_k) - 1.0);
    const double hi = std::min(double(k_max) + 1.0, double(best_k) + 1.0);
    const double k_hat = golden_section_minimum(scan.phi, scan.p_plus, lo, hi);
    const CosineFit fit = fit_at_frequency(scan.phi, scan.p_plus, k_hat);

    FringeFit result;
    result.frequency = k_hat;
    result.period = kTwoPi / k_hat;
    result.visibility = std::clamp(2.0 * fit.amplitude, 0.0, 1.0);

    // Standard error of the fitted frequency from the local linearization
    // of (offset, amplitude, k).
    if (fit.sse <= 0.0 || m <= 3 || std::abs(fit.amplitude) < 1e-12) {
        result.frequency_stderr = 0.0;
    } else {
        Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();
        for (std::size_t i = 0; i < m; ++i) {
            const double c = std::cos(k_hat * scan.phi[i]);
            const double dk = -fit.amplitude * scan.phi[i] * std::sin(k_hat * scan.phi[i]);
            Eigen::Vector3d row(1.0, c, dk);
            jtj += row * row.transpose();
        }
        const double sigma2 = fit.sse / double(m - 3);
        const Eigen::Matrix3d cov = jtj.inverse() * sigma2;
        result.frequency_stderr = std::sqrt(std::max(0.0, cov(2, 2)));
    }
    return result;
}

DensityOperator noon_port_output(int n_photons, double phi, std::optional<double> eta) {
    const int n_max = n_photons;
    DensityOperator rho = to_density(fock::make_noon(n_photons, n_max));
    if (eta) {
        rho = loss::apply_loss(rho, *eta, *eta);
    }
    rho = optics::apply(optics::phase_operator(phi, Mode::B, n_max), rho);
    rho = optics::apply(optics::beam_splitter_operator(0.5, n_max), rho);
    return optics::swap_modes(rho);
}

}  // namespace noonsim::measure
