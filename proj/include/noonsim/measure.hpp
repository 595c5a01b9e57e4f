// measure.hpp
// Detection models, deterministic Monte Carlo sampling and fringe-scan
// analysis (super-resolution period, visibility, loss degradation).

#pragma once

#include "noonsim/fock.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace noonsim::measure {

// Sampling algorithm identifier recorded in output metadata. Draws are
// 53-bit uniforms u = (x >> 11) * 2^-53 from std::mt19937_64; outcomes
// are chosen by CDF inversion in ascending (n_a, n_b) order, dark
// counts by Poisson inversion (outcome draw first, then port A2, then
// port B2, per shot). Reproducibility is per (algorithm, seed) pair.
inline constexpr const char* kRngAlgorithm = "mt19937_64-invcdf53";

// Detected photon counts at the output ports (A2, B2) -> probability.
struct OutcomeDistribution {
    std::map<FockIndex, double> entries;

    double probability(FockIndex idx) const;
};

// Projections onto (|N,0> +- |0,N>)/sqrt(2). For lossy states
// p_plus + p_minus < 1; the remainder sits in the lost-photon sector.
struct NoonBasisProbs {
    double p_plus = 0.0;
    double p_minus = 0.0;

    double surviving() const { return p_plus + p_minus; }
};

// A sweep of p_plus/p_minus over a phase grid. `weight` is the
// surviving (non-lost) probability per point, recorded before any
// post-selection. When `shots` is set the p arrays hold sampled
// frequencies, otherwise exact probabilities.
struct FringeScan {
    std::vector<double> phi;
    std::vector<double> p_plus;
    std::vector<double> p_minus;
    std::vector<double> weight;
    int n_photons = 1;
    std::optional<double> eta;
    std::optional<long long> shots;
    std::uint64_t seed = 0;
    bool postselected = false;
};

struct FringeScanOptions {
    std::optional<double> eta;         // equal-arm loss transmissivity
    std::optional<long long> shots;    // absent = exact probabilities
    std::uint64_t seed = 0;
    bool postselect = false;           // renormalize to the surviving sector
};

// Result of fitting p_plus(phi) to offset + amplitude * cos(k phi).
// `visibility` is the peak-to-trough swing of the recorded fringe
// (twice the fitted cosine amplitude), clipped to [0, 1]; it equals the
// usual contrast for fringes centered at 1/2 and eta^N for raw lossy
// N00N scans. `frequency_stderr` is 0 for exact scans.
struct FringeFit {
    double period = 0.0;
    double visibility = 0.0;
    double frequency = 0.0;
    double frequency_stderr = 0.0;
};

// Diagonal of rho as a probability map over (n_a, n_b).
OutcomeDistribution number_resolved_distribution(const DensityOperator& rho);

// p+- = <psi+-| rho |psi+->.
NoonBasisProbs noon_basis_probs(const DensityOperator& rho, int n_photons);

// sum (-1)^(n_mode) p(n_a, n_b).
double parity_expectation(const DensityOperator& rho, Mode mode);

// Multinomial draw of `shots` outcomes; counts sum to shots. With
// dark_rate > 0 each port independently adds Poisson(dark_rate)
// spurious counts per shot. Only outcomes with nonzero count appear.
std::map<FockIndex, long long> sample_counts(const OutcomeDistribution& dist,
                                             long long shots, std::uint64_t seed,
                                             double dark_rate = 0.0);

// For every grid phase: prepare the N00N state (n_max = n_photons),
// apply optional equal-arm loss, apply the phase on path B and record
// noon_basis_probs exactly or as sampled frequencies. Sampling uses the
// per-point seed `seed + point_index`, so concurrent and serial
// evaluations agree.
FringeScan fringe_scan(int n_photons, const std::vector<double>& phi_grid,
                       const FringeScanOptions& options = {});

// Least-squares fit over an integer frequency grid with local
// refinement. Requires the grid to cover one full expected period with
// at least 8 points per period.
FringeFit estimate_period_and_visibility(const FringeScan& scan);

// N00N state injected between the splitters, then optional equal-arm
// loss, the path-B phase and the output 50:50 splitter; returns the
// port-labeled output state for number-resolved detection.
DensityOperator noon_port_output(int n_photons, double phi,
                                 std::optional<double> eta = {});

}  // namespace noonsim::measure
