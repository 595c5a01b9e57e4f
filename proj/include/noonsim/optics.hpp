// optics.hpp
// Beam splitters, phase shifters and the Mach-Zehnder pipeline.

#pragma once

#include "noonsim/fock.hpp"

#include <optional>
#include <utility>

namespace noonsim::optics {

// Two-mode beam splitter in the symmetric convention: the transmitted
// amplitude is real and each reflection picks up a phase i,
//
//   a+ -> sqrt(T) a+ + i sqrt(1-T) b+
//   b+ -> i sqrt(1-T) a+ + sqrt(T) b+
//
// extended to Fock states by expanding the creation-operator products.
// transmissivity is the transmitted power fraction T in [0, 1].
struct BeamSplitter {
    double transmissivity = 0.5;
    int n_max = 1;

    Eigen::MatrixXcd operator_matrix() const;
};

// Diagonal element multiplying the amplitude at (n_a, n_b) by
// exp(i phi n_mode).
struct PhaseShifter {
    double phi = 0.0;
    Mode mode = Mode::B;

    Eigen::MatrixXcd operator_matrix(int n_max) const;
};

struct MachZehnderConfig {
    TwoModeState input;
    double phi = 0.0;  // phase in path B, between the splitters
    std::optional<std::pair<double, double>> loss;  // (eta_a, eta_b), between the splitters
};

// Unitary matrix of the beam splitter over the truncated space.
//
// Each total-photon-number block is generated separately, so entries
// between blocks are exactly zero and the whole matrix is unitary for
// any n_max. Blocks with total photon number above n_max cannot hold
// the untruncated transformation; they are evolved with the truncated
// generator, which keeps them unitary. Choose n_max at least the total
// photon number of the states of interest for physical results.
Eigen::MatrixXcd beam_splitter_operator(double transmissivity, int n_max);

Eigen::MatrixXcd phase_operator(double phi, Mode mode, int n_max);

// Applies an operator; dimension mismatches are rejected.
TwoModeState apply(const Eigen::MatrixXcd& op, const TwoModeState& state);

// U rho U+ form.
DensityOperator apply(const Eigen::MatrixXcd& op, const DensityOperator& rho);

// Relabels the two ports (|n_a, n_b> -> |n_b, n_a>).
DensityOperator swap_modes(const DensityOperator& rho);

// 50:50 splitter, optional per-arm loss, phase phi on path B, 50:50
// splitter. The output is indexed by the detector ports (A2, B2),
// labeled so that a single photon entering port A exits at A2 with
// probability (1 + cos phi)/2; the labeling is a fixed relabeling of
// the physical output modes, not an extra phase.
DensityOperator mach_zehnder(const MachZehnderConfig& config);

}  // namespace noonsim::optics
