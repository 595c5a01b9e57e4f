// loss.hpp
// Pure-loss (attenuation) channels and the N00N coherence readout.

#pragma once

#include "noonsim/fock.hpp"

#include <vector>

namespace noonsim::loss {

// Single-arm attenuation; eta is the probability that one photon survives.
struct LossChannel {
    double eta = 1.0;
    Mode mode = Mode::A;
    int n_max = 1;

    std::vector<Eigen::MatrixXcd> kraus_operators() const;
};

// Kraus set {K_k} of the pure-loss channel on one mode,
//
//   K_k |n> = sqrt( C(n,k) eta^(n-k) (1-eta)^k ) |n-k>,   k = 0..n_max,
//
// identity on the other mode. Operators that vanish identically (e.g.
// every k >= 1 at eta = 1) are dropped. Satisfies sum K+ K = I.
std::vector<Eigen::MatrixXcd> loss_kraus(double eta, Mode mode, int n_max);

// rho -> sum_k K_k rho K_k+ for an arbitrary Kraus set.
DensityOperator apply_channel(const DensityOperator& rho,
                              const std::vector<Eigen::MatrixXcd>& kraus);

// Loss on mode A with eta_a, then on mode B with eta_b (the two commute).
DensityOperator apply_loss(const DensityOperator& rho, double eta_a, double eta_b);

// <N,0| rho |0,N> — the N00N coherence. Equal-arm loss eta scales its
// magnitude by eta^N, which is the quantitative face of the fringe
// degradation worsening with N.
Complex noon_coherence(const DensityOperator& rho, int n_photons);

}  // namespace noonsim::loss
