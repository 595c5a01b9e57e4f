#include "noonsim/loss.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace noonsim::loss {

using fock::flat_index;
using fock::space_dim;

namespace {

double binomial(int n, int k) {
    double value = 1.0;
    for (int i = 1; i <= k; ++i) {
        value *= double(n - k + i) / double(i);
    }
    return value;
}

// Amplitude for k of n photons being lost at transmissivity eta.
double loss_amplitude(int n, int k, double eta) {
    return std::sqrt(binomial(n, k) * std::pow(eta, n - k) * std::pow(1.0 - eta, k));
}

}  // namespace

std::vector<Eigen::MatrixXcd> loss_kraus(double eta, Mode mode, int n_max) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("transmissivity eta must lie in [0, 1], got " +
                                    std::to_string(eta));
    }
    const Eigen::Index dim = space_dim(n_max);
    std::vector<Eigen::MatrixXcd> kraus;

    for (int k = 0; k <= n_max; ++k) {
        Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(dim, dim);
        bool nonzero = false;
        for (int n = k; n <= n_max; ++n) {
            const double amp = loss_amplitude(n, k, eta);
            if (amp == 0.0) continue;
            nonzero = true;
            for (int other = 0; other <= n_max; ++other) {
                if (mode == Mode::A) {
                    op(flat_index(n - k, other, n_max), flat_index(n, other, n_max)) = amp;
                } else {
                    op(flat_index(other, n - k, n_max), flat_index(other, n, n_max)) = amp;
                }
            }
        }
        if (nonzero) kraus.push_back(std::move(op));
    }
    return kraus;
}

std::vector<Eigen::MatrixXcd> LossChannel::kraus_operators() const {
    return loss_kraus(eta, mode, n_max);
}

DensityOperator apply_channel(const DensityOperator& rho,
                              const std::vector<Eigen::MatrixXcd>& kraus) {
    if (kraus.empty()) {
        throw std::invalid_argument("empty Kraus set");
    }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.dim(), rho.dim());
    for (const auto& op : kraus) {
        if (op.rows() != rho.dim() || op.cols() != rho.dim()) {
            throw std::invalid_argument("Kraus operator dimension does not match density");
        }
        out += op * rho.matrix() * op.adjoint();
    }
    return DensityOperator(rho.n_max(), std::move(out));
}

DensityOperator apply_loss(const DensityOperator& rho, double eta_a, double eta_b) {
    DensityOperator out = apply_channel(rho, loss_kraus(eta_a, Mode::A, rho.n_max()));
    return apply_channel(out, loss_kraus(eta_b, Mode::B, rho.n_max()));
}

Complex noon_coherence(const DensityOperator& rho, int n_photons) {
    if (n_photons < 1 || n_photons > rho.n_max()) {
        throw std::out_of_range("N00N coherence photon number " + std::to_string(n_photons) +
                                " out of range for n_max " + std::to_string(rho.n_max()));
    }
    return rho.element(FockIndex{n_photons, 0}, FockIndex{0, n_photons});
}

}  // namespace noonsim::loss
