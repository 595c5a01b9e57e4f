#include "noonsim/fock.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace noonsim::fock {

namespace {

void check_truncation(int n_max) {
    if (n_max < 1) {
        throw std::invalid_argument("truncation n_max must be at least 1, got " +
                                    std::to_string(n_max));
    }
}

}  // namespace

int space_dim(int n_max) {
    check_truncation(n_max);
    return (n_max + 1) * (n_max + 1);
}

Eigen::Index flat_index(int n_a, int n_b, int n_max) {
    if (n_a < 0 || n_b < 0 || n_a > n_max || n_b > n_max) {
        throw std::out_of_range("photon count exceeds truncation: (" + std::to_string(n_a) +
                                ", " + std::to_string(n_b) + ") with n_max " +
                                std::to_string(n_max));
    }
    return static_cast<Eigen::Index>(n_a) * (n_max + 1) + n_b;
}

FockIndex unflat_index(Eigen::Index flat, int n_max) {
    const Eigen::Index dim = space_dim(n_max);
    if (flat < 0 || flat >= dim) {
        throw std::out_of_range("flat index out of range");
    }
    const int stride = n_max + 1;
    return FockIndex{static_cast<int>(flat / stride), static_cast<int>(flat % stride)};
}

TwoModeState::TwoModeState(int n_max, Eigen::VectorXcd amplitudes)
    : n_max_(n_max), amps_(std::move(amplitudes)) {
    if (amps_.size() != space_dim(n_max_)) {
        throw std::invalid_argument("amplitude vector has dimension " +
                                    std::to_string(amps_.size()) + ", expected " +
                                    std::to_string(space_dim(n_max_)));
    }
    if (std::abs(amps_.squaredNorm() - 1.0) > kNormTolerance) {
        throw std::invalid_argument("state is not normalized: sum |amplitude|^2 = " +
                                    std::to_string(amps_.squaredNorm()));
    }
}

TwoModeState TwoModeState::normalized(int n_max, Eigen::VectorXcd amplitudes) {
    const double nrm = amplitudes.norm();
    if (nrm <= 0.0) {
        throw std::invalid_argument("cannot normalize the zero vector");
    }
    return TwoModeState(n_max, amplitudes / nrm);
}

Complex TwoModeState::amplitude(int n_a, int n_b) const {
    return amps_[flat(n_a, n_b)];
}

DensityOperator::DensityOperator(int n_max, Eigen::MatrixXcd matrix)
    : n_max_(n_max), mat_(std::move(matrix)) {
    const Eigen::Index dim = space_dim(n_max_);
    if (mat_.rows() != dim || mat_.cols() != dim) {
        throw std::invalid_argument("density matrix has dimension " +
                                    std::to_string(mat_.rows()) + "x" +
                                    std::to_string(mat_.cols()) + ", expected " +
                                    std::to_string(dim) + " square");
    }
    const double herm_defect = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
    if (herm_defect > kHermitianTolerance) {
        throw std::invalid_argument("density matrix is not Hermitian (defect " +
                                    std::to_string(herm_defect) + ")");
    }
    const Complex tr = mat_.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTolerance) {
        throw std::invalid_argument("density matrix trace is not 1 (got " +
                                    std::to_string(tr.real()) + ")");
    }
}

Complex DensityOperator::element(FockIndex bra, FockIndex ket) const {
    return mat_(flat(bra.n_a, bra.n_b), flat(ket.n_a, ket.n_b));
}

double DensityOperator::diagonal_probability(int n_a, int n_b) const {
    const double p = mat_(flat(n_a, n_b), flat(n_a, n_b)).real();
    return p < 0.0 ? 0.0 : p;
}

double DensityOperator::purity() const {
    return (mat_ * mat_).trace().real();
}

double DensityOperator::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(mat_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

TwoModeState make_fock(int n_a, int n_b, int n_max) {
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(space_dim(n_max));
    amps[flat_index(n_a, n_b, n_max)] = Complex(1.0, 0.0);
    return TwoModeState(n_max, std::move(amps));
}

TwoModeState make_noon(int n_photons, int n_max) {
    if (n_photons < 1) {
        throw std::invalid_argument("N00N state needs at least one photon, got " +
                                    std::to_string(n_photons));
    }
    if (n_photons > n_max) {
        throw std::out_of_range("photon count exceeds truncation: N = " +
                                std::to_string(n_photons) + " with n_max " +
                                std::to_string(n_max));
    }
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(space_dim(n_max));
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    amps[flat_index(n_photons, 0, n_max)] = Complex(inv_sqrt2, 0.0);
    amps[flat_index(0, n_photons, n_max)] = Complex(inv_sqrt2, 0.0);
    return TwoModeState(n_max, std::move(amps));
}

double norm(const TwoModeState& state) {
    return state.amplitudes().squaredNorm();
}

DensityOperator to_density(const TwoModeState& state) {
    Eigen::MatrixXcd rho = state.amplitudes() * state.amplitudes().adjoint();
    return DensityOperator(state.n_max(), std::move(rho));
}

Complex overlap(const TwoModeState& s1, const TwoModeState& s2) {
    if (s1.n_max() != s2.n_max()) {
        throw std::invalid_argument("overlap of states with mismatched truncation (" +
                                    std::to_string(s1.n_max()) + " vs " +
                                    std::to_string(s2.n_max()) + ")");
    }
    return s1.amplitudes().dot(s2.amplitudes());
}

std::pair<double, double> mean_photon_numbers(const DensityOperator& rho) {
    double mean_a = 0.0;
    double mean_b = 0.0;
    for (int n_a = 0; n_a <= rho.n_max(); ++n_a) {
        for (int n_b = 0; n_b <= rho.n_max(); ++n_b) {
            const double p = rho.diagonal_probability(n_a, n_b);
            mean_a += p * n_a;
            mean_b += p * n_b;
        }
    }
    return {mean_a, mean_b};
}

}  // namespace noonsim::fock
