// fock.hpp
// Truncated two-mode Fock space: pure states, density operators and the
// basic state algebra everything else is built on.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <compare>
#include <utility>

namespace noonsim::fock {

using Complex = std::complex<double>;

// Tolerances used by the type invariants (double precision over
// spaces of dimension <= a few hundred).
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kPsdFloor = -1e-8;

// Interferometer path label.
enum class Mode { A, B };

// Basis label |n_a, n_b>.
struct FockIndex {
    int n_a = 0;
    int n_b = 0;
    friend auto operator<=>(const FockIndex&, const FockIndex&) = default;
};

// Dimension of the truncated space: (n_max + 1)^2.
int space_dim(int n_max);

// Flat index convention: row-major by (n_a, n_b) with n_b fastest,
// i.e. flat = n_a * (n_max + 1) + n_b.
Eigen::Index flat_index(int n_a, int n_b, int n_max);
FockIndex unflat_index(Eigen::Index flat, int n_max);

// Normalized pure state over |n_a, n_b>, both modes truncated at n_max.
// Immutable after construction.
class TwoModeState {
public:
    // Requires sum |amplitude|^2 = 1 within kNormTolerance.
    TwoModeState(int n_max, Eigen::VectorXcd amplitudes);

    // Rescales the given amplitudes to unit norm.
    static TwoModeState normalized(int n_max, Eigen::VectorXcd amplitudes);

    int n_max() const { return n_max_; }
    Eigen::Index dim() const { return amps_.size(); }
    const Eigen::VectorXcd& amplitudes() const { return amps_; }

    Complex amplitude(int n_a, int n_b) const;
    Complex amplitude(FockIndex idx) const { return amplitude(idx.n_a, idx.n_b); }

    Eigen::Index flat(int n_a, int n_b) const { return flat_index(n_a, n_b, n_max_); }
    FockIndex unflat(Eigen::Index flat) const { return unflat_index(flat, n_max_); }

private:
    int n_max_;
    Eigen::VectorXcd amps_;
};

// Mixed state over the same basis. The constructor enforces Hermiticity
// and unit trace; positive semidefiniteness is preserved by every
// operation in this library and can be audited via min_eigenvalue().
class DensityOperator {
public:
    DensityOperator(int n_max, Eigen::MatrixXcd matrix);

    int n_max() const { return n_max_; }
    Eigen::Index dim() const { return mat_.rows(); }
    const Eigen::MatrixXcd& matrix() const { return mat_; }

    // <bra| rho |ket>
    Complex element(FockIndex bra, FockIndex ket) const;

    // Diagonal entry p(n_a, n_b), clamped to zero if a rounding-level
    // negative appears.
    double diagonal_probability(int n_a, int n_b) const;

    double trace() const { return mat_.trace().real(); }
    double purity() const;           // trace(rho^2)
    double min_eigenvalue() const;   // smallest eigenvalue, for PSD audits

    Eigen::Index flat(int n_a, int n_b) const { return flat_index(n_a, n_b, n_max_); }

private:
    int n_max_;
    Eigen::MatrixXcd mat_;
};

// |n_a, n_b> basis state. Rejects counts above the truncation.
TwoModeState make_fock(int n_a, int n_b, int n_max);

// (|N,0> + |0,N>)/sqrt(2). Requires 1 <= n_photons <= n_max.
TwoModeState make_noon(int n_photons, int n_max);

// Sum of |amplitude|^2 (squared two-norm).
double norm(const TwoModeState& state);

// Rank-1 projector |psi><psi|.
DensityOperator to_density(const TwoModeState& state);

// <s1|s2>. Rejects mismatched truncations.
Complex overlap(const TwoModeState& s1, const TwoModeState& s2);

// (<n_A>, <n_B>) from the diagonal of rho.
std::pair<double, double> mean_photon_numbers(const DensityOperator& rho);

}  // namespace noonsim::fock

namespace noonsim {
using fock::Complex;
using fock::DensityOperator;
using fock::FockIndex;
using fock::Mode;
using fock::TwoModeState;
}  // namespace noonsim
