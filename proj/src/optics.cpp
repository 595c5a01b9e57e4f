#include "noonsim/optics.hpp"

#include "noonsim/loss.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace noonsim::optics {

using fock::flat_index;
using fock::space_dim;

namespace {

// Basis states |j, n-j> of the total-photon-number-n block that exist
// under the truncation, ordered by increasing j (photons in mode A).
std::vector<int> block_mode_a_counts(int total, int n_max) {
    std::vector<int> counts;
    const int j_lo = std::max(0, total - n_max);
    const int j_hi = std::min(total, n_max);
    for (int j = j_lo; j <= j_hi; ++j) counts.push_back(j);
    return counts;
}

}  // namespace

Eigen::MatrixXcd beam_splitter_operator(double transmissivity, int n_max) {
    if (!(transmissivity >= 0.0 && transmissivity <= 1.0)) {
        throw std::invalid_argument("beam splitter transmissivity must lie in [0, 1], got " +
                                    std::to_string(transmissivity));
    }
    const Eigen::Index dim = space_dim(n_max);
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(dim, dim);

    // Mixing angle: cos(theta) = sqrt(T), sin(theta) = sqrt(1-T).
    const double theta = std::atan2(std::sqrt(1.0 - transmissivity), std::sqrt(transmissivity));

    // The generator a+b + ab+ conserves total photon number, so exponentiate
    // block by block; each block is a real symmetric tridiagonal matrix with
    // <j+1, n-j-1| a+b |j, n-j> = sqrt((j+1)(n-j)).
    for (int total = 0; total <= 2 * n_max; ++total) {
        const std::vector<int> js = block_mode_a_counts(total, n_max);
        const Eigen::Index m = static_cast<Eigen::Index>(js.size());

        Eigen::MatrixXd generator = Eigen::MatrixXd::Zero(m, m);
        for (Eigen::Index r = 0; r + 1 < m; ++r) {
            const int j = js[static_cast<std::size_t>(r)];
            const double coupling = std::sqrt(double(j + 1) * double(total - j));
            generator(r + 1, r) = coupling;
            generator(r, r + 1) = coupling;
        }

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(generator);
        const Eigen::MatrixXd& vecs = solver.eigenvectors();
        Eigen::VectorXcd phases(m);
        for (Eigen::Index r = 0; r < m; ++r) {
            phases[r] = std::polar(1.0, theta * solver.eigenvalues()[r]);
        }
        const Eigen::MatrixXcd block =
            vecs.cast<Complex>() * phases.asDiagonal() * vecs.transpose().cast<Complex>();

        for (Eigen::Index r = 0; r < m; ++r) {
            const int ja = js[static_cast<std::size_t>(r)];
            for (Eigen::Index c = 0; c < m; ++c) {
                const int jb = js[static_cast<std::size_t>(c)];
                op(flat_index(ja, total - ja, n_max), flat_index(jb, total - jb, n_max)) =
                    block(r, c);
            }
        }
    }
    return op;
}

Eigen::MatrixXcd phase_operator(double phi, Mode mode, int n_max) {
    const Eigen::Index dim = space_dim(n_max);
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n_a = 0; n_a <= n_max; ++n_a) {
        for (int n_b = 0; n_b <= n_max; ++n_b) {
            const int n_mode = (mode == Mode::A) ? n_a : n_b;
            op(flat_index(n_a, n_b, n_max), flat_index(n_a, n_b, n_max)) =
                std::polar(1.0, phi * n_mode);
        }
    }
    return op;
}

Eigen::MatrixXcd BeamSplitter::operator_matrix() const {
    return beam_splitter_operator(transmissivity, n_max);
}

Eigen::MatrixXcd PhaseShifter::operator_matrix(int n_max) const {
    return phase_operator(phi, mode, n_max);
}

TwoModeState apply(const Eigen::MatrixXcd& op, const TwoModeState& state) {
    if (op.rows() != state.dim() || op.cols() != state.dim()) {
        throw std::invalid_argument("operator dimension " + std::to_string(op.rows()) +
                                    " does not match state dimension " +
                                    std::to_string(state.dim()));
    }
    return TwoModeState(state.n_max(), op * state.amplitudes());
}

DensityOperator apply(const Eigen::MatrixXcd& op, const DensityOperator& rho) {
    if (op.rows() != rho.dim() || op.cols() != rho.dim()) {
        throw std::invalid_argument("operator dimension " + std::to_string(op.rows()) +
                                    " does not match density dimension " +
                                    std::to_string(rho.dim()));
    }
    return DensityOperator(rho.n_max(), op * rho.matrix() * op.adjoint());
}

DensityOperator swap_modes(const DensityOperator& rho) {
    const int n_max = rho.n_max();
    const Eigen::Index dim = rho.dim();
    Eigen::MatrixXcd swapped(dim, dim);
    for (int ra = 0; ra <= n_max; ++ra) {
        for (int rb = 0; rb <= n_max; ++rb) {
            for (int ca = 0; ca <= n_max; ++ca) {
                for (int cb = 0; cb <= n_max; ++cb) {
                    swapped(flat_index(rb, ra, n_max), flat_index(cb, ca, n_max)) =
                        rho.matrix()(flat_index(ra, rb, n_max), flat_index(ca, cb, n_max));
                }
            }
        }
    }
    return DensityOperator(n_max, std::move(swapped));
}

DensityOperator mach_zehnder(const MachZehnderConfig& config) {
    const int n_max = config.input.n_max();
    const Eigen::MatrixXcd splitter = beam_splitter_operator(0.5, n_max);

    DensityOperator rho = to_density(optics::apply(splitter, config.input));
    if (config.loss) {
        rho = loss::apply_loss(rho, config.loss->first, config.loss->second);
    }
    rho = optics::apply(phase_operator(config.phi, Mode::B, n_max), rho);
    rho = optics::apply(splitter, rho);

    // With the symmetric splitter convention the phi = 0 bright port for a
    // single-photon input is the physical B output; relabel so it reads A2.
    return swap_modes(rho);
}

}  // namespace noonsim::optics
