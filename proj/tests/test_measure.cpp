#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "noonsim/loss.hpp"
#include "noonsim/measure.hpp"
#include "noonsim/optics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

using namespace noonsim;
using fock::make_fock;
using fock::make_noon;
using fock::to_density;
using measure::estimate_period_and_visibility;
using measure::fringe_scan;
using measure::FringeScanOptions;
using measure::noon_basis_probs;
using measure::number_resolved_distribution;
using measure::sample_counts;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> uniform_grid(int points) {
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        grid[static_cast<std::size_t>(i)] = kTwoPi * i / points;
    }
    return grid;
}

}  // namespace

TEST_CASE("number-resolved distribution is the Fock diagonal") {
    const auto single = number_resolved_distribution(to_density(make_fock(1, 0, 1)));
    CHECK(single.probability(FockIndex{1, 0}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(single.probability(FockIndex{0, 1}) == 0.0);

    const auto vacuum = number_resolved_distribution(to_density(make_fock(0, 0, 2)));
    CHECK(vacuum.probability(FockIndex{0, 0}) == doctest::Approx(1.0).epsilon(1e-12));

    const DensityOperator mz =
        optics::mach_zehnder({.input = make_fock(1, 1, 2), .phi = kPi / 2.0, .loss = {}});
    const auto pair = number_resolved_distribution(mz);
    CHECK(pair.probability(FockIndex{2, 0}) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(pair.probability(FockIndex{0, 2}) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(pair.probability(FockIndex{1, 1}) <= 1e-10);
}

TEST_CASE("noon-basis probabilities reproduce the cosine fringes") {
    auto shifted_noon = [](int n, double phi) {
        return optics::apply(optics::phase_operator(phi, Mode::B, n),
                             to_density(make_noon(n, n)));
    };

    const auto at_half_pi = noon_basis_probs(shifted_noon(2, kPi / 2.0), 2);
    CHECK(at_half_pi.p_plus <= 1e-12);
    CHECK(at_half_pi.p_minus == doctest::Approx(1.0).epsilon(1e-12));

    const auto third = noon_basis_probs(shifted_noon(1, kPi / 3.0), 1);
    CHECK(third.p_plus == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(third.p_minus == doctest::Approx(0.25).epsilon(1e-12));

    const auto contracted = noon_basis_probs(shifted_noon(3, kPi / 3.0), 3);
    CHECK(contracted.p_plus <= 1e-12);
    CHECK(contracted.p_minus == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(noon_basis_probs(to_density(make_noon(2, 2)), 3), std::out_of_range);
}

TEST_CASE("parity expectation") {
    CHECK(measure::parity_expectation(to_density(make_fock(0, 0, 1)), Mode::A) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(measure::parity_expectation(to_density(make_fock(0, 1, 1)), Mode::B) ==
          doctest::Approx(-1.0).epsilon(1e-12));

    // pair state injected between the splitters: parity oscillates with period pi
    for (double phi : {0.0, 0.35, 1.2, 2.6}) {
        const double parity =
            measure::parity_expectation(measure::noon_port_output(2, phi), Mode::B);
        const double shifted =
            measure::parity_expectation(measure::noon_port_output(2, phi + kPi), Mode::B);
        CHECK(parity == doctest::Approx(-std::cos(2.0 * phi)).epsilon(1e-10));
        CHECK(parity == doctest::Approx(shifted).epsilon(1e-10));
    }
}

TEST_CASE("sampling is deterministic and multinomially sound") {
    measure::OutcomeDistribution sure;
    sure.entries[FockIndex{1, 0}] = 1.0;
    const auto certain = sample_counts(sure, 100, 7);
    REQUIRE(certain.size() == 1);
    CHECK(certain.at(FockIndex{1, 0}) == 100);

    measure::OutcomeDistribution even;
    even.entries[FockIndex{1, 0}] = 0.5;
    even.entries[FockIndex{0, 1}] = 0.5;
    const auto counts = sample_counts(even, 10000, 12345);
    long long total = 0;
    for (const auto& [idx, c] : counts) total += c;
    CHECK(total == 10000);
    // five-sigma binomial band around 5000
    CHECK(counts.at(FockIndex{1, 0}) >= 4750);
    CHECK(counts.at(FockIndex{1, 0}) <= 5250);

    const auto replay = sample_counts(even, 10000, 12345);
    CHECK(replay == counts);
    const auto other_seed = sample_counts(even, 10000, 54321);
    CHECK(other_seed != counts);

    CHECK_THROWS_AS(sample_counts(even, 0, 1), std::invalid_argument);

    measure::OutcomeDistribution leaky;
    leaky.entries[FockIndex{1, 0}] = 0.7;
    CHECK_THROWS_AS(sample_counts(leaky, 10, 1), std::invalid_argument);
}

TEST_CASE("dark counts push outcomes off the ideal grid") {
    measure::OutcomeDistribution sure;
    sure.entries[FockIndex{0, 0}] = 1.0;
    const auto counts = sample_counts(sure, 20000, 99, 0.05);

    long long total = 0;
    long long extra_events = 0;
    for (const auto& [idx, c] : counts) {
        total += c;
        if (idx != FockIndex{0, 0}) extra_events += c;
    }
    CHECK(total == 20000);
    // two detectors at rate 0.05: about 1 - exp(-0.1) of shots gain a count
    CHECK(extra_events > 1500);
    CHECK(extra_events < 2400);

    CHECK(sample_counts(sure, 20000, 99, 0.05) == counts);
    CHECK_THROWS_AS(sample_counts(sure, 10, 1, -0.5), std::invalid_argument);
}

TEST_CASE("exact fringe scans match the closed-form probabilities") {
    const auto one = fringe_scan(1, {0.0, kPi / 2.0, kPi});
    CHECK(one.p_plus[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(one.p_plus[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(one.p_plus[2] == doctest::Approx(0.0).epsilon(1e-12));

    const auto two = fringe_scan(2, {0.0, kPi / 2.0, kPi});
    CHECK(two.p_plus[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(two.p_plus[1] <= 1e-12);
    CHECK(two.p_plus[2] == doctest::Approx(1.0).epsilon(1e-12));

    for (int n = 1; n <= 5; ++n) {
        const auto scan = fringe_scan(n, uniform_grid(64));
        for (std::size_t i = 0; i < scan.phi.size(); ++i) {
            const double expected = (1.0 + std::cos(n * scan.phi[i])) / 2.0;
            CHECK(std::abs(scan.p_plus[i] - expected) <= 1e-10);
            CHECK(std::abs(scan.p_plus[i] + scan.p_minus[i] - 1.0) <= 1e-10);
            CHECK(std::abs(scan.weight[i] - 1.0) <= 1e-10);
        }
    }

    CHECK_THROWS_AS(fringe_scan(1, {}), std::invalid_argument);
    CHECK_THROWS_AS(fringe_scan(1, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("lossy scans carry the surviving weight") {
    FringeScanOptions lossy;
    lossy.eta = 0.8;
    const auto scan = fringe_scan(2, uniform_grid(64), lossy);

    double p_max = 0.0;
    double p_min = 1.0;
    for (std::size_t i = 0; i < scan.phi.size(); ++i) {
        CHECK(scan.weight[i] == doctest::Approx(0.64).epsilon(1e-10));
        p_max = std::max(p_max, scan.p_plus[i]);
        p_min = std::min(p_min, scan.p_plus[i]);
    }
    CHECK(p_max - p_min == doctest::Approx(0.64).epsilon(1e-9));

    FringeScanOptions post = lossy;
    post.postselect = true;
    const auto renormalized = fringe_scan(2, uniform_grid(64), post);
    for (std::size_t i = 0; i < renormalized.phi.size(); ++i) {
        const double expected = (1.0 + std::cos(2.0 * renormalized.phi[i])) / 2.0;
        CHECK(std::abs(renormalized.p_plus[i] - expected) <= 1e-9);
        CHECK(renormalized.weight[i] == doctest::Approx(0.64).epsilon(1e-10));
    }

    FringeScanOptions dead;
    dead.eta = 0.0;
    dead.postselect = true;
    CHECK_THROWS_AS(fringe_scan(2, uniform_grid(16), dead), std::domain_error);
}

TEST_CASE("sampled scans are reproducible and converge to the exact fringe") {
    FringeScanOptions sampled;
    sampled.shots = 100000;
    sampled.seed = 20260810;
    const auto scan = fringe_scan(2, uniform_grid(32), sampled);
    const auto exact = fringe_scan(2, uniform_grid(32));

    double worst = 0.0;
    for (std::size_t i = 0; i < scan.phi.size(); ++i) {
        worst = std::max(worst, std::abs(scan.p_plus[i] - exact.p_plus[i]));
        worst = std::max(worst, std::abs(scan.p_minus[i] - exact.p_minus[i]));
    }
    CHECK(worst <= 0.01);

    const auto replay = fringe_scan(2, uniform_grid(32), sampled);
    CHECK(replay.p_plus == scan.p_plus);
    CHECK(replay.p_minus == scan.p_minus);
}

TEST_CASE("period and visibility estimation on exact scans") {
    const auto fit3 = estimate_period_and_visibility(fringe_scan(3, uniform_grid(64)));
    CHECK(fit3.period == doctest::Approx(kTwoPi / 3.0).epsilon(1e-6));
    CHECK(std::abs(fit3.period - 2.0944) <= 1e-4);
    CHECK(fit3.visibility == doctest::Approx(1.0).epsilon(1e-6));

    const auto fit1 = estimate_period_and_visibility(fringe_scan(1, uniform_grid(64)));
    CHECK(fit1.period == doctest::Approx(6.2832).epsilon(1e-4));
    CHECK(fit1.visibility == doctest::Approx(1.0).epsilon(1e-6));

    FringeScanOptions lossy;
    lossy.eta = 0.8;
    const auto fit_lossy = estimate_period_and_visibility(fringe_scan(2, uniform_grid(64), lossy));
    CHECK(fit_lossy.visibility == doctest::Approx(0.64).epsilon(1e-9));
    CHECK(fit_lossy.period == doctest::Approx(kPi).epsilon(1e-6));
}

TEST_CASE("estimation rejects under-sampled scans") {
    // 12 points over a period-contracted N = 3 fringe: 4 per period
    CHECK_THROWS_WITH_AS(estimate_period_and_visibility(fringe_scan(3, uniform_grid(12))),
                         doctest::Contains("under-sampled"), std::invalid_argument);

    // a grid that never covers the N = 1 period
    std::vector<double> short_grid;
    for (int i = 0; i < 16; ++i) short_grid.push_back(kPi * i / 16.0);
    measure::FringeScan partial = fringe_scan(1, short_grid);
    CHECK_THROWS_WITH_AS(estimate_period_and_visibility(partial),
                         doctest::Contains("under-sampled"), std::invalid_argument);
}

TEST_CASE("sampled fits land within a few standard errors") {
    FringeScanOptions sampled;
    sampled.shots = 10000;
    sampled.seed = 4711;
    const auto fit = estimate_period_and_visibility(fringe_scan(2, uniform_grid(64), sampled));
    CHECK(fit.frequency_stderr > 0.0);
    CHECK(std::abs(fit.frequency - 2.0) <= 3.0 * fit.frequency_stderr);
    CHECK(fit.visibility == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("port-resolved output of the injected N00N state") {
    // a directly injected N00N state (no preparation-splitter phase)
    // reads out as a sine fringe at the ports: P(A2) = (1 + sin phi)/2
    for (double phi : {0.0, 0.6, kPi / 2.0, 2.8}) {
        const DensityOperator out = measure::noon_port_output(1, phi);
        CHECK(out.diagonal_probability(1, 0) ==
              doctest::Approx((1.0 + std::sin(phi)) / 2.0).epsilon(1e-10));
        CHECK(out.diagonal_probability(0, 1) ==
              doctest::Approx((1.0 - std::sin(phi)) / 2.0).epsilon(1e-10));
    }

    // with equal-arm loss the N-photon sector shrinks by eta^N
    const DensityOperator lossy = measure::noon_port_output(2, 0.3, 0.8);
    double two_photon = 0.0;
    for (int n_a = 0; n_a <= 2; ++n_a) {
        for (int n_b = 0; n_b <= 2; ++n_b) {
            if (n_a + n_b == 2) two_photon += lossy.diagonal_probability(n_a, n_b);
        }
    }
    CHECK(two_photon == doctest::Approx(0.64).epsilon(1e-10));
    CHECK(lossy.trace() == doctest::Approx(1.0).epsilon(1e-10));
}
