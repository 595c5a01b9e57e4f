// sizing.hpp
// Angular-resolution arithmetic and the aperture/mass trade: an
// N-photon entangled signal keeps the classical resolution of aperture
// D with the smaller aperture D/N, cutting the optic cross-section (and
// mass, at constant thickness) by N^2.

#pragma once

#include <map>
#include <string>

namespace noonsim::sizing {

struct SensorDesign {
    double wavelength = 0.0;  // meters
    double aperture = 0.0;    // meters
    int photons = 1;
    std::string name;
    std::map<std::string, std::string> metadata;
};

struct DesignComparison {
    SensorDesign baseline;
    SensorDesign miniaturized;
    double resolution_baseline = 0.0;      // radians
    double resolution_miniaturized = 0.0;  // radians
    double aperture_ratio = 1.0;
    double mass_factor = 1.0;              // lower bound (constant-thickness optic)
};

// lambda / D scaled by `prefactor` (1 by default; 1.22 recovers the
// Airy criterion).
double rayleigh_resolution(double wavelength, double aperture, double prefactor = 1.0);

// lambda / (D N); reduces to the Rayleigh limit at N = 1.
double heisenberg_resolution(double wavelength, double aperture, int photons,
                             double prefactor = 1.0);

// D / N.
double miniaturized_aperture(double aperture, int photons);

// N^2 cross-section / mass reduction at constant optic thickness; the
// real saving is at least this.
double mass_reduction_factor(int photons);

// Builds the D' = D/N design at the same wavelength and checks that its
// Heisenberg resolution reproduces the baseline Rayleigh resolution.
// The prefactor scales both resolutions and leaves the trade intact.
DesignComparison compare(const SensorDesign& baseline, int photons, double prefactor = 1.0);

// Built-in comparison of the 1 m LITE receiver against a 0.5 m
// N = 2 entangled variant; hardware strings carried as metadata.
DesignComparison lite_scenario();

}  // namespace noonsim::sizing
