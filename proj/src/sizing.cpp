#include "noonsim/sizing.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace noonsim::sizing {

namespace {

void check_positive(double value, const char* what) {
    if (!(value > 0.0)) {
        throw std::invalid_argument(std::string(what) + " must be positive, got " +
                                    std::to_string(value));
    }
}

void check_photons(int photons) {
    if (photons < 1) {
        throw std::invalid_argument("photon number must be at least 1, got " +
                                    std::to_string(photons));
    }
}

}  // namespace

double rayleigh_resolution(double wavelength, double aperture, double prefactor) {
    check_positive(wavelength, "wavelength");
    check_positive(aperture, "aperture");
    check_positive(prefactor, "prefactor");
    return prefactor * wavelength / aperture;
}

double heisenberg_resolution(double wavelength, double aperture, int photons,
                             double prefactor) {
    check_photons(photons);
    return rayleigh_resolution(wavelength, aperture, prefactor) / double(photons);
}

double miniaturized_aperture(double aperture, int photons) {
    check_positive(aperture, "aperture");
    check_photons(photons);
    return aperture / double(photons);
}

double mass_reduction_factor(int photons) {
    check_photons(photons);
    return double(photons) * double(photons);
}

DesignComparison compare(const SensorDesign& baseline, int photons, double prefactor) {
    check_positive(baseline.wavelength, "wavelength");
    check_positive(baseline.aperture, "aperture");
    check_photons(photons);

    DesignComparison cmp;
    cmp.baseline = baseline;
    cmp.miniaturized = baseline;
    cmp.miniaturized.aperture = miniaturized_aperture(baseline.aperture, photons);
    cmp.miniaturized.photons = photons;
    if (!baseline.name.empty()) {
        cmp.miniaturized.name = "entangled-" + baseline.name;
    }
    cmp.resolution_baseline = rayleigh_resolution(baseline.wavelength, baseline.aperture, prefactor);
    cmp.resolution_miniaturized =
        heisenberg_resolution(baseline.wavelength, cmp.miniaturized.aperture, photons, prefactor);
    cmp.aperture_ratio = double(photons);
    cmp.mass_factor = mass_reduction_factor(photons);

    const double rel = std::abs(cmp.resolution_miniaturized - cmp.resolution_baseline) /
                       cmp.resolution_baseline;
    if (rel > 1e-12) {
        throw std::logic_error("resolution trade identity violated: relative difference " +
                               std::to_string(rel));
    }
    return cmp;
}

DesignComparison lite_scenario() {
    SensorDesign lite;
    lite.wavelength = 532e-9;  // the doubled Nd:YAG line; 1064/532/355 nm in metadata
    lite.aperture = 1.0;
    lite.photons = 1;
    lite.name = "LITE";
    lite.metadata = {
        {"t_r_optics", "1 meter telescope"},
        {"lasers", "Nd:YAG"},
        {"crystal", "C*DA, KD*P"},
        {"imaging_hardware", "non-entangled light"},
        {"wavelengths_nm", "1064, 532, 355"},
    };

    DesignComparison cmp = compare(lite, 2);
    cmp.miniaturized.metadata = {
        {"t_r_optics", ".5 meter telescope"},
        {"lasers", "Nd:YAG, Ti:Sapph, etc."},
        {"crystal", "BBO, BiBO, LBO"},
        {"imaging_hardware", "N = 2 N00N-states"},
        {"wavelengths_nm", "1064, 532, 355"},
    };
    return cmp;
}

}  // namespace noonsim::sizing
