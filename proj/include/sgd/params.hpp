#pragma once

#include <string>
#include <vector>

namespace sgd {

// Raw inputs that define a run: atom, coupling, mode geometry, packet layout.
struct RawParams {
    double m = 1e-25;        // atomic mass (kg)
    double epsilon = 1e5;    // atom-field coupling (1/s)
    double lambda = 0.6e-2;  // mode wavelength (m)
    double dx0 = 0.6e-4;     // initial packet width (m)
    double x01 = -0.3e-3;    // first packet center (m)
    double x02 = 0.3e-3;     // second packet center (m)
};

// Physical constants of one scenario, SI throughout. Immutable once derived;
// positions are converted to units of |x01| only at output boundaries.
struct PhysicalParams {
    double m = 0.0;
    double epsilon = 0.0;
    double lambda = 0.0;
    double k = 0.0;       // 2*pi/lambda (1/m)
    double omega = 0.0;   // 2*pi*c/lambda (1/s)
    double a0 = 0.0;      // epsilon*hbar*k/m (m/s^2)
    double dx0 = 0.0;
    double x01 = 0.0;
    double x02 = 0.0;
    double hbar = 0.0;
    double kB = 0.0;
    double c = 0.0;

    // Linearization-regime guard messages (empty when comfortably inside).
    std::vector<std::string> regime_warnings;
};

struct RabiInfo {
    double Omega = 0.0;   // epsilon*sqrt(<n>+1) (1/s)
    double T0_max = 0.0;  // 1e3/Omega, the flight-time horizon (s)
};

// Fills the derived quantities and checks the guards. With strict=true the
// regime guards (dx0 <= lambda/20, |x0j| <= lambda/10) throw instead of
// being collected as warnings.
PhysicalParams derive_params(const RawParams& raw, bool strict = false);

// Rabi frequency for a field with the given mean photon number, and the
// flight-time horizon T0 under which the factorized density is valid.
RabiInfo rabi_and_horizon(const PhysicalParams& params, double mean_n);

} // namespace sgd
