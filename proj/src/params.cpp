#include "sgd/params.hpp"

#include <cmath>
#include <sstream>

#include "sgd/constants.hpp"
#include "sgd/errors.hpp"

namespace sgd {

PhysicalParams derive_params(const RawParams& raw, bool strict)
{
    auto fail = [](const std::string& msg) { throw DomainError(msg); };

    if (!(std::isfinite(raw.m) && std::isfinite(raw.epsilon) && std::isfinite(raw.lambda)
          && std::isfinite(raw.dx0) && std::isfinite(raw.x01) && std::isfinite(raw.x02)))
        fail("derive_params: non-finite input");
    if (raw.m <= 0.0) fail("derive_params: mass must be positive");
    if (raw.epsilon <= 0.0) fail("derive_params: coupling epsilon must be positive");
    if (raw.lambda <= 0.0) fail("derive_params: wavelength must be positive");
    if (raw.dx0 <= 0.0) fail("derive_params: packet width dx0 must be positive");

    PhysicalParams p;
    p.m = raw.m;
    p.epsilon = raw.epsilon;
    p.lambda = raw.lambda;
    p.dx0 = raw.dx0;
    p.x01 = raw.x01;
    p.x02 = raw.x02;
    p.hbar = constants::hbar;
    p.kB = constants::k_boltzmann;
    p.c = constants::c_light;

    p.k = 2.0 * constants::pi / p.lambda;
    p.omega = 2.0 * constants::pi * p.c / p.lambda;
    p.a0 = p.epsilon * p.hbar * p.k / p.m;

    // Packets must be narrow and near the mode node for the linear-potential
    // approximation to hold.
    auto guard = [&](bool ok, const std::string& msg) {
        if (ok) return;
        if (strict) fail(msg);
        p.regime_warnings.push_back(msg);
    };
    std::ostringstream w1, w2;
    w1 << "dx0 = " << p.dx0 << " m exceeds lambda/20 = " << p.lambda / 20.0
       << " m (outside the linearization window)";
    guard(p.dx0 <= p.lambda / 20.0, w1.str());
    w2 << "packet centers |x0j| exceed lambda/10 = " << p.lambda / 10.0
       << " m (outside the linearization window)";
    guard(std::abs(p.x01) <= p.lambda / 10.0 && std::abs(p.x02) <= p.lambda / 10.0, w2.str());

    return p;
}

RabiInfo rabi_and_horizon(const PhysicalParams& params, double mean_n)
{
    if (mean_n < 0.0) throw DomainError("rabi_and_horizon: mean photon number must be >= 0");
    RabiInfo r;
    r.Omega = params.epsilon * std::sqrt(mean_n + 1.0);
    r.T0_max = 1e3 / r.Omega;
    return r;
}

} // namespace sgd
