#pragma once

#include <complex>

#include "sgd/params.hpp"

namespace sgd {

// Geometry of the two-Gaussian initial superposition.
struct PacketParams {
    double dx0 = 0.0;    // width (m)
    double dp0 = 0.0;    // hbar/(2 dx0), minimum-uncertainty partner
    double x0[2] = {0.0, 0.0};
    double delta = 1.0;  // overlap normalization, 1 < delta <= 2

    static PacketParams from_physical(const PhysicalParams& p);
    double center(int j) const;  // j in {1,2}
};

enum class PhaseMode { exact, approx };

namespace kinematics {

// a_n = a0*sqrt(n+1), the per-channel acceleration.
double accel(const PhysicalParams& p, int n);

// Scattered-packet center x_{n,j}^{s}(t) = x0j - s*a_n*t^2/2, s = +/-1.
double channel_center(const PhysicalParams& p, const PacketParams& pk, double t, int n, int sign,
                      int j);

// Complex squared width beta(t) = dx0^2 + i hbar t / 2m.
std::complex<double> beta(const PhysicalParams& p, const PacketParams& pk, double t);

// Free-spreading squared width dx_l^2(t) = dx0^2 + dp0^2 t^2/m^2.
double dxl2(const PhysicalParams& p, const PacketParams& pk, double t);

// Global phase theta0(t) = omega t + m a0^2 t^3 / 6 hbar. Cancels out of the
// spatial trace; the oracle tests use its cubic part per channel.
double theta0(const PhysicalParams& p, double t);

// Initial real Gaussian centered at x0j, unit L2 norm.
double gaussian0(const PacketParams& pk, double x, int j);

// Freely evolved packet (zero qubit-field excitation channel).
std::complex<double> free_packet(const PhysicalParams& p, const PacketParams& pk, double x,
                                 double t, int j);

// Uniformly accelerated scattered packet of dressed channel (n, sign).
std::complex<double> evolved_packet(const PhysicalParams& p, const PacketParams& pk, double x,
                                    double t, int n, int sign, int j);

// Phase functions of the exact reduced density matrix; `approx` applies the
// short-flight-time linearization (frozen widths and centers).
double alpha_free(const PhysicalParams& p, const PacketParams& pk, double x, double xp, double t,
                  int j, int k, PhaseMode mode);
double alpha_channel(const PhysicalParams& p, const PacketParams& pk, double x, double xp,
                     double t, int n, int sign, int j, int k, PhaseMode mode);

} // namespace kinematics

} // namespace sgd
