#pragma once

#include <complex>
#include <vector>

#include "sgd/coefficients.hpp"
#include "sgd/density.hpp"
#include "sgd/kinematics.hpp"
#include "sgd/params.hpp"

// Independent numerical propagator: evolves each dressed channel under the
// linear-potential Hamiltonian p^2/2m +/- m a_n x by Strang-split steps
// (position kicks and spectral kinetic steps) and reassembles the reduced
// density matrix. Never evaluates the closed-form packet solutions.
namespace sgd::oracle {

struct GridSpec {
    double x_min = 0.0;  // SI
    double x_max = 0.0;
    int npoints = 4096;

    // Span the packet centers (plus the worst-case channel displacement up
    // to n_max at time t) padded by pad_widths * dx0 on both sides.
    static GridSpec around_packets(const PhysicalParams& p, const PacketParams& pk, int n_max,
                                   double t, int npoints = 4096, double pad_widths = 20.0);

    double spacing() const { return (x_max - x_min) / npoints; }
    std::vector<double> points() const;
};

struct ChannelWave {
    int n = 0;
    int sign = +1;
    int j = 1;
    GridSpec grid;
    std::vector<std::complex<double>> psi;
    double t = 0.0;
    double dt = 0.0;  // actual step used (t divided into whole steps)

    double norm() const;           // sqrt(h * sum |psi|^2)
    double mean_momentum() const;  // spectral <p>, SI
};

// Evolve an arbitrary initial wave under p^2/2m + sign * m * a * x.
// Throws GridError when the packet support (final center +/- 6 widths)
// would leave the grid.
std::vector<std::complex<double>> propagate(const PhysicalParams& p, const GridSpec& grid,
                                            std::vector<std::complex<double>> psi, double a,
                                            int sign, double t, double dt);

// Dressed-channel wave started from gaussian0(j).
ChannelWave propagate_channel(const PhysicalParams& p, const PacketParams& pk, int j, int n,
                              int sign, double t, const GridSpec& grid, double dt);

// Reduced spatial density on the grid points selected by `stride` within
// |x| <= window_units * |x01|. Values in 1/|x01| units, matching
// DensityModel grids.
DensityGrid assemble_reduced(const PhysicalParams& p, const PacketParams& pk,
                             const DiagonalCoefficients& c, const GridSpec& grid, double t,
                             double dt, int stride = 8, double window_units = 2.4);

// Coefficient-weighted spectral momentum of the assembled state (SI).
double mean_momentum(const PhysicalParams& p, const PacketParams& pk,
                     const DiagonalCoefficients& c, const GridSpec& grid, double t, double dt);

} // namespace sgd::oracle
