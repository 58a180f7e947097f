#pragma once

#include <complex>
#include <string>
#include <vector>

#include "sgd/coefficients.hpp"
#include "sgd/kinematics.hpp"
#include "sgd/params.hpp"

namespace sgd {

enum class EvalMode { factored, exact, oracle };
enum class SliceCut { antidiagonal, local_1, local_2 };

// rho(x,x') samples over a square grid. Positions are in units of |x01|,
// values in units of 1/|x01| (so the diagonal integrates to 1).
struct DensityGrid {
    std::vector<double> xs;
    std::vector<std::complex<double>> values;  // row-major, values[i*N+j] = rho(xs[i], xs[j])
    double t_units = 0.0;                      // in 1/Omega
    double t_seconds = 0.0;
    EvalMode mode = EvalMode::factored;
    std::string scenario;

    std::size_t size() const { return xs.size(); }
    std::complex<double> at(std::size_t i, std::size_t j) const { return values[i * xs.size() + j]; }
};

// rho sampled along a 1-D cut: x' = -x (antidiagonal) or x' = -x + 2*x0j.
struct DensitySlice {
    std::vector<double> xs;
    std::vector<std::complex<double>> values;
    SliceCut cut = SliceCut::antidiagonal;
    double t_units = 0.0;
    double t_seconds = 0.0;
    EvalMode mode = EvalMode::factored;
    std::string scenario;
};

namespace density {

// Initial spatial density matrix (SI arguments and normalization).
double rho0(const PhysicalParams& p, const PacketParams& pk, double x, double xp);

// D(x,x';t) from the diagonal dressed weights; Omega_n = epsilon*sqrt(n+1).
std::complex<double> decoherence_factor(const DiagonalCoefficients& c, double k, double epsilon,
                                        double x, double xp, double t);

// rho0 * D. Valid for t inside the flight-time horizon; callers check
// rabi_and_horizon and warn beyond it.
std::complex<double> rho_factored(const PhysicalParams& p, const PacketParams& pk,
                                  const DiagonalCoefficients& c, double x, double xp, double t);

// Full channel sum with exact phase functions, spreading widths and shifted
// centers. Uses the diagonal weights only.
std::complex<double> rho_exact(const PhysicalParams& p, const PacketParams& pk,
                               const DiagonalCoefficients& c, double x, double xp, double t);

// <p>(t) = hbar k t Σ (B_n - A_n) Omega_n.
double mean_momentum(const DiagonalCoefficients& c, double k, double epsilon, double hbar,
                     double t);

// Per-statistics closed forms of D; cross-check path only, the coefficient
// route above is canonical.
std::complex<double> closed_form_decoherence(const FieldState& field, const QubitState& qubit,
                                             double k, double epsilon, double x, double xp,
                                             double t, int n_max);

} // namespace density

// Grid/slice evaluator bound to one scenario's parameter stack. Immutable;
// evaluations are pure and deterministic under any thread count.
class DensityModel {
public:
    DensityModel(PhysicalParams phys, DiagonalCoefficients coeffs, std::string scenario = "");

    const PhysicalParams& physical() const { return phys_; }
    const PacketParams& packets() const { return packets_; }
    const DiagonalCoefficients& coefficients() const { return coeffs_; }
    double omega_rabi() const { return omega_rabi_; }
    double horizon_seconds() const { return 1e3 / omega_rabi_; }
    double seconds_from_units(double t_units) const { return t_units / omega_rabi_; }
    double unit_length() const { return unit_; }  // |x01| (m)

    double rho0(double x, double xp) const;
    std::complex<double> decoherence_factor(double x, double xp, double t) const;
    std::complex<double> rho_factored(double x, double xp, double t) const;
    std::complex<double> rho_exact(double x, double xp, double t) const;
    double mean_momentum(double t) const;

    // Batch evaluation; xs in |x01| units, t in 1/Omega units.
    DensityGrid grid(EvalMode mode, const std::vector<double>& xs, double t_units) const;
    DensitySlice slice(EvalMode mode, SliceCut cut, const std::vector<double>& xs,
                       double t_units) const;

    // Default figure grid: 241 points over [-2.4, 2.4].
    static std::vector<double> default_axis(double lo = -2.4, double hi = 2.4, int n = 241);

private:
    PhysicalParams phys_;
    PacketParams packets_;
    DiagonalCoefficients coeffs_;
    double omega_rabi_ = 0.0;
    double unit_ = 0.0;
    std::string scenario_;

    std::vector<std::complex<double>> decoherence_profile(const std::vector<double>& dx_si,
                                                          double t) const;
};

} // namespace sgd
