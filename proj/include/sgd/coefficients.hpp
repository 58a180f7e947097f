#pragma once

#include <complex>
#include <string>
#include <vector>

#include "sgd/field_state.hpp"

namespace sgd {

// Internal qubit superposition cos(gamma/2)|e> + e^{i phi} sin(gamma/2)|g>.
struct QubitState {
    double gamma = 0.0;  // [0, pi]
    double phi = 0.0;

    QubitState() = default;
    QubitState(double gamma_, double phi_);
};

// Off-diagonal dressed-basis coefficients. Consumed by the oracle's
// full-state construction and by tests; they cancel out of the spatial trace.
struct GeneralCoefficients {
    std::complex<double> A;
    std::complex<double> B;
    std::complex<double> C;
};

struct BoundaryCoefficients {
    std::complex<double> D;
    std::complex<double> E;
    double F = 0.0;
};

GeneralCoefficients general_coefficients(const FieldState& field, const QubitState& qubit,
                                         int n, int np);
BoundaryCoefficients boundary_coefficients(const FieldState& field, const QubitState& qubit, int n);

// Diagonal dressed-basis weights A_{n,n}, B_{n,n} and F: everything the
// reduced spatial density needs. Real and nonnegative; Σ(A+B)+F = 1 up to
// the truncation tail.
struct DiagonalCoefficients {
    std::vector<double> a;   // A_{n,n}, n = 0..n_max
    std::vector<double> b;   // B_{n,n}
    double f = 0.0;
    int n_max = 0;
    double tail_mass = 1e-12;
    double mean_n = 0.0;     // field's mean photon number (fixes Omega)
    double gamma = 0.0;
    double phi = 0.0;
    std::string field_desc;

    // Precomputed series inputs for the decoherence kernels.
    std::vector<double> sum_ab;    // a + b
    std::vector<double> diff_ab;   // a - b
    std::vector<double> sqrt_np1;  // sqrt(n+1)

    double norm_residual() const;  // Σ(a+b)+f − 1, compensated
};

// State-specific closed form when the field kind is known, otherwise the
// general coefficient path. Throws NormalizationError when the retained
// probability deviates from 1 by more than 10*tail_mass.
DiagonalCoefficients diagonal(const FieldState& field, const QubitState& qubit, int n_max,
                              double tail_mass = 1e-12);

// Always evaluates the diagonal through general_coefficients; cross-check
// path for the closed forms above.
DiagonalCoefficients diagonal_generic(const FieldState& field, const QubitState& qubit, int n_max,
                                      double tail_mass = 1e-12);

} // namespace sgd
