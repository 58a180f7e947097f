#pragma once

#include <complex>
#include <string>
#include <vector>

namespace sgd {

enum class FieldKind { thermal, coherent, random_phase_coherent, fock, sg_phase, generic };

// Single-mode cavity field state, exposed through its number-basis matrix
// elements c_{n,n'}. The five closed-form kinds are evaluated lazily and in
// log space; `generic` carries a dense matrix.
struct FieldState {
    FieldKind kind = FieldKind::thermal;

    double q = 0.0;          // thermal: exp(-hbar*omega/kB T), in [0,1)
    double abs_alpha = 0.0;  // coherent / random-phase coherent
    double theta = 0.0;      // phase of alpha or z
    int n0 = 0;              // fock
    double abs_z = 0.0;      // sg_phase, in [0,1)

    int dim = 0;                              // generic: matrix is dim x dim
    std::vector<std::complex<double>> cmat;   // generic, row-major

    static FieldState thermal_from_temperature(double T_kelvin, double omega);
    static FieldState thermal_from_q(double q);
    static FieldState coherent(double abs_alpha, double theta);
    static FieldState random_phase_coherent(double abs_alpha);
    static FieldState fock(int n0);
    static FieldState sg_phase(double abs_z, double theta);
    // Trapping construction z = e^{i theta} cot(gamma/2), valid for
    // pi/2 < gamma <= pi.
    static FieldState sg_phase_from_trapping(double gamma, double theta);
    // Validates hermiticity, unit trace and positive semidefiniteness.
    static FieldState generic(std::vector<std::complex<double>> cmat, int dim);
    // Rows `n, n', re, im`; unstated entries are zero, (n',n) filled by
    // conjugation when only one triangle is given.
    static FieldState generic_from_csv(const std::string& path);

    std::complex<double> matrix_element(int n, int np) const;
    double photon_pdf(int n) const;
    double mean_photon() const;

    // Smallest retained basis size: one past the first N for which the
    // photon-number tail mass above N drops below tail_mass.
    int truncation_cutoff(double tail_mass) const;

    std::string describe() const;
};

} // namespace sgd
