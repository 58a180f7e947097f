#include "sgd/coefficients.hpp"

#include <cmath>
#include <sstream>

#include "sgd/constants.hpp"
#include "sgd/errors.hpp"

namespace sgd {

namespace {

void kahan_add(double& sum, double& comp, double term)
{
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
}

double poisson_pdf(int n, double mu)
{
    if (mu == 0.0) return n == 0 ? 1.0 : 0.0;
    return std::exp(-mu + n * std::log(mu) - std::lgamma(n + 1.0));
}

} // namespace

QubitState::QubitState(double gamma_, double phi_) : gamma(gamma_), phi(phi_)
{
    if (!(gamma >= 0.0 && gamma <= constants::pi))
        throw DomainError("QubitState: gamma must lie in [0, pi]");
}

GeneralCoefficients general_coefficients(const FieldState& field, const QubitState& qubit,
                                         int n, int np)
{
    if (n < 0 || np < 0) throw DomainError("general_coefficients: indices must be >= 0");
    const double cg = std::cos(qubit.gamma / 2.0);
    const double sg = std::sin(qubit.gamma / 2.0);
    const std::complex<double> em = std::polar(1.0, -qubit.phi);
    const std::complex<double> ep = std::polar(1.0, qubit.phi);

    const std::complex<double> c00 = field.matrix_element(n, np);
    const std::complex<double> c01 = field.matrix_element(n, np + 1);
    const std::complex<double> c10 = field.matrix_element(n + 1, np);
    const std::complex<double> c11 = field.matrix_element(n + 1, np + 1);

    GeneralCoefficients g;
    const std::complex<double> cross = (c01 * em + c10 * ep) * (cg * sg);
    g.A = 0.5 * (c00 * (cg * cg) + cross + c11 * (sg * sg));
    g.B = 0.5 * (c00 * (cg * cg) - cross + c11 * (sg * sg));
    g.C = c00 * (cg * cg) - (c01 * em - c10 * ep) * (cg * sg) - c11 * (sg * sg);
    return g;
}

BoundaryCoefficients boundary_coefficients(const FieldState& field, const QubitState& qubit, int n)
{
    if (n < 0) throw DomainError("boundary_coefficients: index must be >= 0");
    const double cg = std::cos(qubit.gamma / 2.0);
    const double sg = std::sin(qubit.gamma / 2.0);

    BoundaryCoefficients bc;
    bc.D = std::sqrt(2.0) * cg * sg * field.matrix_element(n, 0) * std::polar(1.0, -qubit.phi);
    bc.E = std::sqrt(2.0) * sg * sg * field.matrix_element(n + 1, 0);
    bc.F = sg * sg * field.matrix_element(0, 0).real();
    return bc;
}

double DiagonalCoefficients::norm_residual() const
{
    double sum = 0.0, comp = 0.0;
    for (int n = 0; n <= n_max; ++n) kahan_add(sum, comp, a[n] + b[n]);
    kahan_add(sum, comp, f);
    return sum - 1.0;
}

namespace {

void finalize(DiagonalCoefficients& dc, const FieldState& field, const QubitState& qubit,
              double tail_mass)
{
    dc.tail_mass = tail_mass;
    dc.mean_n = field.mean_photon();
    dc.gamma = qubit.gamma;
    dc.phi = qubit.phi;
    dc.field_desc = field.describe();

    const int count = dc.n_max + 1;
    dc.sum_ab.resize(count);
    dc.diff_ab.resize(count);
    dc.sqrt_np1.resize(count);
    for (int n = 0; n < count; ++n) {
        dc.sum_ab[n] = dc.a[n] + dc.b[n];
        dc.diff_ab[n] = dc.a[n] - dc.b[n];
        dc.sqrt_np1[n] = std::sqrt(n + 1.0);
    }

    const double res = dc.norm_residual();
    if (std::abs(res) > 10.0 * tail_mass) {
        std::ostringstream msg;
        msg << "diagonal coefficients: retained probability deviates by " << res
            << " (> 10*tail_mass = " << 10.0 * tail_mass << "); increase n_max";
        throw NormalizationError(msg.str());
    }
}

} // namespace

DiagonalCoefficients diagonal_generic(const FieldState& field, const QubitState& qubit, int n_max,
                                      double tail_mass)
{
    if (n_max < 0) throw DomainError("diagonal_generic: n_max must be >= 0");
    DiagonalCoefficients dc;
    dc.n_max = n_max;
    dc.a.resize(n_max + 1);
    dc.b.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        const GeneralCoefficients g = general_coefficients(field, qubit, n, n);
        // Diagonal entries are real for any Hermitian field matrix.
        if (std::abs(g.A.imag()) > 1e-14 || std::abs(g.B.imag()) > 1e-14)
            throw DomainError("diagonal_generic: diagonal coefficient has nonzero imaginary part");
        dc.a[n] = g.A.real();
        dc.b[n] = g.B.real();
    }
    dc.f = boundary_coefficients(field, qubit, 0).F;
    finalize(dc, field, qubit, tail_mass);
    return dc;
}

DiagonalCoefficients diagonal(const FieldState& field, const QubitState& qubit, int n_max,
                              double tail_mass)
{
    if (n_max < 0) throw DomainError("diagonal: n_max must be >= 0");
    if (field.kind == FieldKind::generic) return diagonal_generic(field, qubit, n_max, tail_mass);

    DiagonalCoefficients dc;
    dc.n_max = n_max;
    dc.a.assign(n_max + 1, 0.0);
    dc.b.assign(n_max + 1, 0.0);

    const double cg = std::cos(qubit.gamma / 2.0);
    const double sg = std::sin(qubit.gamma / 2.0);
    const double c2 = cg * cg;
    const double s2 = sg * sg;

    switch (field.kind) {
    case FieldKind::thermal: {
        const double q = field.q;
        for (int n = 0; n <= n_max; ++n) {
            const double pn = field.photon_pdf(n);
            dc.a[n] = dc.b[n] = 0.5 * pn * (c2 + q * s2);
        }
        dc.f = s2 * (1.0 - q);
        break;
    }
    case FieldKind::random_phase_coherent: {
        const double mu = field.abs_alpha * field.abs_alpha;
        for (int n = 0; n <= n_max; ++n) {
            const double pn = poisson_pdf(n, mu);
            dc.a[n] = dc.b[n] = 0.5 * pn * (c2 + mu / (n + 1.0) * s2);
        }
        dc.f = std::exp(-mu) * s2;
        break;
    }
    case FieldKind::fock: {
        const int n0 = field.n0;
        if (n0 <= n_max) { dc.a[n0] += 0.5 * c2; dc.b[n0] += 0.5 * c2; }
        if (n0 >= 1 && n0 - 1 <= n_max) { dc.a[n0 - 1] += 0.5 * s2; dc.b[n0 - 1] += 0.5 * s2; }
        dc.f = (n0 == 0) ? s2 : 0.0;
        break;
    }
    case FieldKind::coherent: {
        const double mu = field.abs_alpha * field.abs_alpha;
        const double cpsi = std::cos(field.theta + qubit.phi);
        for (int n = 0; n <= n_max; ++n) {
            const double pn = poisson_pdf(n, mu);
            const double r = field.abs_alpha / std::sqrt(n + 1.0);
            dc.a[n] = 0.5 * pn * (c2 + 2.0 * r * cpsi * cg * sg + r * r * s2);
            dc.b[n] = 0.5 * pn * (c2 - 2.0 * r * cpsi * cg * sg + r * r * s2);
        }
        dc.f = std::exp(-mu) * s2;
        break;
    }
    case FieldKind::sg_phase: {
        const double az = field.abs_z;
        const double cpsi = std::cos(field.theta + qubit.phi);
        for (int n = 0; n <= n_max; ++n) {
            const double pn = field.photon_pdf(n);
            dc.a[n] = 0.5 * pn * (c2 + 2.0 * az * cpsi * cg * sg + az * az * s2);
            dc.b[n] = 0.5 * pn * (c2 - 2.0 * az * cpsi * cg * sg + az * az * s2);
        }
        dc.f = s2 * (1.0 - az * az);
        break;
    }
    case FieldKind::generic:
        break;  // handled above
    }

    finalize(dc, field, qubit, tail_mass);
    return dc;
}

} // namespace sgd
