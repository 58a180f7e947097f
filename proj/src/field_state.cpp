#include "sgd/field_state.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "sgd/constants.hpp"
#include "sgd/errors.hpp"

namespace sgd {

namespace {

constexpr int kMaxGenericIndex = 4096;  // desk-scale cap on generic matrices
constexpr int kMaxCutoffScan = 2000000;

double poisson_pdf(int n, double mu)
{
    if (mu == 0.0) return n == 0 ? 1.0 : 0.0;
    return std::exp(-mu + n * std::log(mu) - std::lgamma(n + 1.0));
}

double geom_pdf(int n, double q)
{
    if (q == 0.0) return n == 0 ? 1.0 : 0.0;
    return (1.0 - q) * std::exp(n * std::log(q));
}

} // namespace

FieldState FieldState::thermal_from_temperature(double T_kelvin, double omega)
{
    if (T_kelvin <= 0.0) throw DomainError("thermal_from_temperature: T must be > 0");
    if (omega <= 0.0) throw DomainError("thermal_from_temperature: omega must be > 0");
    return thermal_from_q(std::exp(-constants::hbar * omega / (constants::k_boltzmann * T_kelvin)));
}

FieldState FieldState::thermal_from_q(double q)
{
    if (q < 0.0 || q >= 1.0) throw DomainError("thermal_from_q: q must lie in [0,1)");
    FieldState s;
    s.kind = FieldKind::thermal;
    s.q = q;
    return s;
}

FieldState FieldState::coherent(double abs_alpha, double theta)
{
    if (abs_alpha < 0.0) throw DomainError("coherent: |alpha| must be >= 0");
    FieldState s;
    s.kind = FieldKind::coherent;
    s.abs_alpha = abs_alpha;
    s.theta = theta;
    return s;
}

FieldState FieldState::random_phase_coherent(double abs_alpha)
{
    if (abs_alpha < 0.0) throw DomainError("random_phase_coherent: |alpha| must be >= 0");
    FieldState s;
    s.kind = FieldKind::random_phase_coherent;
    s.abs_alpha = abs_alpha;
    return s;
}

FieldState FieldState::fock(int n0)
{
    if (n0 < 0) throw DomainError("fock: n0 must be >= 0");
    FieldState s;
    s.kind = FieldKind::fock;
    s.n0 = n0;
    return s;
}

FieldState FieldState::sg_phase(double abs_z, double theta)
{
    if (abs_z < 0.0 || abs_z >= 1.0) throw DomainError("sg_phase: |z| must lie in [0,1)");
    FieldState s;
    s.kind = FieldKind::sg_phase;
    s.abs_z = abs_z;
    s.theta = theta;
    return s;
}

FieldState FieldState::sg_phase_from_trapping(double gamma, double theta)
{
    if (!(gamma > constants::pi / 2.0 && gamma <= constants::pi))
        throw DomainError("sg_phase_from_trapping: gamma must lie in (pi/2, pi]");
    return sg_phase(1.0 / std::tan(gamma / 2.0), theta);
}

FieldState FieldState::generic(std::vector<std::complex<double>> cmat, int dim)
{
    if (dim <= 0 || dim > kMaxGenericIndex + 1)
        throw DomainError("generic: dimension out of range");
    if (cmat.size() != static_cast<std::size_t>(dim) * dim)
        throw DomainError("generic: matrix size does not match dimension");

    double trace = 0.0;
    double scale = 0.0;
    for (int n = 0; n < dim; ++n) {
        const auto d = cmat[static_cast<std::size_t>(n) * dim + n];
        if (std::abs(d.imag()) > 1e-12)
            throw DomainError("generic: diagonal element has nonzero imaginary part");
        if (d.real() < -1e-12)
            throw DomainError("generic: negative diagonal element");
        trace += d.real();
        scale = std::max(scale, std::abs(d.real()));
    }
    if (std::abs(trace - 1.0) > 1e-9)
        throw DomainError("generic: trace must be 1");
    for (int n = 0; n < dim; ++n)
        for (int m = n + 1; m < dim; ++m) {
            const auto a = cmat[static_cast<std::size_t>(n) * dim + m];
            const auto b = cmat[static_cast<std::size_t>(m) * dim + n];
            if (std::abs(a - std::conj(b)) > 1e-10 * std::max(1.0, scale))
                throw DomainError("generic: matrix is not Hermitian");
        }

    // PSD check: Cholesky of cmat + tol*I must succeed for a density matrix.
    {
        const double tol = 1e-10;
        std::vector<std::complex<double>> L(cmat);
        for (int n = 0; n < dim; ++n)
            L[static_cast<std::size_t>(n) * dim + n] += tol;
        for (int j = 0; j < dim; ++j) {
            auto at = [&](int r, int c) -> std::complex<double>& {
                return L[static_cast<std::size_t>(r) * dim + c];
            };
            double diag = at(j, j).real();
            for (int k = 0; k < j; ++k) diag -= std::norm(at(j, k));
            if (diag <= 0.0)
                throw DomainError("generic: matrix is not positive semidefinite");
            const double ljj = std::sqrt(diag);
            at(j, j) = ljj;
            for (int i = j + 1; i < dim; ++i) {
                std::complex<double> v = at(i, j);
                for (int k = 0; k < j; ++k) v -= at(i, k) * std::conj(at(j, k));
                at(i, j) = v / ljj;
            }
        }
    }

    FieldState s;
    s.kind = FieldKind::generic;
    s.dim = dim;
    s.cmat = std::move(cmat);
    return s;
}

FieldState FieldState::generic_from_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw DomainError("generic_from_csv: cannot open " + path);

    struct Entry { int n, np; std::complex<double> v; };
    std::vector<Entry> entries;
    int max_index = -1;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
        std::istringstream ss(line);
        std::string tok;
        double vals[4];
        for (int i = 0; i < 4; ++i) {
            if (!std::getline(ss, tok, ','))
                throw DomainError("generic_from_csv: line " + std::to_string(lineno)
                                  + ": expected `n, n', re, im`");
            vals[i] = std::stod(tok);
        }
        const int n = static_cast<int>(vals[0]);
        const int np = static_cast<int>(vals[1]);
        if (n < 0 || np < 0 || n > kMaxGenericIndex || np > kMaxGenericIndex)
            throw DomainError("generic_from_csv: index out of range at line " + std::to_string(lineno));
        entries.push_back({n, np, {vals[2], vals[3]}});
        max_index = std::max({max_index, n, np});
    }
    if (max_index < 0) throw DomainError("generic_from_csv: no entries in " + path);

    const int dim = max_index + 1;
    std::vector<std::complex<double>> cmat(static_cast<std::size_t>(dim) * dim);
    std::vector<bool> set(cmat.size(), false);
    for (const auto& e : entries) {
        cmat[static_cast<std::size_t>(e.n) * dim + e.np] = e.v;
        set[static_cast<std::size_t>(e.n) * dim + e.np] = true;
    }
    // Mirror a one-triangle input.
    for (int n = 0; n < dim; ++n)
        for (int m = 0; m < dim; ++m)
            if (set[static_cast<std::size_t>(n) * dim + m] && !set[static_cast<std::size_t>(m) * dim + n])
                cmat[static_cast<std::size_t>(m) * dim + n] = std::conj(cmat[static_cast<std::size_t>(n) * dim + m]);

    return generic(std::move(cmat), dim);
}

std::complex<double> FieldState::matrix_element(int n, int np) const
{
    if (n < 0 || np < 0) throw DomainError("matrix_element: indices must be >= 0");
    switch (kind) {
    case FieldKind::thermal:
        return n == np ? geom_pdf(n, q) : 0.0;
    case FieldKind::random_phase_coherent:
        return n == np ? poisson_pdf(n, abs_alpha * abs_alpha) : 0.0;
    case FieldKind::fock:
        return (n == n0 && np == n0) ? 1.0 : 0.0;
    case FieldKind::coherent: {
        if (abs_alpha == 0.0) return (n == 0 && np == 0) ? 1.0 : 0.0;
        const double mag = std::exp(-abs_alpha * abs_alpha + (n + np) * std::log(abs_alpha)
                                    - 0.5 * (std::lgamma(n + 1.0) + std::lgamma(np + 1.0)));
        return std::polar(mag, theta * (n - np));
    }
    case FieldKind::sg_phase: {
        if (abs_z == 0.0) return (n == 0 && np == 0) ? 1.0 : 0.0;
        const double mag = (1.0 - abs_z * abs_z) * std::exp((n + np) * std::log(abs_z));
        return std::polar(mag, theta * (n - np));
    }
    case FieldKind::generic:
        if (n >= dim || np >= dim) return 0.0;
        return cmat[static_cast<std::size_t>(n) * dim + np];
    }
    return 0.0;
}

double FieldState::photon_pdf(int n) const
{
    return matrix_element(n, n).real();
}

double FieldState::mean_photon() const
{
    switch (kind) {
    case FieldKind::thermal: return q / (1.0 - q);
    case FieldKind::sg_phase: return abs_z * abs_z / (1.0 - abs_z * abs_z);
    case FieldKind::coherent:
    case FieldKind::random_phase_coherent: return abs_alpha * abs_alpha;
    case FieldKind::fock: return static_cast<double>(n0);
    case FieldKind::generic: {
        double mean = 0.0;
        for (int n = 0; n < dim; ++n) mean += n * photon_pdf(n);
        return mean;
    }
    }
    return 0.0;
}

int FieldState::truncation_cutoff(double tail_mass) const
{
    if (!(tail_mass > 0.0 && tail_mass < 1.0))
        throw DomainError("truncation_cutoff: tail_mass must lie in (0,1)");
    if (kind == FieldKind::fock) return n0 + 1;

    const int scan_end = kind == FieldKind::generic ? dim : kMaxCutoffScan;
    double cum = 0.0, comp = 0.0;  // Kahan
    for (int n = 0; n < scan_end; ++n) {
        const double y = photon_pdf(n) - comp;
        const double t = cum + y;
        comp = (t - cum) - y;
        cum = t;
        if (1.0 - cum < tail_mass) return n + 1;
    }
    if (kind == FieldKind::generic) return dim;  // whole matrix retained
    throw NormalizationError("truncation_cutoff: tail mass not reached within scan limit");
}

std::string FieldState::describe() const
{
    std::ostringstream s;
    switch (kind) {
    case FieldKind::thermal: s << "thermal(q=" << q << ")"; break;
    case FieldKind::coherent: s << "coherent(|alpha|=" << abs_alpha << ", theta=" << theta << ")"; break;
    case FieldKind::random_phase_coherent: s << "random_phase_coherent(|alpha|=" << abs_alpha << ")"; break;
    case FieldKind::fock: s << "fock(n0=" << n0 << ")"; break;
    case FieldKind::sg_phase: s << "sg_phase(|z|=" << abs_z << ", theta=" << theta << ")"; break;
    case FieldKind::generic: s << "generic(dim=" << dim << ")"; break;
    }
    return s.str();
}

} // namespace sgd
