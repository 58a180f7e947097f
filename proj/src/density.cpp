#include "sgd/density.hpp"

#include <cmath>

#include "sgd/constants.hpp"
#include "sgd/errors.hpp"
#include "sgd/kernels.hpp"
#include "sgd/parallel.hpp"

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

// Sum of the two initial Gaussian envelopes (no normalization).
double envelope(const PacketParams& pk, double x)
{
    const double w = 4.0 * pk.dx0 * pk.dx0;
    const double d1 = x - pk.x0[0];
    const double d2 = x - pk.x0[1];
    return std::exp(-d1 * d1 / w) + std::exp(-d2 * d2 / w);
}

struct Wave {
    std::vector<double> re, im;
};

// u(x) = phi_{n,1}^s(x,t) + phi_{n,2}^s(x,t) sampled over xs (SI), for the
// channel with acceleration a and deflection sign; a = 0 gives the free pair.
void eval_channel_wave(const PhysicalParams& p, const PacketParams& pk,
                       const std::vector<double>& xs, double t, double a, int sign, Wave& out)
{
    const std::complex<double> bt = kinematics::beta(p, pk, t);
    const std::complex<double> pref =
        std::sqrt(pk.dx0 / (std::sqrt(2.0 * constants::pi) * bt));
    const std::complex<double> inv4b = 0.25 / bt;
    const double kick = -sign * p.m * a * t / p.hbar;  // momentum phase slope
    const double c1 = pk.x0[0] - sign * 0.5 * a * t * t;
    const double c2 = pk.x0[1] - sign * 0.5 * a * t * t;

    const std::size_t n = xs.size();
    out.re.resize(n);
    out.im.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = xs[i];
        const double d1 = x - c1;
        const double d2 = x - c2;
        const std::complex<double> ph(0.0, kick * x);
        const std::complex<double> v =
            pref * (std::exp(-d1 * d1 * inv4b + ph) + std::exp(-d2 * d2 * inv4b + ph));
        out.re[i] = v.real();
        out.im[i] = v.imag();
    }
}

bool is_uniform(const std::vector<double>& xs)
{
    if (xs.size() < 3) return true;
    const double h = xs[1] - xs[0];
    for (std::size_t i = 2; i < xs.size(); ++i)
        if (std::abs(xs[i] - xs[i - 1] - h) > 1e-9 * std::max(std::abs(h), 1e-300)) return false;
    return true;
}

} // namespace

namespace density {

double rho0(const PhysicalParams& p, const PacketParams& pk, double x, double xp)
{
    const double pref = 1.0 / (2.0 * pk.delta * std::sqrt(2.0 * constants::pi) * pk.dx0);
    return pref * envelope(pk, x) * envelope(pk, xp);
}

std::complex<double> decoherence_factor(const DiagonalCoefficients& c, double k, double epsilon,
                                        double x, double xp, double t)
{
    const double u = k * (x - xp) * epsilon * t;
    const auto r = kernels::active_table().dsum(c.sum_ab.data(), c.diff_ab.data(),
                                                c.sqrt_np1.data(), c.sum_ab.size(), u, c.f);
    return {r.re, r.im};
}

std::complex<double> rho_factored(const PhysicalParams& p, const PacketParams& pk,
                                  const DiagonalCoefficients& c, double x, double xp, double t)
{
    return rho0(p, pk, x, xp) * decoherence_factor(c, p.k, p.epsilon, x, xp, t);
}

std::complex<double> rho_exact(const PhysicalParams& p, const PacketParams& pk,
                               const DiagonalCoefficients& c, double x, double xp, double t)
{
    using kinematics::evolved_packet;
    if (t < 0.0) throw DomainError("rho_exact: t must be >= 0");

    double re = 0.0, re_c = 0.0, im = 0.0, im_c = 0.0;
    auto add = [&](std::complex<double> z) {
        kahan_add(re, re_c, z.real());
        kahan_add(im, im_c, z.imag());
    };

    for (int n = 0; n <= c.n_max; ++n) {
        for (const int sign : {+1, -1}) {
            const double w = sign > 0 ? c.a[n] : c.b[n];
            if (w == 0.0) continue;
            const std::complex<double> ux =
                evolved_packet(p, pk, x, t, n, sign, 1) + evolved_packet(p, pk, x, t, n, sign, 2);
            const std::complex<double> uxp =
                evolved_packet(p, pk, xp, t, n, sign, 1) + evolved_packet(p, pk, xp, t, n, sign, 2);
            add(w * ux * std::conj(uxp));
        }
    }
    if (c.f != 0.0) {
        const std::complex<double> fx =
            kinematics::free_packet(p, pk, x, t, 1) + kinematics::free_packet(p, pk, x, t, 2);
        const std::complex<double> fxp =
            kinematics::free_packet(p, pk, xp, t, 1) + kinematics::free_packet(p, pk, xp, t, 2);
        add(c.f * fx * std::conj(fxp));
    }
    return std::complex<double>(re, im) / (2.0 * pk.delta);
}

double mean_momentum(const DiagonalCoefficients& c, double k, double epsilon, double hbar,
                     double t)
{
    double sum = 0.0, comp = 0.0;
    for (int n = 0; n <= c.n_max; ++n)
        kahan_add(sum, comp, (c.b[n] - c.a[n]) * epsilon * c.sqrt_np1[n]);
    return hbar * k * t * sum;
}

std::complex<double> closed_form_decoherence(const FieldState& field, const QubitState& qubit,
                                             double k, double epsilon, double x, double xp,
                                             double t, int n_max)
{
    const double cg = std::cos(qubit.gamma / 2.0);
    const double sg = std::sin(qubit.gamma / 2.0);
    const double c2 = cg * cg;
    const double s2 = sg * sg;
    const double u = k * (x - xp) * epsilon * t;

    switch (field.kind) {
    case FieldKind::thermal: {
        const double q = field.q;
        double sum = 0.0, comp = 0.0;
        for (int n = 0; n <= n_max; ++n)
            kahan_add(sum, comp, field.photon_pdf(n) / (1.0 - q) * std::cos(u * std::sqrt(n + 1.0)));
        return s2 * (1.0 - q) + (1.0 - q) * (c2 + q * s2) * sum;
    }
    case FieldKind::random_phase_coherent: {
        const double mu = field.abs_alpha * field.abs_alpha;
        double sum = 0.0, comp = 0.0;
        for (int n = 0; n <= n_max; ++n)
            kahan_add(sum, comp, poisson_pdf(n, mu) * (c2 + mu / (n + 1.0) * s2)
                                     * std::cos(u * std::sqrt(n + 1.0)));
        return std::exp(-mu) * s2 + sum;
    }
    case FieldKind::fock: {
        const int n0 = field.n0;
        double d = c2 * std::cos(u * std::sqrt(n0 + 1.0));
        if (n0 >= 1)
            d += s2 * std::cos(u * std::sqrt(static_cast<double>(n0)));
        else
            d += s2;  // the |g,0> boundary weight; no Omega_{-1} channel exists
        return d;
    }
    case FieldKind::coherent: {
        // Real part equals the random-phase form; imaginary part follows from
        // the A-B difference of the coherent weights.
        const double mu = field.abs_alpha * field.abs_alpha;
        const double cpsi = std::cos(field.theta + qubit.phi);
        double re = 0.0, re_c = 0.0, im = 0.0, im_c = 0.0;
        for (int n = 0; n <= n_max; ++n) {
            const double pn = poisson_pdf(n, mu);
            const double ang = u * std::sqrt(n + 1.0);
            kahan_add(re, re_c, pn * (c2 + mu / (n + 1.0) * s2) * std::cos(ang));
            kahan_add(im, im_c,
                      -pn * field.abs_alpha * std::sin(qubit.gamma) * cpsi / std::sqrt(n + 1.0)
                          * std::sin(ang));
        }
        return {std::exp(-mu) * s2 + re, im};
    }
    default:
        throw DomainError("closed_form_decoherence: no closed-form variant for this field kind");
    }
}

} // namespace density

DensityModel::DensityModel(PhysicalParams phys, DiagonalCoefficients coeffs, std::string scenario)
    : phys_(std::move(phys)), coeffs_(std::move(coeffs)), scenario_(std::move(scenario))
{
    packets_ = PacketParams::from_physical(phys_);
    omega_rabi_ = phys_.epsilon * std::sqrt(coeffs_.mean_n + 1.0);
    unit_ = std::abs(phys_.x01);
    if (unit_ == 0.0) throw DomainError("DensityModel: |x01| must be nonzero (output unit)");
}

double DensityModel::rho0(double x, double xp) const
{
    return density::rho0(phys_, packets_, x, xp);
}

std::complex<double> DensityModel::decoherence_factor(double x, double xp, double t) const
{
    return density::decoherence_factor(coeffs_, phys_.k, phys_.epsilon, x, xp, t);
}

std::complex<double> DensityModel::rho_factored(double x, double xp, double t) const
{
    return density::rho_factored(phys_, packets_, coeffs_, x, xp, t);
}

std::complex<double> DensityModel::rho_exact(double x, double xp, double t) const
{
    return density::rho_exact(phys_, packets_, coeffs_, x, xp, t);
}

double DensityModel::mean_momentum(double t) const
{
    return density::mean_momentum(coeffs_, phys_.k, phys_.epsilon, phys_.hbar, t);
}

std::vector<double> DensityModel::default_axis(double lo, double hi, int n)
{
    std::vector<double> xs(n);
    const double step = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) xs[i] = lo + i * step;
    return xs;
}

std::vector<std::complex<double>> DensityModel::decoherence_profile(
    const std::vector<double>& dx_si, double t) const
{
    std::vector<std::complex<double>> out(dx_si.size());
    const auto& table = kernels::active_table();
    parallel_for(dx_si.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double u = phys_.k * dx_si[i] * phys_.epsilon * t;
            const auto r = table.dsum(coeffs_.sum_ab.data(), coeffs_.diff_ab.data(),
                                      coeffs_.sqrt_np1.data(), coeffs_.sum_ab.size(), u,
                                      coeffs_.f);
            out[i] = {r.re, r.im};
        }
    });
    return out;
}

DensityGrid DensityModel::grid(EvalMode mode, const std::vector<double>& xs, double t_units) const
{
    if (mode == EvalMode::oracle)
        throw DomainError("DensityModel::grid: oracle evaluation lives in the oracle module");
    const std::size_t n = xs.size();
    if (n == 0) throw DomainError("DensityModel::grid: empty axis");

    DensityGrid g;
    g.xs = xs;
    g.t_units = t_units;
    g.t_seconds = seconds_from_units(t_units);
    g.mode = mode;
    g.scenario = scenario_;
    g.values.assign(n * n, {0.0, 0.0});

    std::vector<double> xs_si(n);
    for (std::size_t i = 0; i < n; ++i) xs_si[i] = xs[i] * unit_;
    const double t = g.t_seconds;

    if (mode == EvalMode::factored) {
        std::vector<double> env(n);
        for (std::size_t i = 0; i < n; ++i) env[i] = envelope(packets_, xs_si[i]);
        const double pref =
            unit_ / (2.0 * packets_.delta * std::sqrt(2.0 * constants::pi) * packets_.dx0);

        if (is_uniform(xs)) {
            // D depends on x - x' only; evaluate it on the difference set.
            const double step = n > 1 ? (xs[1] - xs[0]) * unit_ : 0.0;
            std::vector<double> diffs(2 * n - 1);
            for (std::size_t m = 0; m < diffs.size(); ++m)
                diffs[m] = (static_cast<double>(m) - static_cast<double>(n - 1)) * step;
            const auto dprof = decoherence_profile(diffs, t);
            parallel_for(n, [&](std::size_t begin, std::size_t end) {
                for (std::size_t i = begin; i < end; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        g.values[i * n + j] =
                            pref * env[i] * env[j] * dprof[i - j + (n - 1)];
            });
        } else {
            parallel_for(n, [&](std::size_t begin, std::size_t end) {
                for (std::size_t i = begin; i < end; ++i)
                    for (std::size_t j = 0; j < n; ++j) {
                        const auto d = decoherence_factor(xs_si[i], xs_si[j], t);
                        g.values[i * n + j] = pref * env[i] * env[j] * d;
                    }
            });
        }
        return g;
    }

    // Exact mode: channel-separable accumulation rho += w * u(x) u*(x').
    struct Channel {
        double weight;
        Wave wave;
    };
    std::vector<Channel> channels;
    channels.reserve(2 * (coeffs_.n_max + 1) + 1);
    const double norm = unit_ / (2.0 * packets_.delta);
    for (int nn = 0; nn <= coeffs_.n_max; ++nn)
        for (const int sign : {+1, -1}) {
            const double w = (sign > 0 ? coeffs_.a[nn] : coeffs_.b[nn]) * norm;
            if (w == 0.0) continue;
            channels.push_back({w, {}});
            channels.back().wave.re.reserve(n);
            eval_channel_wave(phys_, packets_, xs_si, t, kinematics::accel(phys_, nn), sign,
                              channels.back().wave);
        }
    if (coeffs_.f != 0.0) {
        channels.push_back({coeffs_.f * norm, {}});
        eval_channel_wave(phys_, packets_, xs_si, t, 0.0, +1, channels.back().wave);
    }

    std::vector<double> out_re(n * n, 0.0), out_im(n * n, 0.0);
    const auto& table = kernels::active_table();
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            double* row_re = out_re.data() + i * n;
            double* row_im = out_im.data() + i * n;
            for (const auto& ch : channels) {
                const double wr = ch.weight * ch.wave.re[i];
                const double wi = ch.weight * ch.wave.im[i];
                table.rank1_accum(wr, wi, ch.wave.re.data(), ch.wave.im.data(), n, row_re, row_im);
            }
        }
    });
    for (std::size_t i = 0; i < n * n; ++i) g.values[i] = {out_re[i], out_im[i]};
    return g;
}

DensitySlice DensityModel::slice(EvalMode mode, SliceCut cut, const std::vector<double>& xs,
                                 double t_units) const
{
    if (mode == EvalMode::oracle)
        throw DomainError("DensityModel::slice: oracle evaluation lives in the oracle module");
    const std::size_t n = xs.size();
    if (n == 0) throw DomainError("DensityModel::slice: empty axis");

    DensitySlice s;
    s.xs = xs;
    s.cut = cut;
    s.t_units = t_units;
    s.t_seconds = seconds_from_units(t_units);
    s.mode = mode;
    s.scenario = scenario_;
    s.values.assign(n, {0.0, 0.0});

    double shift = 0.0;  // x' = -x + shift, in |x01| units
    if (cut == SliceCut::local_1) shift = 2.0 * phys_.x01 / unit_;
    if (cut == SliceCut::local_2) shift = 2.0 * phys_.x02 / unit_;

    std::vector<double> x_si(n), xp_si(n);
    for (std::size_t i = 0; i < n; ++i) {
        x_si[i] = xs[i] * unit_;
        xp_si[i] = (-xs[i] + shift) * unit_;
    }
    const double t = s.t_seconds;

    if (mode == EvalMode::factored) {
        const auto& table = kernels::active_table();
        parallel_for(n, [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                const double u = phys_.k * (x_si[i] - xp_si[i]) * phys_.epsilon * t;
                const auto d = table.dsum(coeffs_.sum_ab.data(), coeffs_.diff_ab.data(),
                                          coeffs_.sqrt_np1.data(), coeffs_.sum_ab.size(), u,
                                          coeffs_.f);
                const double r0 = unit_ * density::rho0(phys_, packets_, x_si[i], xp_si[i]);
                s.values[i] = r0 * std::complex<double>(d.re, d.im);
            }
        });
        return s;
    }

    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            s.values[i] = unit_ * rho_exact(x_si[i], xp_si[i], t);
    });
    return s;
}

} // namespace sgd
