#include "sgd/oracle.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

#include "sgd/constants.hpp"
#include "sgd/errors.hpp"
#include "sgd/parallel.hpp"

namespace sgd::oracle {

namespace {

std::mutex& plan_mutex()
{
    static std::mutex m;
    return m;
}

// In-place complex FFT pair. Plans are alignment-agnostic so they can run on
// plain std::vector storage; creation is serialized (FFTW planning is not
// thread-safe), execution is.
class Fft {
public:
    explicit Fft(int n) : n_(n)
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        buf_ = fftw_alloc_complex(n);
        fwd_ = fftw_plan_dft_1d(n, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
        inv_ = fftw_plan_dft_1d(n, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    }
    ~Fft()
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(inv_);
        fftw_free(buf_);
    }
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    void forward(std::complex<double>* data) const
    {
        fftw_execute_dft(fwd_, reinterpret_cast<fftw_complex*>(data),
                         reinterpret_cast<fftw_complex*>(data));
    }
    void inverse_scaled(std::complex<double>* data) const
    {
        fftw_execute_dft(inv_, reinterpret_cast<fftw_complex*>(data),
                         reinterpret_cast<fftw_complex*>(data));
        const double s = 1.0 / n_;
        for (int i = 0; i < n_; ++i) data[i] *= s;
    }

private:
    int n_;
    fftw_plan fwd_;
    fftw_plan inv_;
    fftw_complex* buf_;
};

std::vector<double> fft_wavenumbers(const GridSpec& g)
{
    const int n = g.npoints;
    const double dk = 2.0 * constants::pi / (n * g.spacing());
    std::vector<double> ks(n);
    for (int m = 0; m < n; ++m) ks[m] = dk * (m < n / 2 ? m : m - n);
    return ks;
}

void propagate_inplace(const PhysicalParams& p, const GridSpec& grid,
                       std::vector<std::complex<double>>& psi, double a, int sign, double t,
                       double dt_requested, const Fft& fft)
{
    if (t == 0.0) return;
    const int steps = std::max(1, static_cast<int>(std::ceil(t / dt_requested - 1e-12)));
    const double dt = t / steps;
    const int n = grid.npoints;

    const auto xs = grid.points();
    const auto ks = fft_wavenumbers(grid);
    std::vector<std::complex<double>> kick_half(n), kick_full(n), kinetic(n);
    for (int i = 0; i < n; ++i) {
        const double vdt = sign * p.m * a * xs[i] * dt / p.hbar;  // V dt / hbar
        kick_half[i] = std::polar(1.0, -0.5 * vdt);
        kick_full[i] = std::polar(1.0, -vdt);
    }
    for (int m = 0; m < n; ++m)
        kinetic[m] = std::polar(1.0, -p.hbar * ks[m] * ks[m] * dt / (2.0 * p.m));

    for (int i = 0; i < n; ++i) psi[i] *= kick_half[i];
    for (int s = 0; s < steps; ++s) {
        fft.forward(psi.data());
        for (int m = 0; m < n; ++m) psi[m] *= kinetic[m];
        fft.inverse_scaled(psi.data());
        if (s + 1 < steps)
            for (int i = 0; i < n; ++i) psi[i] *= kick_full[i];
    }
    for (int i = 0; i < n; ++i) psi[i] *= kick_half[i];
}

void check_support(const PhysicalParams& p, const PacketParams& pk, const GridSpec& grid,
                   double a, int sign, double t)
{
    const double shift = sign * 0.5 * a * t * t;
    const double width = 6.0 * std::sqrt(kinematics::dxl2(p, pk, t));
    for (const double c : {pk.x0[0], pk.x0[1]}) {
        const double lo = c - shift - width;
        const double hi = c - shift + width;
        if (lo < grid.x_min || hi > grid.x_max)
            throw GridError("oracle: channel support leaves the grid; widen GridSpec");
    }
}

} // namespace

GridSpec GridSpec::around_packets(const PhysicalParams& p, const PacketParams& pk, int n_max,
                                  double t, int npoints, double pad_widths)
{
    const double shift = 0.5 * p.a0 * std::sqrt(n_max + 1.0) * t * t;
    const double lo = std::min(pk.x0[0], pk.x0[1]) - shift - pad_widths * pk.dx0;
    const double hi = std::max(pk.x0[0], pk.x0[1]) + shift + pad_widths * pk.dx0;
    GridSpec g;
    g.x_min = lo;
    g.x_max = hi;
    g.npoints = npoints;
    return g;
}

std::vector<double> GridSpec::points() const
{
    std::vector<double> xs(npoints);
    const double h = spacing();
    for (int i = 0; i < npoints; ++i) xs[i] = x_min + i * h;
    return xs;
}

double ChannelWave::norm() const
{
    double s = 0.0;
    for (const auto& v : psi) s += std::norm(v);
    return std::sqrt(s * grid.spacing());
}

double ChannelWave::mean_momentum() const
{
    std::vector<std::complex<double>> hat(psi);
    Fft fft(grid.npoints);
    fft.forward(hat.data());
    const auto ks = fft_wavenumbers(grid);
    double num = 0.0, den = 0.0;
    for (int m = 0; m < grid.npoints; ++m) {
        const double w = std::norm(hat[m]);
        num += ks[m] * w;
        den += w;
    }
    return constants::hbar * num / den;
}

std::vector<std::complex<double>> propagate(const PhysicalParams& p, const GridSpec& grid,
                                            std::vector<std::complex<double>> psi, double a,
                                            int sign, double t, double dt)
{
    if (psi.size() != static_cast<std::size_t>(grid.npoints))
        throw GridError("oracle::propagate: wave size does not match grid");
    Fft fft(grid.npoints);
    propagate_inplace(p, grid, psi, a, sign, t, dt, fft);
    return psi;
}

ChannelWave propagate_channel(const PhysicalParams& p, const PacketParams& pk, int j, int n,
                              int sign, double t, const GridSpec& grid, double dt)
{
    const double a = p.a0 * std::sqrt(n + 1.0);
    check_support(p, pk, grid, a, sign, t);

    ChannelWave w;
    w.n = n;
    w.sign = sign;
    w.j = j;
    w.grid = grid;
    w.t = t;
    const int steps = t > 0.0 ? std::max(1, static_cast<int>(std::ceil(t / dt - 1e-12))) : 1;
    w.dt = t > 0.0 ? t / steps : dt;

    const auto xs = grid.points();
    w.psi.resize(grid.npoints);
    for (int i = 0; i < grid.npoints; ++i) w.psi[i] = kinematics::gaussian0(pk, xs[i], j);

    Fft fft(grid.npoints);
    propagate_inplace(p, grid, w.psi, a, sign, t, dt, fft);
    return w;
}

namespace {

// All channel pair-waves u_n^s = phi_{n,1}^s + phi_{n,2}^s with weight
// a_n(+), b_n(-), plus the free pair with weight f. Propagation is linear,
// so each pair costs one run.
struct WeightedWave {
    double weight = 0.0;
    std::vector<std::complex<double>> psi;
};

std::vector<WeightedWave> propagate_all(const PhysicalParams& p, const PacketParams& pk,
                                        const DiagonalCoefficients& c, const GridSpec& grid,
                                        double t, double dt)
{
    check_support(p, pk, grid, p.a0 * std::sqrt(c.n_max + 1.0), +1, t);
    check_support(p, pk, grid, p.a0 * std::sqrt(c.n_max + 1.0), -1, t);

    const auto xs = grid.points();
    std::vector<std::complex<double>> initial(grid.npoints);
    for (int i = 0; i < grid.npoints; ++i)
        initial[i] = kinematics::gaussian0(pk, xs[i], 1) + kinematics::gaussian0(pk, xs[i], 2);

    struct Job {
        double a;
        int sign;
        double weight;
    };
    std::vector<Job> jobs;
    jobs.reserve(2 * (c.n_max + 1) + 1);
    for (int n = 0; n <= c.n_max; ++n) {
        const double a = p.a0 * std::sqrt(n + 1.0);
        if (c.a[n] != 0.0) jobs.push_back({a, +1, c.a[n]});
        if (c.b[n] != 0.0) jobs.push_back({a, -1, c.b[n]});
    }
    if (c.f != 0.0) jobs.push_back({0.0, +1, c.f});

    std::vector<WeightedWave> waves(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t begin, std::size_t end) {
        Fft fft(grid.npoints);
        for (std::size_t i = begin; i < end; ++i) {
            waves[i].weight = jobs[i].weight;
            waves[i].psi = initial;
            propagate_inplace(p, grid, waves[i].psi, jobs[i].a, jobs[i].sign, t, dt, fft);
        }
    });
    return waves;
}

} // namespace

DensityGrid assemble_reduced(const PhysicalParams& p, const PacketParams& pk,
                             const DiagonalCoefficients& c, const GridSpec& grid, double t,
                             double dt, int stride, double window_units)
{
    const auto waves = propagate_all(p, pk, c, grid, t, dt);

    const double unit = std::abs(p.x01);
    const auto xs = grid.points();
    std::vector<int> sel;
    for (int i = 0; i < grid.npoints; i += stride)
        if (std::abs(xs[i]) <= window_units * unit) sel.push_back(i);
    if (sel.empty()) throw GridError("oracle::assemble_reduced: empty selection window");

    DensityGrid g;
    g.xs.resize(sel.size());
    for (std::size_t i = 0; i < sel.size(); ++i) g.xs[i] = xs[sel[i]] / unit;
    g.t_seconds = t;
    g.t_units = t * p.epsilon * std::sqrt(c.mean_n + 1.0);
    g.mode = EvalMode::oracle;
    g.values.assign(sel.size() * sel.size(), {0.0, 0.0});

    const double norm = unit / (2.0 * pk.delta);
    const std::size_t nsel = sel.size();
    parallel_for(nsel, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            for (const auto& w : waves) {
                const std::complex<double> wi = norm * w.weight * w.psi[sel[i]];
                for (std::size_t j = 0; j < nsel; ++j)
                    g.values[i * nsel + j] += wi * std::conj(w.psi[sel[j]]);
            }
    });
    return g;
}

double mean_momentum(const PhysicalParams& p, const PacketParams& pk,
                     const DiagonalCoefficients& c, const GridSpec& grid, double t, double dt)
{
    auto waves = propagate_all(p, pk, c, grid, t, dt);
    const auto ks = fft_wavenumbers(grid);
    const double h = grid.spacing();
    const int n = grid.npoints;

    Fft fft(n);
    double total = 0.0;
    for (auto& w : waves) {
        fft.forward(w.psi.data());
        double num = 0.0;
        for (int m = 0; m < n; ++m) num += ks[m] * std::norm(w.psi[m]);
        // h/N restores the continuum normalization of <u|p|u>.
        total += w.weight * constants::hbar * num * h / n;
    }
    return total / (2.0 * pk.delta);
}

} // namespace sgd::oracle
