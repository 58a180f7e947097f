#include "sgd/kinematics.hpp"

#include <cmath>

#include "sgd/constants.hpp"
#include "sgd/errors.hpp"

namespace sgd {

PacketParams PacketParams::from_physical(const PhysicalParams& p)
{
    PacketParams pk;
    pk.dx0 = p.dx0;
    pk.dp0 = p.hbar / (2.0 * p.dx0);
    pk.x0[0] = p.x01;
    pk.x0[1] = p.x02;
    const double d = p.x01 - p.x02;
    pk.delta = 1.0 + std::exp(-d * d / (8.0 * p.dx0 * p.dx0));
    return pk;
}

double PacketParams::center(int j) const
{
    if (j != 1 && j != 2) throw DomainError("PacketParams::center: j must be 1 or 2");
    return x0[j - 1];
}

namespace kinematics {

double accel(const PhysicalParams& p, int n)
{
    return p.a0 * std::sqrt(n + 1.0);
}

double channel_center(const PhysicalParams& p, const PacketParams& pk, double t, int n, int sign,
                      int j)
{
    return pk.center(j) - sign * 0.5 * accel(p, n) * t * t;
}

std::complex<double> beta(const PhysicalParams& p, const PacketParams& pk, double t)
{
    return {pk.dx0 * pk.dx0, p.hbar * t / (2.0 * p.m)};
}

double dxl2(const PhysicalParams& p, const PacketParams& pk, double t)
{
    const double spread = pk.dp0 * t / p.m;
    return pk.dx0 * pk.dx0 + spread * spread;
}

double theta0(const PhysicalParams& p, double t)
{
    return p.omega * t + p.m * p.a0 * p.a0 * t * t * t / (6.0 * p.hbar);
}

double gaussian0(const PacketParams& pk, double x, int j)
{
    const double d = x - pk.center(j);
    const double norm = std::pow(2.0 * constants::pi * pk.dx0 * pk.dx0, -0.25);
    return norm * std::exp(-d * d / (4.0 * pk.dx0 * pk.dx0));
}

namespace {

std::complex<double> accelerated_packet(const PhysicalParams& p, const PacketParams& pk, double x,
                                        double t, double a, int sign, int j)
{
    const std::complex<double> bt = beta(p, pk, t);
    const std::complex<double> pref =
        std::sqrt(pk.dx0 / (std::sqrt(2.0 * constants::pi) * bt));
    const double c = pk.center(j) - sign * 0.5 * a * t * t;
    const double d = x - c;
    const std::complex<double> gauss = std::exp(-d * d / (4.0 * bt));
    const std::complex<double> kick =
        std::polar(1.0, -sign * p.m * a * x * t / p.hbar);
    return pref * kick * gauss;
}

} // namespace

std::complex<double> free_packet(const PhysicalParams& p, const PacketParams& pk, double x,
                                 double t, int j)
{
    return accelerated_packet(p, pk, x, t, 0.0, +1, j);
}

std::complex<double> evolved_packet(const PhysicalParams& p, const PacketParams& pk, double x,
                                    double t, int n, int sign, int j)
{
    if (t < 0.0) throw DomainError("evolved_packet: t must be >= 0");
    if (sign != 1 && sign != -1) throw DomainError("evolved_packet: sign must be +/-1");
    return accelerated_packet(p, pk, x, t, accel(p, n), sign, j);
}

double alpha_free(const PhysicalParams& p, const PacketParams& pk, double x, double xp, double t,
                  int j, int k, PhaseMode mode)
{
    const double w2 = mode == PhaseMode::exact ? dxl2(p, pk, t) : pk.dx0 * pk.dx0;
    const double pre = p.hbar * t / (8.0 * p.m * pk.dx0 * pk.dx0 * w2);
    const double dj = x - pk.center(j);
    const double dk = xp - pk.center(k);
    return pre * (dj * dj - dk * dk);
}

double alpha_channel(const PhysicalParams& p, const PacketParams& pk, double x, double xp,
                     double t, int n, int sign, int j, int k, PhaseMode mode)
{
    const double a = accel(p, n);
    if (mode == PhaseMode::approx)
        return alpha_free(p, pk, x, xp, t, j, k, mode) - sign * p.m * a * t * (x - xp) / p.hbar;

    const double w2 = dxl2(p, pk, t);
    const double pre = p.hbar * t / (8.0 * p.m * pk.dx0 * pk.dx0 * w2);
    const double dj = x - channel_center(p, pk, t, n, sign, j);
    const double dk = xp - channel_center(p, pk, t, n, sign, k);
    return pre * (dj * dj - dk * dk) - sign * p.m * a * t * (x - xp) / p.hbar;
}

} // namespace kinematics

} // namespace sgd
