#include "sgd/csv_io.hpp"

#include <cstdio>
#include <fstream>

#include "sgd/errors.hpp"

namespace sgd::io {

namespace {

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_or_throw(const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file " + path);
    return out;
}

} // namespace

std::string cut_name(SliceCut cut)
{
    switch (cut) {
    case SliceCut::antidiagonal: return "antidiagonal";
    case SliceCut::local_1: return "local_1";
    case SliceCut::local_2: return "local_2";
    }
    return "?";
}

std::string mode_name(EvalMode mode)
{
    switch (mode) {
    case EvalMode::factored: return "factored";
    case EvalMode::exact: return "exact";
    case EvalMode::oracle: return "oracle";
    }
    return "?";
}

void write_slice_csv(const DensitySlice& slice, const std::string& path)
{
    auto out = open_or_throw(path);
    out << "# scenario = " << slice.scenario << "\n";
    out << "# cut = " << cut_name(slice.cut) << " (x' = -x";
    if (slice.cut == SliceCut::local_1) out << " + 2*x0,1";
    if (slice.cut == SliceCut::local_2) out << " + 2*x0,2";
    out << ")\n";
    out << "# t = " << fmt(slice.t_units) << " (units of 1/Omega) = " << fmt(slice.t_seconds)
        << " s; mode = " << mode_name(slice.mode) << "\n";
    out << "# x in units of |x0,1|; rho in units of 1/|x0,1|\n";
    out << "x,re,im\n";
    for (std::size_t i = 0; i < slice.xs.size(); ++i)
        out << fmt(slice.xs[i]) << ',' << fmt(slice.values[i].real()) << ','
            << fmt(slice.values[i].imag()) << '\n';
}

void write_grid_csv(const DensityGrid& grid, const std::string& path)
{
    auto out = open_or_throw(path);
    out << "# scenario = " << grid.scenario << "\n";
    out << "# t = " << fmt(grid.t_units) << " (units of 1/Omega) = " << fmt(grid.t_seconds)
        << " s; mode = " << mode_name(grid.mode) << "\n";
    out << "# x, x_prime in units of |x0,1|; rho in units of 1/|x0,1|\n";
    out << "x,x_prime,re,im\n";
    const std::size_t n = grid.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto v = grid.at(i, j);
            out << fmt(grid.xs[i]) << ',' << fmt(grid.xs[j]) << ',' << fmt(v.real()) << ','
                << fmt(v.imag()) << '\n';
        }
}

} // namespace sgd::io
