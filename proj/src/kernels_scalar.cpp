#include <cmath>

#include "sgd/kernels.hpp"

namespace sgd::kernels {

namespace {

inline void kahan_add(double& sum, double& comp, double term)
{
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
}

DSum dsum_scalar(const double* sum_ab, const double* diff_ab, const double* sqrt_np1,
                 std::size_t n, double u, double f)
{
    double re = 0.0, re_c = 0.0;
    double im = 0.0, im_c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ang = u * sqrt_np1[i];
        kahan_add(re, re_c, sum_ab[i] * std::cos(ang));
        kahan_add(im, im_c, -diff_ab[i] * std::sin(ang));
    }
    kahan_add(re, re_c, f);
    return {re, im};
}

void rank1_scalar(double w_re, double w_im, const double* v_re, const double* v_im, std::size_t n,
                  double* out_re, double* out_im)
{
    for (std::size_t i = 0; i < n; ++i) {
        out_re[i] += w_re * v_re[i] + w_im * v_im[i];
        out_im[i] += w_im * v_re[i] - w_re * v_im[i];
    }
}

} // namespace

const KernelTable& scalar_table()
{
    static const KernelTable table{dsum_scalar, rank1_scalar, "scalar"};
    return table;
}

} // namespace sgd::kernels
