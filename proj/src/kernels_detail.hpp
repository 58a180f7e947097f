#pragma once

#include "sgd/kernels.hpp"

// Implementations live in kernels_avx2.cpp, which is compiled with
// -mavx2 -mfma; call only after a runtime CPU-feature check.
namespace sgd::kernels::detail {

DSum dsum_avx2(const double* sum_ab, const double* diff_ab, const double* sqrt_np1, std::size_t n,
               double u, double f);

void rank1_avx2(double w_re, double w_im, const double* v_re, const double* v_im, std::size_t n,
                double* out_re, double* out_im);

} // namespace sgd::kernels::detail
