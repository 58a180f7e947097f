#pragma once

#include <cstddef>

namespace sgd::kernels {

struct DSum {
    double re = 0.0;
    double im = 0.0;
};

// Decoherence-series kernel:
//   re = f + sum_i sum_ab[i] * cos(u * sqrt_np1[i])
//   im =   - sum_i diff_ab[i] * sin(u * sqrt_np1[i])
// Terms accumulated ascending in i with compensated summation.
// Valid for |u| * sqrt_np1[n-1] up to ~1e9 (argument-reduction range).
using DsumFn = DSum (*)(const double* sum_ab, const double* diff_ab, const double* sqrt_np1,
                        std::size_t n, double u, double f);

// Complex rank-1 accumulation against a conjugated vector, split re/im:
//   out[i] += w * conj(v[i])
using Rank1Fn = void (*)(double w_re, double w_im, const double* v_re, const double* v_im,
                         std::size_t n, double* out_re, double* out_im);

struct KernelTable {
    DsumFn dsum = nullptr;
    Rank1Fn rank1_accum = nullptr;
    const char* name = "";
};

// Scalar reference implementations (always available).
const KernelTable& scalar_table();

// AVX2+FMA implementations; nullptr when the CPU or build lacks support.
const KernelTable* avx2_table();

// Runtime-selected table. Honors SGDECOHERE_KERNEL = auto | scalar | avx2;
// an unsupported request falls back to scalar.
const KernelTable& active_table();

} // namespace sgd::kernels
