// AVX2+FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma on x86-64; the dispatcher guards every call with a runtime
// CPU-feature check.

#include "kernels_detail.hpp"

#if defined(__x86_64__) && defined(__AVX2__)

#include <immintrin.h>

#include <cmath>

namespace sgd::kernels::detail {

namespace {

// Cody-Waite split of pi/4 and the Cephes minimax polynomials for
// sin/cos on |z| <= pi/4.
constexpr double kFourOverPi = 1.27323954473516268615;
constexpr double kDP1 = 7.85398125648498535156e-1;
constexpr double kDP2 = 3.77489470793079817668e-8;
constexpr double kDP3 = 2.69515142907905952645e-15;

constexpr double kSinCof[6] = {
    1.58962301576546568060e-10, -2.50507477628578072866e-8,
    2.75573136213857245213e-6,  -1.98412698295895385996e-4,
    8.33333333332211858878e-3,  -1.66666666666666307295e-1};
constexpr double kCosCof[6] = {
    -1.13585365213876817300e-11, 2.08757008419747316778e-9,
    -2.75573141792967388112e-7,  2.48015872888517179954e-5,
    -1.38888888888730564116e-3,  4.16666666666665929218e-2};

inline __m256d polevl6(__m256d z, const double* c)
{
    __m256d r = _mm256_set1_pd(c[0]);
    for (int i = 1; i < 6; ++i) r = _mm256_fmadd_pd(r, z, _mm256_set1_pd(c[i]));
    return r;
}

// Simultaneous sin and cos of four doubles. Octant reduction as in Cephes:
// round |x|/(pi/4) down, bump odd octants, then pick/flip the two reduced
// polynomials per octant. Valid for |x| up to ~1e9.
inline void sincos4(__m256d x, __m256d& s_out, __m256d& c_out)
{
    const __m256d sign_bit = _mm256_set1_pd(-0.0);
    const __m256d sign_sin_in = _mm256_and_pd(x, sign_bit);
    const __m256d ax = _mm256_andnot_pd(sign_bit, x);

    __m256d y = _mm256_floor_pd(_mm256_mul_pd(ax, _mm256_set1_pd(kFourOverPi)));
    __m128i j = _mm256_cvttpd_epi32(y);
    const __m128i jodd = _mm_and_si128(j, _mm_set1_epi32(1));
    j = _mm_add_epi32(j, jodd);
    y = _mm256_add_pd(y, _mm256_cvtepi32_pd(jodd));
    j = _mm_and_si128(j, _mm_set1_epi32(7));  // even octant in {0,2,4,6}

    __m256d z = _mm256_fnmadd_pd(y, _mm256_set1_pd(kDP1), ax);
    z = _mm256_fnmadd_pd(y, _mm256_set1_pd(kDP2), z);
    z = _mm256_fnmadd_pd(y, _mm256_set1_pd(kDP3), z);
    const __m256d zz = _mm256_mul_pd(z, z);

    // sin(z) = z + z*zz*P(zz); cos(z) = 1 - zz/2 + zz^2*Q(zz)
    const __m256d sin_r =
        _mm256_fmadd_pd(_mm256_mul_pd(polevl6(zz, kSinCof), zz), z, z);
    const __m256d cos_r =
        _mm256_fmadd_pd(_mm256_mul_pd(polevl6(zz, kCosCof), zz), zz,
                        _mm256_fnmadd_pd(_mm256_set1_pd(0.5), zz, _mm256_set1_pd(1.0)));

    const __m256i j64 = _mm256_cvtepi32_epi64(j);
    const __m256i bit1 = _mm256_and_si256(j64, _mm256_set1_epi64x(2));
    const __m256i bit2 = _mm256_and_si256(j64, _mm256_set1_epi64x(4));
    const __m256d swap =
        _mm256_castsi256_pd(_mm256_cmpeq_epi64(bit1, _mm256_set1_epi64x(2)));
    const __m256d sin_flip = _mm256_castsi256_pd(_mm256_slli_epi64(bit2, 61));
    const __m256d cos_flip =
        _mm256_xor_pd(_mm256_castsi256_pd(_mm256_slli_epi64(bit1, 62)), sin_flip);

    const __m256d s1 = _mm256_blendv_pd(sin_r, cos_r, swap);
    const __m256d c1 = _mm256_blendv_pd(cos_r, sin_r, swap);
    s_out = _mm256_xor_pd(s1, _mm256_xor_pd(sin_flip, sign_sin_in));
    c_out = _mm256_xor_pd(c1, cos_flip);
}

inline void kahan_add4(__m256d& sum, __m256d& comp, __m256d term)
{
    const __m256d y = _mm256_sub_pd(term, comp);
    const __m256d t = _mm256_add_pd(sum, y);
    comp = _mm256_sub_pd(_mm256_sub_pd(t, sum), y);
    sum = t;
}

inline void kahan_add1(double& sum, double& comp, double term)
{
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
}

// Collapse four Kahan lanes (and a scalar carry-in) to one compensated sum.
inline double merge_lanes(__m256d sum, __m256d comp, double extra_sum, double extra_comp)
{
    alignas(32) double s[4], c[4];
    _mm256_store_pd(s, sum);
    _mm256_store_pd(c, comp);
    double total = extra_sum, total_c = extra_comp;
    for (int i = 0; i < 4; ++i) kahan_add1(total, total_c, s[i]);
    for (int i = 0; i < 4; ++i) kahan_add1(total, total_c, -c[i]);
    return total;
}

} // namespace

DSum dsum_avx2(const double* sum_ab, const double* diff_ab, const double* sqrt_np1, std::size_t n,
               double u, double f)
{
    // Beyond the argument-reduction range, defer to libm.
    if (n > 0 && std::abs(u) * sqrt_np1[n - 1] > 1e9)
        return scalar_table().dsum(sum_ab, diff_ab, sqrt_np1, n, u, f);

    const __m256d uu = _mm256_set1_pd(u);
    __m256d re = _mm256_setzero_pd(), re_c = _mm256_setzero_pd();
    __m256d im = _mm256_setzero_pd(), im_c = _mm256_setzero_pd();

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d ang = _mm256_mul_pd(uu, _mm256_loadu_pd(sqrt_np1 + i));
        __m256d s, c;
        sincos4(ang, s, c);
        kahan_add4(re, re_c, _mm256_mul_pd(_mm256_loadu_pd(sum_ab + i), c));
        const __m256d sterm = _mm256_mul_pd(_mm256_loadu_pd(diff_ab + i), s);
        kahan_add4(im, im_c, _mm256_xor_pd(sterm, _mm256_set1_pd(-0.0)));
    }

    double re_tail = 0.0, re_tail_c = 0.0, im_tail = 0.0, im_tail_c = 0.0;
    for (; i < n; ++i) {
        const double ang = u * sqrt_np1[i];
        kahan_add1(re_tail, re_tail_c, sum_ab[i] * std::cos(ang));
        kahan_add1(im_tail, im_tail_c, -diff_ab[i] * std::sin(ang));
    }

    double re_total = merge_lanes(re, re_c, re_tail, re_tail_c);
    double re_comp = 0.0;
    kahan_add1(re_total, re_comp, f);
    return {re_total, merge_lanes(im, im_c, im_tail, im_tail_c)};
}

void rank1_avx2(double w_re, double w_im, const double* v_re, const double* v_im, std::size_t n,
                double* out_re, double* out_im)
{
    const __m256d wr = _mm256_set1_pd(w_re);
    const __m256d wi = _mm256_set1_pd(w_im);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vr = _mm256_loadu_pd(v_re + i);
        const __m256d vi = _mm256_loadu_pd(v_im + i);
        __m256d o_re = _mm256_loadu_pd(out_re + i);
        __m256d o_im = _mm256_loadu_pd(out_im + i);
        o_re = _mm256_fmadd_pd(wr, vr, _mm256_fmadd_pd(wi, vi, o_re));
        o_im = _mm256_fmadd_pd(wi, vr, _mm256_fnmadd_pd(wr, vi, o_im));
        _mm256_storeu_pd(out_re + i, o_re);
        _mm256_storeu_pd(out_im + i, o_im);
    }
    for (; i < n; ++i) {
        out_re[i] += w_re * v_re[i] + w_im * v_im[i];
        out_im[i] += w_im * v_re[i] - w_re * v_im[i];
    }
}

} // namespace sgd::kernels::detail

#endif // __x86_64__ && __AVX2__
