// AVX2 variant of the cell-rate kernels. Compiled with -mavx2 in its own
// translation unit; callers must gate on avx2_available(). FMA is not used so
// per-lane arithmetic matches the scalar reference rounding step for step
// (only the accumulation order differs).

#include <cmath>

#include "visco/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64) || defined(__i386__)
#define VISCO_X86 1
#include <immintrin.h>
#else
#define VISCO_X86 0
#endif

namespace visco::kernels {

#if VISCO_X86

namespace {

const __m256d kSignMask = _mm256_set1_pd(-0.0);

// sgn(r) max(|r| - mu, 0) * inv - d_ell for four lanes.
inline __m256d cell_rate4(__m256d sigma, __m256d stress, __m256d mu, __m256d inv, __m256d d_ell) {
    const __m256d r = _mm256_sub_pd(sigma, stress);
    const __m256d slack = _mm256_max_pd(_mm256_sub_pd(_mm256_andnot_pd(kSignMask, r), mu),
                                        _mm256_setzero_pd());
    const __m256d slip = _mm256_mul_pd(_mm256_or_pd(slack, _mm256_and_pd(kSignMask, r)), inv);
    return _mm256_sub_pd(slip, d_ell);
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double cell_rate1(const StepContext& ctx, double sigma, std::size_t i) {
    const double r = sigma - ctx.stress[i];
    const double slack = std::abs(r) - ctx.mu[i];
    const double slip = slack > 0.0 ? std::copysign(slack, r) * ctx.inv_impedance[i] : 0.0;
    return slip - ctx.d_ell;
}

double residual_avx2(const StepContext& ctx, double sigma) {
    const std::size_t n = ctx.weight.size();
    const __m256d vsigma = _mm256_set1_pd(sigma);
    const __m256d vdell = _mm256_set1_pd(ctx.d_ell);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dS = cell_rate4(vsigma, _mm256_loadu_pd(&ctx.stress[i]),
                                      _mm256_loadu_pd(&ctx.mu[i]),
                                      _mm256_loadu_pd(&ctx.inv_impedance[i]), vdell);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(&ctx.weight[i]), dS));
    }
    double total = hsum(acc);
    for (; i < n; ++i) total += ctx.weight[i] * cell_rate1(ctx, sigma, i);
    return total;
}

double rates_avx2(const StepContext& ctx, double sigma, std::span<double> rates) {
    const std::size_t n = ctx.weight.size();
    const __m256d vsigma = _mm256_set1_pd(sigma);
    const __m256d vdell = _mm256_set1_pd(ctx.d_ell);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dS = cell_rate4(vsigma, _mm256_loadu_pd(&ctx.stress[i]),
                                      _mm256_loadu_pd(&ctx.mu[i]),
                                      _mm256_loadu_pd(&ctx.inv_impedance[i]), vdell);
        _mm256_storeu_pd(&rates[i], dS);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(&ctx.weight[i]), dS));
    }
    double total = hsum(acc);
    for (; i < n; ++i) {
        const double dS = cell_rate1(ctx, sigma, i);
        rates[i] = dS;
        total += ctx.weight[i] * dS;
    }
    return total;
}

}  // namespace

bool avx2_available() { return __builtin_cpu_supports("avx2"); }

Kernel avx2_kernel() { return {residual_avx2, rates_avx2, "avx2"}; }

#else

bool avx2_available() { return false; }

Kernel avx2_kernel() { return scalar_kernel(); }

#endif

}  // namespace visco::kernels
