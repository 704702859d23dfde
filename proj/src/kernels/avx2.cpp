// AVX2/FMA variants of the TDSE kernels. This TU is compiled with
// -mavx2 -mfma; dispatch.cpp only selects it when the CPU reports AVX2.
#include "zenolink/kernels.hpp"

#include <immintrin.h>

namespace zenolink::kernels {

namespace {

void leapfrog_real_avx2(double* re, const double* im, const double* pot,
                        double dt, double inv2dx2, std::size_t n) {
    if (n < 3) return;
    const __m256d vdt = _mm256_set1_pd(dt);
    const __m256d vk = _mm256_set1_pd(-inv2dx2);
    const __m256d vtwo = _mm256_set1_pd(2.0);
    std::size_t i = 1;
    for (; i + 4 <= n - 1; i += 4) {
        const __m256d c = _mm256_loadu_pd(im + i);
        const __m256d l = _mm256_loadu_pd(im + i - 1);
        const __m256d r = _mm256_loadu_pd(im + i + 1);
        const __m256d v = _mm256_loadu_pd(pot + i);
        // lap = r - 2c + l
        const __m256d lap = _mm256_add_pd(_mm256_fnmadd_pd(vtwo, c, r), l);
        // h = -inv2dx2 * lap + v * c
        const __m256d h = _mm256_fmadd_pd(vk, lap, _mm256_mul_pd(v, c));
        const __m256d out = _mm256_fmadd_pd(vdt, h, _mm256_loadu_pd(re + i));
        _mm256_storeu_pd(re + i, out);
    }
    for (; i + 1 < n; ++i) {
        const double h = -inv2dx2 * (im[i + 1] - 2.0 * im[i] + im[i - 1]) + pot[i] * im[i];
        re[i] += dt * h;
    }
}

void leapfrog_imag_avx2(double* im, const double* re, const double* pot,
                        double dt, double inv2dx2, std::size_t n) {
    if (n < 3) return;
    const __m256d vdt = _mm256_set1_pd(dt);
    const __m256d vk = _mm256_set1_pd(-inv2dx2);
    const __m256d vtwo = _mm256_set1_pd(2.0);
    std::size_t i = 1;
    for (; i + 4 <= n - 1; i += 4) {
        const __m256d c = _mm256_loadu_pd(re + i);
        const __m256d l = _mm256_loadu_pd(re + i - 1);
        const __m256d r = _mm256_loadu_pd(re + i + 1);
        const __m256d v = _mm256_loadu_pd(pot + i);
        const __m256d lap = _mm256_add_pd(_mm256_fnmadd_pd(vtwo, c, r), l);
        const __m256d h = _mm256_fmadd_pd(vk, lap, _mm256_mul_pd(v, c));
        const __m256d out = _mm256_fnmadd_pd(vdt, h, _mm256_loadu_pd(im + i));
        _mm256_storeu_pd(im + i, out);
    }
    for (; i + 1 < n; ++i) {
        const double h = -inv2dx2 * (re[i + 1] - 2.0 * re[i] + re[i - 1]) + pot[i] * re[i];
        im[i] -= dt * h;
    }
}

double density_sum_avx2(const double* re, const double* ia, const double* ib,
                        std::size_t i0, std::size_t i1) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = i0;
    for (; i + 4 <= i1; i += 4) {
        const __m256d r = _mm256_loadu_pd(re + i);
        const __m256d a = _mm256_loadu_pd(ia + i);
        const __m256d b = _mm256_loadu_pd(ib + i);
        acc = _mm256_fmadd_pd(r, r, acc);
        acc = _mm256_fmadd_pd(a, b, acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < i1; ++i) s += re[i] * re[i] + ia[i] * ib[i];
    return s;
}

void density_fill_avx2(double* rho, const double* re, const double* ia,
                       const double* ib, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r = _mm256_loadu_pd(re + i);
        const __m256d a = _mm256_loadu_pd(ia + i);
        const __m256d b = _mm256_loadu_pd(ib + i);
        _mm256_storeu_pd(rho + i, _mm256_fmadd_pd(r, r, _mm256_mul_pd(a, b)));
    }
    for (; i < n; ++i) rho[i] = re[i] * re[i] + ia[i] * ib[i];
}

} // namespace

const Table& avx2_table() {
    static const Table t{"avx2", leapfrog_real_avx2, leapfrog_imag_avx2,
                         density_sum_avx2, density_fill_avx2};
    return t;
}

} // namespace zenolink::kernels
