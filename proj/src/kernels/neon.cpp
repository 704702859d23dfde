// NEON variants of the TDSE kernels (aarch64; NEON is baseline there).
#include "zenolink/kernels.hpp"

#include <arm_neon.h>

namespace zenolink::kernels {

namespace {

void leapfrog_real_neon(double* re, const double* im, const double* pot,
                        double dt, double inv2dx2, std::size_t n) {
    if (n < 3) return;
    const float64x2_t vdt = vdupq_n_f64(dt);
    const float64x2_t vk = vdupq_n_f64(-inv2dx2);
    const float64x2_t vtwo = vdupq_n_f64(2.0);
    std::size_t i = 1;
    for (; i + 2 <= n - 1; i += 2) {
        const float64x2_t c = vld1q_f64(im + i);
        const float64x2_t l = vld1q_f64(im + i - 1);
        const float64x2_t r = vld1q_f64(im + i + 1);
        const float64x2_t v = vld1q_f64(pot + i);
        const float64x2_t lap = vaddq_f64(vfmsq_f64(r, vtwo, c), l);
        const float64x2_t h = vfmaq_f64(vmulq_f64(v, c), vk, lap);
        vst1q_f64(re + i, vfmaq_f64(vld1q_f64(re + i), vdt, h));
    }
    for (; i + 1 < n; ++i) {
        const double h = -inv2dx2 * (im[i + 1] - 2.0 * im[i] + im[i - 1]) + pot[i] * im[i];
        re[i] += dt * h;
    }
}

void leapfrog_imag_neon(double* im, const double* re, const double* pot,
                        double dt, double inv2dx2, std::size_t n) {
    if (n < 3) return;
    const float64x2_t vdt = vdupq_n_f64(dt);
    const float64x2_t vk = vdupq_n_f64(-inv2dx2);
    const float64x2_t vtwo = vdupq_n_f64(2.0);
    std::size_t i = 1;
    for (; i + 2 <= n - 1; i += 2) {
        const float64x2_t c = vld1q_f64(re + i);
        const float64x2_t l = vld1q_f64(re + i - 1);
        const float64x2_t r = vld1q_f64(re + i + 1);
        const float64x2_t v = vld1q_f64(pot + i);
        const float64x2_t lap = vaddq_f64(vfmsq_f64(r, vtwo, c), l);
        const float64x2_t h = vfmaq_f64(vmulq_f64(v, c), vk, lap);
        vst1q_f64(im + i, vfmsq_f64(vld1q_f64(im + i), vdt, h));
    }
    for (; i + 1 < n; ++i) {
        const double h = -inv2dx2 * (re[i + 1] - 2.0 * re[i] + re[i - 1]) + pot[i] * re[i];
        im[i] -= dt * h;
    }
}

double density_sum_neon(const double* re, const double* ia, const double* ib,
                        std::size_t i0, std::size_t i1) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = i0;
    for (; i + 2 <= i1; i += 2) {
        const float64x2_t r = vld1q_f64(re + i);
        const float64x2_t a = vld1q_f64(ia + i);
        const float64x2_t b = vld1q_f64(ib + i);
        acc = vfmaq_f64(acc, r, r);
        acc = vfmaq_f64(acc, a, b);
    }
    double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (; i < i1; ++i) s += re[i] * re[i] + ia[i] * ib[i];
    return s;
}

void density_fill_neon(double* rho, const double* re, const double* ia,
                       const double* ib, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t r = vld1q_f64(re + i);
        const float64x2_t a = vld1q_f64(ia + i);
        const float64x2_t b = vld1q_f64(ib + i);
        vst1q_f64(rho + i, vfmaq_f64(vmulq_f64(a, b), r, r));
    }
    for (; i < n; ++i) rho[i] = re[i] * re[i] + ia[i] * ib[i];
}

} // namespace

const Table& neon_table() {
    static const Table t{"neon", leapfrog_real_neon, leapfrog_imag_neon,
                         density_sum_neon, density_fill_neon};
    return t;
}

} // namespace zenolink::kernels
