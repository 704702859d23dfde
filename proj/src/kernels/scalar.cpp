#include "zenolink/kernels.hpp"

namespace zenolink::kernels {

namespace {

void leapfrog_real_scalar(double* re, const double* im, const double* pot,
                          double dt, double inv2dx2, std::size_t n) {
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h = -inv2dx2 * (im[i + 1] - 2.0 * im[i] + im[i - 1]) + pot[i] * im[i];
        re[i] += dt * h;
    }
}

void leapfrog_imag_scalar(double* im, const double* re, const double* pot,
                          double dt, double inv2dx2, std::size_t n) {
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h = -inv2dx2 * (re[i + 1] - 2.0 * re[i] + re[i - 1]) + pot[i] * re[i];
        im[i] -= dt * h;
    }
}

double density_sum_scalar(const double* re, const double* ia, const double* ib,
                          std::size_t i0, std::size_t i1) {
    double s = 0.0;
    for (std::size_t i = i0; i < i1; ++i) s += re[i] * re[i] + ia[i] * ib[i];
    return s;
}

void density_fill_scalar(double* rho, const double* re, const double* ia,
                         const double* ib, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) rho[i] = re[i] * re[i] + ia[i] * ib[i];
}

} // namespace

const Table& scalar_table() {
    static const Table t{"scalar", leapfrog_real_scalar, leapfrog_imag_scalar,
                         density_sum_scalar, density_fill_scalar};
    return t;
}

} // namespace zenolink::kernels
