#pragma once

#include <cstddef>
#include <vector>

namespace zenolink::kernels {

// Hot inner loops of the TDSE integrator. All variants implement the same
// contract; SIMD variants may reassociate reductions (equality to the scalar
// reference is tested to 1e-12, not bitwise).
//
//   leapfrog_real:  re[i] += dt * (H im)[i]
//   leapfrog_imag:  im[i] -= dt * (H re)[i]
// with (H f)[i] = -inv2dx2 * (f[i+1] - 2 f[i] + f[i-1]) + pot[i] * f[i]
// over interior points i in [1, n-2]; endpoints are pinned (hard walls).
//
//   density_sum:    sum over [i0, i1) of re[i]^2 + ia[i] * ib[i]
//   density_fill:   rho[i] = re[i]^2 + ia[i] * ib[i]
// (ia, ib are the imaginary field at the two half steps bracketing re.)
struct Table {
    const char* name;
    void (*leapfrog_real)(double* re, const double* im, const double* pot,
                          double dt, double inv2dx2, std::size_t n);
    void (*leapfrog_imag)(double* im, const double* re, const double* pot,
                          double dt, double inv2dx2, std::size_t n);
    double (*density_sum)(const double* re, const double* ia, const double* ib,
                          std::size_t i0, std::size_t i1);
    void (*density_fill)(double* rho, const double* re, const double* ia,
                         const double* ib, std::size_t n);
};

const Table& scalar_table();
#if defined(ZENOLINK_HAVE_AVX2_TU)
const Table& avx2_table();
#endif
#if defined(ZENOLINK_HAVE_NEON_TU)
const Table& neon_table();
#endif

// Runtime-selected table: best ISA supported by the CPU, overridable with
// ZENOLINK_SIMD=scalar|avx2|neon|auto (read once at first use).
const Table& active_table();

// Every table compiled into this build (for equivalence tests).
std::vector<const Table*> all_tables();

} // namespace zenolink::kernels
