#pragma once

// Data-parallel inner loops over arrays of unit complex numbers stored as
// separate real/imaginary arrays. Each kernel has a scalar reference version
// and, on x86-64, an AVX2/FMA version picked at runtime.

#include <cstddef>

namespace rohlin::simd {

struct KernelTable {
  const char* name;

  // out[j] = a[j] * b[j]. out may alias a or b.
  void (*cmul)(const double* a_re, const double* a_im, const double* b_re, const double* b_im,
               double* out_re, double* out_im, std::size_t n);

  // out[j] = c * b[j]. out may alias b.
  void (*cscale)(double c_re, double c_im, const double* b_re, const double* b_im,
                 double* out_re, double* out_im, std::size_t n);

  // sum_j a[j] * b[j] (no conjugation).
  void (*cdot)(const double* a_re, const double* a_im, const double* b_re, const double* b_im,
               std::size_t n, double* sum_re, double* sum_im);

  // sum_j a[j].
  void (*csum)(const double* a_re, const double* a_im, std::size_t n, double* sum_re,
               double* sum_im);

  // dist[j] = max(dist[j], |p - b[j]|). Bitwise identical across variants:
  // no fused multiply-add, correctly rounded sqrt.
  void (*max_abs_diff)(double p_re, double p_im, const double* b_re, const double* b_im,
                       double* dist, std::size_t n);
};

const KernelTable& scalar_kernels();

/// nullptr unless built with AVX2 support and the running CPU has AVX2 and FMA.
const KernelTable* avx2_kernels();

/// Selected once per process: AVX2 when available, else scalar. The
/// environment variable ROHLIN_KERNELS=scalar forces the reference kernels.
const KernelTable& active_kernels();

}  // namespace rohlin::simd
