#include <cmath>

#include "rohlin/simd/kernels.hpp"

namespace rohlin::simd {

namespace {

void cmul_scalar(const double* a_re, const double* a_im, const double* b_re, const double* b_im,
                 double* out_re, double* out_im, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double re = a_re[j] * b_re[j] - a_im[j] * b_im[j];
    const double im = a_re[j] * b_im[j] + a_im[j] * b_re[j];
    out_re[j] = re;
    out_im[j] = im;
  }
}

void cscale_scalar(double c_re, double c_im, const double* b_re, const double* b_im,
                   double* out_re, double* out_im, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double re = c_re * b_re[j] - c_im * b_im[j];
    const double im = c_re * b_im[j] + c_im * b_re[j];
    out_re[j] = re;
    out_im[j] = im;
  }
}

void cdot_scalar(const double* a_re, const double* a_im, const double* b_re, const double* b_im,
                 std::size_t n, double* sum_re, double* sum_im) {
  double re = 0.0, im = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    re += a_re[j] * b_re[j] - a_im[j] * b_im[j];
    im += a_re[j] * b_im[j] + a_im[j] * b_re[j];
  }
  *sum_re = re;
  *sum_im = im;
}

void csum_scalar(const double* a_re, const double* a_im, std::size_t n, double* sum_re,
                 double* sum_im) {
  double re = 0.0, im = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    re += a_re[j];
    im += a_im[j];
  }
  *sum_re = re;
  *sum_im = im;
}

void max_abs_diff_scalar(double p_re, double p_im, const double* b_re, const double* b_im,
                         double* dist, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double dr = p_re - b_re[j];
    const double di = p_im - b_im[j];
    const double sq = dr * dr;
    const double d = std::sqrt(sq + di * di);
    if (d > dist[j]) dist[j] = d;
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", cmul_scalar, cscale_scalar, cdot_scalar, csum_scalar,
                                 max_abs_diff_scalar};
  return table;
}

}  // namespace rohlin::simd
