// Compiled with -mavx2 -mfma. Only intrinsics and plain loops live here so no
// inline function from a shared header is instantiated with AVX2 codegen.

#include <immintrin.h>

#include <cstddef>

namespace rohlin::simd::avx2 {

void cmul(const double* a_re, const double* a_im, const double* b_re, const double* b_im,
          double* out_re, double* out_im, std::size_t n) {
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d ar = _mm256_loadu_pd(a_re + j), ai = _mm256_loadu_pd(a_im + j);
    const __m256d br = _mm256_loadu_pd(b_re + j), bi = _mm256_loadu_pd(b_im + j);
    const __m256d re = _mm256_fmsub_pd(ar, br, _mm256_mul_pd(ai, bi));
    const __m256d im = _mm256_fmadd_pd(ar, bi, _mm256_mul_pd(ai, br));
    _mm256_storeu_pd(out_re + j, re);
    _mm256_storeu_pd(out_im + j, im);
  }
  for (; j < n; ++j) {
    const double re = a_re[j] * b_re[j] - a_im[j] * b_im[j];
    const double im = a_re[j] * b_im[j] + a_im[j] * b_re[j];
    out_re[j] = re;
    out_im[j] = im;
  }
}

void cscale(double c_re, double c_im, const double* b_re, const double* b_im, double* out_re,
            double* out_im, std::size_t n) {
  const __m256d cr = _mm256_set1_pd(c_re), ci = _mm256_set1_pd(c_im);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d br = _mm256_loadu_pd(b_re + j), bi = _mm256_loadu_pd(b_im + j);
    const __m256d re = _mm256_fmsub_pd(cr, br, _mm256_mul_pd(ci, bi));
    const __m256d im = _mm256_fmadd_pd(cr, bi, _mm256_mul_pd(ci, br));
    _mm256_storeu_pd(out_re + j, re);
    _mm256_storeu_pd(out_im + j, im);
  }
  for (; j < n; ++j) {
    const double re = c_re * b_re[j] - c_im * b_im[j];
    const double im = c_re * b_im[j] + c_im * b_re[j];
    out_re[j] = re;
    out_im[j] = im;
  }
}

namespace {

double horizontal_sum(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

}  // namespace

void cdot(const double* a_re, const double* a_im, const double* b_re, const double* b_im,
          std::size_t n, double* sum_re, double* sum_im) {
  __m256d acc_re = _mm256_setzero_pd(), acc_im = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d ar = _mm256_loadu_pd(a_re + j), ai = _mm256_loadu_pd(a_im + j);
    const __m256d br = _mm256_loadu_pd(b_re + j), bi = _mm256_loadu_pd(b_im + j);
    acc_re = _mm256_fmadd_pd(ar, br, acc_re);
    acc_re = _mm256_fnmadd_pd(ai, bi, acc_re);
    acc_im = _mm256_fmadd_pd(ar, bi, acc_im);
    acc_im = _mm256_fmadd_pd(ai, br, acc_im);
  }
  double re = horizontal_sum(acc_re), im = horizontal_sum(acc_im);
  for (; j < n; ++j) {
    re += a_re[j] * b_re[j] - a_im[j] * b_im[j];
    im += a_re[j] * b_im[j] + a_im[j] * b_re[j];
  }
  *sum_re = re;
  *sum_im = im;
}

void csum(const double* a_re, const double* a_im, std::size_t n, double* sum_re, double* sum_im) {
  __m256d acc_re = _mm256_setzero_pd(), acc_im = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    acc_re = _mm256_add_pd(acc_re, _mm256_loadu_pd(a_re + j));
    acc_im = _mm256_add_pd(acc_im, _mm256_loadu_pd(a_im + j));
  }
  double re = horizontal_sum(acc_re), im = horizontal_sum(acc_im);
  for (; j < n; ++j) {
    re += a_re[j];
    im += a_im[j];
  }
  *sum_re = re;
  *sum_im = im;
}

void max_abs_diff(double p_re, double p_im, const double* b_re, const double* b_im, double* dist,
                  std::size_t n) {
  const __m256d pr = _mm256_set1_pd(p_re), pi = _mm256_set1_pd(p_im);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d dr = _mm256_sub_pd(pr, _mm256_loadu_pd(b_re + j));
    const __m256d di = _mm256_sub_pd(pi, _mm256_loadu_pd(b_im + j));
    const __m256d sq = _mm256_add_pd(_mm256_mul_pd(dr, dr), _mm256_mul_pd(di, di));
    const __m256d d = _mm256_sqrt_pd(sq);
    _mm256_storeu_pd(dist + j, _mm256_max_pd(d, _mm256_loadu_pd(dist + j)));
  }
  for (; j < n; ++j) {
    const double dr = p_re - b_re[j];
    const double di = p_im - b_im[j];
    const double sq = dr * dr;
    const double d = __builtin_sqrt(sq + di * di);
    if (d > dist[j]) dist[j] = d;
  }
}

}  // namespace rohlin::simd::avx2
