#include "rohlin/equidist.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rohlin/error.hpp"
#include "rohlin/matching.hpp"
#include "rohlin/simd/kernels.hpp"

namespace rohlin {

namespace {

constexpr double kGridSnap = 1e-9;
constexpr std::size_t kMaxBoxes = std::size_t{1} << 26;

// Arrays over the points of one complex value each.
struct Column {
  std::vector<double> re, im;
  explicit Column(std::size_t n, double fill_re = 0.0) : re(n, fill_re), im(n, 0.0) {}
};

// Powers s_c^e for e in [-lmax, lmax] of one coordinate.
class PowerTable {
 public:
  PowerTable(const TorusSequence& s, std::size_t coord, std::int64_t lmax)
      : lmax_(lmax), n_(s.size()) {
    const auto& k = simd::active_kernels();
    const auto width = static_cast<std::size_t>(2 * lmax + 1);
    re_.assign(width * n_, 0.0);
    im_.assign(width * n_, 0.0);
    std::fill_n(re_.begin() + offset(0), n_, 1.0);
    for (std::int64_t e = 1; e <= lmax; ++e) {
      k.cmul(re(e - 1), im(e - 1), s.re(coord), s.im(coord), mut_re(e), mut_im(e), n_);
      // Negative powers are conjugates on the unit circle.
      std::copy_n(re(e), n_, mut_re(-e));
      std::transform(im(e), im(e) + n_, mut_im(-e), [](double x) { return -x; });
    }
  }

  const double* re(std::int64_t e) const { return re_.data() + offset(e); }
  const double* im(std::int64_t e) const { return im_.data() + offset(e); }

 private:
  std::size_t offset(std::int64_t e) const { return static_cast<std::size_t>(e + lmax_) * n_; }
  double* mut_re(std::int64_t e) { return re_.data() + offset(e); }
  double* mut_im(std::int64_t e) { return im_.data() + offset(e); }

  std::int64_t lmax_;
  std::size_t n_;
  std::vector<double> re_, im_;
};

// sum_p prod_c table_c(l_c)[p] / n.
Complex weyl_from_tables(const std::vector<PowerTable>& tables, const std::vector<std::int64_t>& l,
                         std::size_t n, Column& scratch) {
  const auto& k = simd::active_kernels();
  const std::size_t dim = tables.size();
  double sr = 0.0, si = 0.0;
  if (dim == 1) {
    k.csum(tables[0].re(l[0]), tables[0].im(l[0]), n, &sr, &si);
  } else {
    const double* pr = tables[0].re(l[0]);
    const double* pi = tables[0].im(l[0]);
    for (std::size_t c = 1; c + 1 < dim; ++c) {
      k.cmul(pr, pi, tables[c].re(l[c]), tables[c].im(l[c]), scratch.re.data(),
             scratch.im.data(), n);
      pr = scratch.re.data();
      pi = scratch.im.data();
    }
    k.cdot(pr, pi, tables[dim - 1].re(l[dim - 1]), tables[dim - 1].im(l[dim - 1]), n, &sr, &si);
  }
  const auto scale = static_cast<double>(n);
  return {sr / scale, si / scale};
}

// Row-major cost matrix of max-coordinate distances.
std::vector<double> distance_matrix(const TorusSequence& a, const TorusSequence& b) {
  const auto& k = simd::active_kernels();
  const std::size_t n = a.size();
  std::vector<double> cost(n * b.size(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double* row = cost.data() + i * b.size();
    for (std::size_t c = 0; c < a.dim(); ++c) {
      const Complex z = a.at(i, c);
      k.max_abs_diff(z.real(), z.imag(), b.re(c), b.im(c), row, b.size());
    }
  }
  return cost;
}

std::size_t grid_cell(Complex z, int res) {
  const double scaled = turns_of(z) * res;
  const double nearest = std::round(scaled);
  double cell = std::abs(scaled - nearest) <= kGridSnap ? nearest : std::floor(scaled);
  if (cell >= res) cell -= res;
  return static_cast<std::size_t>(cell);
}

}  // namespace

Complex weyl_sum(const TorusSequence& s, const std::vector<std::int64_t>& l) {
  if (l.size() != s.dim()) throw Error(Errc::kDimensionMismatch, "multi-index length must equal N");
  if (std::all_of(l.begin(), l.end(), [](std::int64_t x) { return x == 0; })) {
    throw Error(Errc::kZeroMultiIndex, "Weyl sums need a nonzero multi-index");
  }
  std::vector<PowerTable> tables;
  std::vector<std::int64_t> local(l.size());
  tables.reserve(l.size());
  for (std::size_t c = 0; c < l.size(); ++c) {
    // A table of width 2|l_c|+1 is enough; index it at l_c.
    tables.emplace_back(s, c, std::abs(l[c]));
    local[c] = l[c];
  }
  Column scratch(s.size());
  return weyl_from_tables(tables, local, s.size(), scratch);
}

double weyl_profile(const TorusSequence& s, int lmax) {
  if (lmax < 1) throw Error(Errc::kInvalidArgument, "lmax must be at least 1");
  const std::size_t dim = s.dim();
  std::vector<PowerTable> tables;
  tables.reserve(dim);
  for (std::size_t c = 0; c < dim; ++c) tables.emplace_back(s, c, lmax);
  Column scratch(s.size());

  // |W(-l)| = |W(l)|, so only multi-indices whose first nonzero entry is
  // positive are visited. Odometer over [-lmax, lmax]^N.
  std::vector<std::int64_t> l(dim, -lmax);
  double best = 0.0;
  while (true) {
    const auto first = std::find_if(l.begin(), l.end(), [](std::int64_t x) { return x != 0; });
    if (first != l.end() && *first > 0) {
      best = std::max(best, std::abs(weyl_from_tables(tables, l, s.size(), scratch)));
    }
    std::size_t c = dim;
    while (c > 0 && l[c - 1] == lmax) {
      l[c - 1] = -lmax;
      --c;
    }
    if (c == 0) break;
    ++l[c - 1];
  }
  return best;
}

double box_discrepancy(const TorusSequence& s, int res) {
  if (res < 2) throw Error(Errc::kInvalidArgument, "box resolution must be at least 2");
  const std::size_t dim = s.dim();
  const auto r = static_cast<std::size_t>(res);
  const std::size_t pairs = r * (r + 1) / 2;
  std::size_t boxes = 1, corners = 1;
  for (std::size_t c = 0; c < dim; ++c) {
    if (boxes > kMaxBoxes / pairs) {
      throw Error(Errc::kDimensionCap, "too many boxes for this resolution and dimension");
    }
    boxes *= pairs;
    corners *= r + 1;
  }

  // prefix[x_0..x_{N-1}] counts points with cell_c < x_c for all c.
  std::vector<double> prefix(corners, 0.0);
  std::vector<std::size_t> stride(dim);
  {
    std::size_t st = 1;
    for (std::size_t c = dim; c-- > 0;) {
      stride[c] = st;
      st *= r + 1;
    }
  }
  for (std::size_t p = 0; p < s.size(); ++p) {
    std::size_t idx = 0;
    for (std::size_t c = 0; c < dim; ++c) idx += (grid_cell(s.at(p, c), res) + 1) * stride[c];
    prefix[idx] += 1.0;
  }
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t idx = 0; idx < corners; ++idx) {
      if ((idx / stride[c]) % (r + 1) != 0) prefix[idx] += prefix[idx - stride[c]];
    }
  }

  const auto total = static_cast<double>(s.size());
  std::vector<std::size_t> lo(dim, 0), hi(dim, 1);
  double worst = 0.0;
  while (true) {
    double count = 0.0, volume = 1.0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << dim); ++mask) {
      std::size_t idx = 0;
      int sign = 1;
      for (std::size_t c = 0; c < dim; ++c) {
        if (mask & (std::size_t{1} << c)) {
          idx += lo[c] * stride[c];
          sign = -sign;
        } else {
          idx += hi[c] * stride[c];
        }
      }
      count += sign * prefix[idx];
    }
    for (std::size_t c = 0; c < dim; ++c) volume *= static_cast<double>(hi[c] - lo[c]) / res;
    worst = std::max(worst, std::abs(count / total - volume));

    // Next (lo, hi) in odometer order with lo < hi <= res per coordinate.
    std::size_t c = dim;
    while (c > 0) {
      --c;
      if (hi[c] < r) {
        ++hi[c];
        break;
      }
      if (lo[c] + 1 < r) {
        ++lo[c];
        hi[c] = lo[c] + 1;
        break;
      }
      lo[c] = 0;
      hi[c] = 1;
      if (c == 0) return worst;
    }
  }
}

EpsilonDistribution epsilon_distribution(const TorusSequence& s,
                                         const std::vector<std::size_t>& dims) {
  std::size_t total = 1;
  for (std::size_t d : dims) total *= d;
  if (dims.size() != s.dim() || total != s.size()) {
    throw Error(Errc::kCardinalityMismatch,
                "grid of " + std::to_string(total) + " points in dimension " +
                    std::to_string(dims.size()) + " cannot match " + std::to_string(s.size()) +
                    " points in dimension " + std::to_string(s.dim()));
  }
  const TorusSequence grid = TorusSequence::product_grid(dims);
  BottleneckAssignment best = bottleneck_assignment(s.size(), distance_matrix(s, grid));
  return {best.value, std::move(best.assignment)};
}

double bottleneck_spectral_distance(const TorusSequence& a, const TorusSequence& b) {
  if (a.dim() != b.dim()) throw Error(Errc::kDimensionMismatch, "spectra live on different tori");
  if (a.size() != b.size()) {
    throw Error(Errc::kCardinalityMismatch, "spectra have different cardinalities");
  }
  return bottleneck_assignment(a.size(), distance_matrix(a, b)).value;
}

std::vector<TorusSequence> cumulative_spectra(const std::vector<LambdaPair>& blocks,
                                              std::size_t m) {
  if (m >= blocks.size()) throw Error(Errc::kInvalidArgument, "start index beyond the block list");
  const auto& k = simd::active_kernels();
  std::vector<TorusSequence> out;

  // Running product spectrum, two coordinates as SoA arrays.
  Column u(1, 1.0), v(1, 1.0);
  for (std::size_t j = m; j < blocks.size(); ++j) {
    const LambdaPair& block = blocks[j];
    if (block.angle().num() != 0) {
      throw Error(Errc::kNonCommutingBlock,
                  "block " + std::to_string(j) + " has lambda = exp(2 pi i " +
                      block.angle().to_string() + ")");
    }
    const TorusSequence spec = joint_spectrum(block.u(), block.v()).pairs;
    const std::size_t prev = u.re.size();
    const std::size_t size = spec.size();
    if (prev * size > kMaxSpectrumPoints) {
      throw Error(Errc::kDimensionCap, "cumulative spectrum exceeds " +
                                           std::to_string(kMaxSpectrumPoints) + " points");
    }
    Column nu(prev * size), nv(prev * size);
    for (std::size_t a = 0; a < prev; ++a) {
      k.cscale(u.re[a], u.im[a], spec.re(0), spec.im(0), nu.re.data() + a * size,
               nu.im.data() + a * size, size);
      k.cscale(v.re[a], v.im[a], spec.re(1), spec.im(1), nv.re.data() + a * size,
               nv.im.data() + a * size, size);
    }
    u = std::move(nu);
    v = std::move(nv);

    std::vector<TorusPoint> points(u.re.size());
    for (std::size_t p = 0; p < points.size(); ++p) {
      const Complex a{u.re[p], u.im[p]}, b{v.re[p], v.im[p]};
      points[p].coords = {a / std::abs(a), b / std::abs(b)};
    }
    out.emplace_back(2, points);
  }
  return out;
}

DistributionReport distribution_report(const TorusSequence& s, int lmax, int res,
                                       const std::vector<std::size_t>& dims) {
  DistributionReport r;
  r.weyl_profile_value = weyl_profile(s, lmax);
  r.box_discrepancy_value = box_discrepancy(s, res);
  EpsilonDistribution e = epsilon_distribution(s, dims);
  r.eps_star = e.eps_star;
  r.assignment = std::move(e.assignment);
  return r;
}

}  // namespace rohlin
