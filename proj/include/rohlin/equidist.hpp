#pragma once

#include <cstdint>
#include <vector>

#include "rohlin/lambda_pairs.hpp"
#include "rohlin/torus.hpp"

namespace rohlin {

/// Cap on the number of points produced by cumulative_spectra.
inline constexpr std::size_t kMaxSpectrumPoints = 4096;

/// (1/|S|) sum_p prod_c s_{p,c}^{l_c}. Throws kZeroMultiIndex for l = 0.
Complex weyl_sum(const TorusSequence& s, const std::vector<std::int64_t>& l);

/// max |weyl_sum(S, l)| over 0 < ||l||_inf <= lmax.
double weyl_profile(const TorusSequence& s, int lmax);

/// max over boxes prod_c [a_c/res, b_c/res) (angles in turns, 0 <= a_c < b_c <= res)
/// of |fraction of points in the box - volume|. Angles within 1e-9 of a grid
/// line are snapped onto it.
double box_discrepancy(const TorusSequence& s, int res);

struct EpsilonDistribution {
  double eps_star = 0.0;
  /// assignment[p] = row-major index of the grid point matched to point p.
  std::vector<std::size_t> assignment;
};

/// Smallest eps such that some bijection onto the product grid moves every
/// point by at most eps in the max-coordinate metric, with a witness.
/// Throws kCardinalityMismatch unless prod(dims) = |S| and dims.size() = N.
EpsilonDistribution epsilon_distribution(const TorusSequence& s,
                                         const std::vector<std::size_t>& dims);

/// min over bijections of the largest matched distance.
double bottleneck_spectral_distance(const TorusSequence& a, const TorusSequence& b);

/// Joint spectra of the tensor products blocks[m] (x) ... (x) blocks[j] for
/// j = m, m+1, ..., built from per-block spectra without forming the product
/// matrices. Point index of a product is prev * |block| + b. Every block must
/// have lambda = 1 (kNonCommutingBlock); more than kMaxSpectrumPoints points
/// throws kDimensionCap.
std::vector<TorusSequence> cumulative_spectra(const std::vector<LambdaPair>& blocks,
                                              std::size_t m);

struct DistributionReport {
  double weyl_profile_value = 0.0;
  double box_discrepancy_value = 0.0;
  double eps_star = 0.0;
  std::vector<std::size_t> assignment;
};

DistributionReport distribution_report(const TorusSequence& s, int lmax, int res,
                                       const std::vector<std::size_t>& dims);

}  // namespace rohlin
