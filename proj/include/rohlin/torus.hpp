#pragma once

#include <cstddef>
#include <vector>

#include "rohlin/turns.hpp"

namespace rohlin {

inline constexpr double kUnitModulusTolerance = 1e-12;

struct TorusPoint {
  std::vector<Complex> coords;
};

/// A finite, nonempty multiset of points on the N-torus, order preserved.
/// Stored coordinate-major: re(c)[p] is the real part of coordinate c of
/// point p, so each coordinate is a contiguous array over the points.
class TorusSequence {
 public:
  /// Throws kInvalidArgument on an empty list, ragged dimensions, or a
  /// coordinate off the unit circle by more than kUnitModulusTolerance.
  TorusSequence(std::size_t dim, const std::vector<TorusPoint>& points);

  /// The product grid exp(2 pi i j_c / dims[c]) in row-major order (last
  /// coordinate varies fastest).
  static TorusSequence product_grid(const std::vector<std::size_t>& dims);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return count_; }

  Complex at(std::size_t point, std::size_t coord) const {
    return {re_[coord * count_ + point], im_[coord * count_ + point]};
  }
  TorusPoint point(std::size_t index) const;
  std::vector<TorusPoint> points() const;

  const double* re(std::size_t coord) const noexcept { return re_.data() + coord * count_; }
  const double* im(std::size_t coord) const noexcept { return im_.data() + coord * count_; }

 private:
  TorusSequence() = default;

  std::size_t dim_ = 0;
  std::size_t count_ = 0;
  std::vector<double> re_;
  std::vector<double> im_;
};

/// max_c |a_c - b_c|, the distance used for every matching on the torus.
double torus_distance(const TorusPoint& a, const TorusPoint& b);

}  // namespace rohlin
