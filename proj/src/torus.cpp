#include "rohlin/torus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rohlin/error.hpp"

namespace rohlin {

TorusSequence::TorusSequence(std::size_t dim, const std::vector<TorusPoint>& points) {
  if (dim == 0) throw Error(Errc::kInvalidArgument, "torus dimension must be positive");
  if (points.empty()) throw Error(Errc::kInvalidArgument, "torus sequence must be nonempty");
  dim_ = dim;
  count_ = points.size();
  re_.resize(dim_ * count_);
  im_.resize(dim_ * count_);
  for (std::size_t p = 0; p < count_; ++p) {
    const auto& coords = points[p].coords;
    if (coords.size() != dim_) {
      throw Error(Errc::kInvalidArgument, "point " + std::to_string(p) + " has dimension " +
                                              std::to_string(coords.size()) + ", expected " +
                                              std::to_string(dim_));
    }
    for (std::size_t c = 0; c < dim_; ++c) {
      const Complex z = coords[c];
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) ||
          std::abs(std::abs(z) - 1.0) > kUnitModulusTolerance) {
        throw Error(Errc::kInvalidArgument,
                    "point " + std::to_string(p) + " coordinate " + std::to_string(c) +
                        " is not on the unit circle");
      }
      re_[c * count_ + p] = z.real();
      im_[c * count_ + p] = z.imag();
    }
  }
}

TorusSequence TorusSequence::product_grid(const std::vector<std::size_t>& dims) {
  if (dims.empty()) throw Error(Errc::kInvalidArgument, "grid needs at least one dimension");
  std::size_t total = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw Error(Errc::kInvalidArgument, "grid dimensions must be positive");
    total *= d;
  }
  TorusSequence out;
  out.dim_ = dims.size();
  out.count_ = total;
  out.re_.resize(out.dim_ * total);
  out.im_.resize(out.dim_ * total);
  std::size_t stride = total;
  for (std::size_t c = 0; c < dims.size(); ++c) {
    stride /= dims[c];
    for (std::size_t p = 0; p < total; ++p) {
      const auto j = static_cast<std::int64_t>((p / stride) % dims[c]);
      const Complex z = root_of_unity(j, static_cast<std::int64_t>(dims[c]));
      out.re_[c * total + p] = z.real();
      out.im_[c * total + p] = z.imag();
    }
  }
  return out;
}

TorusPoint TorusSequence::point(std::size_t index) const {
  TorusPoint p;
  p.coords.reserve(dim_);
  for (std::size_t c = 0; c < dim_; ++c) p.coords.push_back(at(index, c));
  return p;
}

std::vector<TorusPoint> TorusSequence::points() const {
  std::vector<TorusPoint> out;
  out.reserve(count_);
  for (std::size_t p = 0; p < count_; ++p) out.push_back(point(p));
  return out;
}

double torus_distance(const TorusPoint& a, const TorusPoint& b) {
  if (a.coords.size() != b.coords.size()) {
    throw Error(Errc::kDimensionMismatch, "torus points of different dimension");
  }
  double d = 0.0;
  for (std::size_t c = 0; c < a.coords.size(); ++c) d = std::max(d, std::abs(a.coords[c] - b.coords[c]));
  return d;
}

}  // namespace rohlin
