#include "rohlin/matching.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "rohlin/error.hpp"

namespace rohlin {

namespace {

constexpr std::size_t kUnmatched = std::numeric_limits<std::size_t>::max();

class HopcroftKarp {
 public:
  explicit HopcroftKarp(std::size_t n) : n_(n), adj_(n), match_row_(n), match_col_(n), dist_(n) {}

  // Returns true when every row can be matched using edges with cost <= threshold.
  bool perfect(const std::vector<double>& cost, double threshold) {
    for (std::size_t r = 0; r < n_; ++r) {
      adj_[r].clear();
      for (std::size_t c = 0; c < n_; ++c) {
        if (cost[r * n_ + c] <= threshold) adj_[r].push_back(c);
      }
      if (adj_[r].empty()) return false;
    }
    std::fill(match_row_.begin(), match_row_.end(), kUnmatched);
    std::fill(match_col_.begin(), match_col_.end(), kUnmatched);
    std::size_t matched = 0;
    while (bfs()) {
      for (std::size_t r = 0; r < n_; ++r) {
        if (match_row_[r] == kUnmatched && dfs(r)) ++matched;
      }
    }
    return matched == n_;
  }

  const std::vector<std::size_t>& rows() const { return match_row_; }

 private:
  bool bfs() {
    std::queue<std::size_t> frontier;
    bool reachable_free = false;
    for (std::size_t r = 0; r < n_; ++r) {
      if (match_row_[r] == kUnmatched) {
        dist_[r] = 0;
        frontier.push(r);
      } else {
        dist_[r] = kUnmatched;
      }
    }
    while (!frontier.empty()) {
      const std::size_t r = frontier.front();
      frontier.pop();
      for (std::size_t c : adj_[r]) {
        const std::size_t next = match_col_[c];
        if (next == kUnmatched) {
          reachable_free = true;
        } else if (dist_[next] == kUnmatched) {
          dist_[next] = dist_[r] + 1;
          frontier.push(next);
        }
      }
    }
    return reachable_free;
  }

  bool dfs(std::size_t r) {
    for (std::size_t c : adj_[r]) {
      const std::size_t next = match_col_[c];
      if (next == kUnmatched || (dist_[next] == dist_[r] + 1 && dfs(next))) {
        match_row_[r] = c;
        match_col_[c] = r;
        return true;
      }
    }
    dist_[r] = kUnmatched;
    return false;
  }

  std::size_t n_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> match_row_;
  std::vector<std::size_t> match_col_;
  std::vector<std::size_t> dist_;
};

}  // namespace

BottleneckAssignment bottleneck_assignment(std::size_t n, const std::vector<double>& cost) {
  if (cost.size() != n * n) throw Error(Errc::kDimensionMismatch, "cost matrix must be n x n");
  if (n == 0) return {};

  // No perfect matching can beat the cheapest edge of the worst row or column.
  double floor = 0.0;
  std::vector<double> col_min(n, std::numeric_limits<double>::infinity());
  for (std::size_t r = 0; r < n; ++r) {
    double row_min = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < n; ++c) {
      row_min = std::min(row_min, cost[r * n + c]);
      col_min[c] = std::min(col_min[c], cost[r * n + c]);
    }
    floor = std::max(floor, row_min);
  }
  for (double v : col_min) floor = std::max(floor, v);

  std::vector<double> candidates;
  candidates.reserve(cost.size());
  for (double v : cost) {
    if (v >= floor) candidates.push_back(v);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  HopcroftKarp engine(n);
  std::size_t lo = 0, hi = candidates.size() - 1;  // the largest threshold always succeeds
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (engine.perfect(cost, candidates[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  engine.perfect(cost, candidates[lo]);
  return {candidates[lo], engine.rows()};
}

}  // namespace rohlin
