#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <string>

#include "latgauss/error.hpp"
#include "latgauss/types.hpp"

namespace latgauss::detail {

// Counts search-tree nodes against a budget that may be shared between
// threads. Local counts are flushed in batches.
class NodeCounter {
 public:
  NodeCounter(std::uint64_t budget, std::atomic<std::uint64_t>* shared = nullptr)
      : budget_(budget), shared_(shared) {}

  ~NodeCounter() { flush(); }

  void tick() {
    if (++local_ >= kBatch) flush_and_check();
  }

  void flush_and_check() {
    const std::uint64_t total = flush();
    if (total > budget_) {
      throw Error(ErrorCode::kEnumerationBudgetExceeded,
                  "more than " + std::to_string(budget_) +
                      " enumeration nodes; radius too large");
    }
  }

 private:
  static constexpr std::uint64_t kBatch = 1024;

  std::uint64_t flush() {
    if (shared_ != nullptr) {
      const std::uint64_t total = shared_->fetch_add(local_) + local_;
      local_ = 0;
      return total;
    }
    own_ += local_;
    local_ = 0;
    return own_;
  }

  std::uint64_t budget_;
  std::atomic<std::uint64_t>* shared_;
  std::uint64_t local_ = 0;
  std::uint64_t own_ = 0;
};

struct Interval {
  std::int64_t lo;
  std::int64_t hi;
  double center;
};

// Candidate integers at `level` given x[level+1..n) and the accumulated
// squared distance `partial` of the levels above.
inline Interval level_interval(const Matrix& r, const Vector& t, const IntVector& x,
                               int level, double partial, double r2) {
  const Eigen::Index n = r.cols();
  double acc = t[level];
  for (Eigen::Index j = level + 1; j < n; ++j) {
    acc -= r(level, j) * static_cast<double>(x[j]);
  }
  const double center = acc / r(level, level);
  const double rem = r2 - partial;
  if (rem < 0.0) return {1, 0, center};
  const double half = std::sqrt(rem) / r(level, level);
  const double slack = 1e-9 * (1.0 + half);
  return {static_cast<std::int64_t>(std::ceil(center - half - slack)),
          static_cast<std::int64_t>(std::floor(center + half + slack)), center};
}

// Visits every x with ||R x - t||^2 <= r2 whose coordinates above `level` are
// already fixed in x. r2 is re-read at every node so visitors may shrink it.
template <class Visit>
void descend(const Matrix& r, const Vector& t, int level, IntVector& x,
             double partial, const double& r2, Visit& visit, NodeCounter& counter) {
  const Interval iv = level_interval(r, t, x, level, partial, r2);
  const double rii = r(level, level);
  for (std::int64_t k = iv.lo; k <= iv.hi; ++k) {
    counter.tick();
    const double diff = rii * (static_cast<double>(k) - iv.center);
    const double next = partial + diff * diff;
    if (next > r2) continue;
    x[level] = k;
    if (level == 0) {
      visit(x, next);
    } else {
      descend(r, t, level - 1, x, next, r2, visit, counter);
    }
  }
}

}  // namespace latgauss::detail
