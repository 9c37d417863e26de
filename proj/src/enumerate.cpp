#include "latgauss/enumerate.hpp"

#include <atomic>
#include <cmath>
#include <exception>

#include "enumeration_core.hpp"
#include "latgauss/error.hpp"

namespace latgauss {
namespace {

void check_args(const LatticeBasis& basis, const Vector& c, double radius) {
  if (c.size() != basis.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "center dimension differs from basis");
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::kInvalidArgument, "enumeration radius must be positive");
  }
}

template <class Visit>
void enumerate_serial(const LatticeBasis& basis, const Vector& c, double radius,
                      const EnumerationOptions& opts, Visit& visit) {
  check_args(basis, c, radius);
  const int n = basis.dim();
  const Vector t = basis.rotate(c);
  const double r2 = radius * radius;
  IntVector x = IntVector::Zero(n);
  detail::NodeCounter counter(opts.node_budget);
  detail::descend(basis.r(), t, n - 1, x, 0.0, r2, visit, counter);
  counter.flush_and_check();
}

}  // namespace

std::vector<BallPoint> enumerate_ball_points(const LatticeBasis& basis,
                                             const Vector& c, double radius,
                                             const EnumerationOptions& opts) {
  std::vector<BallPoint> out;
  auto visit = [&out](const IntVector& x, double d2) { out.push_back({x, d2}); };
  enumerate_serial(basis, c, radius, opts, visit);
  return out;
}

std::vector<IntVector> enumerate_ball(const LatticeBasis& basis, const Vector& c,
                                      double radius, const EnumerationOptions& opts) {
  std::vector<IntVector> out;
  auto visit = [&out](const IntVector& x, double) { out.push_back(x); };
  enumerate_serial(basis, c, radius, opts, visit);
  return out;
}

namespace reference {

std::vector<double> ball_squared_distances(const LatticeBasis& basis,
                                           const Vector& c, double radius,
                                           const EnumerationOptions& opts) {
  std::vector<double> out;
  auto visit = [&out](const IntVector&, double d2) { out.push_back(d2); };
  enumerate_serial(basis, c, radius, opts, visit);
  return out;
}

}  // namespace reference

std::vector<double> ball_squared_distances(const LatticeBasis& basis,
                                           const Vector& c, double radius,
                                           const EnumerationOptions& opts) {
  check_args(basis, c, radius);
  const int n = basis.dim();
  const Matrix& r = basis.r();
  const Vector t = basis.rotate(c);
  const double r2 = radius * radius;

  const IntVector origin = IntVector::Zero(n);
  const detail::Interval top = detail::level_interval(r, t, origin, n - 1, 0.0, r2);
  const std::int64_t count = top.hi >= top.lo ? top.hi - top.lo + 1 : 0;
  std::vector<std::vector<double>> parts(static_cast<std::size_t>(count));
  std::atomic<std::uint64_t> nodes{0};
  std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t idx = 0; idx < count; ++idx) {
    try {
      detail::NodeCounter counter(opts.node_budget, &nodes);
      counter.tick();
      const std::int64_t k = top.lo + idx;
      const double diff = r(n - 1, n - 1) * (static_cast<double>(k) - top.center);
      const double partial = diff * diff;
      if (partial > r2) continue;
      IntVector x = IntVector::Zero(n);
      x[n - 1] = k;
      auto& out = parts[static_cast<std::size_t>(idx)];
      auto visit = [&out](const IntVector&, double d2) { out.push_back(d2); };
      if (n == 1) {
        out.push_back(partial);
      } else {
        detail::descend(r, t, n - 2, x, partial, r2, visit, counter);
      }
      counter.flush_and_check();
    } catch (...) {
#pragma omp critical(latgauss_enum_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<double> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

CvpResult cvp_exact(const LatticeBasis& basis, const Vector& c,
                    const EnumerationOptions& opts) {
  if (c.size() != basis.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "center dimension differs from basis");
  }
  const IntVector babai = babai_nearest_plane(basis, c);
  CvpResult best{babai, 0.0};
  double best2 = (basis.point(babai) - c).squaredNorm();
  constexpr double kTieTol = 1e-12;

  double r2 = best2 * (1.0 + 1e-9) + 1e-300;
  auto visit = [&](const IntVector& x, double d2) {
    const double tol = kTieTol * std::max(1.0, best2);
    if (d2 < best2 - tol) {
      best.x = x;
      best2 = d2;
      r2 = best2 * (1.0 + 1e-9) + 1e-300;
    } else if (std::abs(d2 - best2) <= tol && lex_less(x, best.x)) {
      best.x = x;
    }
  };
  const int n = basis.dim();
  const Vector t = basis.rotate(c);
  IntVector x = IntVector::Zero(n);
  detail::NodeCounter counter(opts.node_budget);
  detail::descend(basis.r(), t, n - 1, x, 0.0, r2, visit, counter);
  counter.flush_and_check();
  best.distance = std::sqrt((basis.point(best.x) - c).squaredNorm());
  return best;
}

}  // namespace latgauss
