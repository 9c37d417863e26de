#include "latgauss/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "latgauss/error.hpp"
#include "latgauss/theta.hpp"

namespace latgauss {

std::optional<std::size_t> TruncatedSpace::index_of(const IntVector& x) const {
  if (x.size() != basis.dim()) return std::nullopt;
  const std::int64_t k = box_radius;
  const std::int64_t w = 2 * k + 1;
  std::size_t idx = 0;
  for (int i = 0; i < x.size(); ++i) {
    if (x[i] < -k || x[i] > k) return std::nullopt;
    idx = idx * static_cast<std::size_t>(w) + static_cast<std::size_t>(x[i] + k);
  }
  return idx;
}

TruncatedSpace build_space(const LatticeBasis& basis, const GaussianParams& params, int box_radius,
                           const SpaceOptions& opts) {
  const int n = basis.dim();
  params.validate(n);
  if (box_radius < 0) throw Error(ErrorCode::kInvalidArgument, "box radius must be >= 0");
  const double width = 2.0 * box_radius + 1.0;
  if (std::pow(width, n) > static_cast<double>(opts.max_states)) {
    throw Error(ErrorCode::kSpaceTooLarge,
                "(2K+1)^n = " + std::to_string(std::pow(width, n)) + " exceeds the state cap");
  }

  TruncatedSpace sp{basis, params, box_radius, {}, {}, {}, 0.0, 0.0, 0.0};
  const std::size_t count = static_cast<std::size_t>(std::llround(std::pow(width, n)));
  sp.states.reserve(count);
  IntVector x = IntVector::Constant(n, -box_radius);
  for (std::size_t s = 0; s < count; ++s) {
    sp.states.push_back(x);
    for (int i = n - 1; i >= 0; --i) {
      if (x[i] < box_radius) {
        ++x[i];
        break;
      }
      x[i] = -box_radius;
    }
  }

  const double two_s2 = 2.0 * params.sigma * params.sigma;
  sp.log_pi_unnorm.resize(static_cast<Eigen::Index>(count));
  std::vector<double> logs(count);
  for (std::size_t s = 0; s < count; ++s) {
    const double v = -(basis.point(sp.states[s]) - params.center).squaredNorm() / two_s2;
    sp.log_pi_unnorm[static_cast<Eigen::Index>(s)] = v;
    logs[s] = v;
  }
  sp.log_mass = log_sum_exp(logs);
  sp.pi = (sp.log_pi_unnorm.array() - sp.log_mass).exp().matrix();
  sp.pi_min = sp.pi.minCoeff();

  // Outside the box some |x_i| >= K+1, and |x_i| <= ||row_i(B^-1)|| ||Bx||.
  const Matrix b_inv = basis.matrix().inverse();
  const double row_max = b_inv.rowwise().norm().maxCoeff();
  const double r0 = (box_radius + 1.0) / row_max - params.center.norm();
  double tail = std::numeric_limits<double>::infinity();
  if (r0 > 0.0) {
    const LatticeBasis reduced = lll_reduce(basis);
    const double a = 1.0 / two_s2;
    tail = std::exp(std::log(gaussian_shell_tail_bound(reduced.gs_norms(), a, a * r0 * r0)) -
                    sp.log_mass);
  }
  sp.tail_mass_bound = tail;
  if (!(tail <= opts.max_tail)) {
    throw Error(ErrorCode::kTailNotNegligible,
                "out-of-box mass bound " + std::to_string(tail) + " exceeds tolerance");
  }
  return sp;
}

Vector klein_log_law(const TruncatedSpace& space) {
  const KleinSampler klein(space.basis, space.params);
  Vector out(static_cast<Eigen::Index>(space.size()));
  for (std::size_t s = 0; s < space.size(); ++s) {
    out[static_cast<Eigen::Index>(s)] = klein.log_density(space.states[s]);
  }
  return out;
}

double box_delta(const TruncatedSpace& space) {
  const Vector lq = klein_log_law(space);
  const Vector log_pi = space.log_pi_unnorm.array() - space.log_mass;
  return std::exp((lq - log_pi).minCoeff());
}

namespace {

// Fills one row given the proposal log-density to every state, the proposal
// mass leaking out of the box, and the acceptance rule.
template <typename LogProposal, typename LogAccept>
void fill_row(Matrix& p, Vector& leaked, std::size_t i, std::size_t count,
              const LogProposal& log_q, const LogAccept& log_accept) {
  CompensatedSum off, q_in;
  const Eigen::Index r = static_cast<Eigen::Index>(i);
  for (std::size_t j = 0; j < count; ++j) {
    const double lq = log_q(j);
    q_in.add(std::exp(lq));
    if (j == i) continue;
    const double v = std::exp(lq + std::min(0.0, log_accept(j)));
    p(r, static_cast<Eigen::Index>(j)) = v;
    off.add(v);
  }
  p(r, r) = 1.0 - off.value();
  leaked[r] = std::max(0.0, 1.0 - q_in.value());
}

template <bool kParallel>
TransitionMatrix build_mhk(const TruncatedSpace& space) {
  const std::size_t count = space.size();
  const Vector lq = klein_log_law(space);
  const Vector& lp = space.log_pi_unnorm;
  TransitionMatrix tm{Matrix::Zero(static_cast<Eigen::Index>(count),
                                   static_cast<Eigen::Index>(count)),
                      ChainKind::kMhk, Vector::Zero(static_cast<Eigen::Index>(count))};
  auto row = [&](std::size_t i) {
    const Eigen::Index a = static_cast<Eigen::Index>(i);
    // min{q(y), pi(y) q(x) / pi(x)} = q(y) min{1, pi(y) q(x) / (pi(x) q(y))}
    fill_row(
        tm.p, tm.leaked, i, count, [&](std::size_t j) { return lq[static_cast<Eigen::Index>(j)]; },
        [&](std::size_t j) {
          const Eigen::Index b = static_cast<Eigen::Index>(j);
          return (lp[b] - lq[b]) - (lp[a] - lq[a]);
        });
  };
  if constexpr (kParallel) {
    const long long rows = static_cast<long long>(count);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < rows; ++i) row(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < count; ++i) row(i);
  }
  return tm;
}

template <bool kParallel>
TransitionMatrix build_smk(const TruncatedSpace& space, std::optional<double> proposal_sigma) {
  const std::size_t count = space.size();
  const SymmetricKleinProposal proposal(space.basis,
                                        proposal_sigma.value_or(space.params.sigma));
  const Vector& lp = space.log_pi_unnorm;
  TransitionMatrix tm{Matrix::Zero(static_cast<Eigen::Index>(count),
                                   static_cast<Eigen::Index>(count)),
                      ChainKind::kSmk, Vector::Zero(static_cast<Eigen::Index>(count))};
  auto row = [&](std::size_t i) {
    const IntVector& x = space.states[i];
    const double lpx = lp[static_cast<Eigen::Index>(i)];
    fill_row(
        tm.p, tm.leaked, i, count,
        [&](std::size_t j) { return proposal.log_density(x, space.states[j]); },
        [&](std::size_t j) { return lp[static_cast<Eigen::Index>(j)] - lpx; });
  };
  if constexpr (kParallel) {
    const long long rows = static_cast<long long>(count);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < rows; ++i) row(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < count; ++i) row(i);
  }
  return tm;
}

void check_square(const TransitionMatrix& tm, const TruncatedSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.size());
  if (tm.p.rows() != n || tm.p.cols() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix size differs from state count");
  }
}

double conductance_of(const Matrix& q, const std::vector<bool>& in_s, double pi_s) {
  CompensatedSum flow;
  const Eigen::Index n = q.rows();
  for (Eigen::Index x = 0; x < n; ++x) {
    if (!in_s[static_cast<std::size_t>(x)]) continue;
    for (Eigen::Index y = 0; y < n; ++y) {
      if (!in_s[static_cast<std::size_t>(y)]) flow.add(q(x, y));
    }
  }
  return flow.value() / pi_s;
}

}  // namespace

TransitionMatrix exact_mhk_matrix(const TruncatedSpace& space) { return build_mhk<true>(space); }
TransitionMatrix exact_smk_matrix(const TruncatedSpace& space,
                                  std::optional<double> proposal_sigma) {
  return build_smk<true>(space, proposal_sigma);
}

namespace reference {
TransitionMatrix exact_mhk_matrix(const TruncatedSpace& space) { return build_mhk<false>(space); }
TransitionMatrix exact_smk_matrix(const TruncatedSpace& space,
                                  std::optional<double> proposal_sigma) {
  return build_smk<false>(space, proposal_sigma);
}
}  // namespace reference

Vector mhk_closed_form_diagonal(const TruncatedSpace& space) {
  const Vector lq = klein_log_law(space);
  const Vector& lp = space.log_pi_unnorm;
  const Eigen::Index n = lq.size();
  Vector out(n);
  for (Eigen::Index x = 0; x < n; ++x) {
    CompensatedSum s;
    s.add(std::exp(lq[x]));
    for (Eigen::Index y = 0; y < n; ++y) {
      if (y == x) continue;
      const double qy = std::exp(lq[y]);
      const double other = std::exp(lp[y] - lp[x] + lq[x]);
      if (qy > other) s.add(qy - other);
    }
    out[x] = s.value();
  }
  return out;
}

void inject_fault(TransitionMatrix& tm, std::size_t i, std::size_t j, double eps) {
  const Eigen::Index r = static_cast<Eigen::Index>(i);
  tm.p(r, static_cast<Eigen::Index>(j)) += eps;
  tm.p.row(r) /= tm.p.row(r).sum();
}

double tv_distance(const Vector& p, const Vector& q) {
  if (p.size() != q.size()) throw Error(ErrorCode::kDimensionMismatch, "length mismatch");
  if (std::abs(p.sum() - 1.0) > 1e-9 || std::abs(q.sum() - 1.0) > 1e-9) {
    throw Error(ErrorCode::kNotNormalized, "inputs must sum to 1");
  }
  CompensatedSum s;
  for (Eigen::Index i = 0; i < p.size(); ++i) s.add(std::abs(p[i] - q[i]));
  return 0.5 * s.value();
}

std::vector<double> tv_decay_curve(const TransitionMatrix& tm, const TruncatedSpace& space,
                                   const IntVector& x0, int steps) {
  check_square(tm, space);
  const auto idx = space.index_of(x0);
  if (!idx) throw Error(ErrorCode::kStateOutsideBox, "x0 lies outside the box");
  Eigen::RowVectorXd mu = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(space.size()));
  mu[static_cast<Eigen::Index>(*idx)] = 1.0;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max(steps, 0)));
  for (int t = 0; t < steps; ++t) {
    mu = mu * tm.p;
    out.push_back(tv_distance(mu.transpose(), space.pi));
  }
  return out;
}

std::vector<double> worst_case_tv_curve(const TransitionMatrix& tm, const TruncatedSpace& space,
                                        int steps) {
  check_square(tm, space);
  Matrix pt = Matrix::Identity(tm.p.rows(), tm.p.cols());
  std::vector<double> out;
  for (int t = 0; t < steps; ++t) {
    pt = pt * tm.p;
    double worst = 0.0;
    for (Eigen::Index x = 0; x < pt.rows(); ++x) {
      worst = std::max(worst, 0.5 * (pt.row(x).transpose() - space.pi).cwiseAbs().sum());
    }
    out.push_back(worst);
  }
  return out;
}

double detailed_balance_check(const TransitionMatrix& tm, const TruncatedSpace& space) {
  check_square(tm, space);
  double worst = 0.0;
  const Eigen::Index n = tm.p.rows();
  for (Eigen::Index x = 0; x < n; ++x) {
    for (Eigen::Index y = x + 1; y < n; ++y) {
      worst = std::max(worst,
                       std::abs(space.pi[x] * tm.p(x, y) - space.pi[y] * tm.p(y, x)));
    }
  }
  return worst;
}

double stationarity_residual(const TransitionMatrix& tm, const TruncatedSpace& space) {
  check_square(tm, space);
  double worst = 0.0;
  for (Eigen::Index y = 0; y < tm.p.cols(); ++y) {
    CompensatedSum s;
    for (Eigen::Index x = 0; x < tm.p.rows(); ++x) s.add(space.pi[x] * tm.p(x, y));
    worst = std::max(worst, std::abs(s.value() - space.pi[y]));
  }
  return worst;
}

double row_sum_error(const TransitionMatrix& tm) {
  double worst = 0.0;
  for (Eigen::Index x = 0; x < tm.p.rows(); ++x) {
    CompensatedSum s;
    for (Eigen::Index y = 0; y < tm.p.cols(); ++y) s.add(tm.p(x, y));
    worst = std::max(worst, std::abs(s.value() - 1.0));
  }
  return worst;
}

namespace {

// D^{1/2} P D^{-1/2} for a reversible P, written as sqrt(P(x,y) P(y,x)) so
// that underflowing pi values never enter.
Matrix symmetrized(const TransitionMatrix& tm) {
  const Eigen::Index n = tm.p.rows();
  Matrix s(n, n);
  for (Eigen::Index x = 0; x < n; ++x) {
    s(x, x) = tm.p(x, x);
    for (Eigen::Index y = x + 1; y < n; ++y) {
      s(x, y) = s(y, x) = std::sqrt(tm.p(x, y) * tm.p(y, x));
    }
  }
  return s;
}

}  // namespace

SpectralInfo spectral_analysis(const TransitionMatrix& tm, const TruncatedSpace& space) {
  check_square(tm, space);
  const double violation = detailed_balance_check(tm, space);
  if (violation > 1e-10) {
    throw Error(ErrorCode::kNotReversible,
                "detailed-balance violation " + std::to_string(violation));
  }
  SpectralInfo info;
  if (space.size() < 2) {
    info.gap = info.absolute_gap = 1.0;
    return info;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(tm), Eigen::EigenvaluesOnly);
  const Vector& ev = es.eigenvalues();  // ascending
  info.lambda1 = ev[ev.size() - 2];
  info.lambda_min = ev[0];
  info.gap = 1.0 - std::abs(info.lambda1);
  info.absolute_gap = 1.0 - std::max(std::abs(info.lambda1), std::abs(info.lambda_min));
  return info;
}

double spectral_gap_exact(const TransitionMatrix& tm, const TruncatedSpace& space) {
  return spectral_analysis(tm, space).gap;
}

double conductance(const TransitionMatrix& tm, const TruncatedSpace& space) {
  check_square(tm, space);
  const std::size_t n = space.size();
  if (n > 20) {
    throw Error(ErrorCode::kSpaceTooLargeForExhaustive,
                std::to_string(n) + " states exceed the exhaustive limit of 20");
  }
  const Matrix q = space.pi.asDiagonal() * tm.p;
  double best = std::numeric_limits<double>::infinity();
  const std::uint64_t total = std::uint64_t{1} << n;
  // Every subset is summed from scratch: flows are sums of positive terms, so
  // the ratio keeps full relative accuracy even when pi(S) is tiny.
  for (std::uint64_t mask = 1; mask < total; ++mask) {
    double pi_s = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      if (mask >> x & 1U) pi_s += space.pi[static_cast<Eigen::Index>(x)];
    }
    if (pi_s > 0.5) continue;
    double flow = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      if (!(mask >> x & 1U)) continue;
      for (std::size_t y = 0; y < n; ++y) {
        if (!(mask >> y & 1U)) flow += q(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
      }
    }
    best = std::min(best, flow / pi_s);
  }
  return best;
}

double conductance_sweep_upper_bound(const TransitionMatrix& tm, const TruncatedSpace& space) {
  check_square(tm, space);
  const std::size_t n = space.size();
  const Matrix q = space.pi.asDiagonal() * tm.p;
  std::vector<std::vector<std::size_t>> orders;

  std::vector<std::size_t> by_pi(n);
  std::iota(by_pi.begin(), by_pi.end(), 0);
  std::stable_sort(by_pi.begin(), by_pi.end(), [&](std::size_t a, std::size_t b) {
    return space.pi[static_cast<Eigen::Index>(a)] < space.pi[static_cast<Eigen::Index>(b)];
  });
  orders.push_back(by_pi);

  if (n >= 2) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(tm));
    const Vector v = es.eigenvectors().col(static_cast<Eigen::Index>(n) - 2);
    // Order by v / sqrt(pi), compared as (sign, signed log magnitude).
    auto key = [&](std::size_t i) {
      const Eigen::Index k = static_cast<Eigen::Index>(i);
      const double sign = v[k] > 0.0 ? 1.0 : (v[k] < 0.0 ? -1.0 : 0.0);
      const double mag = sign == 0.0 ? 0.0 : std::log(std::abs(v[k])) - 0.5 * space.log_pi_unnorm[k];
      return std::pair{sign, sign * mag};
    };
    std::vector<std::size_t> by_f(n);
    std::iota(by_f.begin(), by_f.end(), 0);
    std::stable_sort(by_f.begin(), by_f.end(),
                     [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    orders.push_back(by_f);
    orders.emplace_back(by_f.rbegin(), by_f.rend());
  }

  double best = std::numeric_limits<double>::infinity();
  for (const auto& order : orders) {
    std::vector<bool> in_s(n, false);
    double pi_s = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      in_s[order[k]] = true;
      pi_s += space.pi[static_cast<Eigen::Index>(order[k])];
      if (pi_s > 0.5) break;
      best = std::min(best, conductance_of(q, in_s, pi_s));
    }
  }
  return best;
}

DriftEstimate estimate_drift(const TransitionMatrix& tm, const TruncatedSpace& space, double d) {
  check_square(tm, space);
  if (!(d > 1.0)) throw Error(ErrorCode::kInvalidArgument, "d must exceed 1");
  const Vector& lp = space.log_pi_unnorm;
  const Eigen::Index n = lp.size();
  // (PV)(x) / V(x) = sum_y P(x,y) sqrt(pi(x) / pi(y)), summed in log form.
  Vector ratio(n);
  for (Eigen::Index x = 0; x < n; ++x) {
    CompensatedSum s;
    for (Eigen::Index y = 0; y < n; ++y) {
      const double pxy = tm.p(x, y);
      if (pxy > 0.0) s.add(std::exp(std::log(pxy) + 0.5 * (lp[x] - lp[y])));
    }
    ratio[x] = s.value();
  }
  const double threshold = 1.0 / (d * d);
  DriftEstimate out;
  out.d = d;
  for (Eigen::Index x = 0; x < n; ++x) {
    if (space.pi[x] >= threshold) {
      ++out.c_size;
    } else {
      out.lambda_hat = std::max(out.lambda_hat, ratio[x]);
    }
  }
  if (out.c_size == 0) {
    throw Error(ErrorCode::kEmptySmallSet, "no state has pi(x) >= 1/d^2");
  }
  for (Eigen::Index x = 0; x < n; ++x) {
    if (space.pi[x] >= threshold) {
      const double v = 1.0 / std::sqrt(space.pi[x]);
      out.b_hat = std::max(out.b_hat, (ratio[x] - out.lambda_hat) * v);
    }
  }
  return out;
}

EmpiricalDistribution empirical_distribution(const std::vector<IntVector>& samples,
                                             const TruncatedSpace& space) {
  EmpiricalDistribution out;
  std::vector<std::int64_t> counts(space.size(), 0);
  for (const IntVector& x : samples) {
    if (const auto idx = space.index_of(x)) {
      ++counts[*idx];
      ++out.in_box;
    } else {
      ++out.overflow;
    }
  }
  out.p = Vector::Zero(static_cast<Eigen::Index>(space.size()));
  if (out.in_box > 0) {
    for (std::size_t i = 0; i < counts.size(); ++i) {
      out.p[static_cast<Eigen::Index>(i)] =
          static_cast<double>(counts[i]) / static_cast<double>(out.in_box);
    }
  }
  if (!samples.empty()) {
    out.overflow_fraction =
        static_cast<double>(out.overflow) / static_cast<double>(samples.size());
  }
  return out;
}

}  // namespace latgauss
