#include "latgauss/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "latgauss/chain.hpp"
#include "latgauss/convergence.hpp"
#include "latgauss/enumerate.hpp"
#include "latgauss/error.hpp"
#include "latgauss/lattices.hpp"
#include "latgauss/oracle.hpp"

namespace latgauss {
namespace {

using json = nlohmann::ordered_json;

constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

constexpr const char* kCurveSchema = "# latgauss curve schema 1";
constexpr const char* kBetaSchema = "# latgauss beta-curve schema 1";
constexpr const char* kSampleSchema = "# latgauss samples schema 1";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_vec(const IntVector& x, char sep = ' ') {
  std::string s;
  for (int i = 0; i < x.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(x[i]);
  }
  return s;
}

struct Config {
  std::string lattice;
  std::string basis_file;
  bool lll = false;
  std::optional<double> sigma;
  std::optional<double> s;
  std::string s_grid;
  std::string sigma2_grid;
  std::string center;
  std::string x0;
  std::string chain = "mhk";
  std::uint64_t seed = 1;
  std::optional<std::int64_t> burn_in;
  std::int64_t samples = 1000;
  std::int64_t thinning = 1;
  std::int64_t steps = 10000;
  int box = 8;
  int tv_steps = 100;
  double drift_d = 10.0;
  double ratio = 2.0;
  std::optional<double> omega;
  std::optional<double> proposal_sigma;
  std::optional<double> delta;
  std::optional<double> pi_min;
  double epsilon = 0.01;
  std::uint64_t node_budget = 100'000'000;
  bool beta = false;
  bool exact = false;
  bool inject_fault = false;
  bool timing = false;
  bool as_json = false;
  std::string out;
};

struct Target {
  LatticeBasis basis;
  std::string name;
  bool isodual = false;
};

Target load_target(const Config& c) {
  if (c.lattice.empty() == c.basis_file.empty()) {
    throw UsageError("exactly one of --lattice or --basis-file is required");
  }
  Target t{LatticeBasis(Matrix::Identity(1, 1)), "", false};
  if (!c.lattice.empty()) {
    NamedLattice nl = named_lattice(c.lattice);
    t.basis = nl.basis;
    t.name = nl.name;
    t.isodual = nl.isodual;
  } else {
    t.basis = read_basis_file(c.basis_file);
    t.name = c.basis_file;
  }
  if (c.lll) t.basis = lll_reduce(t.basis);
  return t;
}

std::vector<double> parse_csv_doubles(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    double d = 0.0;
    try {
      d = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw UsageError("bad number '" + tok + "'");
    }
    if (used != tok.size() || !std::isfinite(d)) throw UsageError("bad number '" + tok + "'");
    v.push_back(d);
  }
  return v;
}

Vector parse_center(const std::string& s, int n) {
  if (s.empty()) return Vector::Zero(n);
  const std::vector<double> v = parse_csv_doubles(s);
  if (static_cast<int>(v.size()) != n) {
    throw UsageError("--center needs " + std::to_string(n) + " values");
  }
  return Eigen::Map<const Vector>(v.data(), n);
}

IntVector parse_int_vector(const std::string& s, int n) {
  const std::vector<double> v = parse_csv_doubles(s);
  if (static_cast<int>(v.size()) != n) throw UsageError("--x0 needs " + std::to_string(n) + " values");
  IntVector x(n);
  for (int i = 0; i < n; ++i) {
    if (v[static_cast<std::size_t>(i)] != std::floor(v[static_cast<std::size_t>(i)])) {
      throw UsageError("--x0 entries must be integers");
    }
    x[i] = static_cast<std::int64_t>(v[static_cast<std::size_t>(i)]);
  }
  return x;
}

// lo:hi:n, log-spaced.
std::vector<double> parse_grid(const std::string& g) {
  std::stringstream ss(g);
  std::string a, b, c;
  if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c)) {
    throw UsageError("grid must look like lo:hi:n");
  }
  const double lo = parse_csv_doubles(a).at(0);
  const double hi = parse_csv_doubles(b).at(0);
  int n = 0;
  try {
    n = std::stoi(c);
  } catch (const std::exception&) {
    throw UsageError("bad grid count '" + c + "'");
  }
  if (!(lo > 0.0) || !(hi >= lo) || n < 1) throw UsageError("grid needs 0 < lo <= hi and n >= 1");
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    v[static_cast<std::size_t>(i)] =
        n == 1 ? lo : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
  }
  return v;
}

double sigma_of(const Config& c) {
  if (c.sigma && c.s) throw UsageError("--sigma and --s are mutually exclusive");
  if (c.sigma) return *c.sigma;
  if (c.s) return *c.s / std::sqrt(2.0 * std::numbers::pi);
  throw UsageError("--sigma or --s is required");
}

ChainKind chain_of(const Config& c) {
  if (c.chain == "mhk") return ChainKind::kMhk;
  if (c.chain == "smk") return ChainKind::kSmk;
  throw UsageError("--chain must be mhk or smk");
}

// Writes to --out when given, else to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw UsageError("cannot open '" + path + "' for writing");
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void emit_kv(std::ostream& os, const json& j) {
  for (const auto& [k, v] : j.items()) {
    os << k << '=' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  }
}

// ---------------------------------------------------------------- curve

int cmd_curve(const Config& c, std::ostream& out) {
  const Target t = load_target(c);
  DeltaOptions opts;
  opts.omega_log_n = c.omega;
  opts.theta.node_budget = c.node_budget;
  Sink sink(c.out, out);

  if (c.beta) {
    const std::vector<double> grid = parse_grid(c.sigma2_grid.empty() ? "0.05:2:40" : c.sigma2_grid);
    const Vector center = parse_center(c.center, t.basis.dim());
    std::vector<double> beta(grid.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < static_cast<long long>(grid.size()); ++i) {
      const double sigma = std::sqrt(grid[static_cast<std::size_t>(i)]);
      beta[static_cast<std::size_t>(i)] = beta_coefficient(t.basis, sigma, c.ratio * sigma, center);
    }
    *sink << kBetaSchema << '\n' << "sigma2,sigma,sigma_bar,beta\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double sigma = std::sqrt(grid[i]);
      *sink << fmt(grid[i]) << ',' << fmt(sigma) << ',' << fmt(c.ratio * sigma) << ','
            << fmt(beta[i]) << '\n';
    }
    return 0;
  }

  if (c.s_grid.empty()) throw UsageError("curve needs --s-grid lo:hi:n (or --beta)");
  const std::vector<double> grid = parse_grid(c.s_grid);
  struct Row {
    bool ok = false;
    DeltaReport r;
    double symmetry = 0.0;
  };
  std::vector<Row> rows(grid.size());
  const double root = std::sqrt(2.0 * std::numbers::pi);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < static_cast<long long>(grid.size()); ++i) {
    Row& row = rows[static_cast<std::size_t>(i)];
    const double s = grid[static_cast<std::size_t>(i)];
    try {
      row.r = delta_coefficient(t.basis, s / root, opts);
      if (t.isodual) {
        DeltaOptions o = opts;
        o.with_table_bound = false;
        row.symmetry = std::abs(row.r.delta - delta_coefficient(t.basis, 1.0 / (s * root), o).delta);
      }
      row.ok = true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kEnumerationBudgetExceeded) throw;
    }
  }
  *sink << kCurveSchema << '\n' << "s,delta,one_over_delta,regime,table_bound,t_mix_001";
  if (t.isodual) *sink << ",symmetry_residual";
  *sink << '\n';
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Row& row = rows[i];
    *sink << fmt(grid[i]);
    if (row.ok) {
      *sink << ',' << fmt(row.r.delta) << ',' << fmt(1.0 / row.r.delta) << ','
            << to_string(row.r.regime) << ',' << fmt(row.r.table_bound) << ','
            << row.r.mixing_time_001;
      if (t.isodual) *sink << ',' << fmt(row.symmetry);
    } else {
      *sink << ",,,,," << (t.isodual ? "," : "");
    }
    *sink << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- delta

int cmd_delta(const Config& c, std::ostream& out) {
  const Target t = load_target(c);
  const double sigma = sigma_of(c);
  DeltaOptions opts;
  opts.omega_log_n = c.omega;
  opts.theta.node_budget = c.node_budget;
  const DeltaReport r = delta_coefficient(t.basis, sigma, opts);
  json j;
  j["lattice"] = t.name;
  j["n"] = t.basis.dim();
  j["sigma"] = r.sigma;
  j["s"] = r.s;
  j["delta"] = r.delta;
  j["one_over_delta"] = 1.0 / r.delta;
  j["regime"] = to_string(r.regime);
  j["m"] = r.m;
  j["table_bound"] = r.table_bound;
  j["t_mix_001"] = r.mixing_time_001;
  j["t_mix_001_loose"] = mixing_time_loose(r.delta, 0.01);
  j["spectral_gap_bound"] = spectral_gap_lower(r.delta);
  j["flatness_factor"] = flatness_factor(t.basis, sigma, opts.theta);
  if (!c.center.empty()) {
    const Vector center = parse_center(c.center, t.basis.dim());
    const CvpResult cvp = cvp_exact(t.basis, center);
    j["distance_to_lattice"] = cvp.distance;
    j["delta_prime_lower_bound"] = std::exp(-cvp.distance * cvp.distance / (2 * sigma * sigma)) * r.delta;
  }
  Sink sink(c.out, out);
  if (c.as_json) {
    *sink << j.dump(2) << '\n';
  } else {
    emit_kv(*sink, j);
  }
  return 0;
}

// ---------------------------------------------------------------- mixing-time

int cmd_mixing_time(const Config& c, std::ostream& out) {
  double delta = 0.0;
  json j;
  if (c.delta) {
    delta = *c.delta;
  } else {
    const Target t = load_target(c);
    const double sigma = sigma_of(c);
    DeltaOptions opts;
    opts.with_table_bound = false;
    opts.theta.node_budget = c.node_budget;
    delta = delta_coefficient(t.basis, sigma, opts).delta;
    j["lattice"] = t.name;
    j["sigma"] = sigma;
  }
  j["delta"] = delta;
  j["epsilon"] = c.epsilon;
  j["t_mix"] = mixing_time_upper(delta, c.epsilon);
  j["t_mix_loose"] = mixing_time_loose(delta, c.epsilon);
  j["spectral_gap_bound"] = spectral_gap_lower(delta);
  if (c.pi_min) j["spectral_mixing_bound"] = spectral_mixing_bound(delta, *c.pi_min, c.epsilon);
  Sink sink(c.out, out);
  if (c.as_json) {
    *sink << j.dump(2) << '\n';
  } else {
    emit_kv(*sink, j);
  }
  return 0;
}

// ---------------------------------------------------------------- sample

std::int64_t default_burn_in(const Config& c, const LatticeBasis& basis, double sigma,
                             const Vector& center, ChainKind kind) {
  if (c.burn_in) return *c.burn_in;
  if (kind == ChainKind::kSmk) throw UsageError("smk needs an explicit --burn-in");
  DeltaOptions opts;
  opts.with_table_bound = false;
  opts.theta.node_budget = c.node_budget;
  const double delta = delta_prime_lower_bound(basis, sigma, center, opts);
  return mixing_time_upper(delta, 0.01);
}

int cmd_sample(const Config& c, std::ostream& out) {
  const Target t = load_target(c);
  const double sigma = sigma_of(c);
  const ChainKind kind = chain_of(c);
  GaussianParams params{sigma, parse_center(c.center, t.basis.dim())};
  params.validate(t.basis.dim());
  ChainOptions opts;
  opts.burn_in = default_burn_in(c, t.basis, sigma, params.center, kind);
  opts.n_samples = c.samples;
  opts.thinning = c.thinning;
  if (!c.x0.empty()) opts.x0 = parse_int_vector(c.x0, t.basis.dim());
  opts.proposal_sigma = c.proposal_sigma;
  opts.record_timing = c.timing;
  RngStream rng(c.seed, 0);
  const ChainRun run = run_chain(kind, t.basis, params, opts, rng);

  json d;
  d["chain"] = to_string(kind);
  d["lattice"] = t.name;
  d["sigma"] = sigma;
  d["seed"] = c.seed;
  d["burn_in"] = opts.burn_in;
  d["samples"] = opts.n_samples;
  d["thinning"] = opts.thinning;
  d["x0"] = fmt_vec(run.diagnostics.x0, ',');
  d["steps"] = run.diagnostics.steps;
  d["accepts"] = run.diagnostics.accepts;
  d["acceptance_rate"] = run.diagnostics.acceptance_rate;
  d["best_x"] = fmt_vec(run.diagnostics.best_x, ',');
  d["best_distance"] = run.diagnostics.best_distance;
  if (c.timing) d["seconds_per_step"] = run.diagnostics.seconds_per_step;

  if (c.as_json && c.out.empty()) {
    json doc;
    doc["samples"] = json::array();
    for (const IntVector& x : run.samples) doc["samples"].push_back(std::vector<std::int64_t>(x.begin(), x.end()));
    doc["diagnostics"] = d;
    out << doc.dump(2) << '\n';
    return 0;
  }
  Sink sink(c.out, out);
  *sink << kSampleSchema << '\n';
  for (const IntVector& x : run.samples) *sink << fmt_vec(x) << '\n';
  if (c.as_json) {
    out << d.dump(2) << '\n';
  } else {
    *sink << "# diagnostics\n";
    for (const auto& [k, v] : d.items()) {
      *sink << "# " << k << '=' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
  }
  return 0;
}

// ---------------------------------------------------------------- cvp

int cmd_cvp(const Config& c, std::ostream& out) {
  const Target t = load_target(c);
  if (c.center.empty()) throw UsageError("cvp needs --center");
  const double sigma = sigma_of(c);
  const ChainKind kind = chain_of(c);
  GaussianParams params{sigma, parse_center(c.center, t.basis.dim())};
  params.validate(t.basis.dim());

  const IntVector babai = babai_nearest_plane(t.basis, params.center);
  ChainOptions opts;
  opts.burn_in = c.steps - 1;
  opts.n_samples = 1;
  if (!c.x0.empty()) opts.x0 = parse_int_vector(c.x0, t.basis.dim());
  opts.proposal_sigma = c.proposal_sigma;
  if (opts.burn_in < 0) throw UsageError("--steps must be >= 1");
  RngStream rng(c.seed, 0);
  const ChainRun run = run_chain(kind, t.basis, params, opts, rng);

  json j;
  j["chain"] = to_string(kind);
  j["lattice"] = t.name;
  j["sigma"] = sigma;
  j["seed"] = c.seed;
  j["steps"] = run.diagnostics.steps;
  j["babai_x"] = fmt_vec(babai, ',');
  j["babai_distance"] = (t.basis.point(babai) - params.center).norm();
  j["sampler_x"] = fmt_vec(run.diagnostics.best_x, ',');
  j["sampler_distance"] = run.diagnostics.best_distance;
  j["acceptance_rate"] = run.diagnostics.acceptance_rate;
  if (c.exact || t.basis.dim() <= 8) {
    const CvpResult exact = cvp_exact(t.basis, params.center);
    j["exact_x"] = fmt_vec(exact.x, ',');
    j["exact_distance"] = exact.distance;
    j["sampler_found_exact"] = run.diagnostics.best_distance <= exact.distance * (1 + 1e-12) + 1e-12;
  }
  Sink sink(c.out, out);
  if (c.as_json) {
    *sink << j.dump(2) << '\n';
  } else {
    emit_kv(*sink, j);
  }
  return 0;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const Config& c, std::ostream& out, std::ostream& err) {
  const Target t = load_target(c);
  if (t.basis.dim() > 3) throw UsageError("verify supports n <= 3");
  const double sigma = sigma_of(c);
  GaussianParams params{sigma, parse_center(c.center, t.basis.dim())};
  const TruncatedSpace space = build_space(t.basis, params, c.box);
  TransitionMatrix mhk = exact_mhk_matrix(space);
  const TransitionMatrix smk = exact_smk_matrix(space);
  if (c.inject_fault && space.size() >= 2) {
    Eigen::Index mode = 0;
    space.pi.maxCoeff(&mode);
    const auto i = static_cast<std::size_t>(mode);
    inject_fault(mhk, i, i + 1 < space.size() ? i + 1 : i - 1, 1e-6);
  }

  std::vector<std::string> failures;
  auto check = [&](bool ok, const std::string& name) {
    if (!ok) failures.push_back(name);
  };
  constexpr double kSlack = 1e-9;

  DeltaOptions dopts;
  dopts.with_table_bound = false;
  dopts.theta.node_budget = c.node_budget;
  const double delta_theta = delta_coefficient(t.basis, sigma, dopts).delta;
  const double delta = box_delta(space);

  const double db_mhk = detailed_balance_check(mhk, space);
  const double db_smk = detailed_balance_check(smk, space);
  check(db_mhk <= 1e-12, "detailed_balance_mhk");
  check(db_smk <= 1e-12, "detailed_balance_smk");
  check(stationarity_residual(mhk, space) <= 1e-10, "stationarity_mhk");
  check(stationarity_residual(smk, space) <= 1e-10, "stationarity_smk");
  check(row_sum_error(mhk) <= 1e-10 && row_sum_error(smk) <= 1e-10, "row_sums");

  double minor = std::numeric_limits<double>::infinity();
  for (Eigen::Index x = 0; x < mhk.p.rows(); ++x) {
    for (Eigen::Index y = 0; y < mhk.p.cols(); ++y) {
      if (x != y) minor = std::min(minor, mhk.p(x, y) / space.pi[y]);
    }
  }
  if (space.size() >= 2) check(minor >= delta - kSlack, "minorization");

  const std::vector<double> tv = worst_case_tv_curve(mhk, space, c.tv_steps);
  bool tv_ok = true;
  for (std::size_t k = 0; k < tv.size(); ++k) {
    tv_ok = tv_ok && tv[k] <= std::pow(1.0 - delta, static_cast<double>(k + 1)) + kSlack;
  }
  check(tv_ok, "tv_decay");
  for (double eps : {0.1, 0.01}) {
    const std::int64_t tm = mixing_time_upper(delta, eps);
    if (tm <= c.tv_steps) {
      check(tv[static_cast<std::size_t>(tm - 1)] <= eps, "mixing_time_consistency");
    }
  }

  json j;
  j["lattice"] = t.name;
  j["sigma"] = sigma;
  j["box"] = c.box;
  j["states"] = space.size();
  j["tail_mass_bound"] = space.tail_mass_bound;
  j["pi_min"] = space.pi_min;
  j["delta"] = delta;
  j["delta_theta"] = delta_theta;
  j["minorization"] = minor;

  double gap = 0.0;
  try {
    gap = spectral_gap_exact(mhk, space);
    j["gap_exact"] = gap;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNotReversible) throw;
    j["gap_exact"] = nullptr;
    check(false, "spectral_gap_reversibility");
  }
  j["gap_bound"] = spectral_gap_lower(delta);
  if (!j["gap_exact"].is_null()) check(gap >= spectral_gap_lower(delta) - kSlack, "spectral_gap");

  if (space.size() <= 20) {
    const double phi = conductance(mhk, space);
    j["conductance"] = phi;
    j["conductance_exact"] = true;
    check(phi >= delta / 2 - kSlack, "conductance");
    if (!j["gap_exact"].is_null()) {
      check(phi * phi / 2 <= gap + kSlack && gap <= 2 * phi + kSlack, "cheeger");
    }
  } else {
    j["conductance"] = conductance_sweep_upper_bound(mhk, space);
    j["conductance_exact"] = false;
  }
  j["tv_curve"] = tv;

  try {
    const DriftEstimate dr = estimate_drift(smk, space, c.drift_d);
    j["drift"] = {{"lambda", dr.lambda_hat}, {"b", dr.b_hat}, {"d", dr.d}, {"C_size", dr.c_size}};
    check(dr.lambda_hat < 1.0, "drift");
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kEmptySmallSet) throw;
    j["drift"] = {{"lambda", nullptr}, {"b", nullptr}, {"d", c.drift_d}, {"C_size", 0}};
    check(false, "drift_small_set");
  }
  j["detailed_balance_max_violation"] = std::max(db_mhk, db_smk);
  j["failures"] = failures;
  j["passed"] = failures.empty();

  Sink sink(c.out, out);
  *sink << j.dump(2) << '\n';
  if (!failures.empty()) {
    err << "verify: invariant failed: " << failures.front() << '\n';
    return kExitVerify;
  }
  return 0;
}

void add_lattice_options(CLI::App* cmd, Config& c) {
  auto* lat = cmd->add_option("--lattice", c.lattice, "Named lattice: Zn (e.g. Z4), E8, D4, D4-integral, Leech");
  auto* file = cmd->add_option("--basis-file", c.basis_file, "Basis file: n, then n rows of B");
  lat->excludes(file);
  cmd->add_flag("--lll", c.lll, "LLL-reduce the basis first");
  cmd->add_option("--node-budget", c.node_budget, "Enumeration node cap");
}

void add_sigma_options(CLI::App* cmd, Config& c) {
  cmd->add_option("--sigma", c.sigma, "Standard deviation");
  cmd->add_option("--s", c.s, "s = sqrt(2 pi) sigma");
}

void add_output_options(CLI::App* cmd, Config& c) {
  cmd->add_option("--out", c.out, "Output path (default stdout)");
  cmd->add_flag("--json", c.as_json, "JSON output");
}

void add_chain_options(CLI::App* cmd, Config& c) {
  cmd->add_option("--chain", c.chain, "mhk or smk");
  cmd->add_option("--center", c.center, "Comma-separated center");
  cmd->add_option("--seed", c.seed, "RNG seed");
  cmd->add_option("--x0", c.x0, "Comma-separated start state (default: Babai point)");
  cmd->add_option("--proposal-sigma", c.proposal_sigma, "smk proposal width (default sigma)");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lattice Gaussian sampling and convergence analysis", "latgauss"};
  app.require_subcommand(1);
  Config c;

  auto* curve = app.add_subcommand("curve", "delta (or beta) over a grid, as CSV");
  add_lattice_options(curve, c);
  curve->add_option("--s-grid", c.s_grid, "lo:hi:n, log-spaced");
  curve->add_flag("--beta", c.beta, "beta(sigma, ratio*sigma) instead of delta");
  curve->add_option("--sigma2-grid", c.sigma2_grid, "beta mode grid over sigma^2, lo:hi:n");
  curve->add_option("--ratio", c.ratio, "sigma_bar / sigma in beta mode");
  curve->add_option("--center", c.center, "Center for beta mode");
  curve->add_option("--omega", c.omega, "omega(log n) in the regime thresholds (default log n)");
  curve->add_option("--out", c.out, "Output path (default stdout)");

  auto* delta = app.add_subcommand("delta", "delta, regime bound and mixing time at one sigma");
  add_lattice_options(delta, c);
  add_sigma_options(delta, c);
  delta->add_option("--center", c.center, "Also report the delta' lower bound for this center");
  delta->add_option("--omega", c.omega, "omega(log n) in the regime thresholds");
  add_output_options(delta, c);

  auto* mix = app.add_subcommand("mixing-time", "t_mix(eps) bounds");
  add_lattice_options(mix, c);
  add_sigma_options(mix, c);
  mix->add_option("--delta", c.delta, "Use this delta instead of a lattice");
  mix->add_option("--epsilon", c.epsilon, "Target TV distance");
  mix->add_option("--pi-min", c.pi_min, "pi_min for the spectral bound");
  add_output_options(mix, c);

  auto* sample = app.add_subcommand("sample", "Run a chain and write samples");
  add_lattice_options(sample, c);
  add_sigma_options(sample, c);
  add_chain_options(sample, c);
  sample->add_option("--burn-in", c.burn_in, "Burn-in steps (mhk default: t_mix(0.01))");
  sample->add_option("--samples", c.samples, "Number of recorded samples");
  sample->add_option("--thin", c.thinning, "Steps between recorded samples");
  sample->add_flag("--timing", c.timing, "Report wall-clock time per step");
  add_output_options(sample, c);

  auto* cvp = app.add_subcommand("cvp", "Decode a point with a chain, against Babai and exact CVP");
  add_lattice_options(cvp, c);
  add_sigma_options(cvp, c);
  add_chain_options(cvp, c);
  cvp->add_option("--steps", c.steps, "Chain steps");
  cvp->add_flag("--exact", c.exact, "Force exact CVP for n > 8");
  add_output_options(cvp, c);

  auto* verify = app.add_subcommand("verify", "Exact oracle checks on a truncated box (n <= 3)");
  add_lattice_options(verify, c);
  add_sigma_options(verify, c);
  verify->add_option("--center", c.center, "Comma-separated center");
  verify->add_option("--box", c.box, "Box radius K");
  verify->add_option("--tv-steps", c.tv_steps, "Length of the TV curve");
  verify->add_option("--drift-d", c.drift_d, "d in the small set {pi >= 1/d^2}");
  verify->add_flag("--inject-fault", c.inject_fault, "Perturb one kernel entry");
  verify->add_option("--out", c.out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*curve) return cmd_curve(c, out);
    if (*delta) return cmd_delta(c, out);
    if (*mix) return cmd_mixing_time(c, out);
    if (*sample) return cmd_sample(c, out);
    if (*cvp) return cmd_cvp(c, out);
    if (*verify) return cmd_verify(c, out, err);
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::kParseError:
      case ErrorCode::kInvalidArgument:
      case ErrorCode::kDimensionMismatch:
        return kExitUsage;
      default:
        return kExitNumeric;
    }
  }
  return kExitUsage;
}

}  // namespace latgauss
