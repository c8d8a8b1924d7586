#include "l1svm/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "l1svm/datagen.hpp"
#include "l1svm/formulation.hpp"
#include "l1svm/mwu.hpp"
#include "l1svm/sampling.hpp"
#include "l1svm/simplex.hpp"

namespace l1svm {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string fmt17(double v) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  return {buf, static_cast<std::size_t>(n)};
}

// Runs fn(0) .. fn(count - 1) on up to `jobs` threads. The first exception
// thrown by any call is rethrown once every worker has stopped.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn&& fn) {
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(count, 1));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text,
                                                const std::string& expected_header) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != expected_header) {
    throw IoError("CSV header must be '" + expected_header + "'");
  }
  const std::size_t width = split(expected_header, ',').size();
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split(line, ',');
    if (cells.size() != width) throw IoError("CSV row has the wrong number of fields: " + line);
    rows.push_back(std::move(cells));
  }
  return rows;
}

double to_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw IoError("bad number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw IoError("bad number '" + s + "'");
  }
}

std::uint64_t to_u64(const std::string& s) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used);
    if (used != s.size()) throw IoError("bad integer '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw IoError("bad integer '" + s + "'");
  }
}

bool to_bool(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw IoError("bad boolean '" + s + "'");
}

std::size_t margin_sample_count(const MarginGrid& grid, std::size_t p_prime, double nu) {
  if (grid.m) return *grid.m;
  const double m = std::ceil(4.0 * static_cast<double>(p_prime) / (nu * nu) - 1e-9);
  return std::min(grid.m_cap, std::max<std::size_t>(1, static_cast<std::size_t>(m)));
}

void fill_solution(TrainReport& rep, const PrimalSolution& primal, const DualSolution& dual,
                   double tau) {
  const BetaVector beta = read_beta(primal);
  rep.beta = beta.beta;
  rep.support = beta.support;
  rep.xi = primal.xi;
  rep.alpha = dual.alpha;
  rep.support_vectors = support_vectors(dual, tau);
  rep.R = primal.norm_R;
  rep.r = dual.norm_r;
  rep.objective = primal.objective;
  rep.dual_objective = dual.objective;
}

struct ExactNorms {
  double R = 0.0;
  double r = 0.0;
  std::size_t iterations = 0;
  QueryLedger ledger;
  double wall_ms = 0.0;
};

ExactNorms solve_norms(const Dataset& d, const SparseSvmConfig& cfg) {
  OracleSet oracle(d, cfg);
  ExactNorms out;
  const auto start = Clock::now();
  const LpInstance lp = materialize_lp(oracle, out.ledger);
  const ExactResult ex = solve_exact(lp);
  out.wall_ms = ms_since(start);
  if (!ex.ok()) {
    throw SolverError(std::string("exact solver failed: ") + std::string(to_string(ex.status)));
  }
  out.R = ex.primal.norm_R;
  out.r = ex.dual.norm_r;
  out.iterations = ex.iterations;
  return out;
}

}  // namespace

LpInstance materialize_lp(const OracleSet& oracle, QueryLedger& ledger) {
  LpInstance lp;
  lp.kind = oracle.hard_margin() ? LpKind::kHardMargin : LpKind::kSoftMargin;
  lp.n = oracle.n();
  lp.num_constraints = oracle.m();
  lp.num_features = oracle.p();
  lp.c_diag.resize(lp.n);
  for (std::size_t k = 0; k < lp.n; ++k) lp.c_diag[k] = oracle.query_c(k, ledger);
  lp.lambda = lp.c_diag[lp.slack_count()];
  lp.b.resize(lp.num_constraints);
  for (std::size_t i = 0; i < lp.num_constraints; ++i) lp.b[i] = oracle.query_b(i, ledger);
  lp.a_diags.resize(lp.num_constraints * lp.n);
  for (std::size_t i = 0; i < lp.num_constraints; ++i) {
    for (std::size_t k = 0; k < lp.n; ++k) lp.a_diags[i * lp.n + k] = oracle.query_a(i, k, ledger);
  }
  return lp;
}

TrainReport train(const Dataset& d, const TrainOptions& opts) {
  validate_dataset(d);
  validate_config(opts.svm);
  OracleSet oracle(d, opts.svm);
  oracle.set_quantization(opts.quantize_bits);

  TrainReport rep;
  rep.solver = opts.solver == SolverKind::kExact ? "exact" : "mwu";
  rep.hard_margin = opts.svm.hard_margin;
  rep.lambda = opts.svm.hard_margin ? 0.0 : opts.svm.lambda;
  rep.m = d.m();
  rep.p = d.p();

  const auto start = Clock::now();
  DualSolution dual;
  if (opts.solver == SolverKind::kExact) {
    const LpInstance lp = materialize_lp(oracle, rep.ledger);
    ExactOptions eo;
    eo.tol = opts.exact_tol;
    const ExactResult ex = solve_exact(lp, eo);
    rep.status = ex.status;
    rep.iterations = ex.iterations;
    if (ex.ok()) {
      fill_solution(rep, ex.primal, ex.dual, opts.support_tau);
      rep.duality_gap = ex.duality_gap;
      rep.max_violation = ex.primal_residual;
      dual = ex.dual;
    }
  } else {
    const LpInstance lp = opts.svm.hard_margin ? build_hard_lp(d) : build_soft_lp(d, opts.svm);
    MwuConfig cfg;
    cfg.epsilon = opts.epsilon;
    cfg.max_iters = opts.max_iters;
    cfg.seed = opts.seed;
    if (opts.svm.hard_margin) {
      if (!opts.R_bound || !opts.r_bound) {
        throw Error("the hard-margin MWU solve needs explicit R and r bounds");
      }
      cfg.R_bound = *opts.R_bound;
      cfg.r_bound = *opts.r_bound;
    } else {
      const double m = static_cast<double>(d.m());
      cfg.R_bound = opts.R_bound.value_or(std::max(m, 1.0 / opts.svm.lambda));
      cfg.r_bound = opts.r_bound.value_or(1.0);
    }
    const MwuResult res = solve_mwu(lp, cfg, oracle);
    rep.status = res.status;
    rep.iterations = res.report.iterations;
    rep.ledger = res.report.ledger;
    rep.epsilon = cfg.epsilon;
    rep.R_bound = cfg.R_bound;
    rep.r_bound = cfg.r_bound;
    rep.width_bound = res.report.width.bound;
    rep.width_max = res.report.width.max_observed;
    rep.width_mean = res.report.width.mean_observed;
    if (res.ok()) {
      fill_solution(rep, res.primal, res.dual, opts.support_tau);
      rep.duality_gap = res.report.duality_gap_estimate;
      rep.max_violation = max_constraint_violation(lp, res.x);
      dual = res.dual;
    }
  }
  if (opts.dual_samples > 0 && dual.norm_r > 0.0) {
    rep.dual_samples = sample_dual(dual, opts.dual_samples, opts.seed);
  }
  rep.wall_ms = ms_since(start);
  return rep;
}

SubgaussianProblemSpec log_scaling_spec(std::size_t p) {
  const std::size_t p_prime = log_scaling_support(p);
  const double lp = std::log(static_cast<double>(p));
  const double mu = 1.0 + std::sqrt(2.0 * lp);
  return make_subgaussian_spec(p, p_prime, mu / std::sqrt(static_cast<double>(p_prime)),
                               2.0 * lp);
}

double binomial_upper_tail(std::size_t n, std::size_t k, double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw Error("binomial_upper_tail: q must lie in [0, 1]");
  if (k == 0) return 1.0;
  if (k > n) return 0.0;
  if (q == 0.0) return 0.0;
  if (q == 1.0) return 1.0;
  const double nd = static_cast<double>(n);
  const double lq = std::log(q);
  const double l1q = std::log1p(-q);
  double total = 0.0;
  for (std::size_t j = k; j <= n; ++j) {
    const double jd = static_cast<double>(j);
    const double log_pmf = std::lgamma(nd + 1.0) - std::lgamma(jd + 1.0) -
                           std::lgamma(nd - jd + 1.0) + jd * lq + (nd - jd) * l1q;
    total += std::exp(log_pmf);
  }
  return std::min(1.0, total);
}

std::vector<BoundRow> verify_margin(const MarginGrid& grid, std::size_t jobs) {
  struct Cell {
    std::size_t p, p_prime, trial;
    double nu;
  };
  std::vector<Cell> cells;
  for (std::size_t p : grid.p) {
    for (std::size_t pp : grid.p_prime) {
      if (pp == 0 || pp > p) continue;
      for (double nu : grid.nu) {
        for (std::size_t t = 0; t < grid.trials; ++t) cells.push_back({p, pp, t, nu});
      }
    }
  }
  std::vector<BoundRow> rows(cells.size());
  parallel_for(cells.size(), jobs, [&](std::size_t k) {
    const Cell& cell = cells[k];
    const std::size_t m = margin_sample_count(grid, cell.p_prime, cell.nu);
    const std::uint64_t seed = grid.seed + k;
    const Dataset d = gen_margin(make_margin_spec(cell.p, cell.p_prime, cell.nu), m, seed);
    const ExactResult ex = solve_exact(build_hard_lp(d));
    const double bound = bounds::hard_margin_norm_bound(static_cast<double>(cell.p_prime), cell.nu);
    BoundRow& row = rows[k];
    row.family = "margin";
    row.instance = std::to_string(cell.trial);
    row.p = cell.p;
    row.p_prime = cell.p_prime;
    row.m = m;
    row.seed = seed;
    row.bound = "margin_l1_norm";
    row.measured = ex.ok() ? read_beta(ex.primal).l1_norm : -1.0;
    row.bound_value = bound;
    row.mandatory = true;
    row.pass = ex.ok() && row.measured <= bound + grid.slack;
  });
  return rows;
}

std::vector<BoundRow> verify_subgaussian(const SubgaussianGrid& grid, std::size_t jobs) {
  if (!(grid.confidence_delta > 0.0 && grid.confidence_delta < 1.0)) {
    throw Error("confidence delta must lie in (0, 1)");
  }
  struct Instance {
    std::size_t cell, trial;
  };
  std::vector<SubgaussianProblemSpec> specs;
  std::vector<std::size_t> sizes;
  for (std::size_t p : grid.p) {
    SubgaussianProblemSpec spec = log_scaling_spec(p);
    if (grid.p_prime || grid.c || grid.delta_trunc) {
      spec = make_subgaussian_spec(p, grid.p_prime.value_or(spec.p_prime), grid.c.value_or(spec.c),
                                   grid.delta_trunc.value_or(spec.delta_trunc));
    }
    specs.push_back(spec);
    const std::size_t m =
        grid.m ? *grid.m
               : std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(
                                              grid.m_ratio * static_cast<double>(p))));
    sizes.push_back(m);
  }
  std::vector<Instance> instances;
  for (std::size_t c = 0; c < specs.size(); ++c) {
    for (std::size_t t = 0; t < grid.trials; ++t) instances.push_back({c, t});
  }

  const double delta = grid.confidence_delta;
  const std::size_t per_instance = (grid.risk_check ? 1 : 0) + (grid.norm_check ? 2 : 0);
  std::vector<BoundRow> detail(instances.size() * per_instance);
  parallel_for(instances.size(), jobs, [&](std::size_t k) {
    const auto& spec = specs[instances[k].cell];
    const std::size_t m = sizes[instances[k].cell];
    const std::uint64_t seed = grid.seed + k;
    const Dataset d = gen_subgaussian(spec, m, seed);
    auto make = [&](std::string name, double measured, double bound) {
      BoundRow row;
      row.family = "subgaussian";
      row.instance = std::to_string(instances[k].trial);
      row.p = spec.p;
      row.p_prime = spec.p_prime;
      row.m = m;
      row.seed = seed;
      row.bound = std::move(name);
      row.measured = measured;
      row.bound_value = bound;
      row.mandatory = false;
      row.pass = measured <= bound;
      return row;
    };
    std::size_t slot = k * per_instance;
    if (grid.risk_check) {
      const double risk = empirical_risk(d, spec.beta_star);
      detail[slot++] = make("empirical_risk", risk,
                            bounds::bernstein_bound(spec.mu, spec.delta_trunc, m, delta, grid.middle));
    }
    if (grid.norm_check) {
      const double p = static_cast<double>(spec.p);
      const double lambda = grid.lambda.value_or(bounds::default_lambda(p));
      const ExactNorms norms = solve_norms(d, SparseSvmConfig{lambda, false});
      const auto nb = bounds::soft_margin_norm_bounds(p, m, lambda, delta);
      detail[slot++] = make("primal_norm_R", norms.R, nb.R);
      detail[slot++] = make("dual_norm_r", norms.r, nb.r);
    }
  });

  // Each cell's detail rows followed by its mandatory summaries.
  std::vector<BoundRow> rows;
  std::size_t k = 0;
  for (std::size_t c = 0; c < specs.size(); ++c) {
    const std::size_t first = k * per_instance;
    std::size_t n = 0;
    while (k < instances.size() && instances[k].cell == c) {
      ++k;
      ++n;
    }
    const std::size_t last = k * per_instance;
    rows.insert(rows.end(), detail.begin() + static_cast<std::ptrdiff_t>(first),
                detail.begin() + static_cast<std::ptrdiff_t>(last));
    if (n == 0) continue;

    auto tally = [&](const std::string& name) {
      std::size_t fails = 0;
      for (std::size_t r = first; r < last; ++r) {
        if (detail[r].bound == name && !detail[r].pass) ++fails;
      }
      return fails;
    };
    BoundRow summary;
    summary.family = "subgaussian";
    summary.instance = "summary";
    summary.p = specs[c].p;
    summary.p_prime = specs[c].p_prime;
    summary.m = sizes[c];
    summary.seed = grid.seed;
    summary.mandatory = true;
    const double nd = static_cast<double>(n);
    if (grid.risk_check) {
      // Exceedances are Binomial(n, q) with q <= delta when the bound holds.
      const std::size_t fails = tally("empirical_risk");
      summary.bound = "risk_exceed_rate";
      summary.measured = static_cast<double>(fails) / nd;
      summary.bound_value = delta;
      summary.pass = binomial_upper_tail(n, fails, delta) > grid.significance;
      rows.push_back(summary);
    }
    if (grid.norm_check) {
      for (const char* name : {"primal_norm_R", "dual_norm_r"}) {
        const std::size_t fails = tally(name);
        summary.bound = std::string(name) + "_coverage";
        summary.measured = static_cast<double>(n - fails) / nd;
        summary.bound_value = 1.0 - delta;
        summary.pass = summary.measured >= 1.0 - delta;
        rows.push_back(summary);
      }
    }
  }
  return rows;
}

bool all_mandatory_pass(const std::vector<BoundRow>& rows) {
  return std::all_of(rows.begin(), rows.end(),
                     [](const BoundRow& r) { return !r.mandatory || r.pass; });
}

namespace {
constexpr const char* kBoundHeader =
    "family,instance,p,p_prime,m,seed,bound,measured,bound_value,mandatory,pass";
constexpr const char* kSweepHeader =
    "p,m,epsilon,R_measured,r_measured,iterations,a_queries,data_queries,wall_ms";
}  // namespace

std::string bound_rows_csv(const std::vector<BoundRow>& rows) {
  std::string out = std::string(kBoundHeader) + "\n";
  for (const auto& r : rows) {
    out += r.family + "," + r.instance + "," + std::to_string(r.p) + "," +
           std::to_string(r.p_prime) + "," + std::to_string(r.m) + "," + std::to_string(r.seed) +
           "," + r.bound + "," + fmt17(r.measured) + "," + fmt17(r.bound_value) + "," +
           (r.mandatory ? "true" : "false") + "," + (r.pass ? "true" : "false") + "\n";
  }
  return out;
}

std::vector<BoundRow> bound_rows_from_csv(const std::string& text) {
  std::vector<BoundRow> rows;
  for (const auto& c : parse_csv(text, kBoundHeader)) {
    BoundRow r;
    r.family = c[0];
    r.instance = c[1];
    r.p = to_u64(c[2]);
    r.p_prime = to_u64(c[3]);
    r.m = to_u64(c[4]);
    r.seed = to_u64(c[5]);
    r.bound = c[6];
    r.measured = to_double(c[7]);
    r.bound_value = to_double(c[8]);
    r.mandatory = to_bool(c[9]);
    r.pass = to_bool(c[10]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<SweepRow> run_sweep(const SweepGrid& grid, std::size_t jobs) {
  if (grid.family != "subgaussian" && grid.family != "paired") {
    throw Error("sweep family must be subgaussian or paired");
  }
  const bool mwu = grid.solver == SolverKind::kMwu;
  if (mwu && grid.epsilon.empty()) throw Error("an MWU sweep needs at least one epsilon");
  struct Instance {
    std::size_t p, m, trial;
  };
  std::vector<Instance> instances;
  for (std::size_t p : grid.p) {
    std::vector<std::size_t> ms = grid.m;
    if (ms.empty()) {
      ms.push_back(std::max<std::size_t>(
          grid.family == "paired" ? 2 : 1,
          static_cast<std::size_t>(std::lround(grid.m_ratio * static_cast<double>(p)))));
    }
    for (std::size_t m : ms) {
      for (std::size_t t = 0; t < grid.trials; ++t) instances.push_back({p, m, t});
    }
  }
  const std::vector<double> eps = mwu ? grid.epsilon : std::vector<double>{0.0};
  std::vector<SweepRow> rows(instances.size() * eps.size());

  parallel_for(instances.size(), jobs, [&](std::size_t k) {
    const Instance& inst = instances[k];
    const std::uint64_t seed = grid.seed + k;
    Dataset d;
    if (grid.family == "paired") {
      if (inst.m % 2 != 0) throw Error("paired sweep needs even m");
      d = gen_paired(std::vector<double>(inst.p, 1.0), inst.m / 2);
    } else {
      d = gen_subgaussian(log_scaling_spec(inst.p), inst.m, seed);
    }
    const double lambda =
        grid.lambda.value_or(bounds::default_lambda(static_cast<double>(inst.p)));
    const SparseSvmConfig cfg{lambda, false};
    const ExactNorms norms = solve_norms(d, cfg);
    for (std::size_t e = 0; e < eps.size(); ++e) {
      SweepRow& row = rows[k * eps.size() + e];
      row.p = inst.p;
      row.m = inst.m;
      row.epsilon = eps[e];
      row.R_measured = norms.R;
      row.r_measured = norms.r;
      if (!mwu) {
        row.iterations = norms.iterations;
        row.a_queries = norms.ledger.a_queries;
        row.data_queries = norms.ledger.data_queries;
        row.wall_ms = grid.timing ? norms.wall_ms : 0.0;
        continue;
      }
      OracleSet oracle(d, cfg);
      MwuConfig mc;
      mc.epsilon = eps[e];
      mc.R_bound = std::max(1.0, norms.R);
      mc.r_bound = std::max(1.0, norms.r);
      mc.seed = seed;
      const MwuResult res = solve_mwu(build_soft_lp(d, cfg), mc, oracle);
      if (!res.ok()) {
        throw SolverError(std::string("MWU solve failed: ") + std::string(to_string(res.status)));
      }
      row.iterations = res.report.iterations;
      row.a_queries = res.report.ledger.a_queries;
      row.data_queries = res.report.ledger.data_queries;
      row.wall_ms = grid.timing ? res.report.wall_ms : 0.0;
    }
  });
  return rows;
}

std::string sweep_rows_csv(const std::vector<SweepRow>& rows) {
  std::string out = std::string(kSweepHeader) + "\n";
  for (const auto& r : rows) {
    out += std::to_string(r.p) + "," + std::to_string(r.m) + "," + fmt17(r.epsilon) + "," +
           fmt17(r.R_measured) + "," + fmt17(r.r_measured) + "," + std::to_string(r.iterations) +
           "," + std::to_string(r.a_queries) + "," + std::to_string(r.data_queries) + "," +
           fmt17(r.wall_ms) + "\n";
  }
  return out;
}

std::vector<SweepRow> sweep_rows_from_csv(const std::string& text) {
  std::vector<SweepRow> rows;
  for (const auto& c : parse_csv(text, kSweepHeader)) {
    SweepRow r;
    r.p = to_u64(c[0]);
    r.m = to_u64(c[1]);
    r.epsilon = to_double(c[2]);
    r.R_measured = to_double(c[3]);
    r.r_measured = to_double(c[4]);
    r.iterations = to_u64(c[5]);
    r.a_queries = to_u64(c[6]);
    r.data_queries = to_u64(c[7]);
    r.wall_ms = to_double(c[8]);
    rows.push_back(r);
  }
  return rows;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error("log_log_slope needs two equally long series of length >= 2");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw Error("log_log_slope needs positive values");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw Error("log_log_slope: x values are all equal");
  return (n * sxy - sx * sy) / denom;
}

LossMoments truncated_loss_moments(double mu, double delta_trunc, std::size_t draws,
                                   std::uint64_t seed) {
  if (draws == 0) throw Error("truncated_loss_moments: draws must be positive");
  if (!(delta_trunc > 0.0)) throw Error("truncated_loss_moments: Delta must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(mu, 1.0);
  LossMoments out;
  out.min = std::numeric_limits<double>::infinity();
  out.max = -std::numeric_limits<double>::infinity();
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t n = 1; n <= draws; ++n) {
    double v = gauss(rng);
    while (v < -delta_trunc) v = gauss(rng);
    const double loss = std::max(0.0, 1.0 - v);
    const double diff = loss - mean;
    mean += diff / static_cast<double>(n);
    m2 += diff * (loss - mean);
    out.min = std::min(out.min, loss);
    out.max = std::max(out.max, loss);
  }
  out.mean = mean;
  out.variance = m2 / static_cast<double>(draws);
  return out;
}

std::size_t default_jobs() {
  if (const char* env = std::getenv("L1SVM_JOBS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 1;
}

}  // namespace l1svm
