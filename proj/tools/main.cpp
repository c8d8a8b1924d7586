// l1svm: generate datasets, train, verify bounds and run scaling sweeps.
//
// Exit codes: 0 success, 1 a mandatory bound failed, 2 usage or IO error,
// 3 the solver did not reach an optimum (including infeasible hard margin).

#include <exception>
#include <stdexcept>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "l1svm/bounds.hpp"
#include "l1svm/datagen.hpp"
#include "l1svm/experiments.hpp"
#include "l1svm/io.hpp"

namespace {

namespace fs = std::filesystem;
using namespace l1svm;

constexpr int kExitOk = 0;
constexpr int kExitBoundViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSolverFailure = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  write_text(out, text);
}

SolverKind parse_solver(const std::string& s) {
  return s == "mwu" ? SolverKind::kMwu : SolverKind::kExact;
}

struct GenArgs {
  std::string family;
  std::size_t p = 0;
  std::optional<std::size_t> p_prime;
  std::optional<double> nu;
  std::optional<double> box;
  std::optional<double> c;
  std::optional<double> delta;
  bool log_scaling = false;
  bool swap_signs = false;
  bool bernoulli = false;
  std::optional<std::uint64_t> placement_seed;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::vector<double> x;
  std::size_t copies = 1;
  std::string out;
};

GenerationRecord record_for(const GenArgs& a) {
  GenerationRecord rec;
  rec.family = a.family;
  rec.seed = a.seed;
  rec.placement_seed = a.placement_seed;
  rec.balance = a.bernoulli ? LabelBalance::kBernoulli : LabelBalance::kStratified;

  if (a.family == "xor") {
    rec.m = 4;
    rec.p = 2;
    return rec;
  }
  if (a.family == "paired") {
    if (a.x.empty()) throw UsageError("paired family needs --x");
    rec.paired_x = a.x;
    rec.copies = a.copies;
    rec.m = 2 * a.copies;
    rec.p = a.x.size();
    return rec;
  }

  if (a.p == 0) throw UsageError(a.family + " family needs --p");
  if (a.m == 0) throw UsageError(a.family + " family needs --m");
  rec.p = a.p;
  rec.m = a.m;

  if (a.family == "margin") {
    if (!a.nu) throw UsageError("margin family needs --nu");
    if (!a.p_prime) throw UsageError("margin family needs --p-prime");
    auto spec = make_margin_spec(a.p, *a.p_prime, *a.nu, a.placement_seed, a.box);
    rec.p_prime = spec.p_prime;
    rec.nu = spec.nu;
    rec.box = spec.box;
    rec.beta_star = spec.beta_star;
    return rec;
  }

  // subgaussian
  SubgaussianProblemSpec spec;
  if (a.log_scaling) {
    auto base = log_scaling_spec(a.p);
    spec = make_subgaussian_spec(a.p, a.p_prime.value_or(base.p_prime), a.c.value_or(base.c),
                                 a.delta.value_or(base.delta_trunc), a.swap_signs,
                                 a.placement_seed);
  } else {
    if (!a.p_prime || !a.c || !a.delta)
      throw UsageError("subgaussian family needs --p-prime, --c and --delta (or --log-scaling)");
    spec = make_subgaussian_spec(a.p, *a.p_prime, *a.c, *a.delta, a.swap_signs,
                                 a.placement_seed);
  }
  rec.p_prime = spec.p_prime;
  rec.c = spec.c;
  rec.mu = spec.mu;
  rec.delta_trunc = spec.delta_trunc;
  rec.swap_signs = a.swap_signs;
  rec.beta_star = spec.beta_star;
  return rec;
}

int run_gen(const GenArgs& a) {
  if (a.out.empty()) throw UsageError("gen needs -o");
  GenerationRecord rec = record_for(a);
  Dataset d = regenerate(rec);
  write_dataset_csv(d, fs::path(a.out));
  write_text(sidecar_path(a.out), to_json(rec) + "\n");
  return kExitOk;
}

struct TrainArgs {
  std::string data;
  std::string solver = "exact";
  std::optional<double> lambda;
  bool hard = false;
  double epsilon = 0.05;
  std::optional<double> R_bound;
  std::optional<double> r_bound;
  std::size_t max_iters = 2'000'000'000;
  std::uint64_t seed = 0;
  std::size_t dual_samples = 0;
  double support_tau = 1e-6;
  std::optional<int> quantize_bits;
  double tol = 1e-9;
  std::string out;
};

int run_train(const TrainArgs& a) {
  Dataset d = read_dataset_csv(fs::path(a.data));
  TrainOptions opts;
  opts.solver = parse_solver(a.solver);
  opts.svm.hard_margin = a.hard;
  opts.svm.lambda = a.lambda.value_or(bounds::default_lambda(static_cast<double>(d.p())));
  opts.exact_tol = a.tol;
  opts.epsilon = a.epsilon;
  opts.R_bound = a.R_bound;
  opts.r_bound = a.r_bound;
  opts.max_iters = a.max_iters;
  opts.seed = a.seed;
  opts.dual_samples = a.dual_samples;
  opts.support_tau = a.support_tau;
  opts.quantize_bits = a.quantize_bits;
  if (opts.solver == SolverKind::kMwu && a.hard && (!a.R_bound || !a.r_bound))
    throw UsageError("mwu on the hard-margin LP needs --R-bound and --r-bound");

  TrainReport rep = train(d, opts);
  emit(to_json(rep) + "\n", a.out);
  if (rep.status != SolveStatus::kOptimal) {
    std::cerr << "l1svm: solver finished with status " << to_string(rep.status) << "\n";
    return kExitSolverFailure;
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string family;
  std::vector<std::size_t> p;
  std::vector<std::size_t> p_prime;
  std::vector<double> nu;
  std::optional<std::size_t> m;
  std::size_t m_cap = 500;
  double m_ratio = 0.5;
  std::optional<double> c;
  std::optional<double> delta_trunc;
  std::optional<double> lambda;
  std::size_t trials = 1;
  double confidence = 0.1;
  double significance = 0.001;
  bool no_risk = false;
  bool no_norms = false;
  bool s_form = false;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::string out;
};

int run_verify(const VerifyArgs& a) {
  std::vector<BoundRow> rows;
  if (a.family == "margin") {
    MarginGrid g;
    g.p = a.p;
    g.p_prime = a.p_prime;
    g.nu = a.nu;
    g.trials = a.trials;
    g.m = a.m;
    g.m_cap = a.m_cap;
    g.seed = a.seed;
    rows = verify_margin(g, a.jobs);
  } else {
    if (a.p_prime.size() > 1) throw UsageError("subgaussian grid takes a single --p-prime");
    SubgaussianGrid g;
    g.p = a.p;
    if (!a.p_prime.empty()) g.p_prime = a.p_prime.front();
    g.c = a.c;
    g.delta_trunc = a.delta_trunc;
    g.m = a.m;
    g.m_ratio = a.m_ratio;
    g.lambda = a.lambda;
    g.trials = a.trials;
    g.confidence_delta = a.confidence;
    g.significance = a.significance;
    g.seed = a.seed;
    g.risk_check = !a.no_risk;
    g.norm_check = !a.no_norms;
    g.middle = a.s_form ? bounds::BernsteinMiddleTerm::kStdDev
                        : bounds::BernsteinMiddleTerm::kVariance;
    rows = verify_subgaussian(g, a.jobs);
  }
  emit(bound_rows_csv(rows), a.out);
  return all_mandatory_pass(rows) ? kExitOk : kExitBoundViolation;
}

struct SweepArgs {
  std::string family = "subgaussian";
  std::vector<std::size_t> p;
  std::vector<std::size_t> m;
  double m_ratio = 0.5;
  std::vector<double> epsilon;
  std::string solver = "exact";
  std::optional<double> lambda;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  bool timing = false;
  std::size_t jobs = 1;
  std::string out;
};

int run_sweep_cmd(const SweepArgs& a) {
  SweepGrid g;
  g.family = a.family;
  g.p = a.p;
  g.m = a.m;
  g.m_ratio = a.m_ratio;
  g.epsilon = a.epsilon;
  g.solver = parse_solver(a.solver);
  g.lambda = a.lambda;
  g.trials = a.trials;
  g.seed = a.seed;
  g.timing = a.timing;
  emit(sweep_rows_csv(run_sweep(g, a.jobs)), a.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse SVM training through LP solvers, with bound verification"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic dataset and its spec sidecar");
  gen_cmd->add_option("--family", gen.family, "margin, subgaussian, xor or paired")
      ->required()
      ->check(CLI::IsMember({"margin", "subgaussian", "xor", "paired"}));
  gen_cmd->add_option("--p", gen.p, "Dimension");
  gen_cmd->add_option("--p-prime", gen.p_prime, "Planted support size");
  gen_cmd->add_option("--nu", gen.nu, "Margin (margin family)");
  gen_cmd->add_option("--box", gen.box, "Support box half-width (margin family)");
  gen_cmd->add_option("--c", gen.c, "Class mean on support features (subgaussian)");
  gen_cmd->add_option("--delta", gen.delta, "Truncation point Delta (subgaussian)");
  gen_cmd->add_flag("--log-scaling", gen.log_scaling,
                    "Take unset p', c and Delta from the log-p family");
  gen_cmd->add_flag("--swap-signs", gen.swap_signs, "Alternate planted signs (subgaussian)");
  gen_cmd->add_flag("--bernoulli", gen.bernoulli, "Draw labels by fair coin");
  gen_cmd->add_option("--placement-seed", gen.placement_seed, "Random support placement");
  gen_cmd->add_option("--m", gen.m, "Number of samples");
  gen_cmd->add_option("--seed", gen.seed, "Sampling seed");
  gen_cmd->add_option("--x", gen.x, "Feature vector (paired family)")->delimiter(',');
  gen_cmd->add_option("--copies", gen.copies, "Number of (x,+1),(x,-1) pairs");
  gen_cmd->add_option("-o,--output", gen.out, "Output CSV")->required();

  TrainArgs tr;
  auto* train_cmd = app.add_subcommand("train", "Train on a dataset CSV and write a JSON report");
  train_cmd->add_option("dataset", tr.data, "Dataset CSV")->required();
  train_cmd->add_option("--solver", tr.solver)->check(CLI::IsMember({"exact", "mwu"}));
  train_cmd->add_option("--lambda", tr.lambda,
                        "L1 weight; defaults to 1/sqrt(1 + 2 ln p)");
  train_cmd->add_flag("--hard", tr.hard, "Hard-margin LP");
  train_cmd->add_option("--epsilon", tr.epsilon, "MWU accuracy");
  train_cmd->add_option("--R-bound", tr.R_bound, "MWU primal L1 bound");
  train_cmd->add_option("--r-bound", tr.r_bound, "MWU dual L1 bound");
  train_cmd->add_option("--max-iters", tr.max_iters, "MWU iteration cap");
  train_cmd->add_option("--tol", tr.tol, "Exact solver tolerance");
  train_cmd->add_option("--seed", tr.seed, "Seed for dual sampling");
  train_cmd->add_option("--dual-samples", tr.dual_samples, "Support vectors to sample");
  train_cmd->add_option("--support-tau", tr.support_tau, "Relative support threshold");
  train_cmd->add_option("--quantize-bits", tr.quantize_bits, "Quantize oracle answers");
  train_cmd->add_option("-o,--output", tr.out, "Report JSON (default stdout)");

  VerifyArgs vb;
  auto* verify_cmd = app.add_subcommand("verify-bounds", "Check bounds over a grid, write CSV");
  verify_cmd->add_option("--family", vb.family)
      ->required()
      ->check(CLI::IsMember({"margin", "subgaussian"}));
  verify_cmd->add_option("--p", vb.p, "Dimensions")->delimiter(',');
  verify_cmd->add_option("--p-prime", vb.p_prime, "Support sizes")->delimiter(',');
  verify_cmd->add_option("--nu", vb.nu, "Margins (margin family)")->delimiter(',');
  verify_cmd->add_option("--m", vb.m, "Samples per instance");
  verify_cmd->add_option("--m-cap", vb.m_cap, "Cap on the default m (margin family)");
  verify_cmd->add_option("--m-ratio", vb.m_ratio, "m = ratio * p when --m is unset");
  verify_cmd->add_option("--c", vb.c);
  verify_cmd->add_option("--delta-trunc", vb.delta_trunc);
  verify_cmd->add_option("--lambda", vb.lambda);
  verify_cmd->add_option("--trials", vb.trials, "Instances per cell");
  verify_cmd->add_option("--confidence", vb.confidence, "Failure probability delta");
  verify_cmd->add_option("--significance", vb.significance, "Binomial test level");
  verify_cmd->add_flag("--no-risk", vb.no_risk, "Skip the risk bound");
  verify_cmd->add_flag("--no-norms", vb.no_norms, "Skip the norm bounds");
  verify_cmd->add_flag("--s-form", vb.s_form, "Bernstein middle term with s instead of s^2");
  verify_cmd->add_option("--seed", vb.seed);
  vb.jobs = default_jobs();
  verify_cmd->add_option("--jobs", vb.jobs, "Worker threads (default $L1SVM_JOBS or 1)");
  verify_cmd->add_option("-o,--output", vb.out, "Verdict CSV (default stdout)");

  SweepArgs sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "Scaling sweep, write CSV");
  sweep_cmd->add_option("--family", sw.family)->check(CLI::IsMember({"subgaussian", "paired"}));
  sweep_cmd->add_option("--p", sw.p)->delimiter(',');
  sweep_cmd->add_option("--m", sw.m)->delimiter(',');
  sweep_cmd->add_option("--m-ratio", sw.m_ratio);
  sweep_cmd->add_option("--epsilon", sw.epsilon)->delimiter(',');
  sweep_cmd->add_option("--solver", sw.solver)->check(CLI::IsMember({"exact", "mwu"}));
  sweep_cmd->add_option("--lambda", sw.lambda);
  sweep_cmd->add_option("--trials", sw.trials);
  sweep_cmd->add_option("--seed", sw.seed);
  sweep_cmd->add_flag("--timing", sw.timing, "Record wall_ms");
  sw.jobs = default_jobs();
  sweep_cmd->add_option("--jobs", sw.jobs, "Worker threads (default $L1SVM_JOBS or 1)");
  sweep_cmd->add_option("-o,--output", sw.out, "Results CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*train_cmd) return run_train(tr);
    if (*verify_cmd) return run_verify(vb);
    return run_sweep_cmd(sw);
  } catch (const SolverError& e) {
    std::cerr << "l1svm: " << e.what() << "\n";
    return kExitSolverFailure;
  } catch (const std::exception& e) {
    std::cerr << "l1svm: " << e.what() << "\n";
    return kExitUsage;
  }
}
