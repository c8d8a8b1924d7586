#include "l1svm/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace l1svm {
namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  return {buf, static_cast<std::size_t>(n)};
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_double(std::string_view s, std::size_t line_no) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw IoError("line " + std::to_string(line_no) + ": cannot parse number '" +
                  std::string(s) + "'");
  }
  return v;
}

std::string_view balance_name(LabelBalance b) {
  return b == LabelBalance::kStratified ? "stratified" : "bernoulli";
}

LabelBalance balance_from(const std::string& s) {
  if (s == "stratified") return LabelBalance::kStratified;
  if (s == "bernoulli") return LabelBalance::kBernoulli;
  throw IoError("unknown label balance '" + s + "'");
}

SolveStatus status_from(const std::string& s) {
  for (auto st : {SolveStatus::kOptimal, SolveStatus::kInfeasible, SolveStatus::kUnbounded,
                  SolveStatus::kIterationLimit, SolveStatus::kNumericalFailure,
                  SolveStatus::kNoFeasibleWithinBounds}) {
    if (to_string(st) == s) return st;
  }
  throw IoError("unknown solve status '" + s + "'");
}

json ledger_json(const QueryLedger& l) {
  return {{"b_queries", l.b_queries},
          {"c_queries", l.c_queries},
          {"a_queries", l.a_queries},
          {"data_queries", l.data_queries}};
}

QueryLedger ledger_from(const json& j) {
  QueryLedger l;
  l.b_queries = j.at("b_queries").get<std::uint64_t>();
  l.c_queries = j.at("c_queries").get<std::uint64_t>();
  l.a_queries = j.at("a_queries").get<std::uint64_t>();
  l.data_queries = j.at("data_queries").get<std::uint64_t>();
  return l;
}

template <typename Fn>
auto parse_guarded(std::string_view text, Fn&& fn) {
  try {
    return fn(json::parse(text));
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

void write_dataset_csv(const Dataset& d, std::ostream& out) {
  out << 'y';
  for (std::size_t j = 1; j <= d.p(); ++j) out << ",x" << j;
  out << '\n';
  for (std::size_t i = 0; i < d.m(); ++i) {
    out << d.y(i);
    for (double v : d.row(i)) out << ',' << fmt17(v);
    out << '\n';
  }
}

void write_dataset_csv(const Dataset& d, const std::filesystem::path& path) {
  std::ostringstream buf;
  write_dataset_csv(d, buf);
  write_text(path, buf.str());
}

Dataset read_dataset_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("dataset CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_commas(line);
  if (header.empty() || header[0] != "y") throw IoError("dataset CSV header must start with 'y'");
  const std::size_t p = header.size() - 1;
  for (std::size_t j = 1; j <= p; ++j) {
    if (header[j] != "x" + std::to_string(j)) {
      throw IoError("dataset CSV header column " + std::to_string(j + 1) + " must be x" +
                    std::to_string(j));
    }
  }

  std::vector<int> labels;
  std::vector<double> features;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_commas(line);
    if (cells.size() != p + 1) {
      throw IoError("line " + std::to_string(line_no) + ": expected " + std::to_string(p + 1) +
                    " fields, found " + std::to_string(cells.size()));
    }
    const double y = parse_double(cells[0], line_no);
    if (y != 1.0 && y != -1.0) {
      throw IoError("line " + std::to_string(line_no) + ": label must be -1 or +1");
    }
    labels.push_back(static_cast<int>(y));
    for (std::size_t j = 1; j <= p; ++j) features.push_back(parse_double(cells[j], line_no));
  }
  Dataset d(std::move(labels), std::move(features), p);
  validate_dataset(d);
  return d;
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_dataset_csv(in);
}

std::string to_json(const GenerationRecord& rec) {
  json j;
  j["family"] = rec.family;
  j["m"] = rec.m;
  j["p"] = rec.p;
  j["p_prime"] = rec.p_prime;
  j["seed"] = rec.seed;
  j["placement_seed"] = rec.placement_seed ? json(*rec.placement_seed) : json(nullptr);
  j["balance"] = balance_name(rec.balance);
  j["nu"] = rec.nu;
  j["box"] = rec.box;
  j["c"] = rec.c;
  j["mu"] = rec.mu;
  j["delta_trunc"] = rec.delta_trunc;
  j["swap_signs"] = rec.swap_signs;
  j["copies"] = rec.copies;
  j["paired_x"] = rec.paired_x;
  j["beta_star"] = rec.beta_star;
  return j.dump(2) + "\n";
}

GenerationRecord generation_record_from_json(std::string_view text) {
  return parse_guarded(text, [](const json& j) {
    GenerationRecord rec;
    rec.family = j.at("family").get<std::string>();
    rec.m = j.at("m").get<std::size_t>();
    rec.p = j.at("p").get<std::size_t>();
    rec.p_prime = j.at("p_prime").get<std::size_t>();
    rec.seed = j.at("seed").get<std::uint64_t>();
    if (!j.at("placement_seed").is_null()) {
      rec.placement_seed = j.at("placement_seed").get<std::uint64_t>();
    }
    rec.balance = balance_from(j.at("balance").get<std::string>());
    rec.nu = j.at("nu").get<double>();
    rec.box = j.at("box").get<double>();
    rec.c = j.at("c").get<double>();
    rec.mu = j.at("mu").get<double>();
    rec.delta_trunc = j.at("delta_trunc").get<double>();
    rec.swap_signs = j.at("swap_signs").get<bool>();
    rec.copies = j.at("copies").get<std::size_t>();
    rec.paired_x = j.at("paired_x").get<std::vector<double>>();
    rec.beta_star = j.at("beta_star").get<std::vector<double>>();
    return rec;
  });
}

Dataset regenerate(const GenerationRecord& rec) {
  if (rec.family == "margin") {
    auto spec = make_margin_spec(rec.p, rec.p_prime, rec.nu, rec.placement_seed, rec.box);
    spec.balance = rec.balance;
    return gen_margin(spec, rec.m, rec.seed);
  }
  if (rec.family == "subgaussian") {
    auto spec = make_subgaussian_spec(rec.p, rec.p_prime, rec.c, rec.delta_trunc,
                                      rec.swap_signs, rec.placement_seed);
    spec.balance = rec.balance;
    return gen_subgaussian(spec, rec.m, rec.seed);
  }
  if (rec.family == "xor") return gen_xor();
  if (rec.family == "paired") return gen_paired(rec.paired_x, rec.copies);
  throw IoError("unknown family '" + rec.family + "'");
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
  std::filesystem::path out = csv;
  out.replace_extension(".spec.json");
  return out;
}

std::string to_json(const TrainReport& rep) {
  json j;
  j["solver"] = rep.solver;
  j["hard_margin"] = rep.hard_margin;
  j["lambda"] = rep.lambda;
  j["status"] = to_string(rep.status);
  j["m"] = rep.m;
  j["p"] = rep.p;
  j["beta"] = rep.beta;
  j["support"] = rep.support;
  j["xi"] = rep.xi;
  j["alpha"] = rep.alpha;
  j["support_vectors"] = rep.support_vectors;
  j["R"] = rep.R;
  j["r"] = rep.r;
  j["objective"] = rep.objective;
  j["dual_objective"] = rep.dual_objective;
  j["duality_gap"] = rep.duality_gap;
  j["ledger"] = ledger_json(rep.ledger);
  j["iterations"] = rep.iterations;
  j["wall_ms"] = rep.wall_ms;
  j["epsilon"] = rep.epsilon;
  j["R_bound"] = rep.R_bound;
  j["r_bound"] = rep.r_bound;
  j["max_violation"] = rep.max_violation;
  j["width"] = {{"bound", rep.width_bound}, {"max", rep.width_max}, {"mean", rep.width_mean}};
  j["dual_samples"] = rep.dual_samples;
  return j.dump(2) + "\n";
}

TrainReport train_report_from_json(std::string_view text) {
  return parse_guarded(text, [](const json& j) {
    TrainReport rep;
    rep.solver = j.at("solver").get<std::string>();
    rep.hard_margin = j.at("hard_margin").get<bool>();
    rep.lambda = j.at("lambda").get<double>();
    rep.status = status_from(j.at("status").get<std::string>());
    rep.m = j.at("m").get<std::size_t>();
    rep.p = j.at("p").get<std::size_t>();
    rep.beta = j.at("beta").get<std::vector<double>>();
    rep.support = j.at("support").get<std::vector<std::size_t>>();
    rep.xi = j.at("xi").get<std::vector<double>>();
    rep.alpha = j.at("alpha").get<std::vector<double>>();
    rep.support_vectors = j.at("support_vectors").get<std::vector<std::size_t>>();
    rep.R = j.at("R").get<double>();
    rep.r = j.at("r").get<double>();
    rep.objective = j.at("objective").get<double>();
    rep.dual_objective = j.at("dual_objective").get<double>();
    rep.duality_gap = j.at("duality_gap").get<double>();
    rep.ledger = ledger_from(j.at("ledger"));
    rep.iterations = j.at("iterations").get<std::size_t>();
    rep.wall_ms = j.at("wall_ms").get<double>();
    rep.epsilon = j.at("epsilon").get<double>();
    rep.R_bound = j.at("R_bound").get<double>();
    rep.r_bound = j.at("r_bound").get<double>();
    rep.max_violation = j.at("max_violation").get<double>();
    const json& w = j.at("width");
    rep.width_bound = w.at("bound").get<double>();
    rep.width_max = w.at("max").get<double>();
    rep.width_mean = w.at("mean").get<double>();
    rep.dual_samples = j.at("dual_samples").get<std::vector<std::size_t>>();
    return rep;
  });
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace l1svm
