#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "l1svm/datagen.hpp"
#include "l1svm/mwu.hpp"
#include "l1svm/simplex.hpp"
#include "l1svm/types.hpp"

namespace l1svm {

/// Failure to read, write or parse an artifact file.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Header `y,x1,...,xp`, one sample per line, values printed with 17
/// significant digits so doubles survive the round trip.
void write_dataset_csv(const Dataset& d, std::ostream& out);
void write_dataset_csv(const Dataset& d, const std::filesystem::path& path);

/// Parses and validates a dataset CSV.
Dataset read_dataset_csv(std::istream& in);
Dataset read_dataset_csv(const std::filesystem::path& path);

/// Everything needed to regenerate a dataset. Written next to the CSV as
/// `<stem>.spec.json`.
struct GenerationRecord {
  std::string family;  // margin, subgaussian, xor or paired
  std::size_t m = 0;
  std::size_t p = 0;
  std::size_t p_prime = 0;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> placement_seed;
  LabelBalance balance = LabelBalance::kStratified;
  double nu = 0.0;           // margin
  double box = 0.0;          // margin
  double c = 0.0;            // subgaussian
  double mu = 0.0;           // subgaussian
  double delta_trunc = 0.0;  // subgaussian
  bool swap_signs = false;   // subgaussian
  std::size_t copies = 0;    // paired
  std::vector<double> paired_x;
  std::vector<double> beta_star;

  bool operator==(const GenerationRecord&) const = default;
};

std::string to_json(const GenerationRecord& rec);
GenerationRecord generation_record_from_json(std::string_view text);

/// Rebuilds the dataset a record describes.
Dataset regenerate(const GenerationRecord& rec);

/// `dir/stem.csv` -> `dir/stem.spec.json`.
std::filesystem::path sidecar_path(const std::filesystem::path& csv);

/// Result of one training run, as written by `train`.
struct TrainReport {
  std::string solver;  // exact or mwu
  bool hard_margin = false;
  double lambda = 0.0;
  SolveStatus status = SolveStatus::kNumericalFailure;
  std::size_t m = 0;
  std::size_t p = 0;

  std::vector<double> beta;
  std::vector<std::size_t> support;
  std::vector<double> xi;
  std::vector<double> alpha;
  std::vector<std::size_t> support_vectors;
  double R = 0.0;
  double r = 0.0;
  double objective = 0.0;
  double dual_objective = 0.0;
  double duality_gap = 0.0;
  QueryLedger ledger;
  std::size_t iterations = 0;
  double wall_ms = 0.0;

  // MWU only.
  double epsilon = 0.0;
  double R_bound = 0.0;
  double r_bound = 0.0;
  double max_violation = 0.0;
  double width_bound = 0.0;
  double width_max = 0.0;
  double width_mean = 0.0;
  std::vector<std::size_t> dual_samples;

  bool operator==(const TrainReport&) const = default;
};

std::string to_json(const TrainReport& rep);
TrainReport train_report_from_json(std::string_view text);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace l1svm
