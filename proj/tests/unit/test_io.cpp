#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "helpers.hpp"
#include "l1svm/datagen.hpp"
#include "l1svm/experiments.hpp"
#include "l1svm/io.hpp"

namespace l1svm {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "l1svm_unit_io";
  fs::create_directories(dir);
  return dir;
}

TEST(DatasetCsv, RoundTripIsExact) {
  const Dataset d = testing::random_dataset(17, 5, 3);
  std::ostringstream out;
  write_dataset_csv(d, out);
  EXPECT_EQ(out.str().substr(0, 15), "y,x1,x2,x3,x4,x");
  std::istringstream in(out.str());
  EXPECT_EQ(read_dataset_csv(in), d);

  const fs::path path = scratch_dir() / "round.csv";
  write_dataset_csv(d, path);
  EXPECT_EQ(read_dataset_csv(path), d);
}

TEST(DatasetCsv, AcceptsCrlfAndRejectsBadInput) {
  std::istringstream crlf("y,x1\r\n1,0.5\r\n-1,2\r\n");
  const Dataset d = read_dataset_csv(crlf);
  EXPECT_EQ(d, Dataset({1, -1}, {0.5, 2.0}, 1));

  std::istringstream bad_label("y,x1\n0,0.5\n");
  EXPECT_THROW(read_dataset_csv(bad_label), Error);
  std::istringstream ragged("y,x1,x2\n1,0.5\n");
  EXPECT_THROW(read_dataset_csv(ragged), Error);
  std::istringstream junk("y,x1\n1,abc\n");
  EXPECT_THROW(read_dataset_csv(junk), Error);
  EXPECT_THROW(read_dataset_csv(scratch_dir() / "missing.csv"), IoError);
}

TEST(GenerationRecord, JsonRoundTripAndRegenerate) {
  GenerationRecord rec;
  rec.family = "subgaussian";
  rec.m = 30;
  rec.p = 40;
  rec.p_prime = 3;
  rec.seed = 12;
  rec.placement_seed = 99;
  const auto spec = make_subgaussian_spec(40, 3, 1.5, 4.0, true, 99);
  rec.c = spec.c;
  rec.mu = spec.mu;
  rec.delta_trunc = spec.delta_trunc;
  rec.swap_signs = true;
  rec.beta_star = spec.beta_star;
  EXPECT_EQ(generation_record_from_json(to_json(rec)), rec);
  EXPECT_EQ(regenerate(rec), gen_subgaussian(spec, 30, 12));

  GenerationRecord paired;
  paired.family = "paired";
  paired.paired_x = {1.0, -0.5};
  paired.copies = 3;
  paired.m = 6;
  paired.p = 2;
  EXPECT_EQ(generation_record_from_json(to_json(paired)), paired);
  EXPECT_EQ(regenerate(paired), gen_paired({1.0, -0.5}, 3));

  EXPECT_THROW(generation_record_from_json("{not json"), IoError);
  GenerationRecord unknown;
  unknown.family = "spiral";
  EXPECT_THROW(regenerate(unknown), IoError);
}

TEST(GenerationRecord, SidecarPath) {
  EXPECT_EQ(sidecar_path("out/d.csv"), fs::path("out/d.spec.json"));
}

TEST(TrainReport, JsonRoundTrip) {
  const Dataset d = gen_paired({1.0, 2.0}, 2);
  TrainOptions opts;
  opts.svm.lambda = 0.1;
  opts.dual_samples = 5;
  const TrainReport exact = train(d, opts);
  EXPECT_EQ(train_report_from_json(to_json(exact)), exact);

  opts.solver = SolverKind::kMwu;
  opts.epsilon = 0.2;
  const TrainReport mwu = train(d, opts);
  EXPECT_EQ(train_report_from_json(to_json(mwu)), mwu);
  EXPECT_THROW(train_report_from_json("[]"), IoError);
}

TEST(TextFiles, WriteThenRead) {
  const fs::path path = scratch_dir() / "text.txt";
  write_text(path, "abc\n");
  EXPECT_EQ(read_text(path), "abc\n");
  EXPECT_THROW(write_text(scratch_dir() / "no_such_dir" / "x.txt", "a"), IoError);
}

}  // namespace
}  // namespace l1svm
